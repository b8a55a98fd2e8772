"""Selects between numba-compiled kernels and the plain Python/numpy path.

Set ``LEANCUT_DISABLE_NUMBA=1`` to force the fallback. The choice is made
once, at import time.
"""
import os

_disabled = os.environ.get("LEANCUT_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
}

try:
    if _disabled:
        raise ImportError
    import numba as _numba
except ImportError:  # pragma: no cover - exercised via subprocess tests
    _numba = None

USE_NUMBA = _numba is not None


def jit(fn):
    """``numba.njit(cache=True)`` when enabled, identity otherwise."""
    if USE_NUMBA:
        return _numba.njit(cache=True)(fn)
    return fn


def backend():
    return "numba" if USE_NUMBA else "python"
