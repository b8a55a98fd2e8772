"""Leanness of tree-cut decompositions and minimal non-leanness certificates.

The search visits ``k`` in increasing order, then link pairs by the length of
the tree path between them, then by link ids. For one ``(a, b, k)``:

* if fewer than ``k`` paths link the full adhesions, every pair of
  ``k``-subsets fails (a path between subsets contains one between the full
  adhesions), so the smallest subsets are reported;
* otherwise subsets are enumerated. Parallel edges are interchangeable, so
  only one representative per symmetry class of ``A`` (and of ``B`` given
  ``A``) is tried; representatives are the lexicographically smallest
  members of their class, so the first hit is the lexicographic minimum.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ContractError, InputError, UndecidedError
from .linkage import linking_count, min_cut_lex
from .multigraph import MultiGraph
from .tcd import TreeCutDecomposition, all_adhesions, link_path

DEFAULT_MAX_ADH_ENUM = 16


@dataclass(frozen=True)
class Certificate:
    k: int
    a: tuple
    b: tuple
    A: tuple
    B: tuple
    cut: frozenset
    distance: int

    def to_json(self) -> str:
        doc = {
            "k": self.k,
            "a": list(self.a),
            "b": list(self.b),
            "A": sorted(self.A),
            "B": sorted(self.B),
            "cut": sorted(self.cut),
        }
        return json.dumps(doc, separators=(",", ":"))


def violates(g: MultiGraph, d: TreeCutDecomposition, k, a, b, A, B) -> bool:
    adh = all_adhesions(g, d)
    path = link_path(d, a, b)
    a, b = path[0], path[-1]
    A, B = frozenset(A), frozenset(B)
    if len(A) != k or len(B) != k:
        raise InputError("A and B must both have exactly k edges")
    if not A <= adh[a] or not B <= adh[b]:
        raise InputError("A and B must lie in the adhesions of a and b")
    if min(len(adh[c]) for c in path) < k:
        return False
    return linking_count(g, A, B, limit=k) < k


def _classes(g: MultiGraph, edges) -> list:
    by_ends = {}
    for e in sorted(edges):
        by_ends.setdefault(g.edges[e], []).append(e)
    return list(by_ends.values())


def _representatives(groups, k) -> list:
    """One subset per way of taking ``c_j`` members from group ``j`` (the
    ``c_j`` smallest), sorted lexicographically."""
    out = []
    ranges = [range(min(len(grp), k) + 1) for grp in groups]
    for counts in itertools.product(*ranges):
        if sum(counts) == k:
            out.append(tuple(sorted(e for grp, c in zip(groups, counts) for e in grp[:c])))
    out.sort()
    return out


class _Search:
    def __init__(self, g, d, max_adh_enum):
        self.g = g
        self.d = d
        self.max_adh_enum = max_adh_enum
        self.adh = all_adhesions(g, d)
        _, self.eu, self.ev = g.arrays
        self.pos = g.edge_position
        self.pairs = []
        links = list(d.links)
        for i, a in enumerate(links):
            for b in links[i:]:
                if not self.adh[a] or not self.adh[b]:
                    continue
                path = link_path(d, a, b)
                bottleneck = min(len(self.adh[c]) for c in path)
                self.pairs.append((len(path), a, b, bottleneck))
        self.pairs.sort()
        self._full = {}

    def full_flow(self, a, b):
        key = (a, b)
        if key not in self._full:
            self._full[key] = linking_count(self.g, self.adh[a], self.adh[b])
        return self._full[key]

    def rows(self, subsets):
        return np.array([[self.pos[e] for e in s] for s in subsets], np.int64)

    def check(self, k, a, b):
        """``(A, B)`` violating at ``(k, a, b)``, ``None``, or raise
        ``UndecidedError`` when enumeration would exceed the bound."""
        adh_a, adh_b = self.adh[a], self.adh[b]
        if self.full_flow(a, b) < k:
            return tuple(sorted(adh_a)[:k]), tuple(sorted(adh_b)[:k])
        if max(len(adh_a), len(adh_b)) > self.max_adh_enum:
            raise UndecidedError(
                f"undecided at configured bound: adhesions of {a} and {b} have "
                f"{len(adh_a)} and {len(adh_b)} edges (bound {self.max_adh_enum})"
            )
        classes_b = _classes(self.g, adh_b)
        for A in _representatives(_classes(self.g, adh_a), k):
            in_a = set(A)
            groups = []
            for cls in classes_b:
                groups.append([e for e in cls if e in in_a])
                groups.append([e for e in cls if e not in in_a])
            B_rows = _representatives([grp for grp in groups if grp], k)
            i, j = kernels.first_violation(
                self.g.n, self.eu, self.ev, self.rows([A]), self.rows(B_rows), k
            )
            if i >= 0:
                return A, B_rows[j]
        return None

    def candidates(self):
        """``(k, distance, a, b)`` in certificate order."""
        kmax = max((p[3] for p in self.pairs), default=0)
        for k in range(1, kmax + 1):
            for dist, a, b, bottleneck in self.pairs:
                if bottleneck >= k:
                    yield k, dist, a, b


def find_minimal_certificate(
    g: MultiGraph, d: TreeCutDecomposition, max_adh_enum: int = DEFAULT_MAX_ADH_ENUM
):
    """Smallest ``k``, then shortest ``aTb``, then smallest ``(a, b)``, ``A``,
    ``B``; ``None`` when ``d`` is lean."""
    search = _Search(g, d, max_adh_enum)
    for k, dist, a, b in search.candidates():
        found = search.check(k, a, b)
        if found is not None:
            A, B = found
            cut = min_cut_lex(g, d, a, b, A, B)
            return Certificate(k, a, b, A, B, cut, dist)
    return None


def is_lean(g: MultiGraph, d: TreeCutDecomposition, max_adh_enum: int = DEFAULT_MAX_ADH_ENUM) -> bool:
    search = _Search(g, d, max_adh_enum)
    undecided = None
    for k, _, a, b in search.candidates():
        try:
            if search.check(k, a, b) is not None:
                return False
        except UndecidedError as exc:
            undecided = undecided or exc
    if undecided is not None:
        raise undecided
    return True


def is_p_excessive(g, d, e, p, step=None) -> bool:
    """Whether link ``e`` has adhesion at least ``p`` and strictly larger
    than both of its copies in the pending segregation ``step``."""
    if step is None:
        raise ContractError("is_p_excessive needs the context of an improvement step")
    size, first, second = step.copy_sizes(e)
    return size >= p and size > first and size > second
