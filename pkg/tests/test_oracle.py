import hashlib
import itertools
from pathlib import Path

import pytest

from leancut import fixtures as fx
from leancut import oracle
from leancut.errors import InputError, ResourceError
from leancut.multigraph import MultiGraph
from leancut.oracle import OracleConfig, brute_force_tcw, naive_is_lean, naive_max_linking_paths
from leancut.tcd import to_json, trivial_decomposition, validate, width

GOLDEN = Path(__file__).parent / "golden" / "oracle.tsv"


def _golden():
    rows = {}
    for line in GOLDEN.read_text().splitlines():
        if line.startswith("#"):
            continue
        name, w, digest, k = line.split("\t")
        rows[name] = (int(w), digest, None if k == "-" else int(k))
    return rows


def naive_smallest_k(g, d):
    """Smallest k of any violation, straight from the definition."""
    adh = oracle._adhesions(g, d)
    paths = oracle._PathEnumerator(g)
    best = None
    for a, b in itertools.combinations_with_replacement(sorted(adh), 2):
        bottleneck = min(len(adh[c]) for c in oracle._links_between(d, a, b))
        for k in range(1, min(bottleneck, oracle.NAIVE_ADHESION_CAP) + 1):
            if best is not None and k >= best:
                break
            if any(
                naive_max_linking_paths(g, A, B, target=k, _paths=paths) < k
                for A in itertools.combinations(sorted(adh[a]), k)
                for B in itertools.combinations(sorted(adh[b]), k)
            ):
                best = k
                break
    return best


@pytest.mark.parametrize("name", sorted(fx.GRAPHS))
def test_brute_force_matches_golden(name):
    g = fx.GRAPHS[name]()
    w, witness = brute_force_tcw(g)
    gw, digest, _ = _golden()[name]
    assert w == gw
    assert validate(g, witness) is None and width(g, witness) == w
    assert hashlib.sha256(to_json(witness).encode()).hexdigest() == digest


@pytest.mark.slow
@pytest.mark.parametrize("name", ["interleave4", "barbell3ec"])
def test_certificate_k_golden(name):
    assert naive_smallest_k(fx.GRAPHS[name](), fx.interleaved()) == _golden()[name][2]


def test_small_widths():
    assert brute_force_tcw(fx.theta3())[0] == 2
    assert brute_force_tcw(MultiGraph.from_edge_list(1, []))[0] == 1
    w, d = brute_force_tcw(MultiGraph(frozenset(), {}))
    assert w == 0 and d.bags == {0: frozenset()}


def test_config_bounds():
    with pytest.raises(InputError):
        brute_force_tcw(MultiGraph.from_edge_list(7, [(i, i + 1) for i in range(6)]))
    with pytest.raises(InputError):
        OracleConfig(max_tree_nodes=0)
    cfg = OracleConfig(allow_empty_bags=False)
    assert brute_force_tcw(fx.c4(), cfg)[0] == 2
    assert brute_force_tcw(fx.k4(), OracleConfig(max_tree_nodes=1))[0] == 4
    with pytest.raises(ResourceError):
        brute_force_tcw(fx.barbell3ec(), OracleConfig(time_budget=-1.0))


def test_naive_is_lean_examples():
    assert naive_is_lean(fx.k4(), trivial_decomposition(fx.k4()))
    assert naive_is_lean(fx.c4(), fx.two_bags({0, 1}, {2, 3}))
    assert not naive_is_lean(fx.barbell3ec(), fx.interleaved())
    assert not naive_is_lean(fx.interleave4(), fx.interleaved())


def test_naive_is_lean_cap():
    # one link with adhesion 9 and nothing below the cap to refute leanness
    g = MultiGraph.from_edge_list(2, [(0, 1)] * 9)
    with pytest.raises(ResourceError):
        naive_is_lean(g, fx.two_bags({0}, {1}))


def test_naive_packing_examples():
    g = fx.c4()
    assert naive_max_linking_paths(g, {2}, {2}) == 1
    assert naive_max_linking_paths(g, {0, 3}, {1, 2}) == 2
    split = MultiGraph.from_edge_list(4, [(0, 1), (2, 3)])
    assert naive_max_linking_paths(split, {0}, {1}) == 0
    assert naive_max_linking_paths(g, set(), {1}) == 0
    with pytest.raises(ResourceError):
        naive_max_linking_paths(MultiGraph.from_edge_list(2, [(0, 1)] * 15), {0}, {1})


def test_linking_paths_listing():
    paths = oracle.linking_paths(fx.c4(), {0}, {2})
    assert paths == {frozenset({0, 1, 2}), frozenset({0, 3, 2})}
