import random

import pytest
from hypothesis import given, strategies as st

from leancut import fixtures as fx
from leancut.corpus import random_decomposition, random_multigraph
from leancut.errors import ContractError, InputError
from leancut.linkage import d_ab, linking_count, max_linking_paths, min_cut_lex, subdivide_for_menger
from leancut.oracle import naive_max_linking_paths
from leancut.tcd import all_adhesions, link_path

from pathcheck import all_min_cuts, is_cut, is_linking_path
from strategies import multigraphs


def _check(g, A, B):
    res = max_linking_paths(g, A, B)
    assert res.count == len(res.paths) == len(res.cut)
    used = [e for p in res.paths for e in p]
    assert len(used) == len(set(used))
    for p in res.paths:
        assert is_linking_path(g, p, A, B), p
    assert is_cut(g, res.cut, A, B)
    return res


def test_c4():
    res = _check(fx.c4(), {0, 3}, {1, 2})
    assert res.count == 2
    assert sorted(res.paths) == [(0, 1), (3, 2)]


def test_single_shared_edge():
    g = fx.k4()
    res = _check(g, {2}, {2})
    assert res.count == 1 and res.paths == ((2,),) and res.cut == {2}


def test_interleave4():
    res = _check(fx.interleave4(), {0, 1, 2}, {3, 4, 5})
    assert res.count == 1 and res.cut == {6}


def test_parallel_end_edges_form_a_path():
    # the two outer vertices of a linking path may coincide
    res = _check(fx.theta3(), {0}, {1})
    assert res.count == 1 and res.paths == ((0, 1),)


def test_barbell_bridge():
    res = _check(fx.barbell3ec(), set(range(5)), set(range(5, 10)))
    assert res.count == 3 and res.cut == {10, 11, 12}


def test_empty_sets_rejected():
    with pytest.raises(InputError):
        max_linking_paths(fx.c4(), set(), {1})
    with pytest.raises(InputError):
        linking_count(fx.c4(), {0}, {99})


def test_subdivision_sizes():
    g = fx.c4()
    s = subdivide_for_menger(g, {0, 3}, {1, 3})
    assert s.graph.n == g.n + 3 and s.graph.m == g.m + 3
    s = subdivide_for_menger(g, {2}, {2})
    assert s.va == s.vb and len(s.va) == 1
    s = subdivide_for_menger(g, {0}, {2})
    assert not s.va & s.vb


@given(multigraphs(max_n=6, max_m=12), st.integers(0, 2**32 - 1))
def test_agrees_with_naive_packing(g, seed):
    r = random.Random(seed)
    ids = sorted(g.edges)
    A = set(r.sample(ids, r.randint(1, len(ids))))
    B = set(r.sample(ids, r.randint(1, len(ids))))
    res = _check(g, A, B)
    assert res.count == naive_max_linking_paths(g, A, B)
    assert linking_count(g, A, B) == res.count
    assert linking_count(g, A, B, limit=1) == min(1, res.count)


def test_d_ab_examples():
    g = fx.barbell3ec()
    d = fx.interleaved()
    # a b1b2 edge runs n2-n3-n4 and shares n2n3 with the path
    assert d_ab(g, d, (1, 2), (2, 3), 5) == 0
    c4 = fx.c4()
    two = fx.two_bags({0, 1}, {2, 3})
    assert d_ab(c4, two, (0, 1), (0, 1), 0) == 1
    assert d_ab(c4, two, (0, 1), (0, 1), 1) == 0


def test_min_cut_lex_interleave4():
    F = min_cut_lex(fx.interleave4(), fx.interleaved(), (1, 2), (3, 4), (0, 1), (3, 4))
    assert F == {6}


def test_min_cut_lex_refuses_when_linked():
    with pytest.raises(ContractError):
        min_cut_lex(fx.c4(), fx.two_bags({0, 1}, {2, 3}), (0, 1), (0, 1), (1, 3), (1, 3))


def _lex_cases(count, seed):
    r = random.Random(seed)
    while count:
        n = r.randint(3, 6)
        g = random_multigraph(r, n, r.randint(n - 1, 12))
        d = random_decomposition(r, g, r.randint(2, 5))
        adh = all_adhesions(g, d)
        links = [l for l in d.links if adh[l]]
        if not links:
            continue
        a, b = r.choice(links), r.choice(links)
        k = r.randint(1, min(len(adh[a]), len(adh[b])))
        A = r.sample(sorted(adh[a]), k)
        B = r.sample(sorted(adh[b]), k)
        if linking_count(g, A, B) >= k:
            continue
        count -= 1
        yield g, d, a, b, A, B


@pytest.mark.parametrize("case", list(_lex_cases(40, 7)), ids=lambda c: f"m{c[0].m}")
def test_min_cut_lex_against_exhaustive(case):
    g, d, a, b, A, B = case
    F = min_cut_lex(g, d, a, b, A, B)
    cuts = all_min_cuts(g, A, B)
    assert F in cuts
    cost = lambda C: sum(d_ab(g, d, a, b, e) for e in C)
    assert cost(F) == min(cost(C) for C in cuts)
    assert link_path(d, a, b)
