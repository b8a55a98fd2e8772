"""Edge-disjoint paths linking two edge sets, and minimum cuts between them.

A path linking A and B starts with an edge of A, ends with an edge of B and
uses no other edge of A or B; an edge in both is a path by itself. Paths are
taken in the graph obtained by subdividing every edge of A and B once, so
the two outer vertices of a path may coincide (two parallel end edges form
such a path). With this reading the maximum number of disjoint linking paths
equals the minimum size of a cut separating A from B.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ContractError, InputError, InvariantError
from .multigraph import MultiGraph
from .tcd import TreeCutDecomposition, link_path, t_path_of_edge


@dataclass(frozen=True)
class LinkageResult:
    count: int
    paths: tuple  # edge-id sequences
    cut: frozenset


@dataclass(frozen=True)
class Subdivision:
    graph: MultiGraph
    va: frozenset
    vb: frozenset
    back_map: dict  # half-edge id -> original edge id
    gadget: dict  # original edge id -> subdivision vertex


def subdivide_for_menger(g: MultiGraph, A, B) -> Subdivision:
    """Subdivide every edge of ``A | B`` once."""
    A, B = frozenset(A), frozenset(B)
    g._check_edges(A | B)
    next_vertex = max(g.vertices, default=-1) + 1
    next_edge = max(g.edges, default=-1) + 1
    edges = {e: uv for e, uv in g.edges.items() if e not in A | B}
    back_map, gadget = {}, {}
    vertices = set(g.vertices)
    for e in sorted(A | B):
        u, v = g.edges[e]
        x = next_vertex
        next_vertex += 1
        vertices.add(x)
        gadget[e] = x
        for end in (u, v):
            edges[next_edge] = (end, x)
            back_map[next_edge] = e
            next_edge += 1
    sub = MultiGraph(frozenset(vertices), edges)
    return Subdivision(
        sub,
        frozenset(gadget[e] for e in A),
        frozenset(gadget[e] for e in B),
        back_map,
        gadget,
    )


def _masks(g: MultiGraph, A, B):
    pos = g.edge_position
    in_a = np.zeros(g.m, np.bool_)
    in_b = np.zeros(g.m, np.bool_)
    in_a[[pos[e] for e in A]] = True
    in_b[[pos[e] for e in B]] = True
    return in_a, in_b


def _solve(g: MultiGraph, A, B, weight):
    """Run the flow on the linking network; returns everything the callers
    need to extract paths or a cut."""
    _, eu, ev = g.arrays
    in_a, in_b = _masks(g, A, B)
    n_nodes, tail, head, cf, cb, s, t, owner, shared = kernels.linking_network(
        g.n, eu, ev, in_a, in_b, weight
    )
    limit = np.int64(np.iinfo(np.int64).max // 4)
    value, flow, reach = kernels.max_flow(n_nodes, tail, head, cf, cb, s, t, limit)
    return {
        "value": int(value),
        "shared": int(shared),
        "tail": tail.tolist(),
        "head": head.tolist(),
        "cf": cf.tolist(),
        "cb": cb.tolist(),
        "owner": owner.tolist(),
        "flow": flow.tolist(),
        "reach": reach.tolist(),
        "s": int(s),
        "t": int(t),
    }


def _cut_from(g: MultiGraph, sol, A, B) -> frozenset:
    ids = g.edge_ids
    cut = {e for e in A & B}
    for i, (x, y) in enumerate(zip(sol["tail"], sol["head"])):
        rx, ry = sol["reach"][x], sol["reach"][y]
        if (rx and not ry and sol["cf"][i] > 0) or (ry and not rx and sol["cb"][i] > 0):
            cut.add(ids[sol["owner"][i]])
    return frozenset(cut)


def _walks(g: MultiGraph, sol) -> list:
    """Decompose the unit flow into source-sink walks of graph edge ids."""
    out = {}
    for i, f in enumerate(sol["flow"]):
        if f > 0:
            out.setdefault(sol["tail"][i], []).append((i, sol["head"][i]))
        elif f < 0:
            out.setdefault(sol["head"][i], []).append((i, sol["tail"][i]))
    for arcs in out.values():
        arcs.reverse()  # pop() yields the lowest index first
    ids = g.edge_ids
    walks = []
    while out.get(sol["s"]):
        x = sol["s"]
        seq = []
        while x != sol["t"]:
            i, x = out[x].pop()
            e = ids[sol["owner"][i]]
            if not seq or seq[-1] != e:
                seq.append(e)
        walks.append(seq)
    return walks


def _bfs(g: MultiGraph, allowed, src, dst, avoid):
    if src in avoid or dst in avoid:
        return None
    prev = {src: None}
    queue = deque([src])
    adj = {}
    for e in sorted(allowed):
        u, v = g.edges[e]
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for e, w in adj.get(x, ()):
            if w not in prev and w not in avoid:
                prev[w] = (e, x)
                queue.append(w)
    if dst not in prev:
        return None
    path = []
    x = dst
    while prev[x] is not None:
        e, x = prev[x]
        path.append(e)
    return path[::-1]


def _linking_path_from_walk(g: MultiGraph, walk, A, B) -> list:
    j = next(i for i, e in enumerate(walk) if e in B)
    i = max(i for i in range(j + 1) if walk[i] in A)
    first, last = walk[i], walk[j]
    middle = set(walk[i + 1 : j])
    # Prefer a path whose outer vertices are distinct from everything else.
    for strict in (True, False):
        for x in g.edges[first]:
            for y in g.edges[last]:
                xo, yo = g.other_end(first, x), g.other_end(last, y)
                if strict and xo == yo:
                    continue
                avoid = {xo, yo} if strict else set()
                mid = _bfs(g, middle, x, y, avoid)
                if mid is not None:
                    return [first, *mid, last]
    raise InvariantError("flow walk does not contain a linking path")


def _check_sets(g, A, B):
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        raise InputError("A and B must be nonempty")
    g._check_edges(A | B)
    return A, B


def max_linking_paths(g: MultiGraph, A, B) -> LinkageResult:
    """Maximum family of edge-disjoint paths linking ``A`` and ``B`` plus a
    minimum cut certifying it."""
    A, B = _check_sets(g, A, B)
    sol = _solve(g, A, B, np.ones(g.m, np.int64))
    shared = sorted(A & B)
    paths = [[e] for e in shared]
    for walk in _walks(g, sol):
        paths.append(_linking_path_from_walk(g, walk, A - B, B - A))
    cut = _cut_from(g, sol, A, B)
    count = sol["value"] + sol["shared"]
    if not (len(paths) == count == len(cut)):
        raise InvariantError("path count, flow value and cut size disagree")
    return LinkageResult(count, tuple(tuple(p) for p in paths), cut)


def linking_count(g: MultiGraph, A, B, limit=None) -> int:
    A, B = _check_sets(g, A, B)
    _, eu, ev = g.arrays
    in_a, in_b = _masks(g, A, B)
    cap = g.m + 1 if limit is None else limit
    return int(kernels.linking_count(g.n, eu, ev, in_a, in_b, cap))


def d_ab(g: MultiGraph, d: TreeCutDecomposition, a, b, e) -> int:
    """0 when the tree path of ``e`` shares a link with ``aTb``; otherwise one
    more than the tree distance between the two paths."""
    return _DistanceToPath(d, a, b)(g, e)


class _DistanceToPath:
    def __init__(self, d, a, b):
        self.d = d
        self.path_links = link_path(d, a, b)
        self.link_set = set(self.path_links)
        nodes = {x for link in self.path_links for x in link}
        # multi-source BFS distances from the nodes of aTb
        dist = {x: 0 for x in nodes}
        queue = deque(sorted(nodes))
        while queue:
            x = queue.popleft()
            for w in d.neighbours[x]:
                if w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        self.dist = dist

    def __call__(self, g, e):
        nodes = t_path_of_edge(g, self.d, e)
        for x, y in zip(nodes, nodes[1:]):
            if (min(x, y), max(x, y)) in self.link_set:
                return 0
        return 1 + min(self.dist[x] for x in nodes)


def min_cut_lex(g: MultiGraph, d: TreeCutDecomposition, a, b, A, B) -> frozenset:
    """Smallest ``(A, B)``-cut, breaking size ties by the smallest total
    ``d_ab`` distance to ``aTb``.

    The two criteria are folded into one capacity ``W + d_ab(e)`` with ``W``
    larger than any possible distance total.
    """
    A, B = _check_sets(g, A, B)
    if len(A) != len(B):
        raise ContractError("A and B must have the same size")
    dist = _DistanceToPath(d, a, b)
    dvals = [dist(g, e) for e in g.edge_ids]
    big = 1 + g.m * (1 + max(dvals, default=0))
    if big * (g.m + 1) >= 1 << 62:
        raise InvariantError("lexicographic cut weights would overflow int64")
    weight = np.array([big + x for x in dvals], np.int64)
    sol = _solve(g, A, B, weight)
    cut = _cut_from(g, sol, A, B)
    size = sol["value"] // big + sol["shared"]
    if size >= len(A):
        raise ContractError(f"{len(A)} edge-disjoint linking paths exist; no cut below k")
    if len(cut) != size:
        raise InvariantError("weighted cut does not map back to a minimum cut")
    return cut
