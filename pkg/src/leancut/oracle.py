"""Brute-force ground truth for tiny instances.

Nothing here calls into ``linkage``, ``leanness`` or the adhesion code of
``tcd``: adhesions, tree paths and path packings are recomputed from scratch
so the oracle can be used to check those modules.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import networkx as nx
import numpy as np

from . import kernels
from .errors import InputError, ResourceError
from .multigraph import MultiGraph
from .tcd import TreeCutDecomposition

NAIVE_EDGE_CAP = 14
NAIVE_ADHESION_CAP = 8


@dataclass(frozen=True)
class OracleConfig:
    max_vertices: int = 6
    max_tree_nodes: int | None = None  # defaults to |V| + 2
    allow_empty_bags: bool = True
    time_budget: float | None = None  # seconds

    def __post_init__(self):
        if self.max_tree_nodes is not None and self.max_tree_nodes < 1:
            raise InputError("max_tree_nodes must be at least 1")


# -- linking paths -----------------------------------------------------------


class _PathEnumerator:
    """Linking paths of one graph as edge bitmasks (bit = position in
    ``g.edges``)."""

    def __init__(self, g: MultiGraph):
        self.g = g
        self.bit = {e: 1 << i for i, e in enumerate(g.edges)}
        vbit = {v: 1 << i for i, v in enumerate(sorted(g.vertices))}
        self.vbit = vbit
        self.inc = {v: [] for v in g.vertices}
        for e, (u, v) in g.edges.items():
            self.inc[u].append((e, self.bit[e], v, vbit[v]))
            self.inc[v].append((e, self.bit[e], u, vbit[u]))

    def masks(self, A, B) -> set:
        inc = self.inc
        in_b = frozenset(B)
        blocked = frozenset(A) | in_b
        found = {self.bit[e] for e in frozenset(A) & in_b}

        def extend(x, visited, used):
            for f, fb, y, yb in inc[x]:
                if used & fb:
                    continue
                if f in in_b:
                    found.add(used | fb)
                if f not in blocked and not visited & yb:
                    extend(y, visited | yb, used | fb)

        for e in A:
            for x in self.g.edges[e]:
                extend(x, self.vbit[x], self.bit[e])
        return found


def _path_masks(g: MultiGraph, A, B) -> set:
    return _PathEnumerator(g).masks(A, B)


def linking_paths(g: MultiGraph, A, B) -> set:
    """Edge sets of all paths linking ``A`` and ``B``.

    A path is ``e, x_1, ..., x_r, f`` with ``e`` in A, ``f`` in B, the
    vertices between consecutive edges pairwise distinct and no inner edge
    in ``A | B``.
    """
    ids = list(g.edges)
    return {
        frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1)
        for mask in _path_masks(g, A, B)
    }


def _max_disjoint(masks, target):
    """Largest number of pairwise disjoint bitmasks, capped at ``target``."""
    ordered = sorted(masks, key=lambda x: (x.bit_count(), x))
    used, greedy = 0, 0
    for x in ordered:
        if not used & x:
            used |= x
            greedy += 1
            if greedy >= target:
                return target
    best = greedy

    def search(start, used, count):
        nonlocal best
        if count > best:
            best = count
        if best >= target or count + len(ordered) - start <= best:
            return
        for i in range(start, len(ordered)):
            if not used & ordered[i]:
                search(i + 1, used | ordered[i], count + 1)
                if best >= target:
                    return

    search(0, 0, 0)
    return min(best, target)


def naive_max_linking_paths(g: MultiGraph, A, B, target=None, _paths=None) -> int:
    """Maximum packing of edge-disjoint linking paths by exhaustive search."""
    if g.m > NAIVE_EDGE_CAP:
        raise ResourceError(f"naive path packing is capped at {NAIVE_EDGE_CAP} edges")
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        return 0
    cap = min(len(A), len(B)) if target is None else target
    paths = _paths or _PathEnumerator(g)
    return _max_disjoint(paths.masks(A, B), cap)


# -- leanness -----------------------------------------------------------------


def _tree_adjacency(d):
    adj = {t: set() for t in d.bags}
    for u, v in d.links:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _adhesions(g, d):
    adj = _tree_adjacency(d)
    out = {}
    for u, v in d.links:
        side = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in side and (x, w) != (u, v):
                    side.add(w)
                    stack.append(w)
        verts = set().union(*(d.bags[t] for t in side))
        out[(u, v)] = frozenset(
            e for e, (x, y) in g.edges.items() if (x in verts) != (y in verts)
        )
    return out


def _links_between(d, a, b):
    """Links on the tree path starting with ``a`` and ending with ``b``."""
    if a == b:
        return [a]
    g = nx.Graph()
    g.add_nodes_from(d.bags)
    g.add_edges_from(d.links)
    nodes = max(
        (nx.shortest_path(g, x, y) for x in a for y in b),
        key=len,
    )
    return [tuple(sorted(p)) for p in zip(nodes, nodes[1:])]


def naive_is_lean(g: MultiGraph, d: TreeCutDecomposition) -> bool:
    """Literal check of every ``k``, link pair and subset pair.

    Pairs whose adhesions fit the cap are checked first; a violation there
    settles the answer. Otherwise any over-cap pair left unchecked raises.
    """
    adh = _adhesions(g, d)
    links = sorted(adh)
    paths = _PathEnumerator(g)
    skipped = False
    for a, b in itertools.combinations_with_replacement(links, 2):
        if max(len(adh[a]), len(adh[b])) > NAIVE_ADHESION_CAP:
            skipped = True
            continue
        bottleneck = min(len(adh[c]) for c in _links_between(d, a, b))
        for k in range(1, bottleneck + 1):
            for A in itertools.combinations(sorted(adh[a]), k):
                for B in itertools.combinations(sorted(adh[b]), k):
                    if naive_max_linking_paths(g, A, B, target=k, _paths=paths) < k:
                        return False
    if skipped:
        raise ResourceError(f"naive leanness is capped at adhesions of {NAIVE_ADHESION_CAP}")
    return True


# -- tree-cut width ----------------------------------------------------------


def _trees(t):
    if t == 1:
        yield []
        return
    for tree in nx.nonisomorphic_trees(t):
        yield sorted(tuple(sorted(e)) for e in tree.edges())


def _tree_tables(t, links):
    """Orient every link away from node 0; ``below[l, x]`` marks the nodes
    on the child side of link ``l``."""
    adj = {x: [] for x in range(t)}
    for u, v in links:
        adj[u].append(v)
        adj[v].append(u)
    parent = {0: None}
    order = [0]
    for x in order:
        for w in adj[x]:
            if w not in parent:
                parent[w] = x
                order.append(w)
    link_a, link_b = [], []
    below = np.zeros((len(links), t), np.bool_)
    for l, (u, v) in enumerate(links):
        child = v if parent.get(v) == u else u
        link_a.append(parent[child])
        link_b.append(child)
        stack = [child]
        while stack:
            x = stack.pop()
            below[l, x] = True
            stack.extend(w for w in adj[x] if w != parent[x])
    return np.array(link_a, np.int64), np.array(link_b, np.int64), below


BATCH = 1 << 15


def brute_force_tcw(g: MultiGraph, cfg: OracleConfig | None = None):
    """Minimum width over every decomposition whose tree has at most
    ``cfg.max_tree_nodes`` nodes. Returns ``(width, witness)``; the witness
    is the first optimum in enumeration order."""
    cfg = cfg or OracleConfig()
    if g.n > cfg.max_vertices:
        raise InputError(f"brute_force_tcw is limited to {cfg.max_vertices} vertices")
    verts = sorted(g.vertices)
    n = len(verts)
    if n == 0:
        return 0, TreeCutDecomposition({0: frozenset()}, ())
    index = {v: i for i, v in enumerate(verts)}
    eu = np.array([index[u] for u, _ in g.edges.values()], np.int64)
    ev = np.array([index[v] for _, v in g.edges.values()], np.int64)
    max_nodes = cfg.max_tree_nodes or n + 2
    started = time.monotonic()
    best_w, best = None, None
    for t in range(1, max_nodes + 1):
        if not cfg.allow_empty_bags and t > n:
            break
        powers = t ** np.arange(n - 1, -1, -1, dtype=np.int64)
        total = t**n
        for links in _trees(t):
            link_a, link_b, below = _tree_tables(t, links)
            for lo in range(0, total, BATCH):
                if cfg.time_budget is not None and time.monotonic() - started > cfg.time_budget:
                    raise ResourceError("brute_force_tcw exceeded its time budget")
                codes = np.arange(lo, min(lo + BATCH, total), dtype=np.int64)
                assign = (codes[:, None] // powers[None, :]) % t
                if not cfg.allow_empty_bags:
                    full = np.ones(len(codes), np.bool_)
                    for x in range(t):
                        full &= (assign == x).any(axis=1)
                    assign = assign[full]
                    if not len(assign):
                        continue
                widths = kernels.assignment_widths(assign, eu, ev, link_a, link_b, below, t)
                i = int(np.argmin(widths))
                if best_w is None or widths[i] < best_w:
                    best_w = int(widths[i])
                    bags = {x: set() for x in range(t)}
                    for vi, node in enumerate(assign[i].tolist()):
                        bags[node].add(verts[vi])
                    best = TreeCutDecomposition(bags, tuple(links))
    return best_w, best
