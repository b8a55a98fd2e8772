"""Seeded random instances and the exhaustive small-graph list."""
from __future__ import annotations

import os
import random

import networkx as nx

from .multigraph import MultiGraph, is_k_edge_connected
from .tcd import TreeCutDecomposition

DEFAULT_SEED = 20181


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("LEANCUT_SEED")
    return int(raw) if raw not in (None, "") else default


def random_multigraph(rng: random.Random, n: int, m: int) -> MultiGraph:
    """Connected multigraph on ``0..n-1``: a random spanning tree plus
    ``m - (n - 1)`` uniformly random extra edges (parallels allowed)."""
    if n < 1 or (n > 1 and m < n - 1):
        raise ValueError("need m >= n - 1 for a connected graph")
    pairs = []
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        pairs.append((order[i], order[rng.randrange(i)]))
    while len(pairs) < m and n > 1:
        u, v = rng.sample(range(n), 2)
        pairs.append((u, v))
    rng.shuffle(pairs)
    return MultiGraph.from_edge_list(n, pairs)


def random_3ec_multigraph(rng: random.Random, n: int, m: int, tries: int = 1000) -> MultiGraph:
    for _ in range(tries):
        g = random_multigraph(rng, n, m)
        if is_k_edge_connected(g, 3):
            return g
    raise RuntimeError(f"no 3-edge-connected graph with n={n}, m={m} after {tries} tries")


def random_tree(rng: random.Random, t: int) -> tuple:
    return tuple((i, rng.randrange(i)) for i in range(1, t))


def random_decomposition(rng: random.Random, g: MultiGraph, t: int) -> TreeCutDecomposition:
    bags = {i: set() for i in range(t)}
    for v in sorted(g.vertices):
        bags[rng.randrange(t)].add(v)
    return TreeCutDecomposition(bags, random_tree(rng, t))


def spread_decomposition(rng: random.Random, g: MultiGraph, t: int) -> TreeCutDecomposition:
    """One vertex per node (in random order) on a random tree of ``t >= n``
    nodes; the rest stay empty. These are rarely lean."""
    if t < g.n:
        raise ValueError("need at least one node per vertex")
    order = sorted(g.vertices)
    rng.shuffle(order)
    bags = {i: set() for i in range(t)}
    for i, v in enumerate(order):
        bags[i].add(v)
    return TreeCutDecomposition(bags, random_tree(rng, t))


def connected_simple_graphs(max_n: int):
    """Every connected simple graph on 1..max_n vertices up to isomorphism
    (from the networkx graph atlas, max_n <= 7)."""
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            yield MultiGraph.from_edge_list(h.number_of_nodes(), sorted(h.edges()))
