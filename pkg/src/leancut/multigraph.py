"""Loopless multigraphs with stable edge ids, cuts and connectivity."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import InputError, ParseError, PreconditionError

# Ids handed to edges that do not exist in the input graph (see split_along_cut).
VIRTUAL_EDGE_BASE = 1 << 40
_virtual_ids = itertools.count(VIRTUAL_EDGE_BASE)

EXHAUSTIVE_MIN_CUT_LIMIT = 20


def is_virtual_edge(edge_id: int) -> bool:
    return edge_id >= VIRTUAL_EDGE_BASE


@dataclass(frozen=True)
class MultiGraph:
    """Finite undirected multigraph without loops.

    ``edges`` maps edge id to its endpoint pair. Parallel edges are separate
    entries with separate ids; subgraphs keep the ids of the parent graph.
    """

    vertices: frozenset
    edges: dict

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        clean = {}
        for eid, (u, v) in sorted(self.edges.items()):
            if u == v:
                raise InputError(f"edge {eid} is a loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise InputError(f"edge {eid} has an endpoint outside the vertex set")
            clean[eid] = (u, v) if u < v else (v, u)
        object.__setattr__(self, "edges", clean)

    @classmethod
    def from_edge_list(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "MultiGraph":
        """Vertices ``0..n-1``; the i-th pair gets edge id ``i``."""
        return cls(frozenset(range(n)), dict(enumerate(pairs)))

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges.items())))

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_vertices(self) -> tuple:
        return tuple(sorted(self.vertices))

    @cached_property
    def edge_ids(self) -> tuple:
        return tuple(self.edges)

    @cached_property
    def incidence(self) -> dict:
        inc = {v: [] for v in self.sorted_vertices}
        for eid, (u, v) in self.edges.items():
            inc[u].append(eid)
            inc[v].append(eid)
        return inc

    @cached_property
    def arrays(self):
        """Dense view for the kernels: ``(index, eu, ev)`` where ``index``
        maps vertex id to position and edges follow ``edge_ids`` order."""
        index = {v: i for i, v in enumerate(self.sorted_vertices)}
        eu = np.array([index[self.edges[e][0]] for e in self.edge_ids], dtype=np.int64)
        ev = np.array([index[self.edges[e][1]] for e in self.edge_ids], dtype=np.int64)
        return index, eu, ev

    @cached_property
    def edge_position(self) -> dict:
        return {e: i for i, e in enumerate(self.edge_ids)}

    def other_end(self, edge_id: int, v: int) -> int:
        a, b = self.edges[edge_id]
        return b if v == a else a

    def induced(self, keep) -> "MultiGraph":
        keep = frozenset(keep)
        return MultiGraph(
            keep, {e: uv for e, uv in self.edges.items() if uv[0] in keep and uv[1] in keep}
        )

    def without_edges(self, drop) -> "MultiGraph":
        drop = set(drop)
        return MultiGraph(self.vertices, {e: uv for e, uv in self.edges.items() if e not in drop})

    def with_edge(self, edge_id: int, u: int, v: int) -> "MultiGraph":
        if edge_id in self.edges:
            raise InputError(f"edge id {edge_id} already present")
        edges = dict(self.edges)
        edges[edge_id] = (u, v)
        return MultiGraph(self.vertices, edges)

    def _check_vertices(self, xs):
        bad = set(xs) - self.vertices
        if bad:
            raise InputError(f"unknown vertex id(s): {sorted(bad)}")

    def _check_edges(self, es):
        bad = set(es) - self.edges.keys()
        if bad:
            raise InputError(f"unknown edge id(s): {sorted(bad)}")


@dataclass(frozen=True)
class CutSplit:
    cut: frozenset
    sides: tuple  # (V1, V2)


def edges_between(g: MultiGraph, xs, ys) -> frozenset:
    """Ids of edges with one endpoint in ``xs`` and the other in ``ys``."""
    xs, ys = set(xs), set(ys)
    g._check_vertices(xs | ys)
    return frozenset(
        e
        for e, (u, v) in g.edges.items()
        if (u in xs and v in ys) or (u in ys and v in xs)
    )


def connected_components(g: MultiGraph) -> list[frozenset]:
    seen = set()
    comps = []
    for root in g.sorted_vertices:
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for e in g.incidence[u]:
                w = g.other_end(e, u)
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: MultiGraph) -> bool:
    return len(connected_components(g)) <= 1


def is_k_edge_connected(g: MultiGraph, k: int) -> bool:
    if k < 1:
        raise InputError("k must be positive")
    if g.n < 2:
        return True
    if not is_connected(g):
        return False
    return len(global_min_cut(g).cut) >= k


def _min_cut_exhaustive(g: MultiGraph) -> CutSplit:
    verts = g.sorted_vertices
    n = len(verts)
    index, eu, ev = g.arrays
    # Bit 0 (smallest vertex) is always on side V1; enumerate the rest.
    rest = np.arange(1 << (n - 1), dtype=np.int64)
    masks = (rest << 1) | 1
    masks = masks[masks != (1 << n) - 1]
    sizes = np.zeros(len(masks), np.int64)
    for u, v in zip(eu.tolist(), ev.tolist()):
        sizes += ((masks >> u) ^ (masks >> v)) & 1
    best = sizes.min()
    candidates = []
    for mask in masks[sizes == best]:
        side = tuple(verts[i] for i in range(n) if (int(mask) >> i) & 1)
        candidates.append(side)
    v1 = frozenset(min(candidates))
    v2 = g.vertices - v1
    return CutSplit(edges_between(g, v1, v2), (v1, v2))


def _min_cut_stoer_wagner(g: MultiGraph) -> CutSplit:
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(g.sorted_vertices)
    for u, v in g.edges.values():
        if h.has_edge(u, v):
            h[u][v]["weight"] += 1
        else:
            h.add_edge(u, v, weight=1)
    _, (p, q) = nx.stoer_wagner(h)
    v1 = frozenset(p) if min(g.vertices) in p else frozenset(q)
    v2 = g.vertices - v1
    return CutSplit(edges_between(g, v1, v2), (v1, v2))


def global_min_cut(g: MultiGraph) -> CutSplit:
    """A minimum edge cut of a connected graph with at least two vertices.

    Up to ``EXHAUSTIVE_MIN_CUT_LIMIT`` vertices every bipartition is scored
    and the lexicographically smallest side containing the smallest vertex
    wins ties; larger graphs go through Stoer-Wagner.
    """
    if g.n < 2:
        raise PreconditionError("global_min_cut needs at least two vertices")
    if not is_connected(g):
        raise PreconditionError("global_min_cut needs a connected graph")
    if g.n <= EXHAUSTIVE_MIN_CUT_LIMIT:
        return _min_cut_exhaustive(g)
    return _min_cut_stoer_wagner(g)


@dataclass(frozen=True)
class SplitResult:
    g1: MultiGraph
    g2: MultiGraph
    x1: int
    x2: int
    virtual_edges: tuple  # (id added to g1 or None, id added to g2 or None)


def split_along_cut(g: MultiGraph, s: CutSplit) -> SplitResult:
    """Split ``g`` into its two sides along a cut of at most two edges.

    With a two-edge cut whose endpoints on side i differ, side i gets a fresh
    virtual edge between them (id from the reserved range).
    """
    if len(s.cut) > 2:
        raise PreconditionError("split_along_cut only handles cuts of size <= 2")
    v1, v2 = s.sides
    parts = []
    for side in (v1, v2):
        gi = g.induced(side)
        ends = sorted(
            u if u in side else w for u, w in (g.edges[e] for e in sorted(s.cut))
        )
        virtual = None
        if len(s.cut) == 2 and ends[0] != ends[1]:
            virtual = next(_virtual_ids)
            gi = gi.with_edge(virtual, ends[0], ends[1])
        x = ends[0] if ends else min(side)
        parts.append((gi, x, virtual))
    (g1, x1, w1), (g2, x2, w2) = parts
    return SplitResult(g1, g2, x1, x2, (w1, w2))


# -- text format ------------------------------------------------------------


def parse_graph(text: str) -> MultiGraph:
    """``p <n> <m>`` header, then ``e <u> <v>`` lines with 1-based vertices.

    The i-th edge line gets id ``i-1``; ``#`` lines are comments.
    """
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 3 and header is None:
                header = (int(parts[1]), int(parts[2]))
                if header[0] < 0 or header[1] < 0:
                    raise ValueError
            elif parts[0] == "e" and len(parts) == 3 and header is not None:
                u, v = int(parts[1]), int(parts[2])
                if not (1 <= u <= header[0] and 1 <= v <= header[0]) or u == v:
                    raise ValueError
                pairs.append((u - 1, v - 1))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}") from None
    if header is None:
        raise ParseError("missing 'p <n> <m>' header")
    if len(pairs) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(pairs)}")
    return MultiGraph.from_edge_list(header[0], pairs)


def format_graph(g: MultiGraph) -> str:
    """Inverse of :func:`parse_graph` for graphs on ``0..n-1``."""
    if g.vertices != frozenset(range(g.n)):
        raise InputError("only graphs on vertices 0..n-1 can be written")
    if tuple(g.edges) != tuple(range(g.m)):
        raise InputError("only graphs with edge ids 0..m-1 can be written")
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges.values()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> MultiGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: MultiGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
