"""Tree-cut decompositions: validation, adhesions, width and fatness."""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError, ParseError, PreconditionError
from .multigraph import MultiGraph, is_k_edge_connected


def _link(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class TreeCutDecomposition:
    """A tree on integer node ids whose nodes carry disjoint vertex bags.

    Links are node pairs ``(u, v)`` with ``u < v``. Instances are never
    mutated; editing helpers return new decompositions.
    """

    bags: dict
    links: tuple

    def __post_init__(self):
        bags = {t: frozenset(b) for t, b in sorted(self.bags.items())}
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "links", tuple(sorted(_link(u, v) for u, v in self.links)))
        object.__setattr__(self, "_adh_cache", {})

    def __eq__(self, other):
        if not isinstance(other, TreeCutDecomposition):
            return NotImplemented
        return self.bags == other.bags and self.links == other.links

    def __hash__(self):
        return hash((tuple(self.bags.items()), self.links))

    def __repr__(self):
        bags = ", ".join(f"{t}: {sorted(b)}" for t, b in self.bags.items())
        return f"TreeCutDecomposition({{{bags}}}, links={list(self.links)})"

    @property
    def nodes(self) -> tuple:
        return tuple(self.bags)

    @cached_property
    def neighbours(self) -> dict:
        nb = {t: [] for t in self.bags}
        for u, v in self.links:
            nb[u].append(v)
            nb[v].append(u)
        return {t: tuple(sorted(ns)) for t, ns in nb.items()}

    @cached_property
    def _rooted(self):
        """Parent and depth maps from a BFS rooted at the smallest node."""
        root = self.nodes[0]
        parent = {root: None}
        depth = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in self.neighbours[u]:
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
        return parent, depth

    @cached_property
    def node_of(self) -> dict:
        return {v: t for t, bag in self.bags.items() for v in bag}

    def node_path(self, s, t) -> list:
        """Nodes of the unique tree path from ``s`` to ``t``."""
        parent, depth = self._rooted
        left, right = [s], [t]
        while depth[left[-1]] > depth[right[-1]]:
            left.append(parent[left[-1]])
        while depth[right[-1]] > depth[left[-1]]:
            right.append(parent[right[-1]])
        while left[-1] != right[-1]:
            left.append(parent[left[-1]])
            right.append(parent[right[-1]])
        right.pop()
        return left + right[::-1]

    def side(self, link, toward) -> frozenset:
        """Nodes of the component of ``T - link`` containing ``toward``."""
        u, v = link
        away = v if toward == u else u
        seen = {toward}
        stack = [toward]
        while stack:
            x = stack.pop()
            for w in self.neighbours[x]:
                if w not in seen and not (x == toward and w == away):
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def with_bags(self, bags) -> "TreeCutDecomposition":
        return TreeCutDecomposition(bags, self.links)


def _check_link(d: TreeCutDecomposition, link):
    link = _link(*link)
    if link not in set(d.links):
        raise InputError(f"unknown link {link}")
    return link


def validate(g: MultiGraph, d: TreeCutDecomposition, one_based: bool = False):
    """``None`` when ``d`` is a tree-cut decomposition of ``g``, else the
    first violated invariant as a message. ``one_based`` numbers vertices
    in messages as the file formats do."""
    shift = 1 if one_based else 0
    if not d.bags:
        return "tree has no nodes"
    for u, v in d.links:
        if u not in d.bags or v not in d.bags:
            return f"link {(u, v)} references an unknown node"
        if u == v:
            return f"link {(u, v)} is a loop"
    if len(set(d.links)) != len(d.links):
        return "tree has parallel links"
    if len(d.links) != len(d.bags) - 1:
        return "tree has a cycle" if len(d.links) >= len(d.bags) else "tree not connected"
    parent, _ = d._rooted
    if len(parent) != len(d.bags):
        return "tree not connected"
    seen = {}
    for t, bag in d.bags.items():
        for v in sorted(bag):
            if v not in g.vertices:
                return f"bag of node {t} holds unknown vertex {v + shift}"
            if v in seen:
                return "bags not disjoint"
            seen[v] = t
    missing = sorted(g.vertices - seen.keys())
    if missing:
        return f"union misses vertex {missing[0] + shift}"
    return None


def is_valid(g, d) -> bool:
    return validate(g, d) is None


def all_adhesions(g: MultiGraph, d: TreeCutDecomposition) -> dict:
    """Adhesion of every link. An edge crosses exactly the links on the tree
    path between the bags of its endpoints."""
    cached = d._adh_cache.get(id(g))
    if cached is not None and cached[0] is g:
        return cached[1]
    acc = {link: [] for link in d.links}
    node_of = d.node_of
    for e, (u, v) in g.edges.items():
        path = d.node_path(node_of[u], node_of[v])
        for x, y in zip(path, path[1:]):
            acc[_link(x, y)].append(e)
    result = {link: frozenset(es) for link, es in acc.items()}
    d._adh_cache[id(g)] = (g, result)
    return result


def adhesion(g, d, link) -> frozenset:
    return all_adhesions(g, d)[_check_link(d, link)]


def adhesion_sizes(g, d) -> dict:
    return {link: len(es) for link, es in all_adhesions(g, d).items()}


def width(g: MultiGraph, d: TreeCutDecomposition) -> int:
    sizes = adhesion_sizes(g, d)
    term = {t: len(bag) for t, bag in d.bags.items()}
    for (u, v), size in sizes.items():
        if size > 2:
            term[u] += 1
            term[v] += 1
    return max(max(sizes.values(), default=0), max(term.values(), default=0))


def width_3ec(g: MultiGraph, d: TreeCutDecomposition) -> int:
    """Width via bag size plus tree degree, valid for 3-edge-connected graphs
    as long as no link has an empty adhesion."""
    if not is_k_edge_connected(g, 3):
        raise PreconditionError("width_3ec requires a 3-edge-connected graph")
    sizes = adhesion_sizes(g, d)
    node_term = max((len(bag) + len(d.neighbours[t]) for t, bag in d.bags.items()), default=0)
    return max(max(sizes.values(), default=0), node_term)


def link_path(d: TreeCutDecomposition, a, b) -> list:
    """Links of the tree path that starts with ``a`` and ends with ``b``."""
    a, b = _check_link(d, a), _check_link(d, b)
    if a == b:
        return [a]
    best = max(
        (d.node_path(x, y) for x in a for y in b),
        key=len,
    )
    return [_link(x, y) for x, y in zip(best, best[1:])]


def link_distance(d, a, b) -> int:
    return len(link_path(d, a, b))


def t_path_of_edge(g: MultiGraph, d: TreeCutDecomposition, e) -> list:
    if e not in g.edges:
        raise InputError(f"unknown edge {e}")
    u, v = g.edges[e]
    try:
        return d.node_path(d.node_of[u], d.node_of[v])
    except KeyError:
        raise PreconditionError(f"an endpoint of edge {e} lies in no bag") from None


class Fatness(tuple):
    """``(alpha_m, -beta_m, ..., alpha_1, -beta_1)``, compared lexicographically."""

    @property
    def m(self) -> int:
        return len(self) // 2

    def alpha(self, i: int) -> int:
        return self[2 * (self.m - i)]

    def beta(self, i: int) -> int:
        return -self[2 * (self.m - i) + 1]


def _count_components(links) -> int:
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in links:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
    comps = len(parent)
    for u, v in links:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


def fatness(g: MultiGraph, d: TreeCutDecomposition) -> Fatness:
    sizes = adhesion_sizes(g, d)
    entries = []
    for i in range(g.m, 0, -1):
        heavy = [link for link, s in sizes.items() if s >= i]
        entries += [len(heavy), -_count_components(heavy)]
    return Fatness(entries)


class Order(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def compare_fatness(f1, f2) -> Order:
    if len(f1) != len(f2):
        raise InputError("fatnesses of different graphs are not comparable")
    t1, t2 = tuple(f1), tuple(f2)
    if t1 < t2:
        return Order.LESS
    return Order.EQUAL if t1 == t2 else Order.GREATER


def first_difference(f1, f2):
    """1-based position of the first differing fatness entry, or ``None``."""
    for i, (x, y) in enumerate(zip(f1, f2), 1):
        if x != y:
            return i
    return None


def trivial_decomposition(g: MultiGraph) -> TreeCutDecomposition:
    return TreeCutDecomposition({0: g.vertices}, ())


# -- editing helpers --------------------------------------------------------


def project(d: TreeCutDecomposition, keep) -> TreeCutDecomposition:
    """Same tree, bags intersected with ``keep``."""
    keep = frozenset(keep)
    return d.with_bags({t: bag & keep for t, bag in d.bags.items()})


def prune_empty_leaves(d: TreeCutDecomposition) -> TreeCutDecomposition:
    """Repeatedly drop leaves with empty bags (keeps at least one node).

    In a connected graph these are exactly the subtrees behind links of
    empty adhesion, so adhesions of the remaining links, the width and the
    fatness are unchanged.
    """
    bags = dict(d.bags)
    links = set(d.links)
    degree = {t: 0 for t in bags}
    for u, v in links:
        degree[u] += 1
        degree[v] += 1
    queue = deque(sorted(t for t in bags if degree[t] <= 1 and not bags[t]))
    while queue and len(bags) > 1:
        t = queue.popleft()
        if t not in bags or degree[t] > 1 or bags[t]:
            continue
        del bags[t]
        for link in [l for l in links if t in l]:
            links.discard(link)
            other = link[0] if link[1] == t else link[1]
            degree[other] -= 1
            if degree[other] <= 1 and not bags[other]:
                queue.append(other)
    return TreeCutDecomposition(bags, tuple(links))


def relabel(d: TreeCutDecomposition) -> TreeCutDecomposition:
    """Renumber nodes ``0..N-1`` in ascending order of their old ids."""
    new = {t: i for i, t in enumerate(d.nodes)}
    return TreeCutDecomposition(
        {new[t]: bag for t, bag in d.bags.items()},
        tuple((new[u], new[v]) for u, v in d.links),
    )


# -- JSON file format -------------------------------------------------------
# Bags list vertices with the same 1-based numbering as the graph text format.


def to_json(d: TreeCutDecomposition) -> str:
    doc = {
        "nodes": [{"id": t, "bag": sorted(v + 1 for v in bag)} for t, bag in d.bags.items()],
        "links": [[u, v] for u, v in d.links],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def from_json(text: str) -> TreeCutDecomposition:
    try:
        doc = json.loads(text)
        bags = {}
        for node in doc["nodes"]:
            t = node["id"]
            if not isinstance(t, int) or t in bags:
                raise ValueError(f"bad or repeated node id {t!r}")
            vs = node["bag"]
            if not all(isinstance(v, int) and v >= 1 for v in vs):
                raise ValueError(f"bad bag for node {t}")
            bags[t] = frozenset(v - 1 for v in vs)
        links = []
        for pair in doc["links"]:
            u, v = pair
            if not isinstance(u, int) or not isinstance(v, int):
                raise ValueError(f"bad link {pair!r}")
            links.append((u, v))
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"cannot parse decomposition: {exc}") from None
    return TreeCutDecomposition(bags, tuple(links))


def read_decomposition(path) -> TreeCutDecomposition:
    with open(path, encoding="utf-8") as fh:
        return from_json(fh.read())


def write_decomposition(d: TreeCutDecomposition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json(d))
