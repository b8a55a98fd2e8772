"""Segregation, the fatness-decreasing improvement step, and leanification.

``leanify_3ec`` repeats ``improvement_step`` on a 3-edge-connected graph
until no certificate is left. ``leanify`` handles arbitrary connected graphs
by splitting along minimum cuts of size at most two, leanifying both sides
and joining the results with one link.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantError, IterationLimitError, PreconditionError
from .leanness import DEFAULT_MAX_ADH_ENUM, Certificate, find_minimal_certificate
from .multigraph import (
    MultiGraph,
    connected_components,
    edges_between,
    global_min_cut,
    is_connected,
    is_k_edge_connected,
    split_along_cut,
)
from .tcd import (
    Order,
    TreeCutDecomposition,
    adhesion_sizes,
    all_adhesions,
    compare_fatness,
    fatness,
    first_difference,
    project,
    prune_empty_leaves,
    relabel,
    trivial_decomposition,
    validate,
    width,
)


def _link(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SegregationMap:
    node_copies: dict  # original node -> (copy in U1, copy in U2)
    link_copies: dict  # original link -> (copy in U1, copy in U2)
    s1: int
    s2: int
    a2_prime: tuple
    b1_prime: tuple
    join: tuple
    hat: dict  # link of U (except join) -> original link


def _near_end(d, link, other):
    """Endpoint of ``link`` on the side of ``T - link`` holding ``other``."""
    side = d.side(link, link[0])
    return link[0] if other[0] in side and other[1] in side else link[1]


def segregation(g: MultiGraph, d: TreeCutDecomposition, a, b, V1, V2):
    """The ``(a, b, V1, V2)``-segregation of ``d``.

    Copy 1 keeps the vertices of ``V1`` and subdivides ``b``; copy 2 keeps
    ``V2`` and subdivides ``a``; the two subdivision nodes are joined. When
    ``a == b`` both copies put the unprimed half on the smaller endpoint.
    """
    V1, V2 = frozenset(V1), frozenset(V2)
    if V1 & V2 or (V1 | V2) != g.vertices:
        raise PreconditionError("(V1, V2) must partition the vertex set")
    a, b = _link(*a), _link(*b)
    links = set(d.links)
    if a not in links or b not in links:
        raise PreconditionError("a and b must be links of the decomposition")
    order = d.nodes
    n = len(order)
    c1 = {t: i for i, t in enumerate(order)}
    c2 = {t: n + i for i, t in enumerate(order)}
    s1, s2 = 2 * n, 2 * n + 1
    if a == b:
        near_b = near_a = a[0]
    else:
        near_b = _near_end(d, b, a)
        near_a = _near_end(d, a, b)
    far_b = b[1] if near_b == b[0] else b[0]
    far_a = a[1] if near_a == a[0] else a[0]

    new_links = []
    link_copies = {}
    hat = {}
    for e in d.links:
        u, v = e
        if e == b:
            e1 = _link(c1[near_b], s1)
            b1p = _link(s1, c1[far_b])
            new_links += [e1, b1p]
            hat[b1p] = b
        else:
            e1 = _link(c1[u], c1[v])
            new_links.append(e1)
        if e == a:
            e2 = _link(c2[near_a], s2)
            a2p = _link(s2, c2[far_a])
            new_links += [e2, a2p]
            hat[a2p] = a
        else:
            e2 = _link(c2[u], c2[v])
            new_links.append(e2)
        link_copies[e] = (e1, e2)
        hat[e1] = e
        hat[e2] = e
    join = _link(s1, s2)
    new_links.append(join)

    bags = {}
    for t, bag in d.bags.items():
        bags[c1[t]] = bag & V1
        bags[c2[t]] = bag & V2
    bags[s1] = frozenset()
    bags[s2] = frozenset()
    seg = SegregationMap(
        {t: (c1[t], c2[t]) for t in order}, link_copies, s1, s2, a2p, b1p, join, hat
    )
    return TreeCutDecomposition(bags, tuple(new_links)), seg


@dataclass(frozen=True)
class StepResult:
    decomposition: TreeCutDecomposition
    certificate: Certificate
    sides: tuple  # (V(G_A), V(G_B))
    map: SegregationMap
    sizes_before: dict
    sizes_after: dict
    width_before: int
    width_after: int
    fatness_before: tuple
    fatness_after: tuple

    def copy_sizes(self, e):
        """``(|adh(e)|, |adh(e_1)|, |adh(e_2)|)`` for an original link."""
        e = _link(*e)
        e1, e2 = self.map.link_copies[e]
        return self.sizes_before[e], self.sizes_after[e1], self.sizes_after[e2]


def _fail(message):
    raise InvariantError(message)


def _step(g: MultiGraph, d: TreeCutDecomposition, max_adh_enum) -> StepResult | None:
    cert = find_minimal_certificate(g, d, max_adh_enum)
    if cert is None:
        return None
    F = cert.cut
    comps = connected_components(g.without_edges(F))
    if len(comps) != 2:
        _fail(f"G - F has {len(comps)} components, expected exactly two")

    def owns(comp, edges):
        return all(e in F or (g.edges[e][0] in comp and g.edges[e][1] in comp) for e in edges)

    homes = [c for c in comps if owns(c, cert.A)]
    if len(homes) != 1:
        _fail("cannot tell which side of F holds A")
    side_a = homes[0]
    side_b = g.vertices - side_a
    if not owns(side_b, cert.B):
        _fail("B is not on the far side of F")

    new, seg = segregation(g, d, cert.a, cert.b, side_a, side_b)
    problem = validate(g, new)
    if problem:
        _fail(f"segregation is not a tree-cut decomposition: {problem}")
    before = adhesion_sizes(g, d)
    after = adhesion_sizes(g, new)
    if all_adhesions(g, new)[seg.join] != edges_between(g, side_a, side_b):
        _fail("adhesion of the joining link differs from E(V1, V2)")
    for link, size in after.items():
        if link != seg.join and size > before[seg.hat[link]]:
            _fail(f"copy {link} of {seg.hat[link]} has a larger adhesion")
    w0, w1 = width(g, d), width(g, new)
    if w1 > w0:
        _fail(f"width grew from {w0} to {w1}")
    f0, f1 = fatness(g, d), fatness(g, new)
    if compare_fatness(f1, f0) is not Order.LESS:
        _fail("fatness did not decrease")
    return StepResult(new, cert, (side_a, side_b), seg, before, after, w0, w1, f0, f1)


def improvement_step_detailed(
    g: MultiGraph, d: TreeCutDecomposition, max_adh_enum: int = DEFAULT_MAX_ADH_ENUM
) -> StepResult | None:
    if not is_k_edge_connected(g, 3):
        raise PreconditionError("improvement_step requires a 3-edge-connected graph")
    return _step(g, d, max_adh_enum)


def improvement_step(g, d, max_adh_enum: int = DEFAULT_MAX_ADH_ENUM):
    """A decomposition of no larger width and strictly smaller fatness, or
    ``None`` when ``d`` is already lean."""
    step = improvement_step_detailed(g, d, max_adh_enum)
    return None if step is None else step.decomposition


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    run: int
    k: int
    distance: int
    cut_size: int
    width: int
    first_diff: int
    fatness_before: tuple = field(repr=False)
    fatness_after: tuple = field(repr=False)

    def to_tsv(self) -> str:
        return "\t".join(
            str(x)
            for x in (self.iteration, self.k, self.distance, self.cut_size, self.width, self.first_diff)
        )


def default_max_iters(g, d) -> int:
    return 10 * (2 * g.m) * (width(g, d) + 1)


def leanify_3ec(
    g: MultiGraph,
    d: TreeCutDecomposition,
    max_iters: int | None = None,
    max_adh_enum: int = DEFAULT_MAX_ADH_ENUM,
    trace: list | None = None,
) -> TreeCutDecomposition:
    """Improve ``d`` until it is lean. Width never grows and the fatness
    strictly decreases at every step.

    Between steps, leaves with empty bags are dropped; they only carry empty
    adhesions, so neither width nor fatness changes.
    """
    if not is_k_edge_connected(g, 3):
        raise PreconditionError("leanify_3ec requires a 3-edge-connected graph")
    problem = validate(g, d)
    if problem:
        raise PreconditionError(f"invalid decomposition: {problem}")
    if max_iters is None:
        max_iters = default_max_iters(g, d)
    trace = [] if trace is None else trace
    run = 1 + max((r.run for r in trace), default=0)
    done = 0
    while True:
        step = _step(g, d, max_adh_enum)
        if step is None:
            return d
        if done >= max_iters:
            raise IterationLimitError(
                f"no lean decomposition after {max_iters} improvement steps", d, trace
            )
        done += 1
        nxt = relabel(prune_empty_leaves(step.decomposition))
        if fatness(g, nxt) != step.fatness_after:
            _fail("pruning empty leaves changed the fatness")
        trace.append(
            TraceRecord(
                iteration=len(trace) + 1,
                run=run,
                k=step.certificate.k,
                distance=step.certificate.distance,
                cut_size=len(step.certificate.cut),
                width=step.width_after,
                first_diff=first_difference(step.fatness_before, step.fatness_after),
                fatness_before=step.fatness_before,
                fatness_after=step.fatness_after,
            )
        )
        d = nxt


def _join(g, s, parts):
    """Disjoint union of the two side decompositions plus the link
    ``t1 t2`` between the nodes holding ``x1`` and ``x2``."""
    (g1, r1, x1), (g2, r2, x2) = parts
    r1, r2 = relabel(r1), relabel(r2)
    off = len(r1.bags)
    bags = dict(r1.bags)
    bags.update({t + off: bag for t, bag in r2.bags.items()})
    t1 = r1.node_of[x1]
    t2 = r2.node_of[x2] + off
    links = list(r1.links) + [(u + off, v + off) for u, v in r2.links] + [(t1, t2)]
    merged = TreeCutDecomposition(bags, tuple(links))

    sizes = adhesion_sizes(g, merged)
    if all_adhesions(g, merged)[_link(t1, t2)] != s.cut:
        _fail("adhesion of the joining link is not the split cut")
    for gi, ri, shift in ((g1, r1, 0), (g2, r2, off)):
        for (u, v), size in adhesion_sizes(gi, ri).items():
            if sizes[(u + shift, v + shift)] != size:
                _fail("adhesion size changed when translating back the virtual edge")
    return merged


def leanify(
    g: MultiGraph,
    d: TreeCutDecomposition | None = None,
    max_iters: int | None = None,
    max_adh_enum: int = DEFAULT_MAX_ADH_ENUM,
    trace: list | None = None,
    events: list | None = None,
) -> TreeCutDecomposition:
    """A lean decomposition of ``g`` whose width is at most that of ``d``.

    ``events`` (if given) collects one line per recursion decision.
    """
    if not is_connected(g):
        raise PreconditionError("leanify requires a connected graph")
    d = trivial_decomposition(g) if d is None else d
    problem = validate(g, d)
    if problem:
        raise PreconditionError(f"invalid decomposition: {problem}")
    events = [] if events is None else events
    trace = [] if trace is None else trace
    w = width(g, d)
    if g.n <= w:
        events.append(f"base case: {g.n} vertices <= width {w}, single bag")
        return trivial_decomposition(g)
    s = global_min_cut(g)
    if len(s.cut) > 2:
        events.append(f"3-edge-connected part on {g.n} vertices: improvement loop")
        return leanify_3ec(g, d, max_iters, max_adh_enum, trace)

    events.append(f"split along {len(s.cut)}-edge cut {sorted(s.cut)}")
    split = split_along_cut(g, s)
    parts = []
    for gi, xi in ((split.g1, split.x1), (split.g2, split.x2)):
        di = prune_empty_leaves(project(d, gi.vertices))
        if width(gi, di) > w:
            _fail("projection onto one side increased the width")
        ri = leanify(gi, di, max_iters, max_adh_enum, trace, events)
        parts.append((gi, ri, xi))
    merged = _join(g, s, parts)
    if width(g, merged) > w:
        _fail("joined decomposition is wider than the input")
    return merged
