"""Hot inner loops: augmenting-path max flow, the linking network of an
edge-set pair, violation search over candidate subsets, and batched width
evaluation for the brute-force oracle.

Every function decorated with ``jit`` runs compiled under numba and as plain
Python otherwise (see ``_accel``). ``assignment_widths`` has a separate
vectorized numpy body for the fallback because a Python loop over millions
of assignments is too slow.
"""
import numpy as np

from ._accel import USE_NUMBA, jit


@jit
def max_flow(n_nodes, tail, head, cap_fwd, cap_bwd, s, t, limit):
    """Edmonds-Karp on a network given as an edge list.

    Edge ``i`` carries up to ``cap_fwd[i]`` units tail->head and
    ``cap_bwd[i]`` units head->tail. Stops once ``limit`` units are routed.

    Returns ``(value, flow, reach)``: ``flow[i]`` is the signed net flow on
    edge ``i`` (positive means tail->head) and ``reach`` marks the nodes
    reachable from ``s`` in the final residual network. ``reach`` is only a
    minimum cut when the flow is maximum, i.e. when ``value < limit``.
    """
    m = tail.shape[0]
    n_arcs = 2 * m
    deg = np.zeros(n_nodes + 1, np.int64)
    for i in range(m):
        deg[tail[i] + 1] += 1
        deg[head[i] + 1] += 1
    for v in range(n_nodes):
        deg[v + 1] += deg[v]
    start = deg.copy()
    adj = np.empty(n_arcs, np.int64)
    fill = start[:-1].copy()
    for i in range(m):
        adj[fill[tail[i]]] = 2 * i
        fill[tail[i]] += 1
        adj[fill[head[i]]] = 2 * i + 1
        fill[head[i]] += 1

    flow = np.zeros(m, np.int64)
    parent = np.empty(n_nodes, np.int64)
    queue = np.empty(n_nodes, np.int64)
    value = 0
    while value < limit:
        for v in range(n_nodes):
            parent[v] = -1
        parent[s] = n_arcs  # sentinel: visited, no incoming arc
        qh = 0
        qt = 0
        queue[qt] = s
        qt += 1
        while qh < qt and parent[t] == -1:
            u = queue[qh]
            qh += 1
            for p in range(start[u], start[u + 1]):
                arc = adj[p]
                i = arc >> 1
                if arc & 1 == 0:
                    w = head[i]
                    res = cap_fwd[i] - flow[i]
                else:
                    w = tail[i]
                    res = cap_bwd[i] + flow[i]
                if res > 0 and parent[w] == -1:
                    parent[w] = arc
                    queue[qt] = w
                    qt += 1
        if parent[t] == -1:
            break
        bottleneck = limit - value
        v = t
        while v != s:
            arc = parent[v]
            i = arc >> 1
            if arc & 1 == 0:
                res = cap_fwd[i] - flow[i]
                v = tail[i]
            else:
                res = cap_bwd[i] + flow[i]
                v = head[i]
            if res < bottleneck:
                bottleneck = res
        v = t
        while v != s:
            arc = parent[v]
            i = arc >> 1
            if arc & 1 == 0:
                flow[i] += bottleneck
                v = tail[i]
            else:
                flow[i] -= bottleneck
                v = head[i]
        value += bottleneck

    reach = np.zeros(n_nodes, np.bool_)
    reach[s] = True
    qh = 0
    qt = 0
    queue[qt] = s
    qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for p in range(start[u], start[u + 1]):
            arc = adj[p]
            i = arc >> 1
            if arc & 1 == 0:
                w = head[i]
                res = cap_fwd[i] - flow[i]
            else:
                w = tail[i]
                res = cap_bwd[i] + flow[i]
            if res > 0 and not reach[w]:
                reach[w] = True
                queue[qt] = w
                qt += 1
    return value, flow, reach


@jit
def linking_network(n, eu, ev, in_a, in_b, weight):
    """Subdivided network whose s-t flows are edge-disjoint linking paths.

    Graph vertices keep their indices ``0..n-1``. Every edge in exactly one
    of A, B is split through a gadget node joined to the source (A) or the
    sink (B); edges in both are left out and counted in ``shared``, since
    each one is a linking path on its own. All capacities equal the edge's
    ``weight``.

    Returns ``(n_nodes, tail, head, cap_fwd, cap_bwd, s, t, owner, shared)``
    where ``owner[i]`` is the graph edge index network edge ``i`` stands for.
    """
    m = eu.shape[0]
    gadget = np.full(m, -1, np.int64)
    n_nodes = n
    n_edges = 0
    shared = 0
    for e in range(m):
        if in_a[e] and in_b[e]:
            shared += 1
        elif in_a[e] or in_b[e]:
            gadget[e] = n_nodes
            n_nodes += 1
            n_edges += 3
        else:
            n_edges += 1
    s = n_nodes
    t = n_nodes + 1
    n_nodes += 2
    tail = np.empty(n_edges, np.int64)
    head = np.empty(n_edges, np.int64)
    cap_fwd = np.empty(n_edges, np.int64)
    cap_bwd = np.empty(n_edges, np.int64)
    owner = np.empty(n_edges, np.int64)
    j = 0
    for e in range(m):
        if in_a[e] and in_b[e]:
            continue
        c = weight[e]
        if gadget[e] < 0:
            tail[j] = eu[e]
            head[j] = ev[e]
            cap_fwd[j] = c
            cap_bwd[j] = c
            owner[j] = e
            j += 1
            continue
        g = gadget[e]
        tail[j] = eu[e]
        head[j] = g
        cap_fwd[j] = c
        cap_bwd[j] = c
        owner[j] = e
        j += 1
        tail[j] = g
        head[j] = ev[e]
        cap_fwd[j] = c
        cap_bwd[j] = c
        owner[j] = e
        j += 1
        if in_a[e]:
            tail[j] = s
            head[j] = g
        else:
            tail[j] = g
            head[j] = t
        cap_fwd[j] = c
        cap_bwd[j] = 0
        owner[j] = e
        j += 1
    return n_nodes, tail, head, cap_fwd, cap_bwd, s, t, owner, shared


@jit
def linking_count(n, eu, ev, in_a, in_b, limit):
    """Maximum number of edge-disjoint linking paths, capped at ``limit``."""
    weight = np.ones(eu.shape[0], np.int64)
    n_nodes, tail, head, cf, cb, s, t, owner, shared = linking_network(
        n, eu, ev, in_a, in_b, weight
    )
    if shared >= limit:
        return limit
    value, flow, reach = max_flow(n_nodes, tail, head, cf, cb, s, t, limit - shared)
    return shared + value


@jit
def first_violation(n, eu, ev, a_sets, b_sets, k):
    """First ``(i, j)`` in row-major order with fewer than ``k`` linking
    paths between edge sets ``a_sets[i]`` and ``b_sets[j]``; ``(-1, -1)``
    when every pair is linked.

    Rows hold edge indices. A row of ``a_sets`` that cannot reach the union
    of all ``b_sets`` rows with ``k`` paths makes every ``j`` a violation, so
    that check runs first and the answer is then ``j = 0``.
    """
    m = eu.shape[0]
    in_a = np.zeros(m, np.bool_)
    in_b = np.zeros(m, np.bool_)
    b_union = np.zeros(m, np.bool_)
    for j in range(b_sets.shape[0]):
        for x in range(b_sets.shape[1]):
            b_union[b_sets[j, x]] = True
    for i in range(a_sets.shape[0]):
        in_a[:] = False
        for x in range(a_sets.shape[1]):
            in_a[a_sets[i, x]] = True
        if linking_count(n, eu, ev, in_a, b_union, k) < k:
            return i, 0
        for j in range(b_sets.shape[0]):
            in_b[:] = False
            for x in range(b_sets.shape[1]):
                in_b[b_sets[j, x]] = True
            if linking_count(n, eu, ev, in_a, in_b, k) < k:
                return i, j
    return -1, -1


@jit
def _assignment_widths_loop(assign, eu, ev, link_a, link_b, below, n_tree):
    n_rows = assign.shape[0]
    n_links = link_a.shape[0]
    m = eu.shape[0]
    out = np.empty(n_rows, np.int64)
    term = np.empty(n_tree, np.int64)
    for r in range(n_rows):
        for t in range(n_tree):
            term[t] = 0
        for x in range(assign.shape[1]):
            term[assign[r, x]] += 1
        best = 0
        for l in range(n_links):
            size = 0
            for e in range(m):
                if below[l, assign[r, eu[e]]] != below[l, assign[r, ev[e]]]:
                    size += 1
            if size > best:
                best = size
            if size > 2:
                term[link_a[l]] += 1
                term[link_b[l]] += 1
        for t in range(n_tree):
            if term[t] > best:
                best = term[t]
        out[r] = best
    return out


def _assignment_widths_numpy(assign, eu, ev, link_a, link_b, below, n_tree):
    n_rows = assign.shape[0]
    counts = np.zeros((n_rows, n_tree), np.int64)
    rows = np.repeat(np.arange(n_rows), assign.shape[1])
    np.add.at(counts, (rows, assign.ravel()), 1)
    best = np.zeros(n_rows, np.int64)
    if link_a.shape[0]:
        side = below[:, assign]  # links x rows x vertices
        adh = (side[:, :, eu] != side[:, :, ev]).sum(axis=2)  # links x rows
        best = adh.max(axis=0)
        bold = (adh > 2).astype(np.int64)
        for l in range(link_a.shape[0]):
            counts[:, link_a[l]] += bold[l]
            counts[:, link_b[l]] += bold[l]
    return np.maximum(best, counts.max(axis=1))


def assignment_widths(assign, eu, ev, link_a, link_b, below, n_tree):
    """Width of each row of ``assign`` (vertex -> tree node) on a fixed tree.

    ``below[l, t]`` tells whether node ``t`` lies on the ``link_b[l]`` side
    of link ``l``.
    """
    assign = np.ascontiguousarray(assign, dtype=np.int64)
    if USE_NUMBA:
        return _assignment_widths_loop(assign, eu, ev, link_a, link_b, below, n_tree)
    return _assignment_widths_numpy(assign, eu, ev, link_a, link_b, below, n_tree)
