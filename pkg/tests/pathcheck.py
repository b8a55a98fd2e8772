"""Independent checks of linking paths and cuts used by several tests."""
import itertools

from leancut.multigraph import connected_components


def is_linking_path(g, path, A, B):
    A, B = set(A), set(B)
    if not path or path[0] not in A or path[-1] not in B:
        return False
    if len(path) == 1:
        return True
    if len(set(path)) != len(path) or any(e in A | B for e in path[1:-1]):
        return False
    # inner vertices x_1..x_{r-1} with x_i shared by e_i and e_{i+1}, all distinct
    for start in g.edges[path[0]]:
        x = start
        inner = []
        ok = True
        for e in path:
            u, v = g.edges[e]
            if x not in (u, v):
                ok = False
                break
            x = v if x == u else u
            inner.append(x)
        inner = inner[:-1]
        if ok and len(set(inner)) == len(inner):
            return True
    return False


def is_cut(g, F, A, B):
    F = set(F)
    a_rest, b_rest = set(A) - F, set(B) - F
    for comp in connected_components(g.without_edges(F)):
        inside = {e for e, (u, v) in g.edges.items() if u in comp and e not in F}
        if inside & a_rest and inside & b_rest:
            return False
    return True


def all_min_cuts(g, A, B):
    """Every minimum (A, B)-cut, by brute force over edge subsets."""
    ids = sorted(g.edges)
    for size in range(len(ids) + 1):
        found = [frozenset(F) for F in itertools.combinations(ids, size) if is_cut(g, F, A, B)]
        if found:
            return found
    return []
