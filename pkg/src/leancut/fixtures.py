"""Small named graphs and decompositions used by the tests and the docs."""
from .multigraph import MultiGraph
from .tcd import TreeCutDecomposition

A1, A2, B1, B2 = 0, 1, 2, 3


def c4() -> MultiGraph:
    """Cycle 1-2-3-4; edge ids e12=0, e23=1, e34=2, e41=3."""
    return MultiGraph.from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def k4() -> MultiGraph:
    return MultiGraph.from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def theta3() -> MultiGraph:
    return MultiGraph.from_edge_list(2, [(0, 1)] * 3)


def interleave4() -> MultiGraph:
    """a1a2 x3 (ids 0-2), b1b2 x3 (ids 3-5), bridge a1b1 (id 6)."""
    return MultiGraph.from_edge_list(4, [(A1, A2)] * 3 + [(B1, B2)] * 3 + [(A1, B1)])


def barbell3ec() -> MultiGraph:
    """a1a2 x5 (ids 0-4), b1b2 x5 (ids 5-9), a1b1 x3 (ids 10-12)."""
    return MultiGraph.from_edge_list(4, [(A1, A2)] * 5 + [(B1, B2)] * 5 + [(A1, B1)] * 3)


def interleaved() -> TreeCutDecomposition:
    """Path n1-n2-n3-n4 with bags {a1}, {b1}, {a2}, {b2}."""
    return TreeCutDecomposition(
        {1: {A1}, 2: {B1}, 3: {A2}, 4: {B2}}, ((1, 2), (2, 3), (3, 4))
    )


def two_bags(first, second) -> TreeCutDecomposition:
    return TreeCutDecomposition({0: set(first), 1: set(second)}, ((0, 1),))


GRAPHS = {
    "C4": c4,
    "K4": k4,
    "Theta3": theta3,
    "interleave4": interleave4,
    "barbell3ec": barbell3ec,
}
