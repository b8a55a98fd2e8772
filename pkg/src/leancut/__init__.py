"""Lean tree-cut decompositions of multigraphs."""
from .errors import (
    ContractError,
    InputError,
    InvariantError,
    IterationLimitError,
    LeancutError,
    ParseError,
    PreconditionError,
    ResourceError,
    UndecidedError,
)
from .improve import improvement_step, leanify, leanify_3ec, segregation
from .leanness import Certificate, find_minimal_certificate, is_lean, is_p_excessive, violates
from .linkage import d_ab, linking_count, max_linking_paths, min_cut_lex
from .multigraph import (
    MultiGraph,
    connected_components,
    global_min_cut,
    is_connected,
    is_k_edge_connected,
    parse_graph,
    read_graph,
    split_along_cut,
)
from .oracle import OracleConfig, brute_force_tcw, naive_is_lean, naive_max_linking_paths
from .tcd import (
    TreeCutDecomposition,
    adhesion,
    all_adhesions,
    compare_fatness,
    fatness,
    from_json,
    to_json,
    trivial_decomposition,
    validate,
    width,
    width_3ec,
)

__version__ = "0.1.0"
