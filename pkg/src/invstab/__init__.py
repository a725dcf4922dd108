"""Stability numbers of graph invariants under vertex and edge deletion,
with decomposition formulas and bounds for disjoint unions, verified by
brute force over small-graph corpora."""

from .bounds import NotApplicable
from .codecs import (
    Graph6Error,
    decode_graph6,
    encode_edge_list,
    encode_graph6,
    parse_edge_list,
)
from .graphs import (
    Graph,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    is_connected,
    path_graph,
)
from .invariants import INVARIANTS, DomainError, Invariant, get_invariant
from .stability import (
    BudgetError,
    DEFAULT_POLICY,
    INFINITY,
    SearchPolicy,
    StabilityResult,
    covering_number,
    edge_stability,
    threshold_edge_stability,
    threshold_vertex_stability,
    vertex_stability,
)
from .values import ExtRational

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "DEFAULT_POLICY",
    "DomainError",
    "ExtRational",
    "Graph",
    "Graph6Error",
    "INFINITY",
    "INVARIANTS",
    "Invariant",
    "NotApplicable",
    "SearchPolicy",
    "StabilityResult",
    "complete_graph",
    "components",
    "covering_number",
    "cycle_graph",
    "decode_graph6",
    "disjoint_union",
    "edge_stability",
    "empty_graph",
    "encode_edge_list",
    "encode_graph6",
    "get_invariant",
    "induced_subgraph",
    "is_connected",
    "parse_edge_list",
    "path_graph",
    "threshold_edge_stability",
    "threshold_vertex_stability",
    "vertex_stability",
]
