"""Linear arrangements of series-parallel graphs over minimal SP-trees."""
from .analysis import (BoundReport, SDecomposition, alg_upper_bound_rhs, amortized_cost,
                       check_cost_decomposition, check_s_decomposition, component_bound_report,
                       cost_ledger, delta, exclusive_cost, opt_lower_bound_rhs, restrict,
                       restricted_cost, s_decomposition)
from .arrange import arrange, arrange_parallel, arrange_series, arrange_sns
from .graph import (Arrangement, DisconnectedInput, Graph, GraphError, arrangement_cost,
                    edge_length, max_degree, parse_edge_list, validate_arrangement)
from .harness import GenParams, generate, run_bench, run_verify
from .oracle import TooLarge, brute_force_minla, exact_minla
from .recognize import BadTerminals, NotSeriesParallel, decompose, recognize_terminals
from .sptree import (ComponentView, NotMinimal, SPNode, SPTree, TreeError, TreeSyntaxError,
                     component_census, expand, minimize, parse_tree, serialize_tree,
                     validate_minimal)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BadTerminals",
    "BoundReport",
    "ComponentView",
    "DisconnectedInput",
    "GenParams",
    "Graph",
    "GraphError",
    "NotMinimal",
    "NotSeriesParallel",
    "SDecomposition",
    "SPNode",
    "SPTree",
    "TooLarge",
    "TreeError",
    "TreeSyntaxError",
    "alg_upper_bound_rhs",
    "amortized_cost",
    "arrange",
    "arrange_parallel",
    "arrange_series",
    "arrange_sns",
    "arrangement_cost",
    "brute_force_minla",
    "check_cost_decomposition",
    "check_s_decomposition",
    "component_bound_report",
    "component_census",
    "cost_ledger",
    "decompose",
    "delta",
    "edge_length",
    "exact_minla",
    "exclusive_cost",
    "expand",
    "generate",
    "max_degree",
    "minimize",
    "opt_lower_bound_rhs",
    "parse_edge_list",
    "parse_tree",
    "recognize_terminals",
    "restrict",
    "restricted_cost",
    "run_bench",
    "run_verify",
    "s_decomposition",
    "serialize_tree",
    "validate_arrangement",
    "validate_minimal",
]
