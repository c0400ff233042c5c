"""Dangerous directed graphs: fixed-point-free rule families and their witnesses.

A directed graph is *dangerous* when some family of local update rules
respecting it (each coordinate reading only its out-neighbors) has no fixed
point.  Finite graphs are dangerous exactly when they contain a directed
cycle, and this package decides that with machine-checkable evidence both
ways.  Locally finite infinite graphs are handled through generator
descriptions, finite truncations, and prefix-refined fixed points; the
classical acyclic-but-dangerous graph gets its own symbolic analysis.
"""
from .assignment import (
    Assignment,
    DyadicDistance,
    EventuallyConstantAssignment,
    enumerate_assignments,
    metric_distance,
    same_outside,
)
from .danger import (
    DangerVerdict,
    VerificationSummary,
    YabloReport,
    all_digraphs,
    brute_force_dangerous,
    classify,
    classify_generator,
    cycle_witness_family,
    delete_edge,
    delete_vertex,
    verify_small,
    yablo_report,
)
from .digraph import (
    DirectedGraph,
    EdgeListParseError,
    find_cycle,
    format_edge_list,
    has_directed_cycle,
    load_edge_list,
    parse_edge_list,
)
from .fixedpoint import (
    ClosureBudgetError,
    FixedPointReport,
    PrefixFixedPointRequest,
    PropagationCycleError,
    dag_fixed_point,
    find_fixed_points,
    is_fixed_point,
    prefix_fixed_point,
    refine_to_fixed_point,
)
from .generators import (
    BINARY_TREE,
    RAY,
    YABLO,
    GeneratorGraph,
    NotLocallyFiniteError,
    Truncation,
    get_generator,
    is_locally_finite,
    is_registry_name,
    registry_names,
    shifted_cycle,
    truncate,
)
from .rules import (
    RNG_NAME,
    YABLO_RULES,
    LocalRule,
    LocalRuleFamily,
    LocallyFiniteRules,
    RawFunctionTable,
    YabloRules,
    constant_table,
    coordinate_table,
    count_families,
    enumerate_families,
    evaluate,
    evaluate_coordinate,
    family_from_json_dict,
    family_to_json_dict,
    generator_rules,
    is_independent_of,
    load_family,
    minimal_dependency_graph,
    minimal_support,
    projection_table,
    respects,
    sample_family,
    save_family,
    to_raw,
    yablo_image,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BINARY_TREE",
    "RAY",
    "RNG_NAME",
    "YABLO",
    "YABLO_RULES",
    "DangerVerdict",
    "DirectedGraph",
    "DyadicDistance",
    "EdgeListParseError",
    "EventuallyConstantAssignment",
    "FixedPointReport",
    "GeneratorGraph",
    "LocalRule",
    "LocalRuleFamily",
    "LocallyFiniteRules",
    "NotLocallyFiniteError",
    "PrefixFixedPointRequest",
    "PropagationCycleError",
    "ClosureBudgetError",
    "RawFunctionTable",
    "Truncation",
    "VerificationSummary",
    "YabloReport",
    "YabloRules",
    "all_digraphs",
    "brute_force_dangerous",
    "classify",
    "classify_generator",
    "constant_table",
    "coordinate_table",
    "count_families",
    "cycle_witness_family",
    "dag_fixed_point",
    "delete_edge",
    "delete_vertex",
    "enumerate_assignments",
    "enumerate_families",
    "evaluate",
    "evaluate_coordinate",
    "family_from_json_dict",
    "family_to_json_dict",
    "find_cycle",
    "find_fixed_points",
    "format_edge_list",
    "generator_rules",
    "get_generator",
    "has_directed_cycle",
    "is_fixed_point",
    "is_independent_of",
    "is_locally_finite",
    "is_registry_name",
    "load_edge_list",
    "load_family",
    "metric_distance",
    "minimal_dependency_graph",
    "minimal_support",
    "parse_edge_list",
    "prefix_fixed_point",
    "projection_table",
    "refine_to_fixed_point",
    "registry_names",
    "respects",
    "same_outside",
    "sample_family",
    "save_family",
    "shifted_cycle",
    "to_raw",
    "truncate",
    "verify_small",
    "yablo_image",
    "yablo_report",
]
