"""State-vector QAOA simulator for max-cut with compressed cost-layer kernels."""

from .circuit import (
    BACKENDS,
    QaoaParams,
    expectation,
    gate_counts,
    init_uniform,
    sample,
    simulate,
)
from .cost import (
    CompressedCostPlan,
    apply_cost_batched,
    apply_cost_bitwise,
    apply_cost_compressed,
    cut_edge_count_bitwise,
    plan_for,
    total_rotation_unweighted,
    total_rotation_weighted,
)
from .graph import (
    Cut,
    Graph,
    brute_force_max_cut,
    cut_value,
    parse_edge_list,
    random_regular_graph,
    row_mask_of,
)
from .optimize import OptimizeReport, approximation_ratio, optimize
from .state import (
    StateVector,
    apply_h,
    apply_rx,
    apply_rzz,
    init_zero_state,
    max_abs_diff,
)

__all__ = [
    "BACKENDS",
    "CompressedCostPlan",
    "Cut",
    "Graph",
    "OptimizeReport",
    "QaoaParams",
    "StateVector",
    "apply_cost_batched",
    "apply_cost_bitwise",
    "apply_cost_compressed",
    "apply_h",
    "apply_rx",
    "apply_rzz",
    "approximation_ratio",
    "brute_force_max_cut",
    "cut_edge_count_bitwise",
    "cut_value",
    "expectation",
    "gate_counts",
    "init_uniform",
    "init_zero_state",
    "max_abs_diff",
    "optimize",
    "parse_edge_list",
    "plan_for",
    "random_regular_graph",
    "row_mask_of",
    "sample",
    "simulate",
    "total_rotation_unweighted",
    "total_rotation_weighted",
]
