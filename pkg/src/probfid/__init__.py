"""Probability-fidelity tradeoff frontiers for targeted qubit operations."""

from .qstate import (
    PROB_FLOOR,
    apply_operation,
    bloch_fidelity,
    bloch_from_density,
    bloch_from_pure,
    density_from_bloch,
    pure_density,
    pure_from_bloch,
    pure_overlap,
    uhlmann_fidelity,
)
from .transform import (
    StatePair,
    build_balanced_kraus,
    max_feasible_probability_constructive,
    max_probability_mixed,
    max_probability_pure,
    symmetric_pair,
    symmetrize_operation,
)
from .tradeoff import (
    TradeoffCurve,
    TradeoffPoint,
    anchor_points,
    frontier_curve,
    tilted_pair,
    tradeoff_fidelity,
    worst_case_merit,
)
from .inversion import (
    admissible_set_floor,
    contraction_input_pair,
    contraction_matrix,
    inverter_matrix,
    quantum_inversion_frontier,
    semiclassical_fidelity,
    semiclassical_frontier,
    semiclassical_probability,
    semiclassical_worst_fidelity,
    semiclassical_worst_x,
)
from .oracle import (
    OracleReport,
    SearchConfig,
    probe_inversion_frontier,
    probe_transform_frontier,
    random_operation,
    refine_operation,
)

__all__ = [
    "PROB_FLOOR",
    "OracleReport",
    "SearchConfig",
    "StatePair",
    "TradeoffCurve",
    "TradeoffPoint",
    "anchor_points",
    "apply_operation",
    "admissible_set_floor",
    "bloch_fidelity",
    "bloch_from_density",
    "bloch_from_pure",
    "build_balanced_kraus",
    "contraction_input_pair",
    "contraction_matrix",
    "density_from_bloch",
    "frontier_curve",
    "inverter_matrix",
    "max_feasible_probability_constructive",
    "max_probability_mixed",
    "max_probability_pure",
    "probe_inversion_frontier",
    "probe_transform_frontier",
    "pure_density",
    "pure_from_bloch",
    "pure_overlap",
    "quantum_inversion_frontier",
    "random_operation",
    "refine_operation",
    "semiclassical_fidelity",
    "semiclassical_frontier",
    "semiclassical_probability",
    "semiclassical_worst_fidelity",
    "semiclassical_worst_x",
    "symmetric_pair",
    "symmetrize_operation",
    "tilted_pair",
    "tradeoff_fidelity",
    "uhlmann_fidelity",
    "worst_case_merit",
]
