from src.symmetry.critical import (
    CriticalPointResult,
    check_critical_relation,
    classify,
    find_critical_points,
)
from src.symmetry.lemma import (
    PositionDecomposition,
    check_lemma,
    distance_half_sq,
    lemma_flow_derivative,
    position_decomposition,
)
from src.symmetry.verdict import SymmetryVerdict, WitnessPoint, verify_symmetry

__all__ = [
    "CriticalPointResult",
    "PositionDecomposition",
    "SymmetryVerdict",
    "WitnessPoint",
    "check_critical_relation",
    "check_lemma",
    "classify",
    "distance_half_sq",
    "find_critical_points",
    "lemma_flow_derivative",
    "position_decomposition",
    "verify_symmetry",
]
