"""Rank, horizontality and Pfaffian integrability diagnostics for chart coframes."""

from fbgravity.frobenius.diagnostics import (
    CoframeField,
    EquivarianceResiduals,
    FibrationDiagnostics,
    check_fibration_hypotheses,
    coframe_row,
    corrupted_field,
    equivariance_equivalence_check,
    fiber_generators,
    lifted_field,
    maurer_cartan_row,
    normalization_deviation,
)

__all__ = [
    "CoframeField",
    "EquivarianceResiduals",
    "FibrationDiagnostics",
    "check_fibration_hypotheses",
    "coframe_row",
    "corrupted_field",
    "equivariance_equivalence_check",
    "fiber_generators",
    "lifted_field",
    "maurer_cartan_row",
    "normalization_deviation",
]
