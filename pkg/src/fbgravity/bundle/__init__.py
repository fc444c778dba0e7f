"""The lifted coframe, the momentum form and the field equations on the frame bundle."""

from fbgravity.bundle.gauge import (
    GaugeMap,
    MomentumShiftReport,
    admissible_shift,
    constant_gauge,
    covariance_residuals,
    gauge_conjugation_residuals,
    gauge_transform,
    head_preservation_residual,
    matched_point,
    momentum_shift_check,
)
from fbgravity.bundle.hvdw import (
    RESIDUAL_FAMILIES,
    LegendreValue,
    PointEvaluation,
    ResidualSet,
    ThetaDensity,
    evaluate_point,
    hvdw_residuals,
    legendre_W,
    legendre_constraint_heads,
    theta_density,
    torsion_equation_pair,
)
from fbgravity.bundle.lift import (
    CurvatureDecomposition,
    LiftedFields,
    curvature_decomposition,
    lift,
    lift_diagnostics,
    lifted_coframe,
    lifted_coframe_partials,
)
from fbgravity.bundle.momentum import (
    MomentumComponents,
    MomentumField,
    VarpiComponents,
    constraint_residual,
    identification_residuals,
    momentum_field,
    momentum_from_varpi,
    varpi_from_momentum,
)
from fbgravity.bundle.nabla import NablaCoefficients, nabla_consistency, nabla_eta_varpi, nabla_fd, nabla_H_p

__all__ = [
    "RESIDUAL_FAMILIES",
    "CurvatureDecomposition",
    "GaugeMap",
    "LegendreValue",
    "LiftedFields",
    "MomentumComponents",
    "MomentumField",
    "MomentumShiftReport",
    "NablaCoefficients",
    "PointEvaluation",
    "ResidualSet",
    "ThetaDensity",
    "VarpiComponents",
    "admissible_shift",
    "constant_gauge",
    "constraint_residual",
    "covariance_residuals",
    "curvature_decomposition",
    "evaluate_point",
    "gauge_conjugation_residuals",
    "gauge_transform",
    "head_preservation_residual",
    "hvdw_residuals",
    "identification_residuals",
    "legendre_W",
    "legendre_constraint_heads",
    "lift",
    "lift_diagnostics",
    "lifted_coframe",
    "lifted_coframe_partials",
    "matched_point",
    "momentum_field",
    "momentum_from_varpi",
    "momentum_shift_check",
    "nabla_H_p",
    "nabla_consistency",
    "nabla_eta_varpi",
    "nabla_fd",
    "theta_density",
    "torsion_equation_pair",
    "varpi_from_momentum",
]
