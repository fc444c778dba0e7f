"""Lie-algebraic tables and (co)adjoint actions for g, t and p."""

from fbgravity.algebra.actions import (
    CHART_RADIUS,
    GroupElement,
    PCovector,
    PVector,
    adjoint,
    adjoint_matrix,
    coadjoint_Ad_star,
    coadjoint_ad_star,
    coadjoint_ad_star_components,
    coadjoint_matrix,
    pairing,
    tensor_pairing,
)
from fbgravity.algebra.tables import (
    DIM_BASE,
    DIM_G,
    DIM_P,
    GENERATOR_PAIRS,
    AlgebraTables,
    BasisConvention,
    Signature,
    SignatureKind,
    build_algebra,
)

__all__ = [
    "CHART_RADIUS",
    "DIM_BASE",
    "DIM_G",
    "DIM_P",
    "GENERATOR_PAIRS",
    "AlgebraTables",
    "BasisConvention",
    "GroupElement",
    "PCovector",
    "PVector",
    "Signature",
    "SignatureKind",
    "adjoint",
    "adjoint_matrix",
    "build_algebra",
    "coadjoint_Ad_star",
    "coadjoint_ad_star",
    "coadjoint_ad_star_components",
    "coadjoint_matrix",
    "pairing",
    "tensor_pairing",
]
