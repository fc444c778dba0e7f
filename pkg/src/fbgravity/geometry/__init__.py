"""Base-manifold geometry of vierbein/connection pairs."""

from fbgravity.geometry.curvature import (
    CurvatureData,
    christoffel_Y,
    curvature,
    curvature_form,
    first_bianchi_residual,
    frame_divergence_residual,
    levi_civita_connection,
    ricci_scalar_einstein,
    torsion_curvature,
    torsion_form,
    wec_density,
)
from fbgravity.geometry.fields import FieldConfig

__all__ = [
    "CurvatureData",
    "FieldConfig",
    "christoffel_Y",
    "curvature",
    "curvature_form",
    "first_bianchi_residual",
    "frame_divergence_residual",
    "levi_civita_connection",
    "ricci_scalar_einstein",
    "torsion_curvature",
    "torsion_form",
    "wec_density",
]
