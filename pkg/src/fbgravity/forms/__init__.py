"""Pointwise exterior calculus on chart neighbourhoods."""

from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import (
    RANK_TOLERANCE,
    DiffConfig,
    DiffMode,
    coframe_derivatives,
    d_from_partials,
    exterior_derivative,
    fd_partials,
    partials,
)
from fbgravity.forms.form import (
    FormValue,
    change_basis,
    codim1,
    codim2,
    combinations,
    compound_matrix,
    contract,
    decompose,
    wedge,
    wedge_all,
)
from fbgravity.forms.maurer_cartan import (
    AffineGroupField,
    FiberForms,
    dexp_matrix,
    fiber_coframe,
    fiber_forms,
    maurer_cartan,
    maurer_cartan_identities,
    maurer_cartan_partials,
    structure_equation_residual,
)
from fbgravity.forms.notation import CoframeForms, coframe_forms, epsilon_one_forms, epsilon_two_forms, notation_identity_residuals
from fbgravity.forms.valued import (
    PolynomialFormField,
    ad_star_wedge,
    adjoint_form,
    bracket_wedge,
    coadjoint_form,
    coadjoint_lemma_residual,
    embed_rotation,
    transport_corollary_residual,
)

__all__ = [
    "RANK_TOLERANCE",
    "AffineGroupField",
    "ChartPoint",
    "CoframeForms",
    "DiffConfig",
    "DiffMode",
    "FiberForms",
    "FormValue",
    "PolynomialFormField",
    "ad_star_wedge",
    "adjoint_form",
    "bracket_wedge",
    "change_basis",
    "coadjoint_form",
    "coadjoint_lemma_residual",
    "codim1",
    "codim2",
    "coframe_derivatives",
    "coframe_forms",
    "combinations",
    "compound_matrix",
    "contract",
    "d_from_partials",
    "decompose",
    "dexp_matrix",
    "embed_rotation",
    "epsilon_one_forms",
    "epsilon_two_forms",
    "exterior_derivative",
    "fd_partials",
    "fiber_coframe",
    "fiber_forms",
    "maurer_cartan",
    "maurer_cartan_identities",
    "maurer_cartan_partials",
    "notation_identity_residuals",
    "partials",
    "structure_equation_residual",
    "transport_corollary_residual",
    "wedge",
    "wedge_all",
]
