"""p- and p*-valued forms: coadjoint actions on the value axis and the coadjoint transport identities."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Callable

import numpy as np

from fbgravity.algebra.actions import GroupElement, adjoint_matrix, coadjoint_matrix
from fbgravity.algebra.tables import DIM_BASE, DIM_P, AlgebraTables
from fbgravity.forms.derivative import DiffConfig, exterior_derivative
from fbgravity.forms.form import FormValue, wedge
from fbgravity.forms.maurer_cartan import AffineGroupField

logger = logging.getLogger(__name__)


def ad_star_wedge(tables: AlgebraTables, xi: FormValue, lam: FormValue) -> FormValue:
    """(ad*_xi ^ lambda)_A = c^B_{CA} xi^C ^ lambda_B.

    Args:
        tables: Algebra tables.
        xi: p-valued form, value axis [C] of length 10.
        lam: p*-valued form, value axis [B] of length 10.
    """
    pairs = wedge(xi.take((slice(None), None)), lam.take((None, slice(None))))
    return FormValue(pairs.n, pairs.degree, np.einsum("BCA,CBI->AI", tables.struct_p, pairs.components))


def bracket_wedge(tables: AlgebraTables, xi: FormValue, zeta: FormValue) -> FormValue:
    """[xi ^ zeta]^A = c^A_{BC} xi^B ^ zeta^C."""
    pairs = wedge(xi.take((slice(None), None)), zeta.take((None, slice(None))))
    return FormValue(pairs.n, pairs.degree, np.einsum("ABC,BCI->AI", tables.struct_p, pairs.components))


def coadjoint_form(tables: AlgebraTables, g: GroupElement, lam: FormValue) -> FormValue:
    """Ad*_g applied pointwise to the value axis of a p*-valued form."""
    return FormValue(lam.n, lam.degree, np.einsum("AB,B...->A...", coadjoint_matrix(tables, g), lam.components))


def adjoint_form(tables: AlgebraTables, g: GroupElement, xi: FormValue) -> FormValue:
    """Ad_g applied pointwise to the value axis of a p-valued form."""
    return FormValue(xi.n, xi.degree, np.einsum("AB,B...->A...", adjoint_matrix(tables, g), xi.components))


def embed_rotation(form: FormValue) -> FormValue:
    """Promote a g-valued form (value axis of length 6) to a p-valued one."""
    comps = np.zeros((DIM_P,) + form.components.shape[1:])
    comps[DIM_BASE:] = form.components
    return FormValue(form.n, form.degree, comps)


@dataclass(frozen=True, eq=False)
class PolynomialFormField:
    """Form field whose components are quadratic polynomials in the chart coordinates.

    Components: c0 + c1 . z + z . c2 . z, with coefficient arrays of shapes
    (..., C), (..., C, n) and (..., C, n, n).
    """

    n: int
    degree: int
    c0: np.ndarray
    c1: np.ndarray
    c2: np.ndarray

    @classmethod
    def random(
        cls,
        rng: np.random.Generator,
        n: int,
        degree: int,
        value_shape: tuple[int, ...] = (),
        scale: float = 1.0,
    ) -> PolynomialFormField:
        size = FormValue.zero(n, degree).components.shape[-1]
        shape = value_shape + (size,)
        return cls(
            n,
            degree,
            scale * rng.normal(size=shape),
            scale * rng.normal(size=shape + (n,)),
            0.5 * scale * rng.normal(size=shape + (n, n)),
        )

    def __call__(self, z: np.ndarray) -> FormValue:
        z = np.asarray(z, dtype=float)
        comps = self.c0 + self.c1 @ z + np.einsum("...ij,i,j->...", self.c2, z, z)
        return FormValue(self.n, self.degree, comps)

    def partials(self, z: np.ndarray) -> np.ndarray:
        """d_nu of the components, shape (n, ..., C)."""
        z = np.asarray(z, dtype=float)
        grad = self.c1 + np.einsum("...ij,j->...i", self.c2, z) + np.einsum("...ji,j->...i", self.c2, z)
        return np.moveaxis(grad, -1, 0)


def coadjoint_lemma_residual(
    tables: AlgebraTables,
    g_field: AffineGroupField,
    varpi: Callable[[np.ndarray], FormValue],
    z: np.ndarray,
    diff: DiffConfig,
) -> float:
    """max |d(Ad*_{g^-1} varpi) - Ad*_{g^-1}(d varpi - ad*_{g^-1 dg} ^ varpi)| at z.

    Args:
        tables: Algebra tables.
        g_field: Structure-group valued map.
        varpi: p*-valued form field.
        z: Chart point.
        diff: Derivative settings; both exterior derivatives use finite differences.
    """
    fd = diff.as_finite_difference()
    g_inv = g_field.element(z).inverse()
    lhs = exterior_derivative(lambda w: coadjoint_form(tables, g_field.element(w).inverse(), varpi(w)), z, fd)
    gamma = embed_rotation(g_field.maurer_cartan_form(z))
    inner = exterior_derivative(varpi, z, fd) - ad_star_wedge(tables, gamma, varpi(z))
    return (lhs - coadjoint_form(tables, g_inv, inner)).max_abs()


def transport_corollary_residual(
    tables: AlgebraTables,
    g_field: AffineGroupField,
    connection: Callable[[np.ndarray], FormValue],
    momentum: Callable[[np.ndarray], FormValue],
    z: np.ndarray,
    diff: DiffConfig,
) -> float:
    """max |(dp - ad*_H ^ p) - Ad*_{g^-1}(d varpi - ad*_eta ^ varpi)| at z.

    Here varpi = Ad*_g p and eta = Ad_{g^-1} H + g^-1 dg, for a p-valued 1-form
    field H and a p*-valued form field p.
    """
    fd = diff.as_finite_difference()
    g = g_field.element(z)
    g_inv = g.inverse()

    def varpi(w: np.ndarray) -> FormValue:
        return coadjoint_form(tables, g_field.element(w), momentum(w))

    eta = adjoint_form(tables, g_inv, connection(z)) + embed_rotation(g_field.maurer_cartan_form(z))
    lhs = exterior_derivative(momentum, z, fd) - ad_star_wedge(tables, connection(z), momentum(z))
    rhs = exterior_derivative(varpi, z, fd) - ad_star_wedge(tables, eta, varpi(z))
    return (lhs - coadjoint_form(tables, g_inv, rhs)).max_abs()
