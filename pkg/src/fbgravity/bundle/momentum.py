"""The p*-valued momentum 8-form in its p- and varpi-descriptions.

The untwisted momentum p is written in the (e, gamma) coframe as

    p_A = 1/2 P_A^{BC} theta^(8)_{BC},    theta^(8)_{BC} = v_C _| v_B _| theta^(10),

with P_A^{cd} = kappa_A^{cd} (the constrained head), P_A^{c,4+k} = p_A^{ck} and
P_A^{4+j,4+k} = p_A^{jk}. Since theta^(8)_{c,4+k} = -e^(3)_c ^ gamma^(5)_k and
theta^(8)_{4+j,4+k} = e^(4) ^ gamma^(4)_{jk}, this is
1/2 kappa_A^{cd} e^(2)_{cd} ^ gamma^(6) - p_A^{ck} e^(3)_c ^ gamma^(5)_k + 1/2 p_A^{jk} e^(4) ^ gamma^(4)_{jk}.
The twisted form varpi = Ad*_g p has the same layout in the (alpha, omega) coframe.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Callable

import numpy as np

from fbgravity.algebra.actions import coadjoint_matrix
from fbgravity.algebra.tables import DIM_BASE, DIM_G, DIM_P, AlgebraTables
from fbgravity.bundle.lift import LiftedFields
from fbgravity.forms.derivative import DiffConfig, coframe_derivatives, fd_partials
from fbgravity.forms.form import FormValue, decompose, wedge
from fbgravity.forms.notation import coframe_forms

logger = logging.getLogger(__name__)

ComponentField = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def head(tables: AlgebraTables) -> np.ndarray:
    """Constrained head P_A^{cd} = kappa_A^{cd}, stored [A, c, d]."""
    return np.moveaxis(tables.kappa, -1, 0)


def antisymmetrize(jk: np.ndarray) -> np.ndarray:
    return 0.5 * (jk - np.swapaxes(jk, -1, -2))


@dataclass(frozen=True, eq=False)
class MomentumComponents:
    """Free components of p at one point.

    Attributes:
        ck: p_A^{ck}, shape (10, 4, 6).
        jk: p_A^{jk}, antisymmetric in (j, k), shape (10, 6, 6).
    """

    ck: np.ndarray
    jk: np.ndarray

    @classmethod
    def zero(cls) -> MomentumComponents:
        return cls(np.zeros((DIM_P, DIM_BASE, DIM_G)), np.zeros((DIM_P, DIM_G, DIM_G)))

    @property
    def pa_ck(self) -> np.ndarray:
        """p_a^{ck}, shape (4, 4, 6)."""
        return self.ck[:DIM_BASE]

    @property
    def pa_jk(self) -> np.ndarray:
        return self.jk[:DIM_BASE]

    def pab_ck(self, tables: AlgebraTables) -> np.ndarray:
        """p_a^{bck} = u^{ib}_a p_i^{ck}, stored [a, b, c, k]."""
        return np.einsum("iba,ick->abck", tables.dual_mixed, self.ck[DIM_BASE:])

    def pab_jk(self, tables: AlgebraTables) -> np.ndarray:
        """p_a^{bjk} = u^{ib}_a p_i^{jk}, stored [a, b, j, k]."""
        return np.einsum("iba,ijk->abjk", tables.dual_mixed, self.jk[DIM_BASE:])

    def full(self, tables: AlgebraTables) -> np.ndarray:
        """The antisymmetric coefficient array P[A, B, C] including the head."""
        out = np.zeros((DIM_P, DIM_P, DIM_P))
        out[:, :DIM_BASE, :DIM_BASE] = head(tables)
        out[:, :DIM_BASE, DIM_BASE:] = self.ck
        out[:, DIM_BASE:, :DIM_BASE] = -np.swapaxes(self.ck, 1, 2)
        out[:, DIM_BASE:, DIM_BASE:] = self.jk
        return out

    @classmethod
    def from_full(cls, full: np.ndarray) -> MomentumComponents:
        return cls(full[:, :DIM_BASE, DIM_BASE:].copy(), antisymmetrize(full[:, DIM_BASE:, DIM_BASE:]))


@dataclass(frozen=True, eq=False)
class MomentumField:
    """Free momentum components as functions of the chart point z = (x, y).

    Attributes:
        name: Profile name.
        components: z -> (ck, jk).
        partials: Optional z -> (d ck, d jk) with shapes (10, 10, 4, 6) and (10, 10, 6, 6).
    """

    name: str
    components: ComponentField
    partials: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]] | None = None

    def at(self, z: np.ndarray) -> MomentumComponents:
        ck, jk = self.components(np.asarray(z, dtype=float))
        return MomentumComponents(np.asarray(ck, dtype=float), antisymmetrize(np.asarray(jk, dtype=float)))

    def chart_partials(self, z: np.ndarray, diff: DiffConfig) -> tuple[np.ndarray, np.ndarray]:
        """d_nu of (ck, jk); analytic when available and requested, otherwise finite differences."""
        z = np.asarray(z, dtype=float)
        if diff.analytic and self.partials is not None:
            dck, djk = self.partials(z)
            return np.asarray(dck, dtype=float), antisymmetrize(np.asarray(djk, dtype=float))

        def packed(w: np.ndarray) -> np.ndarray:
            comps = self.at(w)
            return np.concatenate([comps.ck.reshape(DIM_P, -1), comps.jk.reshape(DIM_P, -1)], axis=1)

        flat = fd_partials(packed, z, diff.as_finite_difference())
        split = DIM_BASE * DIM_G
        return (
            flat[:, :, :split].reshape(DIM_P, DIM_P, DIM_BASE, DIM_G),
            flat[:, :, split:].reshape(DIM_P, DIM_P, DIM_G, DIM_G),
        )

    @classmethod
    def zero(cls) -> MomentumField:
        """Vanishing free components (the vacuum sector)."""

        def components(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            zero = MomentumComponents.zero()
            return zero.ck, zero.jk

        def partials(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            return np.zeros((DIM_P, DIM_P, DIM_BASE, DIM_G)), np.zeros((DIM_P, DIM_P, DIM_G, DIM_G))

        return cls("zero", components, partials)

    @classmethod
    def linear_fiber(cls, s: float = 1.0) -> MomentumField:
        """p_a^{ck} = s delta^c_a y^k, all other free components zero."""
        delta = np.eye(DIM_BASE)

        def components(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            ck = np.zeros((DIM_P, DIM_BASE, DIM_G))
            ck[:DIM_BASE] = s * np.einsum("ac,k->ack", delta, z[DIM_BASE:])
            return ck, np.zeros((DIM_P, DIM_G, DIM_G))

        def partials(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            dck = np.zeros((DIM_P, DIM_P, DIM_BASE, DIM_G))
            dck[DIM_BASE:, :DIM_BASE] = s * np.einsum("ac,lk->lack", delta, np.eye(DIM_G))
            return dck, np.zeros((DIM_P, DIM_P, DIM_G, DIM_G))

        return cls(f"linear_fiber:s={s:g}", components, partials)

    @classmethod
    def polynomial(cls, rng: np.random.Generator, scale: float = 0.1, name: str = "polynomial") -> MomentumField:
        """Quadratic polynomials in z with Gaussian coefficients of size ``scale``."""
        shapes = ((DIM_P, DIM_BASE, DIM_G), (DIM_P, DIM_G, DIM_G))
        coefficients = [
            (
                scale * rng.normal(size=shape),
                scale * rng.normal(size=shape + (DIM_P,)),
                0.5 * scale * rng.normal(size=shape + (DIM_P, DIM_P)),
            )
            for shape in shapes
        ]

        def evaluate(c0: np.ndarray, c1: np.ndarray, c2: np.ndarray, z: np.ndarray) -> np.ndarray:
            return c0 + c1 @ z + np.einsum("...ij,i,j->...", c2, z, z)

        def gradient(c0: np.ndarray, c1: np.ndarray, c2: np.ndarray, z: np.ndarray) -> np.ndarray:
            grad = c1 + np.einsum("...ij,j->...i", c2, z) + np.einsum("...ji,j->...i", c2, z)
            return np.moveaxis(grad, -1, 0)

        def components(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            return evaluate(*coefficients[0], z), evaluate(*coefficients[1], z)

        def partials(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            return gradient(*coefficients[0], z), gradient(*coefficients[1], z)

        return cls(name, components, partials)


def momentum_field(profile: str, coefficients: list[float] | None = None) -> MomentumField:
    """Build a named profile: ``zero``, ``linear_fiber`` [s] or ``polynomial`` [scale, seed].

    Raises:
        ValueError: On unknown profile names.
    """
    coefficients = list(coefficients or [])
    if profile == "zero":
        return MomentumField.zero()
    if profile == "linear_fiber":
        return MomentumField.linear_fiber(*(coefficients[:1] or [1.0]))
    if profile == "polynomial":
        scale = coefficients[0] if coefficients else 0.1
        seed = int(coefficients[1]) if len(coefficients) > 1 else 0
        return MomentumField.polynomial(np.random.default_rng(seed), scale, name=f"polynomial:scale={scale:g},seed={seed}")
    raise ValueError(f"Unknown momentum profile '{profile}'")


def coframe_gradient(base_coframe: np.ndarray, chart_partials: np.ndarray) -> np.ndarray:
    """f_{;B} in the (e, gamma) coframe from chart partials of shape (10, ...)."""
    on_base, on_fiber = coframe_derivatives(
        lambda w: chart_partials[0], np.zeros(DIM_P), base_coframe, DiffConfig(), chart_partials=chart_partials
    )
    return np.concatenate([on_base, on_fiber])


def momentum_form(tables: AlgebraTables, base_coframe: np.ndarray, comps: MomentumComponents) -> FormValue:
    """The 8-form p on the 10-dimensional chart, value axis [A], built from literal codimension-2 forms."""
    codim = coframe_forms(base_coframe).codim2
    return FormValue(DIM_P, DIM_P - 2, 0.5 * np.einsum("ABC,BCI->AI", comps.full(tables), codim.components))


def _codim2_basis(coframe: np.ndarray) -> tuple[FormValue, np.ndarray]:
    codim = coframe_forms(coframe).codim2
    iu = np.triu_indices(DIM_P, 1)
    return FormValue(DIM_P, DIM_P - 2, codim.components[iu[0], iu[1]]), iu


@dataclass(frozen=True, eq=False)
class VarpiComponents:
    """Coefficients of varpi in the (alpha, omega) coframe.

    Attributes:
        full: Antisymmetric array [A, B, C] with varpi_A = 1/2 full[A, B, C] eta^(8)_{BC}.
        form: varpi in the dz basis.
        decomposition_residual: Reconstruction error of the basis decomposition.
    """

    full: np.ndarray
    form: FormValue
    decomposition_residual: float = 0.0

    @property
    def head(self) -> np.ndarray:
        return self.full[:, :DIM_BASE, :DIM_BASE]

    @property
    def ck(self) -> np.ndarray:
        return self.full[:, :DIM_BASE, DIM_BASE:]

    @property
    def jk(self) -> np.ndarray:
        return self.full[:, DIM_BASE:, DIM_BASE:]


def varpi_from_momentum(lifted: LiftedFields, comps: MomentumComponents) -> VarpiComponents:
    """varpi = Ad*_g p assembled from literal wedges and decomposed along eta^(8)_{BC}."""
    tables = lifted.tables
    p_form = momentum_form(tables, lifted.base_coframe, comps)
    varpi = FormValue(DIM_P, p_form.degree, np.einsum("AB,BI->AI", coadjoint_matrix(tables, lifted.g), p_form.components))
    basis, iu = _codim2_basis(lifted.coframe)
    coeffs, residual = decompose(varpi, basis)
    full = np.zeros((DIM_P, DIM_P, DIM_P))
    full[:, iu[0], iu[1]] = coeffs
    full -= np.swapaxes(full, 1, 2)
    return VarpiComponents(full, varpi, residual)


def momentum_from_varpi(lifted: LiftedFields, varpi: VarpiComponents) -> MomentumComponents:
    """Closed-form inverse: P = Ad*_{g^-1}(L^-1 varpi L^-T) with eta = L (e, gamma)."""
    inverse = np.linalg.inv(lifted.transfer)
    untwisted = np.einsum("BX,AXY,CY->ABC", inverse, varpi.full, inverse)
    full = np.einsum("AB,BCD->ACD", coadjoint_matrix(lifted.tables, lifted.g.inverse()), untwisted)
    return MomentumComponents.from_full(full)


def identification_residuals(lifted: LiftedFields, comps: MomentumComponents, varpi: VarpiComponents) -> dict[str, float]:
    """Closed-form relations between the p- and varpi-components.

    - head: varpi_A^{cd} = kappa_A^{cd};
    - translation: (g^-1)^{a'}_a g^c_{c'} varpi_{a'}^{c'j} = p_a^{cj};
    - rotation: (g^-1)^{a'}_a g^b_{b'} g^c_{c'} varpi_{a'}^{b'c'j} = p_a^{bcj} + kappa_a^{bcd} (Ad_{g^-1} A_d)^j;
    - round trip p -> varpi -> p.
    """
    tables = lifted.tables
    gm, gi = lifted.g.matrix, lifted.g.inverse_matrix
    translation = np.einsum("xa,cy,xyj->acj", gi, gm, varpi.ck[:DIM_BASE])
    varpi_ab = np.einsum("iba,icj->abcj", tables.dual_mixed, varpi.ck[DIM_BASE:])
    rotation = np.einsum("xa,by,cz,xyzj->abcj", gi, gm, gm, varpi_ab)
    expected_rotation = comps.pab_ck(tables) + np.einsum("abcd,dj->abcj", tables.kappa_mixed, lifted.ad_connection)
    back = momentum_from_varpi(lifted, varpi)
    return {
        "varpi_head": float(np.max(np.abs(varpi.head - head(tables)))),
        "identification_translation": float(np.max(np.abs(translation - comps.pa_ck))),
        "identification_rotation": float(np.max(np.abs(rotation - expected_rotation))),
        "roundtrip": float(max(np.max(np.abs(back.ck - comps.ck)), np.max(np.abs(back.jk - comps.jk)))),
        "varpi_decomposition": varpi.decomposition_residual,
    }


def constraint_residual(lifted: LiftedFields, varpi: VarpiComponents) -> float:
    """max |eta^c ^ eta^d ^ varpi_A - kappa_A^{cd} eta^(10)|."""
    eta = lifted.eta
    base = FormValue(DIM_P, 1, eta.components[:DIM_BASE])
    pairs = wedge(base.take((slice(None), None)), base.take((None, slice(None))))
    full = wedge(pairs.take((slice(None), slice(None), None)), varpi.form.take((None, None, slice(None))))
    return float(np.max(np.abs(full.components[..., 0] - lifted.det * lifted.tables.kappa)))
