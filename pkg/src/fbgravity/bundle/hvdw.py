"""Residuals of the Hamilton-Volterra-De Donder-Weyl equations on the lifted phase space.

With eta the lifted coframe, the equations split into the horizontality conditions
Q^A_{ck} = Q^A_{jk} = 0 and the momentum equations

    p_a^{bk}_{;k} = 2 E^b_a                                                    (ab)
    N_a^j = -(2E - Ric)^b_a (Ad_{g^-1} A_b)^j
            + 1/2 p_d^{bcj} R^d_{bca} + p_d^{cj} T^d_{ca}                       (aj)
    h^{bd} T^c_{ad} - h^{bc} T^d_{ad} + h^{be} T^d_{ed} delta^c_a + p_a^{bck}_{;k} = 0   (abc)
    N_a^{bj} = -S (Ad*_{g^-1} u^j)_a^b                                         (abj)

where N are the fiber coefficients of nabla^H p computed in ``nabla``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import logging

import numpy as np

from fbgravity.algebra.tables import DIM_BASE, AlgebraTables
from fbgravity.bundle.lift import (
    CurvatureDecomposition,
    LiftedFields,
    christoffel_data,
    decompose_structure_form,
    lift,
    lifted_coframe_partials,
)
from fbgravity.bundle.momentum import (
    MomentumField,
    VarpiComponents,
    constraint_residual,
    varpi_from_momentum,
)
from fbgravity.bundle.nabla import MomentumDerivatives, momentum_derivatives, nabla_closed
from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import DiffConfig
from fbgravity.forms.form import wedge
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)

RESIDUAL_FAMILIES = (
    "EL_ab",
    "EL_aj",
    "EL_abc",
    "EL_abc_solved",
    "EL_abj",
    "horizontal_ck",
    "horizontal_jk",
    "constraint",
)


@dataclass
class ResidualSet:
    """Named residual arrays at one chart point; ``max_abs`` gives the per-family norm."""

    arrays: dict[str, np.ndarray] = field(default_factory=dict)

    def add(self, family: str, values: np.ndarray | float) -> None:
        self.arrays[family] = np.asarray(values, dtype=float)

    def max_abs(self) -> dict[str, float]:
        return {name: float(np.max(np.abs(values))) if values.size else 0.0 for name, values in self.arrays.items()}

    def all_finite(self) -> bool:
        return all(bool(np.all(np.isfinite(values))) for values in self.arrays.values())


def torsion_equation_pair(T: np.ndarray, P: np.ndarray, h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Raw and solved forms of the torsion equation for arbitrary T^a_{cd} and P_a^{bc}.

    The raw residual is h^{bd} T^c_{ad} - h^{bc} T^d_{ad} + h^{be} T^d_{ed} delta^c_a + P_a^{bc};
    the solved one is T^a_{cd} + h_{de} P_c^{ea} + 1/2 (delta^a_d h_{ce} - delta^a_c h_{de}) P_{a'}^{ea'}.
    Either vanishes exactly when the other does.

    Returns:
        (raw [a, b, c], solved [a, c, d]).
    """
    h_inv = np.linalg.inv(h)
    delta = np.eye(DIM_BASE)
    trace = np.einsum("ded->e", T)
    raw = (
        np.einsum("bd,cad->abc", h_inv, T)
        - np.einsum("bc,dad->abc", h_inv, T)
        + np.einsum("be,e,ca->abc", h_inv, trace, delta)
        + P
    )
    p_trace = np.einsum("xex->e", P)
    solved = (
        T
        + np.einsum("de,cea->acd", h, P)
        + 0.5 * (np.einsum("ad,ce,e->acd", delta, h, p_trace) - np.einsum("ac,de,e->acd", delta, h, p_trace))
    )
    return raw, solved


def adjoint_dual_tensor(lifted: LiftedFields) -> np.ndarray:
    """(Ad*_{g^-1} u^j)_a^b = (g^-1)^{a'}_a g^b_{b'} u^{jb'}_{a'}, stored [j, a, b]."""
    gm, gi = lifted.g.matrix, lifted.g.inverse_matrix
    return np.einsum("xa,by,jyx->jab", gi, gm, lifted.tables.dual_mixed)


@dataclass(frozen=True, eq=False)
class PointEvaluation:
    """Everything evaluated at one chart point: residuals, the decomposition and varpi."""

    residuals: ResidualSet
    lifted: LiftedFields
    decomposition: CurvatureDecomposition
    varpi: VarpiComponents


def evaluate_point(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, point: ChartPoint, diff: DiffConfig) -> PointEvaluation:
    """Residuals of every HVDW family at a chart point.

    Raises:
        ChartError: If y lies outside the chart.
        SingularCoframeError: If a coframe is degenerate.
        DiffError: On derivative failures.
    """
    lifted = lift(cfg, tables, point)
    decomposition = decompose_structure_form(tables, lifted.coframe, lifted_coframe_partials(cfg, tables, point.z, diff))
    cd, christoffel, Y = christoffel_data(cfg, point.x, diff)
    derivs = momentum_derivatives(lifted, mom, diff)
    nabla = nabla_closed(tables, derivs, cd, christoffel, Y)
    comps = mom.at(point.z)
    pab_ck = comps.pab_ck(tables)
    E, Ric, S = cd.E, cd.Ric, float(cd.S)

    residuals = ResidualSet()
    residuals.add("EL_ab", nabla.a_base - 2.0 * E.T)

    source_aj = (
        -np.einsum("ba,bj->aj", 2.0 * E - Ric, lifted.ad_connection)
        + 0.5 * np.einsum("dbcj,dbca->aj", pab_ck, cd.R)
        + np.einsum("dcj,dca->aj", comps.pa_ck, cd.T)
    )
    residuals.add("EL_aj", nabla.a_fiber - source_aj)

    P = fiber_divergence(derivs, tables)
    raw, solved = torsion_equation_pair(cd.T, P, cd.h)
    residuals.add("EL_abc", raw)
    residuals.add("EL_abc_solved", solved)
    residuals.add("EL_abj", nabla.ab_fiber + S * np.moveaxis(adjoint_dual_tensor(lifted), 0, -1))

    horizontal = decomposition.horizontal_residuals()
    residuals.add("horizontal_ck", decomposition.ck)
    residuals.add("horizontal_jk", decomposition.jk)

    varpi = varpi_from_momentum(lifted, comps)
    residuals.add("constraint", constraint_residual(lifted, varpi))
    logger.debug(f"HVDW residuals at {point.to_dict()}: {residuals.max_abs()} (horizontal {horizontal})")
    return PointEvaluation(residuals, lifted, decomposition, varpi)


def hvdw_residuals(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, point: ChartPoint, diff: DiffConfig) -> ResidualSet:
    """The ResidualSet of ``evaluate_point``."""
    return evaluate_point(cfg, tables, mom, point, diff).residuals


@dataclass(frozen=True)
class ThetaDensity:
    """phi* theta = value * eta^(10), evaluated two ways.

    Attributes:
        value: 1/2 varpi_A^{BC} Q^A_{BC}.
        literal: Coefficient of the wedge varpi_A ^ Omega^A divided by det of the coframe.
        head_part: 1/2 kappa_A^{cd} Q^A_{cd}.
    """

    value: float
    literal: float
    head_part: float

    @property
    def off_block(self) -> float:
        return self.value - self.head_part


def theta_from(lifted: LiftedFields, decomposition: CurvatureDecomposition, varpi: VarpiComponents) -> ThetaDensity:
    value = 0.5 * float(np.einsum("ABC,ABC->", varpi.full, decomposition.Q))
    head_part = 0.5 * float(np.einsum("cdA,Acd->", lifted.tables.kappa, decomposition.cd))
    top = wedge(varpi.form, decomposition.omega_form)
    literal = float(np.sum(top.components[:, 0])) / lifted.det
    return ThetaDensity(value, literal, head_part)


def theta_density(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, point: ChartPoint, diff: DiffConfig) -> ThetaDensity:
    """Density of the Poincare-Cartan form pulled back by the lifted field."""
    evaluation = evaluate_point(cfg, tables, mom, point, diff)
    return theta_from(evaluation.lifted, evaluation.decomposition, evaluation.varpi)


def fiber_divergence(derivs: MomentumDerivatives, tables: AlgebraTables) -> np.ndarray:
    """P_a^{bc} = p_a^{bck}_{;k}."""
    d_pab_ck = derivs.tensor_views(tables)[2]
    return np.einsum("kabck->abc", d_pab_ck[DIM_BASE:])


@dataclass(frozen=True)
class LegendreValue:
    """W and its gradient with respect to the independent A^A_{cd} (c < d)."""

    W: float
    gradient: np.ndarray  # [A, pair]

    @property
    def stationarity_residual(self) -> float:
        return float(np.max(np.abs(self.gradient)))


def legendre_W(tables: AlgebraTables, h: float, A_coeffs: np.ndarray, psi_heads: np.ndarray) -> LegendreValue:
    """W = h + 1/2 psi_a^{cd} A^a_{cd} + (1/2 psi_i^{cd} - u_i^{cd}) A^i_{cd}, summed over all c, d.

    Args:
        tables: Algebra tables.
        h: Value of the Hamiltonian coordinate.
        A_coeffs: A^A_{cd}, antisymmetric in (c, d), shape (10, 4, 4).
        psi_heads: psi_A^{cd}, antisymmetric in (c, d), shape (10, 4, 4).
    """
    shift = np.zeros_like(psi_heads)
    shift[DIM_BASE:] = tables.rep_upper
    weights = 0.5 * psi_heads - shift
    W = float(h + np.einsum("Acd,Acd->", weights, A_coeffs))
    iu = np.triu_indices(DIM_BASE, 1)
    # each independent A^A_{cd} enters twice through the antisymmetric sum
    gradient = (weights - np.swapaxes(weights, 1, 2))[:, iu[0], iu[1]]
    return LegendreValue(W, gradient)


def legendre_constraint_heads(tables: AlgebraTables) -> np.ndarray:
    """psi_A^{cd} on the constraint surface: psi_a^{cd} = 0, psi_i^{cd} = 2 u_i^{cd}."""
    return np.moveaxis(tables.kappa, -1, 0).copy()

