"""Torsion, curvature, Ricci, scalar and Einstein tensors of a FieldConfig.

Index order is upper indices first, then lower indices left to right:
T[a, c, d] = T^a_{cd}, R[a, b, c, d] = R^a_{bcd}, Ric[b, a] = Ric^b_a, E[b, a] = E^b_a,
Gamma[a, b, c] = Gamma^a_{bc}.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import logging

import numpy as np
from scipy import linalg

from fbgravity.algebra.tables import DIM_BASE, build_algebra, levi_civita_symbol
from fbgravity.forms.derivative import DiffConfig, exterior_derivative
from fbgravity.forms.form import FormValue, wedge
from fbgravity.forms.notation import coframe_forms
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CurvatureData:
    """Torsion and curvature tensors at a base point, in the frame e^a."""

    T: np.ndarray
    R: np.ndarray
    h: np.ndarray
    Ric: np.ndarray | None = None
    S: float | None = None
    E: np.ndarray | None = None

    @property
    def h_inv(self) -> np.ndarray:
        return np.linalg.inv(self.h)

    def antisymmetry_residuals(self) -> dict[str, float]:
        """T^a_{cd} + T^a_{dc}, R^a_{bcd} + R^a_{bdc} and R^{ab}_{cd} + R^{ba}_{cd}."""
        upper = np.einsum("acde,cb->abde", self.R, self.h_inv)
        return {
            "torsion": float(np.max(np.abs(self.T + np.swapaxes(self.T, 1, 2)))),
            "curvature_lower": float(np.max(np.abs(self.R + np.swapaxes(self.R, 2, 3)))),
            "curvature_upper": float(np.max(np.abs(upper + np.swapaxes(upper, 0, 1)))),
        }


def torsion_form(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> np.ndarray:
    """Chart components F^a_{mu nu} of de + A ^ e, stored [a, mu, nu]."""
    e, A, de = cfg.e(x), cfg.A(x), cfg.de(x, diff)
    curl = np.transpose(de, (1, 0, 2)) - np.transpose(de, (1, 2, 0))
    coupling = np.einsum("abm,bn->amn", A, e)
    return curl + coupling - np.swapaxes(coupling, 1, 2)


def curvature_form(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> np.ndarray:
    """Chart components G^a_{b mu nu} of dA + A ^ A, stored [a, b, mu, nu]."""
    A, dA = cfg.A(x), cfg.dA(x, diff)
    curl = np.transpose(dA, (1, 2, 0, 3)) - np.transpose(dA, (1, 2, 3, 0))
    product = np.einsum("acm,cbn->abmn", A, A)
    return curl + product - np.swapaxes(product, 2, 3)


def torsion_curvature(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> CurvatureData:
    """T and R from (de + A ^ e)^a = 1/2 T^a_{cd} e^c ^ e^d and (dA + A ^ A)^a_b = 1/2 R^a_{bcd} e^c ^ e^d.

    Raises:
        VierbeinError: If e(x) is singular.
        DiffError: On derivative failures.
    """
    frame = cfg.frame(x)
    T = np.einsum("amn,mc,nd->acd", torsion_form(cfg, x, diff), frame, frame)
    R = np.einsum("abmn,mc,nd->abcd", curvature_form(cfg, x, diff), frame, frame)
    return CurvatureData(T=T, R=R, h=cfg.h)


def ricci_scalar_einstein(cd: CurvatureData) -> CurvatureData:
    """Complete Ric^b_a = R^{bd}_{ad}, S = Ric^a_a and E^b_a = Ric^b_a - 1/2 S delta^b_a."""
    ric = np.einsum("de,bead->ba", cd.h_inv, cd.R)
    scalar = float(np.trace(ric))
    einstein = ric - 0.5 * scalar * np.eye(DIM_BASE)
    return replace(cd, Ric=ric, S=scalar, E=einstein)


def curvature(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> CurvatureData:
    """torsion_curvature followed by ricci_scalar_einstein."""
    return ricci_scalar_einstein(torsion_curvature(cfg, x, diff))


def christoffel_Y(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig, cd: CurvatureData | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Gamma^a_{bc} with A^a_c = Gamma^a_{bc} e^b, and Y_c = T^d_{cd} - Gamma^d_{cd} + Gamma^d_{dc}.

    Y_c is the coefficient of d e^(3)_c = Y_c e^(4).
    """
    gamma = np.einsum("acm,mb->abc", cfg.A(x), cfg.frame(x))
    T = (cd or torsion_curvature(cfg, x, diff)).T
    Y = np.einsum("dcd->c", T) - np.einsum("dcd->c", gamma) + np.einsum("ddc->c", gamma)
    return gamma, Y


def frame_divergence_residual(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> float:
    """max_c |d e^(3)_c - Y_c e^(4)| with d evaluated by finite differences."""
    _, Y = christoffel_Y(cfg, x, diff)
    forms = coframe_forms(cfg.e(x))
    d_codim = exterior_derivative(lambda w: coframe_forms(cfg.e(w)).codim1, x, diff.as_finite_difference())
    return float(np.max(np.abs(d_codim.components - np.einsum("c,I->cI", Y, forms.volume.components))))


def wec_density(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> float:
    """Density S with 1/2 eps_{abcd} e^a ^ e^b ^ F^{cd} = S e^(4), F = dA + A ^ A."""
    e = FormValue(DIM_BASE, 1, cfg.e(x))
    G = curvature_form(cfg, x, diff)
    iu = np.triu_indices(DIM_BASE, 1)
    upper = np.einsum("cdmn,de->cemn", G, cfg.h_inv)
    F = FormValue(DIM_BASE, 2, upper[:, :, iu[0], iu[1]])
    pairs = wedge(e.take((slice(None), None)), e.take((None, slice(None))))
    full = wedge(pairs.take((slice(None), slice(None), None, None)), F.take((None, None, slice(None), slice(None))))
    action = 0.5 * np.einsum("abcd,abcdI->I", levi_civita_symbol(), full.components)
    volume = np.linalg.det(cfg.e(x))
    return float(action[0] / volume)


def levi_civita_connection(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> np.ndarray:
    """Torsion-free h-antisymmetric connection A[a, b, mu] for the vierbein of ``cfg``.

    Writes Gamma^a_{cb} = X_{c i} (u_i)^a_b for the six generators of the
    structure algebra and solves T = 0 for the 24 unknowns X by least squares.
    """
    tables = build_algebra(cfg.signature)
    e, frame, de = cfg.e(x), cfg.frame(x), cfg.de(x, diff)
    curl = np.transpose(de, (1, 0, 2)) - np.transpose(de, (1, 2, 0))
    D = np.einsum("amn,mc,nd->acd", curl, frame, frame)
    # T^a_{cd} = D^a_{cd} + Gamma^a_{cd} - Gamma^a_{dc}
    delta = np.eye(DIM_BASE)
    system = np.einsum("ce,iad->acdei", delta, tables.rep_g) - np.einsum("de,iac->acdei", delta, tables.rep_g)
    solution, *_ = linalg.lstsq(system.reshape(DIM_BASE**3, -1), -D.reshape(-1))
    X = solution.reshape(DIM_BASE, -1)
    gamma = np.einsum("ci,iab->acb", X, tables.rep_g)
    return np.einsum("acb,cm->abm", gamma, e)


def first_bianchi_residual(cd: CurvatureData) -> float:
    """max |R^a_{bcd} + R^a_{cdb} + R^a_{dbc}|; vanishes for torsion-free connections."""
    R = cd.R
    cyclic = R + np.transpose(R, (0, 3, 1, 2)) + np.transpose(R, (0, 2, 3, 1))
    return float(np.max(np.abs(cyclic)))
