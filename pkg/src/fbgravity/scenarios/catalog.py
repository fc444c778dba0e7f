"""Built-in background geometries with closed-form vierbeins and connections."""

from __future__ import annotations

import numpy as np

from fbgravity.algebra.tables import DIM_BASE, SignatureKind, build_algebra
from fbgravity.geometry.fields import FieldConfig
from fbgravity.scenarios.decorators import scenario

_ZERO_E_PARTIALS = np.zeros((DIM_BASE,) * 3)
_ZERO_A_PARTIALS = np.zeros((DIM_BASE,) * 4)


def _flat(name: str, signature: SignatureKind) -> FieldConfig:
    return FieldConfig(
        name=name,
        signature=signature,
        vierbein=lambda x: np.eye(DIM_BASE),
        connection=lambda x: np.zeros((DIM_BASE,) * 3),
        vierbein_partials=lambda x: _ZERO_E_PARTIALS.copy(),
        connection_partials=lambda x: _ZERO_A_PARTIALS.copy(),
        description="Flat vierbein e = I with vanishing connection",
    )


@scenario(
    name="flat_lorentzian",
    description="Minkowski space: e = I, A = 0, h = diag(1,-1,-1,-1)",
    signature=SignatureKind.LORENTZIAN,
    analytic=True,
)
def flat_lorentzian() -> FieldConfig:
    return _flat("flat_lorentzian", SignatureKind.LORENTZIAN)


@scenario(
    name="flat_euclidean",
    description="Euclidean space: e = I, A = 0, h = I",
    signature=SignatureKind.EUCLIDEAN,
    analytic=True,
)
def flat_euclidean() -> FieldConfig:
    return _flat("flat_euclidean", SignatureKind.EUCLIDEAN)


@scenario(
    name="schwarzschild",
    description="Schwarzschild exterior, static orthonormal tetrad in (t, r, theta, phi); parameter M is the mass",
    signature=SignatureKind.LORENTZIAN,
    parameters={"M": 1.0},
    analytic=True,
)
def schwarzschild(M: float = 1.0) -> FieldConfig:
    """Tetrad e = (f^1/2 dt, f^-1/2 dr, r dtheta, r sin(theta) dphi), f = 1 - 2M/r, with its spin connection."""

    def f(x: np.ndarray) -> float:
        return 1.0 - 2.0 * M / x[1]

    def vierbein(x: np.ndarray) -> np.ndarray:
        r, theta = x[1], x[2]
        return np.diag([np.sqrt(f(x)), 1.0 / np.sqrt(f(x)), r, r * np.sin(theta)])

    def vierbein_partials(x: np.ndarray) -> np.ndarray:
        r, theta = x[1], x[2]
        fp = 2.0 * M / r**2
        out = np.zeros((DIM_BASE,) * 3)
        out[1, 0, 0] = 0.5 * fp / np.sqrt(f(x))
        out[1, 1, 1] = -0.5 * fp * f(x) ** -1.5
        out[1, 2, 2] = 1.0
        out[1, 3, 3] = np.sin(theta)
        out[2, 3, 3] = r * np.cos(theta)
        return out

    def connection(x: np.ndarray) -> np.ndarray:
        r, theta = x[1], x[2]
        root = np.sqrt(f(x))
        A = np.zeros((DIM_BASE,) * 3)
        A[0, 1, 0] = A[1, 0, 0] = M / r**2
        A[2, 1, 2], A[1, 2, 2] = root, -root
        A[3, 1, 3], A[1, 3, 3] = root * np.sin(theta), -root * np.sin(theta)
        A[3, 2, 3], A[2, 3, 3] = np.cos(theta), -np.cos(theta)
        return A

    def connection_partials(x: np.ndarray) -> np.ndarray:
        r, theta = x[1], x[2]
        root = np.sqrt(f(x))
        d_root = M / (r**2 * root)
        out = np.zeros((DIM_BASE,) * 4)
        out[1, 0, 1, 0] = out[1, 1, 0, 0] = -2.0 * M / r**3
        out[1, 2, 1, 2], out[1, 1, 2, 2] = d_root, -d_root
        out[1, 3, 1, 3], out[1, 1, 3, 3] = d_root * np.sin(theta), -d_root * np.sin(theta)
        out[2, 3, 1, 3], out[2, 1, 3, 3] = root * np.cos(theta), -root * np.cos(theta)
        out[2, 3, 2, 3], out[2, 2, 3, 3] = -np.sin(theta), np.sin(theta)
        return out

    def domain(x: np.ndarray) -> bool:
        return bool(x[1] > 2.0 * M * (1.0 + 1e-6) and abs(np.sin(x[2])) > 1e-3)

    return FieldConfig(
        name=f"schwarzschild:M={M:g}",
        signature=SignatureKind.LORENTZIAN,
        vierbein=vierbein,
        connection=connection,
        vierbein_partials=vierbein_partials,
        connection_partials=connection_partials,
        domain=domain,
        box=np.array([[-1.0, 3.0 * M, 0.4, 0.0], [1.0, 10.0 * M, np.pi - 0.4, 2.0 * np.pi]]),
        description="Schwarzschild exterior region r > 2M",
    )


@scenario(
    name="sphere_s4",
    description="Round 4-sphere of radius r in stereographic coordinates (Euclidean signature)",
    signature=SignatureKind.EUCLIDEAN,
    parameters={"r": 1.0},
    analytic=True,
)
def sphere_s4(r: float = 1.0) -> FieldConfig:
    """Conformally flat coframe e^a = Omega dx^a, Omega = 2 r^2 / (r^2 + |x|^2)."""

    def scale(x: np.ndarray) -> float:
        return r**2 + float(x @ x)

    def omega(x: np.ndarray) -> float:
        return 2.0 * r**2 / scale(x)

    def log_gradient(x: np.ndarray) -> np.ndarray:
        return -2.0 * x / scale(x)

    def log_hessian(x: np.ndarray) -> np.ndarray:
        s = scale(x)
        return -2.0 * np.eye(DIM_BASE) / s + 4.0 * np.outer(x, x) / s**2

    def vierbein(x: np.ndarray) -> np.ndarray:
        return omega(x) * np.eye(DIM_BASE)

    def vierbein_partials(x: np.ndarray) -> np.ndarray:
        grad = omega(x) * log_gradient(x)
        return np.einsum("n,am->nam", grad, np.eye(DIM_BASE))

    def connection(x: np.ndarray) -> np.ndarray:
        # A^a_b = d_b(sigma) dx^a - d_a(sigma) dx^b with sigma = log Omega
        sigma = log_gradient(x)
        delta = np.eye(DIM_BASE)
        return np.einsum("b,am->abm", sigma, delta) - np.einsum("a,bm->abm", sigma, delta)

    def connection_partials(x: np.ndarray) -> np.ndarray:
        hess = log_hessian(x)
        delta = np.eye(DIM_BASE)
        return np.einsum("nb,am->nabm", hess, delta) - np.einsum("na,bm->nabm", hess, delta)

    return FieldConfig(
        name=f"sphere_s4:r={r:g}",
        signature=SignatureKind.EUCLIDEAN,
        vierbein=vierbein,
        connection=connection,
        vierbein_partials=vierbein_partials,
        connection_partials=connection_partials,
        box=np.array([[-r] * DIM_BASE, [r] * DIM_BASE]),
        description="Round S^4 with constant sectional curvature 1/r^2",
    )


@scenario(
    name="constant_contorsion",
    description="Flat vierbein with a constant connection of amplitude s (non-zero torsion and curvature)",
    signature=SignatureKind.LORENTZIAN,
    parameters={"s": 0.1},
    analytic=True,
)
def constant_contorsion(s: float = 0.1) -> FieldConfig:
    """e = I and A^a_{b mu} = s c_{i mu} (u_i)^a_b with fixed coefficients c_{i mu} = sin(1 + i + 2 mu)."""
    tables = build_algebra(SignatureKind.LORENTZIAN)
    coefficients = np.sin(1.0 + np.arange(6)[:, None] + 2.0 * np.arange(DIM_BASE)[None, :])
    constant = s * np.einsum("im,iab->abm", coefficients, tables.rep_g)
    return FieldConfig(
        name=f"constant_contorsion:s={s:g}",
        signature=SignatureKind.LORENTZIAN,
        vierbein=lambda x: np.eye(DIM_BASE),
        connection=lambda x: constant.copy(),
        vierbein_partials=lambda x: _ZERO_E_PARTIALS.copy(),
        connection_partials=lambda x: _ZERO_A_PARTIALS.copy(),
        description="Constant contorsion background",
    )
