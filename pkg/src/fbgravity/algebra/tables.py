"""Constant Lie-theoretic tables for the Lorentz/rotation algebra and its affine extension.

Index conventions: arrays store indices in the order they are written in the
symbol, e.g. ``rep_g[i, a, b]`` is (u_i)^a_b, ``dual_mixed[i, b, a]`` is u^{ib}_a
and ``struct_p[A, B, C]`` is c^A_{BC}. The Poincare index A runs over the four
translations first (A = a = 0..3) and then the six generators of g (A = 4 + i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
import itertools
import logging

import numpy as np

from fbgravity.exceptions import AlgebraError

logger = logging.getLogger(__name__)

DIM_BASE = 4
DIM_G = 6
DIM_P = DIM_BASE + DIM_G

# Index pairs (ab) of the generators M_ab, rotations first, then boosts.
GENERATOR_PAIRS: tuple[tuple[int, int], ...] = ((2, 3), (3, 1), (1, 2), (0, 1), (0, 2), (0, 3))


class SignatureKind(str, Enum):
    """Signature of the bilinear form h."""

    EUCLIDEAN = "euclidean"
    LORENTZIAN = "lorentzian"


class BasisConvention(str, Enum):
    """Ordering of the generators u_4..u_9."""

    CANONICAL = "canonical"  # rotations then boosts
    BOOSTS_FIRST = "boosts_first"


@dataclass(frozen=True)
class Signature:
    """Non-degenerate symmetric bilinear form h on the model space."""

    kind: SignatureKind

    @classmethod
    def from_name(cls, name: str | SignatureKind) -> Signature:
        """Build a signature from its name.

        Args:
            name: ``"euclidean"`` or ``"lorentzian"``.

        Returns:
            Signature instance.

        Raises:
            AlgebraError: If the name is unknown.
        """
        try:
            return cls(SignatureKind(name))
        except ValueError as e:
            raise AlgebraError(f"Unknown signature '{name}'. Expected one of: {[k.value for k in SignatureKind]}") from e

    @property
    def diagonal(self) -> np.ndarray:
        if self.kind is SignatureKind.EUCLIDEAN:
            return np.ones(DIM_BASE)
        return np.array([1.0, -1.0, -1.0, -1.0])

    @property
    def h(self) -> np.ndarray:
        return np.diag(self.diagonal)

    @property
    def h_inv(self) -> np.ndarray:
        # Entries are +-1, so the inverse is exact.
        return np.diag(1.0 / self.diagonal)


def levi_civita_symbol() -> np.ndarray:
    """Totally antisymmetric symbol with eps[0, 1, 2, 3] = +1."""
    eps = np.zeros((DIM_BASE,) * 4)
    for perm in itertools.permutations(range(DIM_BASE)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


def generator_matrix(pair: tuple[int, int], h: np.ndarray) -> np.ndarray:
    """Generator (M_ab)^c_d = delta^c_a h_bd - delta^c_b h_ad."""
    a, b = pair
    m = np.zeros((DIM_BASE, DIM_BASE))
    m[a, :] += h[b, :]
    m[b, :] -= h[a, :]
    return m


@dataclass(frozen=True, eq=False)
class AlgebraTables:
    """Immutable constant data of g, t and p = g + t for one signature.

    Attributes:
        signature: Bilinear form h.
        convention: Ordering of the generators.
        rep_g: (u_i)^a_b, shape (6, 4, 4).
        struct_g: c^k_{ij}, shape (6, 6, 6).
        struct_p: c^A_{BC}, shape (10, 10, 10).
        kappa: kappa^{ab}_A, shape (4, 4, 10).
        dual_lower: u^i_{ab}, shape (6, 4, 4).
        dual_mixed: u^{ib}_a stored as [i, b, a], shape (6, 4, 4).
        epsilon: eps_{abcd}, shape (4, 4, 4, 4).
    """

    signature: Signature
    convention: BasisConvention
    rep_g: np.ndarray
    struct_g: np.ndarray
    struct_p: np.ndarray
    kappa: np.ndarray
    dual_lower: np.ndarray
    dual_mixed: np.ndarray
    epsilon: np.ndarray
    gram: np.ndarray = field(repr=False)

    @property
    def h(self) -> np.ndarray:
        return self.signature.h

    @property
    def h_inv(self) -> np.ndarray:
        return self.signature.h_inv

    @cached_property
    def rep_upper(self) -> np.ndarray:
        """u_i^{ab} = (u_i)^a_{b'} h^{b'b}."""
        return np.einsum("iac,cb->iab", self.rep_g, self.h_inv)

    @cached_property
    def kappa_mixed(self) -> np.ndarray:
        """kappa_a^{bcd} = u^{ib}_a kappa_i^{cd}, stored as [a, b, c, d]."""
        return np.einsum("iba,cdi->abcd", self.dual_mixed, self.kappa[:, :, DIM_BASE:])

    @cached_property
    def affine_basis(self) -> np.ndarray:
        """The 10 basis elements l_A of p as 5x5 affine matrices."""
        basis = np.zeros((DIM_P, DIM_BASE + 1, DIM_BASE + 1))
        for a in range(DIM_BASE):
            basis[a, a, DIM_BASE] = 1.0
        basis[DIM_BASE:, :DIM_BASE, :DIM_BASE] = self.rep_g
        return basis

    def g_components(self, matrix: np.ndarray) -> np.ndarray:
        """Components xi^i = 1/2 u^{ib}_a xi^a_b of h-antisymmetric matrices.

        Args:
            matrix: Array of shape (..., 4, 4) holding xi^a_b.

        Returns:
            Array of shape (..., 6).
        """
        return 0.5 * np.einsum("iba,...ab->...i", self.dual_mixed, matrix)

    def g_matrix(self, components: np.ndarray) -> np.ndarray:
        """Matrix xi^a_b = xi^i (u_i)^a_b from components of shape (..., 6)."""
        return np.einsum("...i,iab->...ab", components, self.rep_g)

    def covector_tensor(self, components: np.ndarray) -> np.ndarray:
        """Tensor view lambda_a^b = u^{ib}_a lambda_i of g* components (..., 6)."""
        return np.einsum("iba,...i->...ab", self.dual_mixed, components)

    def covector_components(self, tensor: np.ndarray) -> np.ndarray:
        """g* components lambda_j = 1/2 lambda_a^b (u_j)^a_b of tensors (..., 4, 4).

        Tensors outside the image of the tensor view are projected onto it.
        """
        return 0.5 * np.einsum("...ab,jab->...j", tensor, self.rep_g)

    def p_components(self, affine: np.ndarray) -> np.ndarray:
        """Components xi^A of a 5x5 affine matrix of p."""
        out = np.empty(affine.shape[:-2] + (DIM_P,))
        out[..., :DIM_BASE] = affine[..., :DIM_BASE, DIM_BASE]
        out[..., DIM_BASE:] = self.g_components(affine[..., :DIM_BASE, :DIM_BASE])
        return out

    def bracket(self, xi: np.ndarray, zeta: np.ndarray) -> np.ndarray:
        """Components of [xi, zeta] = l_A c^A_{BC} xi^B zeta^C."""
        return np.einsum("ABC,B,C->A", self.struct_p, xi, zeta)

    def ad_matrix(self, xi: np.ndarray) -> np.ndarray:
        """Matrix (ad_xi)^A_B = c^A_{CB} xi^C of shape (10, 10)."""
        return np.einsum("ACB,C->AB", self.struct_p, xi)

    def ad_g_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix (ad_y)^i_j = c^i_{kj} y^k on g, shape (6, 6)."""
        return np.einsum("ikj,k->ij", self.struct_g, y)


def build_algebra(
    signature: Signature | SignatureKind | str = SignatureKind.LORENTZIAN,
    convention: BasisConvention | str = BasisConvention.CANONICAL,
) -> AlgebraTables:
    """Build all constant tables for the given signature.

    Dual coefficients come from solving the Gram system of the pairing, and the
    structure constants from matrix commutators of the generators and of the
    affine 5x5 representation of p.

    Args:
        signature: Signature (or its name).
        convention: Generator ordering.

    Returns:
        Immutable algebra tables.

    Raises:
        AlgebraError: If the Gram matrix of the generators is singular.
    """
    if not isinstance(signature, Signature):
        signature = Signature.from_name(signature)
    convention = BasisConvention(convention)

    h = signature.h
    h_inv = signature.h_inv
    pairs = GENERATOR_PAIRS if convention is BasisConvention.CANONICAL else GENERATOR_PAIRS[3:] + GENERATOR_PAIRS[:3]
    rep_g = np.stack([generator_matrix(pair, h) for pair in pairs])

    upper = np.einsum("iac,cb->iab", rep_g, h_inv)
    lowered = np.einsum("ac,kcd,db->kab", h, upper, h)
    gram = 0.5 * np.einsum("kab,jab->kj", lowered, upper)
    if abs(np.linalg.det(gram)) < 1e-12:
        raise AlgebraError(f"Singular Gram matrix for generators (det={np.linalg.det(gram):.3e})")
    dual_lower = np.einsum("ik,kab->iab", np.linalg.inv(gram), lowered)
    dual_mixed = np.einsum("iac,cb->iba", dual_lower, h_inv)

    commutators = np.einsum("iab,jbc->ijac", rep_g, rep_g) - np.einsum("jab,ibc->ijac", rep_g, rep_g)
    struct_g = 0.5 * np.einsum("kba,ijab->kij", dual_mixed, commutators)

    partial = AlgebraTables(
        signature=signature,
        convention=convention,
        rep_g=rep_g,
        struct_g=struct_g,
        struct_p=np.zeros((DIM_P,) * 3),
        kappa=np.zeros((DIM_BASE, DIM_BASE, DIM_P)),
        dual_lower=dual_lower,
        dual_mixed=dual_mixed,
        epsilon=levi_civita_symbol(),
        gram=gram,
    )
    basis = partial.affine_basis
    affine_commutators = np.einsum("Bxy,Cyz->BCxz", basis, basis) - np.einsum("Cxy,Byz->BCxz", basis, basis)
    struct_p = np.moveaxis(partial.p_components(affine_commutators), -1, 0)

    kappa = np.zeros((DIM_BASE, DIM_BASE, DIM_P))
    kappa[:, :, DIM_BASE:] = 2.0 * np.moveaxis(upper, 0, -1)

    tables = AlgebraTables(
        signature=signature,
        convention=convention,
        rep_g=rep_g,
        struct_g=struct_g,
        struct_p=struct_p,
        kappa=kappa,
        dual_lower=dual_lower,
        dual_mixed=dual_mixed,
        epsilon=partial.epsilon,
        gram=gram,
    )
    logger.debug(f"Built algebra tables for {signature.kind.value} signature ({convention.value} basis)")
    return tables
