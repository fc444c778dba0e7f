"""Vierbein/connection pairs (e, A) on a chart of the base manifold."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
from typing import Callable

import numpy as np

from fbgravity.algebra.tables import DIM_BASE, Signature, SignatureKind
from fbgravity.exceptions import VierbeinError
from fbgravity.forms.derivative import RANK_TOLERANCE, DiffConfig, partials

logger = logging.getLogger(__name__)

ArrayField = Callable[[np.ndarray], np.ndarray]


def _everywhere(x: np.ndarray) -> bool:
    return True


@dataclass(frozen=True, eq=False)
class FieldConfig:
    """A vierbein e^a_mu(x) and a connection A^a_{b mu}(x).

    Attributes:
        name: Scenario identity, e.g. ``schwarzschild:M=1.0``.
        signature: Signature of h.
        vierbein: x -> e[a, mu].
        connection: x -> A[a, b, mu].
        vierbein_partials: Optional x -> d_nu e, stored [nu, a, mu].
        connection_partials: Optional x -> d_nu A, stored [nu, a, b, mu].
        domain: Predicate on x.
        box: Default sampling box, shape (2, 4) with lower and upper corners.
        description: Human-readable summary.
    """

    name: str
    signature: SignatureKind
    vierbein: ArrayField
    connection: ArrayField
    vierbein_partials: ArrayField | None = None
    connection_partials: ArrayField | None = None
    domain: Callable[[np.ndarray], bool] = _everywhere
    box: np.ndarray = field(default_factory=lambda: np.array([[-1.0] * DIM_BASE, [1.0] * DIM_BASE]))
    description: str = ""

    @property
    def h(self) -> np.ndarray:
        return Signature(SignatureKind(self.signature)).h

    @property
    def h_inv(self) -> np.ndarray:
        return Signature(SignatureKind(self.signature)).h_inv

    @property
    def has_analytic_partials(self) -> bool:
        return self.vierbein_partials is not None and self.connection_partials is not None

    def e(self, x: np.ndarray) -> np.ndarray:
        """Vierbein at x.

        Raises:
            VierbeinError: If e(x) is singular.
        """
        e = np.asarray(self.vierbein(np.asarray(x, dtype=float)), dtype=float)
        det = float(np.linalg.det(e))
        if abs(det) < RANK_TOLERANCE:
            raise VierbeinError(f"Vierbein of '{self.name}' is singular at x={np.asarray(x).tolist()} (det={det:.3e})", det=det)
        return e

    def frame(self, x: np.ndarray) -> np.ndarray:
        """Dual frame E[mu, a] = E^mu_a with e^a_mu E^mu_b = delta^a_b."""
        return np.linalg.inv(self.e(x))

    def A(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.connection(np.asarray(x, dtype=float)), dtype=float)

    def de(self, x: np.ndarray, diff: DiffConfig) -> np.ndarray:
        """d_nu e^a_mu, stored [nu, a, mu]."""
        return partials(self.vierbein, np.asarray(x, dtype=float), diff, self.vierbein_partials)

    def dA(self, x: np.ndarray, diff: DiffConfig) -> np.ndarray:
        """d_nu A^a_{b mu}, stored [nu, a, b, mu]."""
        return partials(self.connection, np.asarray(x, dtype=float), diff, self.connection_partials)

    def contains(self, x: np.ndarray) -> bool:
        return bool(self.domain(np.asarray(x, dtype=float)))

    def antisymmetry_deviation(self, x: np.ndarray) -> float:
        """max |A^{ab}_mu + A^{ba}_mu| with A^{ab} = A^a_{b'} h^{b'b}."""
        upper = np.einsum("acm,cb->abm", self.A(x), self.h_inv)
        return float(np.max(np.abs(upper + np.swapaxes(upper, 0, 1))))
