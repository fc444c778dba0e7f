"""Shorthand forms built from a coframe and the identities relating them.

For a coframe e^a of an n-dimensional chart: e^(n) = e^0 ^ ... ^ e^(n-1),
e^(n-1)_a = v_a _| e^(n), e^(n-2)_{ab} = v_b _| e^(n-1)_a, where v_a is the dual frame.
In four dimensions the epsilon shorthands e^(2)_{ab} = 1/2 eps_{abcd} e^c ^ e^d and
e^(1)_{abc} = eps_{abcd} e^d coincide with the contraction definitions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fbgravity.algebra.tables import DIM_BASE, DIM_G, levi_civita_symbol
from fbgravity.forms.form import FormValue, codim1, codim2, contract, wedge, wedge_all


@dataclass(frozen=True)
class CoframeForms:
    """A coframe and its shorthand forms at one point."""

    coframe: FormValue  # value axis [a]
    dual: np.ndarray  # rows are the dual vectors v_a
    volume: FormValue
    codim1: FormValue  # [a]
    codim2: FormValue  # [a, b]


def coframe_forms(matrix: np.ndarray, rows: slice | None = None) -> CoframeForms:
    """Shorthand forms of the coframe given by selected rows of a chart coframe matrix.

    Args:
        matrix: Invertible n x n matrix whose rows are chart components of n 1-forms.
        rows: Rows forming the sub-coframe (default: all). Dual vectors come from
            the full inverse so that they annihilate the remaining rows.
    """
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[0]
    rows = slice(None) if rows is None else rows
    coframe = FormValue(n, 1, matrix[rows])
    dual = np.linalg.inv(matrix).T[rows]
    count = coframe.components.shape[0]
    volume = wedge_all(*(coframe.take(a) for a in range(count)))
    return CoframeForms(coframe, dual, volume, codim1(n, dual, volume), codim2(n, dual, volume))


def epsilon_two_forms(coframe: FormValue) -> FormValue:
    """e^(2)_{ab} = 1/2 eps_{abcd} e^c ^ e^d, value axes [a, b]."""
    eps = levi_civita_symbol()
    pairs = wedge(coframe.take((slice(None), None)), coframe.take((None, slice(None))))
    return FormValue(coframe.n, 2, 0.5 * np.einsum("abcd,cdI->abI", eps, pairs.components))


def epsilon_one_forms(coframe: FormValue) -> FormValue:
    """e^(1)_{abc} = eps_{abcd} e^d, value axes [a, b, c]."""
    eps = levi_civita_symbol()
    return FormValue(coframe.n, 1, np.einsum("abcd,dI->abcI", eps, coframe.components))


def _random_coframe(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        matrix = np.eye(n) + 0.4 * rng.normal(size=(n, n))
        if abs(np.linalg.det(matrix)) > 0.1:
            return matrix


def notation_identity_residuals(rng: np.random.Generator, draws: int = 10) -> dict[str, float]:
    """Residuals of the coframe shorthand identities on random coframes.

    Returns:
        Mapping with keys ``wedge_codim1``, ``codim2_epsilon``, ``codim3_epsilon``,
        ``wedge_pair_codim2``, ``fiber_wedge_codim2`` and ``double_contraction``.
    """
    worst = dict.fromkeys(
        ("wedge_codim1", "codim2_epsilon", "codim3_epsilon", "wedge_pair_codim2", "fiber_wedge_codim2", "double_contraction"),
        0.0,
    )
    delta = np.eye(DIM_BASE)
    for _ in range(draws):
        base = coframe_forms(_random_coframe(rng, DIM_BASE))
        e, vol = base.coframe, base.volume.components

        # e^a ^ e^(3)_b = delta^a_b e^(4)
        lemma0 = wedge(e.take((slice(None), None)), base.codim1.take((None, slice(None))))
        _bump(worst, "wedge_codim1", lemma0.components - np.einsum("ab,I->abI", delta, vol))

        two = epsilon_two_forms(e)
        _bump(worst, "codim2_epsilon", base.codim2.components - two.components)

        # v_c _| e^(2)_{ab} = e^(1)_{abc}
        three = contract(base.dual[None, None, :, :], FormValue(e.n, 2, two.components[:, :, None, :]))
        _bump(worst, "codim3_epsilon", three.components - epsilon_one_forms(e).components)

        # e^c ^ e^d ^ e^(2)_{ab} = (delta^c_a delta^d_b - delta^c_b delta^d_a) e^(4)
        cd = wedge(e.take((slice(None), None)), e.take((None, slice(None))))
        full = wedge(cd.take((slice(None), slice(None), None, None)), two.take((None, None, slice(None), slice(None))))
        expected = np.einsum("ca,db->cdab", delta, delta) - np.einsum("cb,da->cdab", delta, delta)
        _bump(worst, "wedge_pair_codim2", full.components - np.einsum("cdab,I->cdabI", expected, vol))

        # theta^l ^ theta^(4)_{jk} = delta^l_k theta^(5)_j - delta^l_j theta^(5)_k on a 6-dimensional chart
        fiber = coframe_forms(_random_coframe(rng, DIM_G))
        delta6 = np.eye(DIM_G)
        lhs = wedge(fiber.coframe.take((slice(None), None, None)), fiber.codim2.take((None, slice(None), slice(None))))
        rhs = np.einsum("lk,jI->ljkI", delta6, fiber.codim1.components) - np.einsum("lj,kI->ljkI", delta6, fiber.codim1.components)
        _bump(worst, "fiber_wedge_codim2", lhs.components - rhs)

        # v_i _| (v_i _| theta^(6)) = 0
        _bump(worst, "double_contraction", fiber.codim2.components[np.arange(DIM_G), np.arange(DIM_G)])
    return worst


def _bump(worst: dict[str, float], key: str, value: np.ndarray) -> None:
    worst[key] = max(worst[key], float(np.max(np.abs(value))))
