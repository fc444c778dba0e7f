"""Dense exterior forms over increasing multi-indices.

A ``FormValue`` holds the components of a k-form on an n-dimensional chart at
one point. Components live in the last axis, ordered like
``itertools.combinations(range(n), k)``; any leading axes are value axes
(e.g. the ten components of a p*-valued form).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import itertools
from math import comb

import numpy as np

from fbgravity.exceptions import FormDegreeError


@lru_cache(maxsize=None)
def combinations(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing multi-indices of length k in range(n)."""
    return tuple(itertools.combinations(range(n), k))


@lru_cache(maxsize=None)
def combination_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {c: i for i, c in enumerate(combinations(n, k))}


def _merge_sign(first: tuple[int, ...], second: tuple[int, ...]) -> int:
    inversions = sum(1 for i in first for j in second if i > j)
    return -1 if inversions % 2 else 1


def permutation_sign(indices: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted tuple of a multi-index; sign 0 on repeated indices."""
    if len(set(indices)) != len(indices):
        return 0, tuple(sorted(indices))
    inversions = sum(1 for i in range(len(indices)) for j in range(i + 1, len(indices)) if indices[i] > indices[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


@lru_cache(maxsize=None)
def _wedge_table(n: int, k: int, l: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    out_index = combination_index(n, k + l)
    ia, ib, io, sign = [], [], [], []
    for a, first in enumerate(combinations(n, k)):
        first_set = set(first)
        for b, second in enumerate(combinations(n, l)):
            if first_set.intersection(second):
                continue
            ia.append(a)
            ib.append(b)
            io.append(out_index[tuple(sorted(first + second))])
            sign.append(_merge_sign(first, second))
    return np.array(ia, dtype=int), np.array(ib, dtype=int), np.array(io, dtype=int), np.array(sign, dtype=float)


@lru_cache(maxsize=None)
def _contract_table(n: int, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    out_index = combination_index(n, k - 1)
    i_in, i_vec, i_out, sign = [], [], [], []
    for a, multi in enumerate(combinations(n, k)):
        for s, idx in enumerate(multi):
            i_in.append(a)
            i_vec.append(idx)
            i_out.append(out_index[multi[:s] + multi[s + 1:]])
            sign.append(-1.0 if s % 2 else 1.0)
    return np.array(i_in, dtype=int), np.array(i_vec, dtype=int), np.array(i_out, dtype=int), np.array(sign)


@lru_cache(maxsize=None)
def derivative_table(n: int, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Table for (d omega)_J = sum_s (-1)^s d_{j_s} omega_{J minus j_s}.

    Returns:
        Arrays (target J, direction j_s, source index, sign).
    """
    source_index = combination_index(n, k)
    i_out, i_dir, i_src, sign = [], [], [], []
    for j, multi in enumerate(combinations(n, k + 1)):
        for s, idx in enumerate(multi):
            i_out.append(j)
            i_dir.append(idx)
            i_src.append(source_index[multi[:s] + multi[s + 1:]])
            sign.append(-1.0 if s % 2 else 1.0)
    return np.array(i_out, dtype=int), np.array(i_dir, dtype=int), np.array(i_src, dtype=int), np.array(sign)


@dataclass(frozen=True, eq=False)
class FormValue:
    """Components of a (possibly vector-valued) k-form at a point.

    Attributes:
        n: Dimension of the chart.
        degree: Form degree k.
        components: Array of shape (..., C(n, k)).
    """

    n: int
    degree: int
    components: np.ndarray

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= self.n:
            raise FormDegreeError(f"Degree {self.degree} out of range for dimension {self.n}")
        comps = np.asarray(self.components, dtype=float)
        if comps.ndim == 0 or comps.shape[-1] != comb(self.n, self.degree):
            raise FormDegreeError(f"Expected {comb(self.n, self.degree)} components for a {self.degree}-form in dimension {self.n}, got shape {comps.shape}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, n: int, degree: int, value_shape: tuple[int, ...] = ()) -> FormValue:
        return cls(n, degree, np.zeros(value_shape + (comb(n, degree),)))

    @classmethod
    def scalar(cls, n: int, value: float | np.ndarray) -> FormValue:
        return cls(n, 0, np.asarray(value, dtype=float)[..., None])

    @classmethod
    def basis(cls, n: int, indices: tuple[int, ...]) -> FormValue:
        """The form dz^{i_1} ^ ... ^ dz^{i_k} (any order, sign tracked)."""
        sign, ordered = permutation_sign(tuple(indices))
        form = cls.zero(n, len(indices))
        if sign:
            form.components[combination_index(n, len(indices))[ordered]] = sign
        return form

    @classmethod
    def one_form(cls, covector: np.ndarray) -> FormValue:
        """1-form(s) from components of shape (..., n)."""
        covector = np.asarray(covector, dtype=float)
        return cls(covector.shape[-1], 1, covector)

    @classmethod
    def top(cls, n: int) -> FormValue:
        return cls.basis(n, tuple(range(n)))

    @property
    def value_shape(self) -> tuple[int, ...]:
        return self.components.shape[:-1]

    def component(self, indices: tuple[int, ...]) -> np.ndarray:
        """Component along an arbitrary (unordered) multi-index."""
        sign, ordered = permutation_sign(tuple(indices))
        if not sign:
            return np.zeros(self.value_shape)
        return sign * self.components[..., combination_index(self.n, self.degree)[ordered]]

    def take(self, index) -> FormValue:
        """Select along the value axes."""
        return FormValue(self.n, self.degree, self.components[index])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.components))) if self.components.size else 0.0

    def _check_compatible(self, other: FormValue) -> None:
        if self.n != other.n or self.degree != other.degree:
            raise FormDegreeError(f"Incompatible forms: ({self.n}, {self.degree}) vs ({other.n}, {other.degree})")

    def __add__(self, other: FormValue) -> FormValue:
        self._check_compatible(other)
        return FormValue(self.n, self.degree, self.components + other.components)

    def __sub__(self, other: FormValue) -> FormValue:
        self._check_compatible(other)
        return FormValue(self.n, self.degree, self.components - other.components)

    def __neg__(self) -> FormValue:
        return FormValue(self.n, self.degree, -self.components)

    def __mul__(self, factor: float | np.ndarray) -> FormValue:
        factor = np.asarray(factor, dtype=float)
        return FormValue(self.n, self.degree, self.components * factor[..., None])

    __rmul__ = __mul__

    def __xor__(self, other: FormValue) -> FormValue:
        return wedge(self, other)


def _expand(stacked: np.ndarray, total_ndim: int) -> np.ndarray:
    """Pad value axes of a (T, ...) stack so it broadcasts against total_ndim value axes."""
    missing = total_ndim - (stacked.ndim - 1)
    return stacked.reshape((stacked.shape[0],) + (1,) * missing + stacked.shape[1:])


def wedge(a: FormValue, b: FormValue) -> FormValue:
    """Exterior product; value axes broadcast elementwise.

    Raises:
        FormDegreeError: On degree overflow or dimension mismatch.
    """
    if a.n != b.n:
        raise FormDegreeError(f"Cannot wedge forms on charts of dimension {a.n} and {b.n}")
    n, k, l = a.n, a.degree, b.degree
    if k + l > n:
        raise FormDegreeError(f"Degree overflow: {k} + {l} > {n}")
    ia, ib, io, sign = _wedge_table(n, k, l)
    value_shape = np.broadcast_shapes(a.value_shape, b.value_shape)
    out = np.zeros((comb(n, k + l),) + value_shape)
    if ia.size:
        a_t = _expand(np.moveaxis(a.components, -1, 0)[ia], len(value_shape))
        b_t = _expand(np.moveaxis(b.components, -1, 0)[ib], len(value_shape))
        terms = a_t * b_t * sign.reshape((-1,) + (1,) * len(value_shape))
        np.add.at(out, io, terms)
    return FormValue(n, k + l, np.moveaxis(out, 0, -1))


def wedge_all(*forms: FormValue) -> FormValue:
    result = forms[0]
    for form in forms[1:]:
        result = wedge(result, form)
    return result


def contract(vector: np.ndarray, form: FormValue) -> FormValue:
    """Interior product v _| a with v given in the form's basis.

    Args:
        vector: Components of shape (n,) or (..., n) broadcasting against the value axes.
        form: Form of degree >= 1.

    Raises:
        FormDegreeError: If the form is a 0-form.
    """
    if form.degree < 1:
        raise FormDegreeError("Cannot contract a 0-form")
    vector = np.asarray(vector, dtype=float)
    i_in, i_vec, i_out, sign = _contract_table(form.n, form.degree)
    value_shape = np.broadcast_shapes(form.value_shape, vector.shape[:-1])
    out = np.zeros((comb(form.n, form.degree - 1),) + value_shape)
    comps = _expand(np.moveaxis(form.components, -1, 0)[i_in], len(value_shape))
    vec = _expand(np.moveaxis(vector, -1, 0)[i_vec], len(value_shape))
    terms = comps * vec * sign.reshape((-1,) + (1,) * len(value_shape))
    np.add.at(out, i_out, terms)
    return FormValue(form.n, form.degree - 1, np.moveaxis(out, 0, -1))


def compound_matrix(matrix: np.ndarray, k: int) -> np.ndarray:
    """k-th compound: C[J, I] = det(matrix[J, I]) over increasing multi-indices."""
    n = matrix.shape[0]
    if k == 0:
        return np.ones((1, 1))
    idx = np.array(combinations(n, k), dtype=int)
    sub = matrix[idx[:, None, :, None], idx[None, :, None, :]]
    return np.linalg.det(sub)


def change_basis(form: FormValue, matrix: np.ndarray) -> FormValue:
    """Rewrite a form given in the basis theta^A = M^A_mu dz^mu in the dz basis.

    Passing ``inv(M)`` performs the inverse transformation.
    """
    compound = compound_matrix(np.asarray(matrix, dtype=float), form.degree)
    return FormValue(form.n, form.degree, form.components @ compound)


def decompose(form: FormValue, basis_forms: FormValue) -> tuple[np.ndarray, float]:
    """Coefficients of ``form`` along a family of basis forms of the same degree.

    Args:
        form: Form with value shape (...).
        basis_forms: Forms with value shape (m,).

    Returns:
        Coefficients of shape (..., m) and the max-abs reconstruction residual.
    """
    if form.n != basis_forms.n or form.degree != basis_forms.degree:
        raise FormDegreeError(f"Cannot decompose a {form.degree}-form along {basis_forms.degree}-forms")
    basis = basis_forms.components.reshape(-1, basis_forms.components.shape[-1])
    flat = form.components.reshape(-1, form.components.shape[-1])
    coeffs, *_ = np.linalg.lstsq(basis.T, flat.T, rcond=None)
    residual = float(np.max(np.abs(coeffs.T @ basis - flat))) if flat.size else 0.0
    return coeffs.T.reshape(form.value_shape + (basis.shape[0],)), residual


def codim1(n: int, vectors: np.ndarray, top: FormValue | None = None) -> FormValue:
    """theta^(n-1)_i = v_i _| theta^(n) for the dual vectors v_i (rows of ``vectors``)."""
    top = FormValue.top(n) if top is None else top
    return contract(vectors, top)


def codim2(n: int, vectors: np.ndarray, top: FormValue | None = None) -> FormValue:
    """theta^(n-2)_{ij} = v_j _| (v_i _| theta^(n)), value axes [i, j]."""
    first = codim1(n, vectors, top)
    return contract(np.asarray(vectors)[None, :, :], FormValue(n, first.degree, first.components[:, None, :]))
