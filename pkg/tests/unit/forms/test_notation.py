"""Unit tests for coframe shorthand forms."""

import numpy as np

from fbgravity.forms import coframe_forms, epsilon_two_forms, notation_identity_residuals


def test_notation_identities() -> None:
    """Test all shorthand identities on random coframes."""
    residuals = notation_identity_residuals(np.random.default_rng(0), draws=5)
    assert set(residuals) == {
        "wedge_codim1",
        "codim2_epsilon",
        "codim3_epsilon",
        "wedge_pair_codim2",
        "fiber_wedge_codim2",
        "double_contraction",
    }
    for name, value in residuals.items():
        assert value < 1e-11, f"{name}: {value}"


def test_identity_coframe_shorthands() -> None:
    """Test e^(3)_0 = dx^1 ^ dx^2 ^ dx^3 for the identity coframe."""
    forms = coframe_forms(np.eye(4))
    assert forms.volume.components.tolist() == [1.0]
    assert np.isclose(forms.codim1.take(0).component((1, 2, 3)), 1.0)
    assert np.allclose(forms.codim2.components, epsilon_two_forms(forms.coframe).components)


def test_sub_coframe_duals_annihilate_other_rows() -> None:
    """Test that the duals of a sub-coframe annihilate the remaining rows."""
    matrix = np.eye(6) + 0.1 * np.arange(36).reshape(6, 6) / 36.0
    forms = coframe_forms(matrix, slice(0, 4))
    assert np.allclose(forms.dual @ matrix[4:].T, 0.0, atol=1e-12)
    assert np.allclose(forms.dual @ matrix[:4].T, np.eye(4), atol=1e-12)
