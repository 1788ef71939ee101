import math

import numpy as np
import pytest
from scipy.linalg import expm

from app.modules.clifford import (
    adjoint, anticommutator, as_mat2c, charge_conjugate, clifford_check, dirac_pairing, gamma, identity,
    inverse, mat_exp, max_abs_difference, parity_conjugate, sigma, time_reversal_conjugate,
)
from app.modules.free_states import u_plus, v_plus
from app.modules.point_interaction import PointInteraction, Species, Symmetry, matching_matrix, transform
from app.utils.error_handler import DomainError


def test_clifford_relations_hold_exactly():
    assert clifford_check()
    assert np.array_equal(gamma(0) @ gamma(0), identity())
    assert np.array_equal(gamma(1) @ gamma(1), -identity())
    assert np.array_equal(anticommutator(gamma(0), gamma(1)), np.zeros((2, 2)))


def test_representation_is_fixed():
    assert np.array_equal(gamma(0), sigma(3))
    assert np.array_equal(gamma(1), 1j * sigma(2))
    assert np.array_equal(gamma(2), sigma(1))


@pytest.mark.parametrize("index", [-1, 3, 4])
def test_invalid_gamma_index(index):
    with pytest.raises(DomainError):
        gamma(index)


def test_invalid_sigma_index():
    with pytest.raises(DomainError):
        sigma(0)


def test_constants_are_not_shared():
    g = gamma(0)
    g[0, 0] = 5
    assert gamma(0)[0, 0] == 1


def test_as_mat2c_accepts_flat_entries():
    assert np.array_equal(as_mat2c([1, 2, 3, 4]), np.array([[1, 2], [3, 4]], dtype=complex))
    with pytest.raises(DomainError):
        as_mat2c([1, 2, 3])


def test_mat_exp_of_zero_is_identity():
    assert max_abs_difference(mat_exp(np.zeros((2, 2))), identity()) == 0.0


def test_mat_exp_diagonal():
    result = mat_exp(np.diag([1.0, 2.0]))
    assert abs(result[0, 0] - math.e) < 1e-13
    assert abs(result[1, 1] - math.e ** 2) < 1e-12
    assert abs(result[0, 1]) < 1e-15


def test_mat_exp_nilpotent_uses_series():
    result = mat_exp(np.array([[0, 1], [0, 0]]))
    assert max_abs_difference(result, np.array([[1, 1], [0, 1]])) < 1e-15


def test_mat_exp_matches_scipy(rng):
    for _ in range(50):
        matrix = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        expected = expm(matrix)
        assert max_abs_difference(mat_exp(matrix), expected) < 1e-12 * max(1.0, np.max(np.abs(expected)))


def test_mat_exp_near_degenerate_eigenvalues():
    matrix = np.array([[0.0, 1e-9], [1e-9, 0.0]])
    assert max_abs_difference(mat_exp(matrix), expm(matrix)) < 1e-15


def test_mat_exp_rejects_non_finite():
    with pytest.raises(DomainError):
        mat_exp(np.array([[np.nan, 0], [0, 0]]))


def test_inverse():
    matrix = np.array([[2, 1j], [0.5, 3]])
    assert max_abs_difference(inverse(matrix) @ matrix, identity()) < 1e-15
    with pytest.raises(DomainError):
        inverse(np.zeros((2, 2)))


def test_discrete_conjugations_of_matching_matrix(rng):
    for q, lam in rng.uniform(-3, 3, size=(20, 2)):
        impurity = PointInteraction(0.0, q, lam)
        matrix = matching_matrix(impurity, Species.ELECTRON)
        assert max_abs_difference(parity_conjugate(matrix), matrix) < 1e-12
        assert max_abs_difference(time_reversal_conjugate(matrix), matrix) < 1e-12
        flipped = matching_matrix(transform(impurity, Symmetry.C), Species.ELECTRON)
        assert max_abs_difference(charge_conjugate(matrix), flipped) < 1e-12
        assert max_abs_difference(charge_conjugate(matrix), matching_matrix(impurity, Species.POSITRON)) < 1e-12


def test_dirac_pairing_orthogonality():
    for k in (0.1, 1.0, 7.5):
        assert abs(dirac_pairing(u_plus(1.0, k), v_plus(1.0, k))) < 1e-15


@pytest.mark.parametrize("mu", [0, 1])
def test_gammas_are_pseudo_hermitian(mu):
    assert np.array_equal(adjoint(gamma(mu)), gamma(0) @ gamma(mu) @ gamma(0))


def test_mat_exp_of_traceless_has_unit_determinant(rng):
    for _ in range(200):
        matrix = rng.uniform(-1, 1, size=(2, 2)) + 1j * rng.uniform(-1, 1, size=(2, 2))
        matrix[1, 1] = -matrix[0, 0]
        result = mat_exp(matrix)
        det = result[0, 0] * result[1, 1] - result[0, 1] * result[1, 0]
        assert abs(det - 1) < 1e-13


def test_mat_exp_inverse_is_exp_of_negative(rng):
    for _ in range(200):
        matrix = rng.uniform(-3, 3, size=(2, 2))
        product = mat_exp(matrix) @ mat_exp(-matrix)
        assert max_abs_difference(product, identity()) < 1e-12
