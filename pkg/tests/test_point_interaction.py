import math

import numpy as np
import pytest

from app.modules.clifford import identity, max_abs_difference
from app.modules.point_interaction import (
    CouplingRegion, PointInteraction, Species, Symmetry, coupling_matrix, coupling_region,
    matching_matrix, reduce_angle, species_dual, transform,
)
from app.utils.error_handler import DomainError


@pytest.mark.parametrize("q, region", [
    (math.pi / 6, CouplingRegion.QUADRANT_I),
    (2 * math.pi / 3, CouplingRegion.QUADRANT_II),
    (7 * math.pi / 6, CouplingRegion.QUADRANT_III),
    (5 * math.pi / 3, CouplingRegion.QUADRANT_IV),
    (-math.pi / 6, CouplingRegion.QUADRANT_IV),
    (0.0, CouplingRegion.ZERO),
    (math.pi / 2, CouplingRegion.HALF_PI),
    (math.pi, CouplingRegion.PI),
    (3 * math.pi / 2, CouplingRegion.THREE_HALVES_PI),
    (2 * math.pi, CouplingRegion.ZERO),
])
def test_coupling_region(q, region):
    assert coupling_region(q) is region


def test_reduce_angle():
    assert abs(reduce_angle(-0.1) - (2 * math.pi - 0.1)) < 1e-15
    assert reduce_angle(0.3 + 4 * math.pi) == pytest.approx(0.3, abs=1e-14)


def test_species_parse():
    assert Species.parse(" Electron ") is Species.ELECTRON
    assert Species.POSITRON.charge_sign == -1
    with pytest.raises(DomainError):
        Species.parse("muon")


def test_point_interaction_rejects_non_finite():
    with pytest.raises(DomainError):
        PointInteraction(0.0, float("nan"), 0.0)
    with pytest.raises(DomainError):
        PointInteraction(float("inf"), 0.0, 0.0)


def test_point_interaction_classification():
    assert PointInteraction(0.0, 0.8, 0.0).is_electrostatic
    assert PointInteraction(0.0, 0.0, -1.0).is_mass_spike
    assert not PointInteraction(0.0, 0.4, 0.9).is_pure
    assert PointInteraction(0.0, 0.0, 0.0).is_pure
    assert PointInteraction(0.0, 3.0, 0.0).q_reduced == 3.0


def test_coupling_matrix():
    assert max_abs_difference(coupling_matrix(0.3, 0.5), np.diag([0.8, -0.2])) < 1e-15


def test_zero_coupling_is_transparent():
    for species in Species:
        assert max_abs_difference(matching_matrix(PointInteraction(), species), identity()) < 1e-15


def test_electrostatic_matching_closed_form(rng):
    for q in rng.uniform(-5, 5, 50):
        expected = np.array([[math.cos(q), -1j * math.sin(q)], [-1j * math.sin(q), math.cos(q)]])
        assert max_abs_difference(matching_matrix(PointInteraction(0.0, q, 0.0), Species.ELECTRON), expected) < 1e-13


def test_mass_spike_matching_closed_form(rng):
    for lam in rng.uniform(-5, 5, 50):
        expected = np.array([[math.cosh(lam), 1j * math.sinh(lam)], [-1j * math.sinh(lam), math.cosh(lam)]])
        matrix = matching_matrix(PointInteraction(0.0, 0.0, lam), Species.ELECTRON)
        assert max_abs_difference(matrix, expected) < 1e-13


def test_light_cone_coupling_is_smooth():
    # q = λ: gerador nilpotente, T = 𝟙 + A
    matrix = matching_matrix(PointInteraction(0.0, 0.7, 0.7), Species.ELECTRON)
    assert max_abs_difference(matrix, np.array([[1, 0], [-1.4j, 1]])) < 1e-15


def test_matching_is_unimodular(rng):
    for q, lam in rng.uniform(-4, 4, size=(30, 2)):
        matrix = matching_matrix(PointInteraction(0.0, q, lam), Species.POSITRON)
        assert abs(np.linalg.det(matrix) - 1.0) < 1e-11 * max(1.0, np.max(np.abs(matrix)) ** 2)


def test_positron_matching_flips_q():
    impurity = PointInteraction(0.0, 0.8, -0.3)
    assert max_abs_difference(
        matching_matrix(impurity, Species.POSITRON),
        matching_matrix(PointInteraction(0.0, -0.8, -0.3), Species.ELECTRON),
    ) == 0.0


def test_discrete_transforms():
    impurity = PointInteraction(1.0, 0.8, -0.3)
    assert transform(impurity, Symmetry.C) == PointInteraction(1.0, -0.8, -0.3)
    assert transform(impurity, Symmetry.P) == impurity
    assert transform(impurity, Symmetry.T) == impurity
    assert species_dual(impurity) == PointInteraction(1.0, -0.8, 0.3)
