import math

import numpy as np
import pytest

from app.interfaces.spectrum_service import IncidenceSide, PotentialKind, ScatteringResult
from app.modules.analytic_spectra import (
    bound_state_density, closed_form_tan_2delta, density_charge_quadrature,
    electrostatic_amplitudes, electrostatic_bound_state, impurity_amplitudes, impurity_bound_states,
    mass_spike_amplitudes, mass_spike_bound_state, matching_residual, phase_shift_curve,
    pole_condition_residual, s_matrix_eigenphases, tan_two_delta, total_phase_shift,
)
from app.modules.point_interaction import PointInteraction, Species
from app.utils.error_handler import DomainError, InconsistencyError

SQRT3 = math.sqrt(3.0)


class TestElectrostaticBoundStates:

    def test_zero_mode_at_half_pi_is_positron(self):
        state = electrostatic_bound_state(1.0, math.pi / 2)
        assert state.species is Species.POSITRON
        assert state.kappa_b == 1.0
        assert state.omega_b == 0.0
        right = state.spinor_profile(0.5)
        left = state.spinor_profile(-0.5)
        assert abs(right[0] / right[1] - 1j) < 1e-14
        assert abs(left[0] / left[1] + 1j) < 1e-14
        assert abs(abs(right[1]) - abs(left[1])) < 1e-15

    def test_zero_mode_at_three_halves_pi_is_electron(self):
        state = electrostatic_bound_state(1.0, 3 * math.pi / 2)
        assert state.species is Species.ELECTRON
        assert (state.kappa_b, state.omega_b) == (1.0, 0.0)

    def test_first_quadrant_positron(self):
        state = electrostatic_bound_state(1.0, math.pi / 6)
        assert state.species is Species.POSITRON
        assert abs(state.kappa_b - 0.5) < 1e-15
        assert abs(state.omega_b - SQRT3 / 2) < 1e-15
        assert state.sign_flip == 1

    def test_second_quadrant_electron_flips_sign(self):
        state = electrostatic_bound_state(1.0, 2 * math.pi / 3)
        assert state.species is Species.ELECTRON
        assert abs(state.kappa_b - SQRT3 / 2) < 1e-15
        assert abs(state.omega_b - 0.5) < 1e-15
        assert state.sign_flip == -1
        # A^{II} = -A^{I}
        left = state.spinor_profile.limit(0.0, 'left')
        right = state.spinor_profile.limit(0.0, 'right')
        assert abs(right[0] + left[0]) < 1e-15

    @pytest.mark.parametrize("q, species, sign_flip", [
        (7 * math.pi / 6, Species.POSITRON, -1),
        (5 * math.pi / 3, Species.ELECTRON, 1),
    ])
    def test_lower_quadrants(self, q, species, sign_flip):
        state = electrostatic_bound_state(1.0, q)
        assert state.species is species
        assert state.sign_flip == sign_flip
        assert abs(state.kappa_b - abs(math.sin(q))) < 1e-15

    @pytest.mark.parametrize("q", [0.0, math.pi, 2 * math.pi, -math.pi])
    def test_no_state_on_real_axis_boundaries(self, q):
        assert electrostatic_bound_state(1.0, q) is None

    @pytest.mark.parametrize("q", [0.3, 1.2, 2.0, 3.0, 3.5, 4.4, 5.0, 6.0, math.pi / 2, 3 * math.pi / 2])
    def test_states_satisfy_matching_and_normalization(self, q):
        state = electrostatic_bound_state(1.0, q)
        impurity = PointInteraction(0.0, q, 0.0)
        assert matching_residual(state.spinor_profile, [impurity], state.species) < 1e-12
        assert abs(state.spinor_profile.norm_squared() - 1.0) < 1e-12
        assert abs(state.omega_b ** 2 + state.kappa_b ** 2 - 1.0) < 1e-12

    def test_profile_decays(self):
        state = electrostatic_bound_state(1.0, 2.0)
        ratio = state.spinor_profile.density(3.0)[0] / state.spinor_profile.density(2.0)[0]
        assert abs(ratio - math.exp(-2 * state.kappa_b)) < 1e-12

    def test_scales_with_mass(self):
        state = electrostatic_bound_state(2.0, math.pi / 6)
        assert abs(state.kappa_b - 1.0) < 1e-15


class TestMassSpikeBoundStates:

    def test_free_case(self):
        assert mass_spike_bound_state(1.0, 0.0) is None

    def test_negative_lambda_binds_electron(self):
        state = mass_spike_bound_state(1.0, -1.0)
        assert state.species is Species.ELECTRON
        assert abs(state.kappa_b - math.tanh(1.0)) < 1e-15
        assert abs(state.omega_b - 1 / math.cosh(1.0)) < 1e-15
        assert state.sign_flip == 1

    def test_positive_lambda_binds_positron(self):
        state = mass_spike_bound_state(1.0, 1.0)
        assert state.species is Species.POSITRON
        assert abs(state.kappa_b - 0.7615941559557649) < 1e-15
        assert abs(state.omega_b - 0.6480542736638855) < 1e-15

    @pytest.mark.parametrize("lam", [-2.5, -0.4, 0.1, 1.7])
    def test_matching(self, lam):
        state = mass_spike_bound_state(1.0, lam)
        assert matching_residual(state.spinor_profile, [PointInteraction(0.0, 0.0, lam)], state.species) < 1e-12

    def test_mixed_coupling_has_no_closed_form(self):
        with pytest.raises(DomainError):
            impurity_bound_states(1.0, PointInteraction(0.0, 0.4, 0.9))

    def test_translated_profile(self):
        impurity = PointInteraction(1.5, 0.0, -1.0)
        (state,) = impurity_bound_states(1.0, impurity)
        assert matching_residual(state.spinor_profile, [impurity], Species.ELECTRON) < 1e-12
        assert abs(state.spinor_profile.norm_squared() - 1.0) < 1e-12


class TestAmplitudes:

    def test_transparent_at_zero_coupling(self):
        amps = electrostatic_amplitudes(1.0, 0.0, 2.0, Species.ELECTRON)
        assert amps.sigma == 1.0
        assert amps.rho == 0.0

    def test_half_pi_electron(self):
        amps = electrostatic_amplitudes(1.0, math.pi / 2, 1.0, Species.ELECTRON)
        assert abs(amps.sigma - (-1j / math.sqrt(2))) < 1e-15
        assert abs(amps.rho - (-1 / math.sqrt(2))) < 1e-15
        assert abs(amps.transmission_probability - 0.5) < 1e-15
        assert abs(amps.reflection_probability - 0.5) < 1e-15

    def test_positron_is_conjugate(self):
        electron = electrostatic_amplitudes(1.0, 0.8, 1.3, Species.ELECTRON)
        positron = electrostatic_amplitudes(1.0, 0.8, 1.3, Species.POSITRON)
        assert abs(electron.sigma - positron.sigma.conjugate()) < 1e-15
        assert abs(electron.rho - positron.rho.conjugate()) < 1e-15

    def test_mass_spike_free_case(self):
        for species in Species:
            amps = mass_spike_amplitudes(1.0, 0.0, 5.0, species)
            assert (amps.sigma, amps.rho) == (1.0, 0.0)

    def test_mass_spike_transmission(self):
        amps = mass_spike_amplitudes(1.0, 1.0, 1.0, Species.ELECTRON)
        assert abs(amps.sigma - 1 / complex(math.cosh(1.0), math.sinh(1.0))) < 1e-15
        assert abs(amps.transmission_probability - 1 / math.cosh(2.0)) < 1e-15
        positron = mass_spike_amplitudes(1.0, 1.0, 1.0, Species.POSITRON)
        assert abs(positron.sigma - amps.sigma.conjugate()) < 1e-15

    @pytest.mark.parametrize("k", [0.0, -1.0])
    def test_non_positive_momentum(self, k):
        with pytest.raises(DomainError):
            electrostatic_amplitudes(1.0, 0.5, k, Species.ELECTRON)
        with pytest.raises(DomainError):
            mass_spike_amplitudes(1.0, 0.5, k, Species.POSITRON)

    def test_unitarity(self, rng):
        for _ in range(1000):
            species = Species.ELECTRON if rng.random() < 0.5 else Species.POSITRON
            coupling = rng.uniform(-5, 5)
            k = rng.uniform(1e-3, 10)
            for amplitudes in (electrostatic_amplitudes, mass_spike_amplitudes):
                assert amplitudes(1.0, coupling, k, species).unitarity_residual < 1e-12

    def test_periodicity_in_q(self, rng):
        for q, k in zip(rng.uniform(-3, 3, 50), rng.uniform(0.05, 10, 50)):
            a = electrostatic_amplitudes(1.0, q, k, Species.ELECTRON)
            b = electrostatic_amplitudes(1.0, q + 2 * math.pi, k, Species.ELECTRON)
            assert abs(a.sigma - b.sigma) < 1e-12
            assert abs(a.rho - b.rho) < 1e-12

    def test_both_sides_and_translation(self):
        impurity = PointInteraction(1.7, 0.0, 0.5)
        left, right = impurity_amplitudes(1.0, impurity, 2.0, Species.POSITRON)
        origin = mass_spike_amplitudes(1.0, 0.5, 2.0, Species.POSITRON)
        assert left.side is IncidenceSide.LEFT and right.side is IncidenceSide.RIGHT
        assert left.sigma == origin.sigma == right.sigma
        assert abs(left.rho - origin.rho * np.exp(2j * 2.0 * 1.7)) < 1e-15
        assert abs(right.rho - origin.rho * np.exp(-2j * 2.0 * 1.7)) < 1e-15


class TestPhaseShifts:

    def test_free_case(self):
        assert total_phase_shift(ScatteringResult(1.0, 1 + 0j, 0j, Species.ELECTRON)) == 0.0

    def test_half_pi_electrostatic(self):
        amps = electrostatic_amplitudes(1.0, math.pi / 2, 1.0, Species.ELECTRON)
        assert abs(closed_form_tan_2delta(1.0, math.pi / 2, PotentialKind.ELECTROSTATIC, Species.ELECTRON, 1.0)) < 1e-15
        delta_plus, delta_minus = s_matrix_eigenphases(amps)
        assert abs(math.tan(2 * (delta_plus + delta_minus))) < 1e-12

    def test_quarter_pi_electrostatic(self):
        amps = electrostatic_amplitudes(1.0, math.pi / 4, 1.0, Species.ELECTRON)
        closed = closed_form_tan_2delta(1.0, math.pi / 4, PotentialKind.ELECTROSTATIC, Species.ELECTRON, 1.0)
        assert abs(closed - 2 * math.sqrt(2)) < 1e-12
        assert abs(tan_two_delta(amps) - closed) < 1e-12

    def test_mass_spike(self):
        amps = mass_spike_amplitudes(1.0, 1.0, 1.0, Species.ELECTRON)
        closed = closed_form_tan_2delta(1.0, 1.0, PotentialKind.MASS_SPIKE, Species.ELECTRON, 1.0)
        assert abs(closed + math.sinh(2.0)) < 1e-12
        assert abs(tan_two_delta(amps) - closed) < 1e-10

    def test_positron_closed_form_changes_sign(self):
        electron = closed_form_tan_2delta(1.0, 0.7, PotentialKind.ELECTROSTATIC, Species.ELECTRON, 2.0)
        positron = closed_form_tan_2delta(1.0, 0.7, PotentialKind.ELECTROSTATIC, Species.POSITRON, 2.0)
        assert positron == -electron

    def test_eigenvalue_route_matches_closed_forms(self, rng):
        ks = np.linspace(0.01, 10.0, 512)
        for kind, amplitudes in ((PotentialKind.ELECTROSTATIC, electrostatic_amplitudes),
                                 (PotentialKind.MASS_SPIKE, mass_spike_amplitudes)):
            for coupling in rng.uniform(-2, 2, 5):
                for species in Species:
                    for k in ks:
                        amps = amplitudes(1.0, coupling, k, species)
                        if abs((amps.sigma ** 2 - amps.rho ** 2).real) < 1e-4:
                            continue
                        observed = tan_two_delta(amps)
                        expected = closed_form_tan_2delta(1.0, coupling, kind, species, k)
                        assert abs(observed - expected) / (1 + abs(expected)) < 1e-8

    def test_non_unitary_amplitudes_rejected(self):
        with pytest.raises(InconsistencyError):
            total_phase_shift(ScatteringResult(1.0, 1 + 0j, 0.5 + 0j, Species.ELECTRON))

    def test_unwrapped_curve_differs_by_multiples_of_pi(self):
        amps = [electrostatic_amplitudes(1.0, 2.5, k, Species.ELECTRON) for k in np.linspace(0.01, 10, 300)]
        raw = np.array([total_phase_shift(a) for a in amps])
        unwrapped = phase_shift_curve(amps)
        turns = (unwrapped - raw) / math.pi
        assert np.max(np.abs(turns - np.round(turns))) < 1e-9
        assert np.max(np.abs(np.diff(unwrapped))) < math.pi

    def test_empty_curve(self):
        assert phase_shift_curve([]).size == 0


class TestDensities:

    def test_first_quadrant_positron(self):
        profile = bound_state_density(electrostatic_bound_state(1.0, math.pi / 6), 1.0)
        assert profile.sign == -1
        assert abs(profile(0.0) + 0.5) < 1e-15
        assert abs(profile.decay_rate - 1.0) < 1e-15
        assert abs(profile.total_charge + 1.0) < 1e-12

    def test_second_quadrant_electron(self):
        profile = bound_state_density(electrostatic_bound_state(1.0, 2 * math.pi / 3), 1.0)
        assert abs(profile(0.0) - SQRT3 / 2) < 1e-15
        assert abs(profile.decay_rate - SQRT3) < 1e-15

    def test_mass_spike_electron(self):
        profile = bound_state_density(mass_spike_bound_state(1.0, -1.0), 1.0)
        assert abs(profile(0.0) - math.tanh(1.0)) < 1e-15
        assert abs(profile(1.0) - math.tanh(1.0) * math.exp(-2 * math.tanh(1.0))) < 1e-15
        assert abs(profile.total_charge - 1.0) < 1e-12

    def test_density_matches_spinor_norm(self):
        state = electrostatic_bound_state(1.0, 4.0)
        profile = bound_state_density(state, 2.0)
        for x in (-1.0, 0.3, 2.0):
            assert abs(profile(x) - state.species.charge_sign * 2.0 * state.spinor_profile.density(x)[0]) < 1e-14

    def test_quadrature_cross_check(self):
        for state in (electrostatic_bound_state(1.0, 2.0), mass_spike_bound_state(1.0, 0.8)):
            profile = bound_state_density(state, 1.5)
            assert abs(density_charge_quadrature(profile) - state.species.charge_sign * 1.5) < 1e-10

    def test_requires_positive_charge(self):
        with pytest.raises(DomainError):
            bound_state_density(mass_spike_bound_state(1.0, 1.0), 0.0)


class TestPoleCondition:

    def test_electrostatic_pole(self):
        kappa = math.sin(2 * math.pi / 3)
        residual = pole_condition_residual(1.0, 2 * math.pi / 3, PotentialKind.ELECTROSTATIC, Species.ELECTRON, kappa)
        assert residual < 1e-10

    def test_off_pole(self):
        residual = pole_condition_residual(1.0, 2 * math.pi / 3, PotentialKind.ELECTROSTATIC, Species.ELECTRON, 0.1)
        assert residual > 0.1

    def test_mass_spike_pole(self):
        residual = pole_condition_residual(1.0, -1.0, PotentialKind.MASS_SPIKE, Species.ELECTRON, math.tanh(1.0))
        assert residual < 1e-10

    def test_no_electron_pole_when_tan_q_positive(self):
        kappas = np.linspace(0.01, 0.99, 99)
        residuals = [pole_condition_residual(1.0, 0.6, PotentialKind.ELECTROSTATIC, Species.ELECTRON, k) for k in kappas]
        assert min(residuals) > 0.1

    def test_every_state_is_a_pole(self, rng):
        for q in rng.uniform(-6, 6, 100):
            state = electrostatic_bound_state(1.0, q)
            if state is None:
                continue
            residual = pole_condition_residual(1.0, q, PotentialKind.ELECTROSTATIC, state.species, state.kappa_b)
            assert residual < 1e-10

    def test_kappa_outside_range(self):
        with pytest.raises(DomainError):
            pole_condition_residual(1.0, 0.5, PotentialKind.ELECTROSTATIC, Species.ELECTRON, 1.5)


def test_s_matrix_is_unitary():
    amps = electrostatic_amplitudes(1.0, 1.1, 0.7, Species.POSITRON)
    S = amps.s_matrix()
    assert np.allclose(S.conj().T @ S, np.eye(2), atol=1e-14)
