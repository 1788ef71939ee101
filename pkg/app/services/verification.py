"""
Suíte de verificação dos invariantes (comando verify)
Cada verificação sorteia configurações com semente fixa e reporta o pior resíduo
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional

import numpy as np
from tqdm import tqdm

from app.config.solver import TOLERANCES, VERIFY_SAMPLES
from app.interfaces.spectrum_service import PotentialKind
from app.modules import analytic_spectra as analytic
from app.modules.clifford import clifford_check, max_abs_difference
from app.modules.point_interaction import PointInteraction, Species, Symmetry, matching_matrix
from app.modules.transfer_solver import (
    ImpurityArray, find_bound_states, flux_determinant_residual, s_matrix,
)

logger = logging.getLogger(__name__)

SPECIES = (Species.ELECTRON, Species.POSITRON)
KINDS = (PotentialKind.ELECTROSTATIC, PotentialKind.MASS_SPIKE)
BOUNDARY_MARGIN = 0.05

QUICK_SAMPLES = {
    'matching': 20,
    'unitarity': 100,
    'arrays': 20,
    'oracle': 40,
    'oracle_bound_states': 8,
    'densities': 20,
    'phase_couplings': 3,
    'phase_grid': 64,
    'stability': 2,
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    bound: float
    samples: int

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: pior={self.worst:.3e} limite={self.bound:.0e} amostras={self.samples}"


@dataclass
class VerificationReport:
    checks: List[CheckResult]
    seed: int

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def lines(self) -> List[str]:
        summary = f"{sum(c.passed for c in self.checks)}/{len(self.checks)} verificações aprovadas (semente {self.seed})"
        return [check.line() for check in self.checks] + [summary]

    def to_dict(self) -> Dict:
        checks = []
        for check in self.checks:
            entry = asdict(check)
            if not math.isfinite(entry['worst']):
                entry['worst'] = None
            checks.append(entry)
        return {'seed': self.seed, 'passed': self.passed, 'checks': checks}


def _amplitudes(kind: PotentialKind):
    return analytic.electrostatic_amplitudes if kind is PotentialKind.ELECTROSTATIC else analytic.mass_spike_amplitudes


def _impurity(kind: PotentialKind, coupling: float, position: float = 0.0) -> PointInteraction:
    if kind is PotentialKind.ELECTROSTATIC:
        return PointInteraction(position, coupling, 0.0)
    return PointInteraction(position, 0.0, coupling)


def _interior_coupling(rng: np.random.Generator, kind: PotentialKind) -> float:
    """Acoplamento longe das fronteiras de região (κ_b fica dentro da malha de busca)"""
    if kind is PotentialKind.ELECTROSTATIC:
        quadrant = rng.integers(0, 4)
        return float(quadrant * 0.5 * math.pi + rng.uniform(BOUNDARY_MARGIN, 0.5 * math.pi - BOUNDARY_MARGIN))
    return float(rng.choice([-1.0, 1.0]) * rng.uniform(BOUNDARY_MARGIN, 3.0))


def _random_array(rng: np.random.Generator, size: int, span: float = 2.0) -> ImpurityArray:
    positions = np.sort(rng.uniform(-span * size, span * size, size))
    while np.any(np.diff(positions) < 0.1):
        positions = np.sort(rng.uniform(-span * size, span * size, size))
    return ImpurityArray(tuple(
        PointInteraction(float(x), float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))) for x in positions
    ))


def _amplitude_difference(a, b) -> float:
    return max(abs(a.sigma - b.sigma), abs(a.rho - b.rho))


class VerificationSuite:
    """Executa as verificações com semente fixa"""

    def __init__(self, seed: int = 2024, samples: Optional[Dict[str, int]] = None):
        self.seed = seed
        self.samples = dict(VERIFY_SAMPLES, **(samples or {}))

    def rng(self, offset: int) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)

    def checks(self) -> List[Callable[[], CheckResult]]:
        return [
            self.check_clifford,
            self.check_matching_special_cases,
            self.check_unitarity_analytic,
            self.check_unitarity_numeric,
            self.check_symmetries,
            self.check_charge_conjugation_arrays,
            self.check_oracle_amplitudes,
            self.check_oracle_bound_states,
            self.check_spectral_consistency,
            self.check_density_normalization,
            self.check_phase_closed_forms,
            self.check_periodicity,
            self.check_flux_conservation,
            self.check_count_stability,
        ]

    def run(self, progress: bool = True) -> VerificationReport:
        results = []
        for check in tqdm(self.checks(), desc="verify", disable=None if progress else True):
            result = check()
            logger.info(result.line())
            results.append(result)
        return VerificationReport(results, self.seed)

    # -- verificações ----------------------------------------------------

    def check_clifford(self) -> CheckResult:
        ok = clifford_check()
        return CheckResult("clifford", ok, 0.0 if ok else 1.0, 0.0, 1)

    def check_matching_special_cases(self) -> CheckResult:
        """Erro absoluto entrada a entrada contra as formas fechadas de q e λ puros"""
        rng = self.rng(1)
        n = self.samples['matching']
        worst = 0.0
        for q, lam in rng.uniform(-5, 5, size=(n, 2)):
            electric = np.array([[math.cos(q), -1j * math.sin(q)], [-1j * math.sin(q), math.cos(q)]])
            spike = np.array([[math.cosh(lam), 1j * math.sinh(lam)], [-1j * math.sinh(lam), math.cosh(lam)]])
            worst = max(
                worst,
                max_abs_difference(matching_matrix(PointInteraction(0.0, q, 0.0), Species.ELECTRON), electric),
                max_abs_difference(matching_matrix(PointInteraction(0.0, 0.0, lam), Species.ELECTRON), spike),
            )
        bound = 1e-13
        return CheckResult("matching_special_cases", worst < bound, worst, bound, n)

    def check_unitarity_analytic(self) -> CheckResult:
        rng = self.rng(2)
        n = self.samples['unitarity']
        worst = 0.0
        for _ in range(n):
            kind = KINDS[rng.integers(0, 2)]
            species = SPECIES[rng.integers(0, 2)]
            coupling = float(rng.uniform(-5, 5))
            k = float(rng.uniform(1e-3, 10))
            worst = max(worst, _amplitudes(kind)(1.0, coupling, k, species).unitarity_residual)
        bound = TOLERANCES['unitarity_analytic']
        return CheckResult("unitarity_analytic", worst < bound, worst, bound, n)

    def check_unitarity_numeric(self) -> CheckResult:
        rng = self.rng(3)
        n = self.samples['arrays']
        worst = 0.0
        for _ in range(n):
            array = _random_array(rng, int(rng.integers(1, 9)))
            k = float(rng.uniform(0.5, 10))
            for species in SPECIES:
                for amps in s_matrix(array, species, array.mass, k):
                    worst = max(worst, amps.unitarity_residual)
        bound = TOLERANCES['unitarity_numeric']
        return CheckResult("unitarity_numeric", worst < bound, worst, bound, n)

    def check_symmetries(self) -> CheckResult:
        """σ_L = σ_R, ρ_L = ρ_R e elétron = conjugado do pósitron, para uma impureza na origem"""
        rng = self.rng(4)
        n = self.samples['oracle']
        worst = 0.0
        for _ in range(n):
            impurity = PointInteraction(0.0, float(rng.uniform(-5, 5)), float(rng.uniform(-2, 2)))
            array = ImpurityArray.single(impurity)
            k = float(rng.uniform(0.05, 10))
            e_left, e_right = s_matrix(array, Species.ELECTRON, 1.0, k)
            p_left, p_right = s_matrix(array, Species.POSITRON, 1.0, k)
            worst = max(
                worst,
                _amplitude_difference(e_left, e_right),
                _amplitude_difference(p_left, p_right),
                _amplitude_difference(e_left, p_left.conjugate()),
            )
        bound = TOLERANCES['unitarity_numeric']
        return CheckResult("parity_and_charge_conjugation", worst < bound, worst, bound, n)

    def check_charge_conjugation_arrays(self) -> CheckResult:
        """S(arranjo, pósitron) = S(arranjo dual, elétron); para δ eletrostáticas o dual é o C-transformado"""
        rng = self.rng(5)
        n = self.samples['arrays']
        worst = 0.0
        for _ in range(n):
            array = _random_array(rng, int(rng.integers(1, 9)))
            electric = ImpurityArray(tuple(PointInteraction(p.position, p.q, 0.0) for p in array))
            k = float(rng.uniform(0.5, 10))
            pairs = [
                (s_matrix(array, Species.POSITRON, 1.0, k), s_matrix(array.species_dual(), Species.ELECTRON, 1.0, k)),
                (s_matrix(electric, Species.POSITRON, 1.0, k),
                 s_matrix(electric.transformed(Symmetry.C), Species.ELECTRON, 1.0, k)),
            ]
            for first, second in pairs:
                for a, b in zip(first, second):
                    worst = max(worst, _amplitude_difference(a, b))
        bound = TOLERANCES['unitarity_numeric']
        return CheckResult("charge_conjugation_arrays", worst < bound, worst, bound, n)

    def check_oracle_amplitudes(self) -> CheckResult:
        rng = self.rng(6)
        n = self.samples['oracle']
        worst = 0.0
        for _ in range(n):
            kind = KINDS[rng.integers(0, 2)]
            coupling = float(rng.uniform(-5, 5) if kind is PotentialKind.ELECTROSTATIC else rng.uniform(-2, 2))
            impurity = _impurity(kind, coupling, float(rng.uniform(-2, 2)))
            array = ImpurityArray.single(impurity)
            k = float(rng.uniform(0.05, 10))
            for species in SPECIES:
                closed = analytic.impurity_amplitudes(1.0, impurity, k, species)
                numeric = s_matrix(array, species, 1.0, k)
                for a, b in zip(closed, numeric):
                    worst = max(worst, _amplitude_difference(a, b))
        bound = TOLERANCES['unitarity_numeric']
        return CheckResult("oracle_amplitudes", worst < bound, worst, bound, n)

    def check_oracle_bound_states(self) -> CheckResult:
        """Mesma contagem, mesmo κ_b e mesmo sign_flip entre forma fechada e busca numérica"""
        rng = self.rng(7)
        n = self.samples['oracle_bound_states']
        worst = 0.0
        for _ in range(n):
            kind = KINDS[rng.integers(0, 2)]
            impurity = _impurity(kind, _interior_coupling(rng, kind))
            array = ImpurityArray.single(impurity)
            closed_states = analytic.impurity_bound_states(1.0, impurity)
            for species in SPECIES:
                expected = [s for s in closed_states if s.species is species]
                found = find_bound_states(array, species, 1.0)
                if len(expected) != len(found):
                    worst = math.inf
                    continue
                for a, b in zip(expected, found):
                    worst = max(worst, abs(a.kappa_b - b.kappa_b), 0.0 if a.sign_flip == b.sign_flip else math.inf)
        bound = TOLERANCES['pole_residual']
        return CheckResult("oracle_bound_states", worst < bound, worst, bound, n)

    def check_spectral_consistency(self) -> CheckResult:
        """Polo de σ em iκ_b, ω_b² + κ_b² = m² e matching dos spinors fechados"""
        rng = self.rng(8)
        n = self.samples['unitarity']
        worst = 0.0
        for _ in range(n):
            kind = KINDS[rng.integers(0, 2)]
            coupling = float(rng.uniform(-5, 5) if kind is PotentialKind.ELECTROSTATIC else rng.uniform(-3, 3))
            impurity = _impurity(kind, coupling)
            for state in analytic.impurity_bound_states(1.0, impurity):
                worst = max(
                    worst,
                    analytic.pole_condition_residual(1.0, coupling, kind, state.species, state.kappa_b),
                    abs(state.omega_b ** 2 + state.kappa_b ** 2 - 1.0),
                    analytic.matching_residual(state.spinor_profile, [impurity], state.species),
                )
        bound = TOLERANCES['unitarity_analytic']
        return CheckResult("spectral_consistency", worst < bound, worst, bound, n)

    def check_density_normalization(self) -> CheckResult:
        rng = self.rng(9)
        n = self.samples['densities']
        worst = 0.0
        for _ in range(n):
            kind = KINDS[rng.integers(0, 2)]
            impurity = _impurity(kind, _interior_coupling(rng, kind))
            Q = float(rng.uniform(0.5, 2.0))
            for state in analytic.impurity_bound_states(1.0, impurity):
                profile = analytic.bound_state_density(state, Q)
                expected = state.species.charge_sign * Q
                worst = max(
                    worst,
                    abs(profile.total_charge - expected),
                    abs(analytic.density_charge_quadrature(profile) - expected),
                    abs(state.spinor_profile.norm_squared() - 1.0),
                )
        bound = 1e-10
        return CheckResult("density_normalization", worst < bound, worst, bound, n)

    def check_phase_closed_forms(self) -> CheckResult:
        rng = self.rng(10)
        couplings = self.samples['phase_couplings']
        ks = np.linspace(0.01, 10.0, self.samples['phase_grid'])
        worst = 0.0
        for kind in KINDS:
            for coupling in rng.uniform(-2, 2, couplings):
                for species in SPECIES:
                    for k in ks:
                        amps = _amplitudes(kind)(1.0, float(coupling), float(k), species)
                        residual = analytic.phase_residual(
                            analytic.tan_two_delta(amps),
                            analytic.closed_form_tan_2delta(1.0, float(coupling), kind, species, float(k)),
                        )
                        if not math.isnan(residual):
                            worst = max(worst, residual)
        bound = TOLERANCES['phase_consistency']
        return CheckResult("phase_closed_forms", worst < bound, worst, bound, 2 * couplings)

    def check_periodicity(self) -> CheckResult:
        rng = self.rng(11)
        n = self.samples['oracle']
        worst = 0.0
        for _ in range(n):
            q = float(rng.uniform(-math.pi, math.pi))
            k = float(rng.uniform(0.05, 10))
            for species in SPECIES:
                worst = max(worst, _amplitude_difference(
                    analytic.electrostatic_amplitudes(1.0, q, k, species),
                    analytic.electrostatic_amplitudes(1.0, q + 2.0 * math.pi, k, species),
                ))
        bound = TOLERANCES['unitarity_analytic']
        return CheckResult("periodicity", worst < bound, worst, bound, n)

    def check_flux_conservation(self) -> CheckResult:
        rng = self.rng(12)
        n = self.samples['arrays']
        worst = 0.0
        for _ in range(n):
            impurity = PointInteraction(float(rng.uniform(-3, 3)), float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)))
            k = float(rng.uniform(0.05, 10))
            for species in SPECIES:
                worst = max(worst, flux_determinant_residual(ImpurityArray.single(impurity), species, 1.0, [k]))
        bound = 1e-11
        return CheckResult("flux_conservation", worst < bound, worst, bound, n)

    def check_count_stability(self) -> CheckResult:
        """Raízes estáveis ao reduzir ε pela metade e dobrar a malha"""
        rng = self.rng(13)
        n = self.samples['stability']
        worst = 0.0
        for _ in range(n):
            array = ImpurityArray(tuple(
                PointInteraction(x, float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))) for x in (-1.0, 1.0)
            ))
            for species in SPECIES:
                base = [s.kappa_b for s in find_bound_states(array, species, 1.0)]
                finer = [s.kappa_b for s in find_bound_states(array, species, 1.0, grid_points=4096, epsilon=5e-7)]
                if len(base) != len(finer):
                    worst = math.inf
                    continue
                worst = max([worst] + [abs(a - b) for a, b in zip(base, finer)])
        bound = 1e-11
        return CheckResult("count_stability", worst < bound, worst, bound, n)


def run_verification(seed: int = 2024, samples: Optional[Dict[str, int]] = None,
                     progress: bool = True) -> VerificationReport:
    return VerificationSuite(seed, samples).run(progress)
