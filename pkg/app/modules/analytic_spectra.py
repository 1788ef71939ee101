"""
Resultados em forma fechada para uma impureza δ pura na origem:
estados ligados por região de acoplamento, densidades de carga, amplitudes
de espalhamento, condição de polo e defasagens, para elétrons e pósitrons.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from app.config.solver import TOLERANCES
from app.interfaces.spectrum_service import (
    BoundState, DensityProfile, IncidenceSide, PotentialKind,
    ScatteringResult, SpinorField, SpinorPiece,
)
from app.modules.clifford import spinor
from app.modules.point_interaction import CouplingRegion, PointInteraction, Species, coupling_region, matching_matrix
from app.utils.error_handler import DomainError, InconsistencyError

logger = logging.getLogger(__name__)


def _check_mass(m: float) -> None:
    if not m > 0:
        raise DomainError(f"A massa deve ser positiva, recebido {m}")


def _check_momentum(k: float) -> None:
    if not k > 0:
        raise DomainError(f"k deve ser positivo, recebido {k} (use a simetria para ondas que vêm da direita)")


# ---------------------------------------------------------------------------
# Estados ligados
# ---------------------------------------------------------------------------

def _zone_spinors(species: Species, tau: float) -> Tuple[np.ndarray, np.ndarray]:
    """Spinors das zonas I (x < 0, e^{κx}) e II (x > 0, e^{-κx}), com τ = κ/(ω+m)"""
    if species is Species.ELECTRON:
        return spinor(1.0, -1j * tau), spinor(1.0, 1j * tau)
    return spinor(-1j * tau, 1.0), spinor(1j * tau, 1.0)


def _single_impurity_state(m: float, kappa: float, omega: float, species: Species, sign_flip: int) -> BoundState:
    """Monta o estado normalizado: A^{II} = sign_flip·A^{I}, |A|² = κ/(1+τ²)"""
    tau = kappa / (omega + m)
    amplitude = math.sqrt(kappa / (1.0 + tau * tau))
    zone_one, zone_two = _zone_spinors(species, tau)
    profile = SpinorField(
        pieces=(
            SpinorPiece(-math.inf, 0.0, amplitude * zone_one, complex(kappa)),
            SpinorPiece(0.0, math.inf, sign_flip * amplitude * zone_two, complex(-kappa)),
        ),
        breakpoints=(0.0,),
    )
    return BoundState(kappa_b=kappa, omega_b=omega, species=species, sign_flip=sign_flip, spinor_profile=profile)


def electrostatic_bound_state(m: float, q: float) -> Optional[BoundState]:
    """
    Estado ligado da δ eletrostática (q mod 2π).

    Quadrante I: pósitron, κ_b = m sin q; II: elétron, κ_b = m sin q;
    III: pósitron, κ_b = -m sin q; IV: elétron, κ_b = -m sin q.
    Em π/2 (pósitron) e 3π/2 (elétron) há modo zero; em 0 e π não há estado.
    """
    _check_mass(m)
    region = coupling_region(q)
    sin_q, cos_q = math.sin(q), math.cos(q)

    if region in (CouplingRegion.ZERO, CouplingRegion.PI):
        return None
    if region is CouplingRegion.HALF_PI:
        return _single_impurity_state(m, m, 0.0, Species.POSITRON, 1)
    if region is CouplingRegion.THREE_HALVES_PI:
        return _single_impurity_state(m, m, 0.0, Species.ELECTRON, 1)

    table = {
        CouplingRegion.QUADRANT_I: (Species.POSITRON, m * sin_q, m * cos_q, 1),
        CouplingRegion.QUADRANT_II: (Species.ELECTRON, m * sin_q, -m * cos_q, -1),
        CouplingRegion.QUADRANT_III: (Species.POSITRON, -m * sin_q, -m * cos_q, -1),
        CouplingRegion.QUADRANT_IV: (Species.ELECTRON, -m * sin_q, m * cos_q, 1),
    }
    species, kappa, omega, sign_flip = table[region]
    return _single_impurity_state(m, kappa, omega, species, sign_flip)


def mass_spike_bound_state(m: float, lam: float) -> Optional[BoundState]:
    """λ < 0: elétron com κ_b = -m tanh λ; λ > 0: pósitron com κ_b = m tanh λ; ω_b = m sech λ"""
    _check_mass(m)
    if lam == 0.0:
        return None
    species = Species.ELECTRON if lam < 0 else Species.POSITRON
    kappa = m * math.tanh(abs(lam))
    omega = m / math.cosh(lam)
    return _single_impurity_state(m, kappa, omega, species, 1)


def impurity_bound_states(m: float, impurity: PointInteraction) -> List[BoundState]:
    """Estados ligados de uma impureza pura em qualquer posição (perfil transladado)"""
    if impurity.is_electrostatic:
        state = electrostatic_bound_state(m, impurity.q)
    elif impurity.is_mass_spike:
        state = mass_spike_bound_state(m, impurity.lam)
    else:
        raise DomainError("Não há forma fechada para acoplamento misto (q ≠ 0 e λ ≠ 0)")

    if state is None:
        return []
    if impurity.position != 0.0:
        profile = state.spinor_profile.shifted(impurity.position)
        state = BoundState(state.kappa_b, state.omega_b, state.species, state.sign_flip, profile, state.path)
    return [state]


# ---------------------------------------------------------------------------
# Amplitudes de espalhamento
# ---------------------------------------------------------------------------

def electrostatic_amplitudes(m: float, q: float, k: float, species: Species,
                             side: IncidenceSide = IncidenceSide.LEFT) -> ScatteringResult:
    """σ = k/(k cos q + iω sin q), ρ = -i m sin q/(k cos q + iω sin q); pósitrons: conjugados"""
    _check_mass(m)
    _check_momentum(k)
    omega = math.hypot(k, m)
    sign = 1.0 if species is Species.ELECTRON else -1.0
    denominator = complex(k * math.cos(q), sign * omega * math.sin(q))
    sigma = k / denominator
    rho = complex(0.0, -sign * m * math.sin(q)) / denominator
    return ScatteringResult(k=k, sigma=sigma, rho=rho, species=species, side=side)


def mass_spike_amplitudes(m: float, lam: float, k: float, species: Species,
                          side: IncidenceSide = IncidenceSide.LEFT) -> ScatteringResult:
    """σ = k/(k cosh λ + i m sinh λ), ρ = -iω sinh λ/(k cosh λ + i m sinh λ); pósitrons: conjugados"""
    _check_mass(m)
    _check_momentum(k)
    omega = math.hypot(k, m)
    sign = 1.0 if species is Species.ELECTRON else -1.0
    denominator = complex(k * math.cosh(lam), sign * m * math.sinh(lam))
    sigma = k / denominator
    rho = complex(0.0, -sign * omega * math.sinh(lam)) / denominator
    return ScatteringResult(k=k, sigma=sigma, rho=rho, species=species, side=side)


def impurity_amplitudes(m: float, impurity: PointInteraction, k: float,
                        species: Species) -> Tuple[ScatteringResult, ScatteringResult]:
    """Par (esquerda, direita) para uma impureza pura em x0; ρ recebe a fase de translação"""
    if impurity.is_electrostatic:
        amplitudes = electrostatic_amplitudes
        coupling = impurity.q
    elif impurity.is_mass_spike:
        amplitudes = mass_spike_amplitudes
        coupling = impurity.lam
    else:
        raise DomainError("Não há forma fechada para acoplamento misto (q ≠ 0 e λ ≠ 0)")

    left = amplitudes(m, coupling, k, species, IncidenceSide.LEFT)
    right = amplitudes(m, coupling, k, species, IncidenceSide.RIGHT)
    if impurity.position != 0.0:
        left, right = left.translated(impurity.position), right.translated(impurity.position)
    return left, right


# ---------------------------------------------------------------------------
# Defasagens
# ---------------------------------------------------------------------------

def s_matrix_eigenphases(amps: ScatteringResult) -> Tuple[float, float]:
    """
    Autovalores σ ± ρ = e^{2iδ±} da matriz S; retorna (δ₊, δ₋)
    com δ± = ½·atan2(Im, Re) em (-π/2, π/2].
    """
    plus = amps.sigma + amps.rho
    minus = amps.sigma - amps.rho
    return 0.5 * math.atan2(plus.imag, plus.real), 0.5 * math.atan2(minus.imag, minus.real)


def total_phase_shift(amps: ScatteringResult) -> float:
    """δ = δ₊ + δ₋ (sem desenrolar)"""
    residual = amps.unitarity_residual
    if residual > TOLERANCES['phase_consistency']:
        raise InconsistencyError(
            f"Amplitudes não unitárias em k={amps.k}: ||σ|²+|ρ|²-1| = {residual:.3e}"
        )
    delta_plus, delta_minus = s_matrix_eigenphases(amps)
    return delta_plus + delta_minus


def tan_two_delta(amps: ScatteringResult) -> float:
    """tan 2δ = Im(σ²-ρ²)/Re(σ²-ρ²); nan quando o denominador é desprezível"""
    value = amps.sigma ** 2 - amps.rho ** 2
    if abs(value.real) <= TOLERANCES['phase_denominator']:
        return math.nan
    return value.imag / value.real


def phase_shift_curve(amplitudes: Sequence[ScatteringResult]) -> np.ndarray:
    """δ(k) contínuo numa malha ordenada: desenrola 2δ± separadamente e soma as metades"""
    if not amplitudes:
        return np.array([], dtype=float)
    phases = np.array([s_matrix_eigenphases(a) for a in amplitudes], dtype=float)
    unwrapped = 0.5 * np.unwrap(2.0 * phases, axis=0)
    return unwrapped.sum(axis=1)


def closed_form_tan_2delta(m: float, coupling: float, kind: PotentialKind, species: Species, k: float) -> float:
    """
    Eletrostático: 2kω sin 2q/(m² - (2k²+m²) cos 2q)
    Massa:        -2km sinh 2λ/(k²+m² + (k²-m²) cosh 2λ)
    Para pósitrons o sinal se inverte (amplitudes conjugadas).
    """
    _check_mass(m)
    _check_momentum(k)
    sign = 1.0 if species is Species.ELECTRON else -1.0
    if kind is PotentialKind.ELECTROSTATIC:
        omega = math.hypot(k, m)
        numerator = 2.0 * k * omega * math.sin(2.0 * coupling)
        denominator = m * m - (2.0 * k * k + m * m) * math.cos(2.0 * coupling)
    else:
        numerator = -2.0 * k * m * math.sinh(2.0 * coupling)
        denominator = k * k + m * m + (k * k - m * m) * math.cosh(2.0 * coupling)
    if denominator == 0.0:
        return math.nan
    return sign * numerator / denominator


def phase_residual(observed: float, expected: float) -> float:
    """|a - b|/(1 + |b|); nan se algum lado não estiver definido"""
    if math.isnan(observed) or math.isnan(expected):
        return math.nan
    return abs(observed - expected) / (1.0 + abs(expected))


# ---------------------------------------------------------------------------
# Densidades e polos
# ---------------------------------------------------------------------------

def bound_state_density(bs: BoundState, Q: float) -> DensityProfile:
    """j⁰ = ±Q|ψ|² = ±Qκ_b e^{-2κ_b|x|}; + para elétrons, - para pósitrons"""
    if not Q > 0:
        raise DomainError(f"Q deve ser positivo, recebido {Q}")
    center = bs.spinor_profile.breakpoints[0] if len(bs.spinor_profile.breakpoints) == 1 else 0.0
    return DensityProfile(
        Q=Q,
        amplitude=Q * bs.kappa_b,
        decay_rate=2.0 * bs.kappa_b,
        sign=bs.species.charge_sign,
        center=center,
    )


def density_charge_quadrature(profile: DensityProfile) -> float:
    """Carga total por quadratura adaptativa (conferência da integral fechada)"""
    left, _ = integrate.quad(profile, -np.inf, profile.center, epsabs=1e-13, epsrel=1e-13)
    right, _ = integrate.quad(profile, profile.center, np.inf, epsabs=1e-13, epsrel=1e-13)
    return float(left + right)


def pole_condition_residual(m: float, coupling: float, kind: PotentialKind, species: Species, kappa: float) -> float:
    """|denominador de σ| em k = iκ: |κ cos q ± ω sin q| ou |κ cosh λ ± m sinh λ|"""
    _check_mass(m)
    if not 0 < kappa <= m:
        raise DomainError(f"κ deve estar em (0, m], recebido {kappa}")
    sign = 1.0 if species is Species.ELECTRON else -1.0
    if kind is PotentialKind.ELECTROSTATIC:
        omega = math.sqrt(m * m - kappa * kappa)
        return abs(kappa * math.cos(coupling) + sign * omega * math.sin(coupling))
    return abs(kappa * math.cosh(coupling) + sign * m * math.sinh(coupling))


def matching_residual(profile: SpinorField, impurities: Sequence[PointInteraction], species: Species) -> float:
    """max_j |ψ(x_j⁺) - T_δ ψ(x_j⁻)| sobre as impurezas"""
    worst = 0.0
    for impurity in impurities:
        left = profile.limit(impurity.position, 'left')
        right = profile.limit(impurity.position, 'right')
        mismatch = right - matching_matrix(impurity, species) @ left
        worst = max(worst, float(np.max(np.abs(mismatch))))
    return worst
