"""
Solver numérico exato para arranjos de impurezas pontuais.

Matrizes de transferência na base de ondas planas, extração da matriz S
e busca de estados ligados por varredura do eixo imaginário k = iκ seguida de bisseção.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from app.config.solver import BOUND_STATE_SEARCH, TOLERANCES
from app.interfaces.spectrum_service import (
    BoundState, IncidenceSide, ScatteringResult, SolverPath, SpinorField, SpinorPiece,
)
from app.modules.analytic_spectra import matching_residual
from app.modules.clifford import Mat2C, identity, inverse
from app.modules.free_states import Kinematics, plane_wave_basis
from app.modules.point_interaction import PointInteraction, Species, Symmetry, matching_matrix, species_dual, transform
from app.utils.error_handler import DomainError, TransmissionPoleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ImpurityArray:
    """Impurezas com posições estritamente crescentes e a massa comum"""
    impurities: Tuple[PointInteraction, ...]
    mass: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'impurities', tuple(self.impurities))
        if not self.impurities:
            raise DomainError("O arranjo precisa de pelo menos uma impureza")
        if not self.mass > 0:
            raise DomainError(f"A massa deve ser positiva, recebido {self.mass}")
        positions = [p.position for p in self.impurities]
        for left, right in zip(positions, positions[1:]):
            if not right > left:
                raise DomainError(
                    f"Posições devem ser estritamente crescentes (encontrado {left} seguido de {right})"
                )

    @classmethod
    def single(cls, impurity: PointInteraction, mass: float = 1.0) -> "ImpurityArray":
        return cls((impurity,), mass)

    @classmethod
    def comb(cls, count: int, spacing: float, q: float, lam: float, mass: float = 1.0) -> "ImpurityArray":
        """Pente δ finito centrado na origem: x_j = (j - (count-1)/2)·spacing"""
        if count < 1:
            raise DomainError(f"O pente precisa de pelo menos uma impureza, recebido {count}")
        if not spacing > 0:
            raise DomainError(f"O espaçamento deve ser positivo, recebido {spacing}")
        offset = 0.5 * (count - 1)
        return cls(tuple(PointInteraction((j - offset) * spacing, q, lam) for j in range(count)), mass)

    def __len__(self) -> int:
        return len(self.impurities)

    def __iter__(self) -> Iterator[PointInteraction]:
        return iter(self.impurities)

    @property
    def is_single_pure(self) -> bool:
        return len(self.impurities) == 1 and self.impurities[0].is_pure

    def transformed(self, which: Symmetry) -> "ImpurityArray":
        return replace(self, impurities=tuple(transform(p, which) for p in self.impurities))

    def species_dual(self) -> "ImpurityArray":
        """(q, λ) → (-q, -λ) em cada impureza"""
        return replace(self, impurities=tuple(species_dual(p) for p in self.impurities))


@dataclass(frozen=True)
class TransferMatrix:
    """M age sobre pares (amplitude da onda para a direita, amplitude da onda para a esquerda)"""
    M: Mat2C
    k: complex

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(self.M @ other.M, self.k)

    @property
    def det(self) -> complex:
        return complex(self.M[0, 0] * self.M[1, 1] - self.M[0, 1] * self.M[1, 0])


def coefficient_transfer(p: PointInteraction, s: Species, kin: Kinematics) -> TransferMatrix:
    """M = W(x₀, k)⁻¹ · T_δ · W(x₀, k)"""
    basis = plane_wave_basis(kin, p.position, s)
    return TransferMatrix(inverse(basis) @ matching_matrix(p, s) @ basis, kin.k)


def compose(arr: ImpurityArray, s: Species, kin: Kinematics) -> TransferMatrix:
    """M_total = M_N ··· M_1 em ordem crescente de posição"""
    total = TransferMatrix(identity(), kin.k)
    for impurity in arr:
        total = coefficient_transfer(impurity, s, kin) @ total
    return total


def s_matrix(arr: ImpurityArray, s: Species, m: float, k: float) -> Tuple[ScatteringResult, ScatteringResult]:
    """
    Amplitudes (diestro, zurdo) a partir de M_total:
    σ_R = σ_L = 1/M₂₂, ρ_R = -M₂₁/M₂₂, ρ_L = M₁₂/M₂₂ (det M = 1).
    """
    if not k > 0:
        raise DomainError(f"k deve ser positivo, recebido {k}")
    M = compose(arr, s, Kinematics(m, k)).M
    m22 = M[1, 1]
    if abs(m22) < TOLERANCES['transmission_pole']:
        raise TransmissionPoleError(f"|M22| = {abs(m22):.3e} em k={k}: polo da transmissão no eixo real")

    sigma = complex(1.0 / m22)
    left = ScatteringResult(k=k, sigma=sigma, rho=complex(-M[1, 0] / m22), species=s, side=IncidenceSide.LEFT)
    right = ScatteringResult(k=k, sigma=sigma, rho=complex(M[0, 1] / m22), species=s, side=IncidenceSide.RIGHT)
    return left, right


def secular_function(arr: ImpurityArray, s: Species, m: float, kappa: float) -> float:
    """Re M₂₂(iκ); todas as entradas são reais no eixo imaginário"""
    return float(compose(arr, s, Kinematics.imaginary(m, kappa)).M[1, 1].real)


def _reconstruct_profile(arr: ImpurityArray, s: Species, m: float, kappa: float) -> Tuple[SpinorField, int]:
    """Spinor por partes a partir de c₀ = (0, 1) à esquerda; devolve o perfil sem normalizar e o sign_flip"""
    kin = Kinematics.imaginary(m, kappa)
    basis = plane_wave_basis(kin, 0.0, s)
    decaying_right, decaying_left = basis[:, 0], basis[:, 1]
    rate = complex(kappa)

    coefficients = np.array([0.0, 1.0], dtype=complex)
    bounds = [-math.inf] + [p.position for p in arr] + [math.inf]
    pieces: List[SpinorPiece] = [SpinorPiece(bounds[0], bounds[1], decaying_left, rate)]

    for index, impurity in enumerate(arr, start=1):
        coefficients = coefficient_transfer(impurity, s, kin).M @ coefficients
        lower, upper = bounds[index], bounds[index + 1]
        pieces.append(SpinorPiece(lower, upper, coefficients[0] * decaying_right, -rate))
        # No último intervalo o termo crescente é zero na raiz
        if index < len(arr):
            pieces.append(SpinorPiece(lower, upper, coefficients[1] * decaying_left, rate))

    sign_flip = 1 if coefficients[0].real >= 0 else -1
    return SpinorField(pieces=tuple(pieces), breakpoints=tuple(p.position for p in arr)), sign_flip


def find_bound_states(arr: ImpurityArray, s: Species, m: float,
                      grid_points: Optional[int] = None, epsilon: Optional[float] = None) -> List[BoundState]:
    """
    Raízes de Re M₂₂(iκ) em κ ∈ (εm, (1-ε)m): varredura de sinal numa malha
    uniforme e bisseção de cada intervalo até |Δκ| < 1e-12.
    """
    if not m > 0:
        raise DomainError(f"A massa deve ser positiva, recebido {m}")
    grid_points = grid_points or BOUND_STATE_SEARCH['grid_points']
    epsilon = BOUND_STATE_SEARCH['epsilon'] if epsilon is None else epsilon

    kappas = np.linspace(epsilon * m, (1.0 - epsilon) * m, grid_points)
    values = np.array([secular_function(arr, s, m, kappa) for kappa in kappas])

    def secular(kappa: float) -> float:
        return secular_function(arr, s, m, kappa)

    roots: List[float] = []
    for i in range(grid_points - 1):
        if values[i] == 0.0:
            roots.append(float(kappas[i]))
        elif values[i] * values[i + 1] < 0:
            roots.append(optimize.bisect(secular, kappas[i], kappas[i + 1],
                                         xtol=BOUND_STATE_SEARCH['xtol'],
                                         maxiter=BOUND_STATE_SEARCH['max_iterations']))
    if values[-1] == 0.0:
        roots.append(float(kappas[-1]))

    logger.debug(f"{len(roots)} raiz(es) para {s.value} com {len(arr)} impureza(s)")

    states = []
    for kappa in roots:
        profile, sign_flip = _reconstruct_profile(arr, s, m, kappa)
        profile = profile.scaled(1.0 / math.sqrt(profile.norm_squared()))
        residual = matching_residual(profile, arr.impurities, s)
        if residual > TOLERANCES['matching_residual']:
            logger.warning(f"Resíduo de matching {residual:.3e} em κ={kappa:.12f} ({s.value})")
        states.append(BoundState(
            kappa_b=float(kappa),
            omega_b=math.sqrt(m * m - kappa * kappa),
            species=s,
            sign_flip=sign_flip,
            spinor_profile=profile,
            path=SolverPath.NUMERIC,
        ))
    return states


def flux_determinant_residual(arr: ImpurityArray, s: Species, m: float, ks: Sequence[float]) -> float:
    """max_k ||det M| - 1| numa malha real"""
    return max(abs(abs(compose(arr, s, Kinematics(m, k)).det) - 1.0) for k in ks)
