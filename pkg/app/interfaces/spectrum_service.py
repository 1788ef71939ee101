"""
Interface unificada dos solvers espectrais
Tipos de resultado compartilhados (espalhamento, estados ligados, spinors, densidades)
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.modules.clifford import Spinor, spinor_norm_squared
from app.modules.point_interaction import Species

if TYPE_CHECKING:
    from app.modules.transfer_solver import ImpurityArray

logger = logging.getLogger(__name__)


class IncidenceSide(Enum):
    """Lado de incidência: LEFT = "diestro" (vindo da esquerda), RIGHT = "zurdo" (vindo da direita)"""
    LEFT = "left"
    RIGHT = "right"


class PotentialKind(Enum):
    """Tipos de δ puros"""
    ELECTROSTATIC = "electrostatic"
    MASS_SPIKE = "mass_spike"


class SolverPath(Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class ScatteringResult:
    """Amplitudes de transmissão σ e reflexão ρ para um momento k"""
    k: float
    sigma: complex
    rho: complex
    species: Species
    side: IncidenceSide = IncidenceSide.LEFT

    @property
    def transmission_probability(self) -> float:
        return abs(self.sigma) ** 2

    @property
    def reflection_probability(self) -> float:
        return abs(self.rho) ** 2

    @property
    def unitarity_residual(self) -> float:
        """| |σ|² + |ρ|² - 1 |"""
        return abs(self.transmission_probability + self.reflection_probability - 1.0)

    def translated(self, x0: float) -> "ScatteringResult":
        """Desloca a impureza da origem para x0: ρ ganha a fase e^{±2ikx0}"""
        sign = 1.0 if self.side is IncidenceSide.LEFT else -1.0
        return replace(self, rho=self.rho * np.exp(2j * sign * self.k * x0))

    def conjugate(self) -> "ScatteringResult":
        return replace(self, sigma=self.sigma.conjugate(), rho=self.rho.conjugate())

    def s_matrix(self) -> np.ndarray:
        """S = [[σ, ρ], [ρ, σ]]"""
        return np.array([[self.sigma, self.rho], [self.rho, self.sigma]], dtype=complex)


@dataclass(frozen=True)
class SpinorPiece:
    """Termo (A, B)ᵀ e^{exponent·x} válido em [lower, upper)"""
    lower: float
    upper: float
    coefficients: Spinor
    exponent: complex

    def contains(self, x: float) -> bool:
        return self.lower <= x < self.upper

    def value(self, x: float) -> Spinor:
        return self.coefficients * np.exp(self.exponent * x)


@dataclass(frozen=True)
class SpinorField:
    """
    Spinor exponencial por partes. Um intervalo pode ter mais de um termo
    (entre impurezas convivem as duas exponenciais); o valor é a soma dos termos.
    """
    pieces: Tuple[SpinorPiece, ...]
    breakpoints: Tuple[float, ...] = ()

    def __call__(self, x: float) -> Spinor:
        total = np.zeros(2, dtype=complex)
        for piece in self.pieces:
            if piece.contains(x):
                total = total + piece.value(x)
        return total

    def limit(self, x: float, side: str) -> Spinor:
        """Limite lateral em x ('left' ou 'right') avaliando os termos do intervalo vizinho"""
        total = np.zeros(2, dtype=complex)
        for piece in self.pieces:
            inside = (piece.lower < x <= piece.upper) if side == 'left' else (piece.lower <= x < piece.upper)
            if inside:
                total = total + piece.coefficients * np.exp(piece.exponent * x)
        return total

    def density(self, x) -> np.ndarray:
        """|ψ₁|² + |ψ₂|² numa malha"""
        return np.array([spinor_norm_squared(self(float(xi))) for xi in np.atleast_1d(x)])

    def norm_squared(self) -> float:
        """∫|ψ|² dx em forma fechada (somas de exponenciais por intervalo)"""
        intervals: Dict[Tuple[float, float], List[SpinorPiece]] = {}
        for piece in self.pieces:
            intervals.setdefault((piece.lower, piece.upper), []).append(piece)

        total = 0.0
        for (lower, upper), group in intervals.items():
            for a in group:
                for b in group:
                    weight = complex(np.vdot(a.coefficients, b.coefficients))
                    rate = np.conj(a.exponent) + b.exponent
                    total += (weight * _exponential_integral(rate, lower, upper)).real
        return float(total)

    def scaled(self, factor: complex) -> "SpinorField":
        return replace(self, pieces=tuple(
            replace(piece, coefficients=piece.coefficients * factor) for piece in self.pieces
        ))

    def shifted(self, x0: float) -> "SpinorField":
        """ψ(x - x0): translada o perfil inteiro para a direita por x0"""
        return SpinorField(
            pieces=tuple(
                SpinorPiece(piece.lower + x0, piece.upper + x0,
                            piece.coefficients * np.exp(-piece.exponent * x0), piece.exponent)
                for piece in self.pieces
            ),
            breakpoints=tuple(b + x0 for b in self.breakpoints),
        )


def _exponential_integral(rate: complex, lower: float, upper: float) -> complex:
    """∫ e^{rate·x} dx em [lower, upper], aceitando limites infinitos quando decai"""
    if abs(rate) == 0:
        return complex(upper - lower)

    def primitive(x: float) -> complex:
        if math.isinf(x):
            return 0j
        return np.exp(rate * x) / rate

    return primitive(upper) - primitive(lower)


@dataclass(frozen=True)
class BoundState:
    """Estado ligado normalizável (∫|ψ|² = 1)"""
    kappa_b: float
    omega_b: float
    species: Species
    sign_flip: int
    spinor_profile: SpinorField
    path: SolverPath = SolverPath.ANALYTIC

    @property
    def mass(self) -> float:
        return math.hypot(self.kappa_b, self.omega_b)


@dataclass(frozen=True)
class DensityProfile:
    """j⁰(x) = sign · amplitude · e^{-decay_rate·|x|}"""
    Q: float
    amplitude: float
    decay_rate: float
    sign: int
    center: float = 0.0

    def __call__(self, x) -> np.ndarray:
        return self.sign * self.amplitude * np.exp(-self.decay_rate * np.abs(np.asarray(x, dtype=float) - self.center))

    @property
    def total_charge(self) -> float:
        """Integral fechada sobre ℝ"""
        return self.sign * 2.0 * self.amplitude / self.decay_rate


class ISpectrumSolver(ABC):
    """Interface para solvers espectrais"""

    @abstractmethod
    def supports(self, array: "ImpurityArray") -> bool:
        """Indica se o solver trata este arranjo"""
        pass

    @abstractmethod
    def scatter(self, array: "ImpurityArray", species: Species, k: float) -> Tuple[ScatteringResult, ScatteringResult]:
        """Amplitudes para incidência pela esquerda e pela direita"""
        pass

    @abstractmethod
    def bound_states(self, array: "ImpurityArray", species: Species) -> List[BoundState]:
        """Estados ligados da espécie"""
        pass

    @abstractmethod
    def get_solver_name(self) -> str:
        """Retorna nome do solver"""
        pass

    @property
    @abstractmethod
    def path(self) -> SolverPath:
        pass


class BaseSpectrumSolver(ISpectrumSolver):
    """Implementação base com funcionalidades comuns"""

    def __init__(self, solver_name: str):
        self.solver_name = solver_name
        self.logger = logging.getLogger(f"{__name__}.{solver_name}")

    def get_solver_name(self) -> str:
        return self.solver_name

    def scatter_grid(self, array: "ImpurityArray", species: Species, ks: Sequence[float],
                     mapper: Optional[Callable] = None) -> List[Tuple[ScatteringResult, ScatteringResult]]:
        """Avalia uma malha de k preservando a ordem; mapper permite paralelizar (ex.: executor.map)"""
        mapper = mapper or map
        results = list(mapper(lambda k: self.scatter(array, species, float(k)), ks))
        self.logger.debug(f"{len(results)} pontos de espalhamento via {self.solver_name} ({species.value})")
        return results


class SpectrumSolverFactory:
    """Factory para criar solvers espectrais"""

    _solvers: Dict[str, type] = {}

    @classmethod
    def register_solver(cls, solver_type: str, solver_class: type) -> None:
        """Registra um solver"""
        cls._solvers[solver_type] = solver_class

    @classmethod
    def create_solver(cls, solver_type: str, **kwargs) -> ISpectrumSolver:
        """Cria uma instância do solver"""
        if not cls._solvers:
            # Registro preguiçoso para evitar import circular
            from app.services import analytic_service, transfer_service  # noqa: F401
        if solver_type not in cls._solvers:
            raise ValueError(f"Solver não registrado: {solver_type}")
        return cls._solvers[solver_type](**kwargs)

    @classmethod
    def get_available_solvers(cls) -> List[str]:
        return list(cls._solvers.keys())
