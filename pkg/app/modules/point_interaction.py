"""
Impurezas pontuais (potenciais δ) de Dirac: acoplamentos, matriz de matching e transformações P, T, C
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum

from app.config.solver import TOLERANCES
from app.modules.clifford import Mat2C, gamma, identity, mat_exp
from app.utils.error_handler import DomainError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


class Species(Enum):
    """Espécies do sistema bi-hamiltoniano"""
    ELECTRON = "electron"
    POSITRON = "positron"

    @property
    def charge_sign(self) -> int:
        """+ para elétrons, - para pósitrons na densidade de carga"""
        return 1 if self is Species.ELECTRON else -1

    @classmethod
    def parse(cls, value: str) -> "Species":
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError(f"Espécie desconhecida: {value!r} (use electron ou positron)")


class Symmetry(Enum):
    """Transformações discretas"""
    P = "P"
    T = "T"
    C = "C"


class CouplingRegion(Enum):
    """Classificação de q mod 2π: quadrantes abertos ou pontos de fronteira"""
    QUADRANT_I = "I"
    QUADRANT_II = "II"
    QUADRANT_III = "III"
    QUADRANT_IV = "IV"
    ZERO = "0"
    HALF_PI = "pi/2"
    PI = "pi"
    THREE_HALVES_PI = "3pi/2"


def reduce_angle(q: float) -> float:
    """Representante de q em [0, 2π)"""
    reduced = math.fmod(q, TWO_PI)
    if reduced < 0:
        reduced += TWO_PI
    if reduced >= TWO_PI:
        reduced = 0.0
    return reduced


def coupling_region(q: float) -> CouplingRegion:
    """Quadrante de q, com as fronteiras {0, π/2, π, 3π/2} como categorias próprias"""
    reduced = reduce_angle(q)
    tol = TOLERANCES['region_boundary']
    boundaries = [
        (0.0, CouplingRegion.ZERO),
        (0.5 * math.pi, CouplingRegion.HALF_PI),
        (math.pi, CouplingRegion.PI),
        (1.5 * math.pi, CouplingRegion.THREE_HALVES_PI),
        (TWO_PI, CouplingRegion.ZERO),
    ]
    for value, region in boundaries:
        if abs(reduced - value) <= tol:
            return region

    quadrants = [CouplingRegion.QUADRANT_I, CouplingRegion.QUADRANT_II,
                 CouplingRegion.QUADRANT_III, CouplingRegion.QUADRANT_IV]
    return quadrants[int(reduced // (0.5 * math.pi))]


@dataclass(frozen=True)
class PointInteraction:
    """Uma impureza: posição, acoplamento eletrostático q e acoplamento de massa λ"""
    position: float = 0.0
    q: float = 0.0
    lam: float = 0.0
    q_reduced: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name, value in (("position", self.position), ("q", self.q), ("lambda", self.lam)):
            if not math.isfinite(value):
                raise DomainError(f"{name} deve ser finito, recebido {value}")
        object.__setattr__(self, 'q_reduced', reduce_angle(self.q))

    @property
    def is_electrostatic(self) -> bool:
        """Acoplamento puramente eletrostático (λ = 0)"""
        return self.lam == 0.0

    @property
    def is_mass_spike(self) -> bool:
        """Acoplamento puramente de massa (q = 0)"""
        return self.q == 0.0

    @property
    def is_pure(self) -> bool:
        return self.is_electrostatic or self.is_mass_spike


def coupling_matrix(q: float, lam: float) -> Mat2C:
    """Γ(q, λ) = q𝟙 + λβ"""
    return q * identity() + lam * gamma(0)


def matching_matrix(p: PointInteraction, species: Species) -> Mat2C:
    """
    T_δ = exp(-iγ²Γ(q', λ)), com q' = q para elétrons e q' = -q para pósitrons.

    Sempre obtida pela exponencial, que é suave inclusive em Ω = 0 e em q + λ = 0.
    """
    q_eff = p.q if species is Species.ELECTRON else -p.q
    return mat_exp(-1j * gamma(2) @ coupling_matrix(q_eff, p.lam))


def transform(p: PointInteraction, which: Symmetry) -> PointInteraction:
    """P e T preservam a impureza; C troca q por -q"""
    if which is Symmetry.C:
        return replace(p, q=-p.q)
    return p


def species_dual(p: PointInteraction) -> PointInteraction:
    """
    Impureza (-q, -λ): o problema de pósitrons com (q, λ) é unitariamente
    equivalente (φ = σ₁ψ) ao de elétrons com (-q, -λ).
    """
    return replace(p, q=-p.q, lam=-p.lam)
