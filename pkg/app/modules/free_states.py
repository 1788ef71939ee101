"""
Cinemática da partícula livre: relação de dispersão, spinors de ondas planas
de elétrons e pósitrons e matrizes de base usadas pelo solver de transferência
"""

import logging
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from app.config.solver import TOLERANCES
from app.modules.clifford import Mat2C, Spinor, gamma, spinor
from app.modules.point_interaction import Species
from app.utils.error_handler import DegenerateBasisError, DomainError

logger = logging.getLogger(__name__)

Number = Union[float, complex]


def _check_mass(mass: float) -> None:
    if not mass > 0:
        raise DomainError(f"A massa deve ser positiva, recebido {mass}")


def dispersion(mass: float, k: Number) -> complex:
    """ω = √(k² + m²) no ramo principal; real e positivo em k real e em k = iκ, 0 < κ < m"""
    _check_mass(mass)
    return complex(np.sqrt(complex(k) ** 2 + mass ** 2))


@dataclass(frozen=True)
class Kinematics:
    """Massa, momento (real ou imaginário) e energia derivada ω"""
    mass: float
    k: complex
    omega: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'k', complex(self.k))
        object.__setattr__(self, 'omega', dispersion(self.mass, self.k))

    @classmethod
    def imaginary(cls, mass: float, kappa: float) -> "Kinematics":
        """k = iκ, usado na busca de estados ligados"""
        return cls(mass, 1j * kappa)


def u_plus(mass: float, k: Number) -> Spinor:
    """Spinor de energia positiva do elétron u₊(k) = (1, k/(ω+m)), sem normalizar"""
    omega = dispersion(mass, k)
    return spinor(1.0, complex(k) / (omega + mass))


def v_plus(mass: float, k: Number) -> Spinor:
    """Spinor do pósitron v₊(k) = γ² u₊*(k) = (k*/(ω*+m), 1)"""
    return gamma(2) @ np.conj(u_plus(mass, k))


def u_minus(mass: float, k: Number) -> Spinor:
    """Spinor de energia negativa u₋(k) = (k/(ω₋-m), 1); só usado em verificações"""
    omega_minus = -dispersion(mass, k)
    return spinor(complex(k) / (omega_minus - mass), 1.0)


def positron_spinor(mass: float, k: Number) -> Spinor:
    """
    Continuação analítica σ₁u₊(k) = (k/(ω+m), 1): resolve a equação conjugada
    com momento k também em k complexo; coincide com v₊(k) para k real.
    """
    return gamma(2) @ u_plus(mass, k)


def plane_wave_basis(kin: Kinematics, x: float, species: Species) -> Mat2C:
    """
    Matriz W(x, k) cujas colunas são as ondas que se movem para a direita e
    para a esquerda da espécie, avaliadas em x.

    Elétron:  u₊(k)e^{ikx},  γ⁰u₊(k)e^{-ikx}
    Pósitron: σ₁ aplicado às colunas do elétron, isto é v(k)e^{ikx}, -γ⁰v(k)e^{-ikx}
    """
    k = kin.k
    right = u_plus(kin.mass, k) * np.exp(1j * k * x)
    left = gamma(0) @ u_plus(kin.mass, k) * np.exp(-1j * k * x)
    basis = np.column_stack([right, left])
    if species is Species.POSITRON:
        basis = gamma(2) @ basis

    det = basis[0, 0] * basis[1, 1] - basis[0, 1] * basis[1, 0]
    if abs(det) < TOLERANCES['degenerate_basis']:
        raise DegenerateBasisError(f"Base de ondas planas singular em k={k} (|det W|={abs(det):.3e})")
    return basis


def free_dirac_residual(mass: float, k: float, species: Species = Species.ELECTRON) -> float:
    """Resíduo de (-iσ₁ d/dx ± mσ₃)ψ = ωψ para a onda plana da espécie, com d/dx → ik"""
    omega = dispersion(mass, k)
    mass_sign = 1.0 if species is Species.ELECTRON else -1.0
    hamiltonian = k * gamma(2) + mass_sign * mass * gamma(0)
    wave = u_plus(mass, k) if species is Species.ELECTRON else v_plus(mass, k)
    return float(np.max(np.abs(hamiltonian @ wave - omega * wave)))
