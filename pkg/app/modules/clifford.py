"""
Álgebra de Clifford de R^{1,1} na representação fixa γ⁰=σ₃, γ¹=iσ₂, γ²=σ₁
Aritmética de matrizes complexas 2x2, exponencial em forma fechada e conjugações P/T/C
"""

import cmath
import logging
from typing import Union

import numpy as np
from numpy.typing import NDArray

from app.config.solver import TOLERANCES
from app.utils.error_handler import DomainError

logger = logging.getLogger(__name__)

# Matriz complexa 2x2 e spinor de duas componentes
Mat2C = NDArray[np.complex128]
Spinor = NDArray[np.complex128]

_IDENTITY = np.eye(2, dtype=complex)

_SIGMAS = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}

_GAMMAS = {
    0: _SIGMAS[3],
    1: 1j * _SIGMAS[2],
    2: _SIGMAS[1],
}

for _matrix in list(_SIGMAS.values()) + list(_GAMMAS.values()) + [_IDENTITY]:
    _matrix.flags.writeable = False


def identity() -> Mat2C:
    """Matriz identidade 2x2"""
    return _IDENTITY.copy()


def sigma(index: int) -> Mat2C:
    """Matriz de Pauli σ₁, σ₂ ou σ₃"""
    if index not in _SIGMAS:
        raise DomainError(f"Índice de Pauli inválido: {index} (use 1, 2 ou 3)")
    return _SIGMAS[index].copy()


def gamma(index: int) -> Mat2C:
    """Matriz γ^index da representação de Dirac fixa; γ² = γ⁰γ¹"""
    if index not in _GAMMAS:
        raise DomainError(f"Índice gama inválido: {index} (use 0, 1 ou 2)")
    return _GAMMAS[index].copy()


def as_mat2c(entries) -> Mat2C:
    """Converte uma sequência de 4 entradas (a11, a12, a21, a22) ou 2x2 numa Mat2C"""
    matrix = np.asarray(entries, dtype=complex)
    if matrix.shape == (4,):
        matrix = matrix.reshape(2, 2)
    if matrix.shape != (2, 2):
        raise DomainError(f"Esperada matriz 2x2, recebido formato {matrix.shape}")
    return matrix


def spinor(upper: complex, lower: complex) -> Spinor:
    """Spinor (ψ₁, ψ₂)"""
    return np.array([upper, lower], dtype=complex)


def spinor_norm_squared(psi: Spinor) -> float:
    """|ψ₁|² + |ψ₂|²"""
    return float(np.vdot(psi, psi).real)


def adjoint(matrix: Mat2C) -> Mat2C:
    return np.conj(matrix).T


def inverse(matrix: Mat2C) -> Mat2C:
    """Inversa 2x2 pela adjunta clássica"""
    det = matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]
    if det == 0:
        raise DomainError("Matriz singular não possui inversa")
    return np.array([[matrix[1, 1], -matrix[0, 1]],
                     [-matrix[1, 0], matrix[0, 0]]], dtype=complex) / det


def anticommutator(a: Mat2C, b: Mat2C) -> Mat2C:
    return a @ b + b @ a


def mat_exp(matrix: Mat2C) -> Mat2C:
    """
    Exponencial de matriz 2x2 em forma fechada.

    exp(A) = e^{t} [cosh(s) 𝟙 + sinh(s)/s (A - t𝟙)], com t = tr(A)/2 e s² = t² - det(A).
    Perto de s = 0 o quociente sinh(s)/s é avaliado por série de Taylor.
    """
    a = as_mat2c(matrix)
    if not np.all(np.isfinite(a)):
        raise DomainError("mat_exp requer entradas finitas")

    t = 0.5 * (a[0, 0] + a[1, 1])
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    s_squared = t * t - det
    # cosh(s) e sinh(s)/s são pares em s: o ramo da raiz é irrelevante
    s = cmath.sqrt(s_squared)

    if abs(s) < TOLERANCES['series_switch']:
        sinhc = 1 + s_squared / 6 + s_squared ** 2 / 120 + s_squared ** 3 / 5040
    else:
        sinhc = cmath.sinh(s) / s

    traceless = a - t * _IDENTITY
    return cmath.exp(t) * (cmath.cosh(s) * _IDENTITY + sinhc * traceless)


def clifford_check() -> bool:
    """Verifica exatamente γ⁰γ⁰ = 𝟙, γ¹γ¹ = -𝟙 e {γ⁰, γ¹} = 0"""
    g0, g1 = _GAMMAS[0], _GAMMAS[1]
    return bool(
        np.array_equal(g0 @ g0, _IDENTITY)
        and np.array_equal(g1 @ g1, -_IDENTITY)
        and np.array_equal(anticommutator(g0, g1), np.zeros((2, 2), dtype=complex))
        and np.array_equal(g0 @ g1, _GAMMAS[2])
    )


def dirac_pairing(left: Spinor, right: Spinor) -> complex:
    """Produto com o adjunto de Dirac: ψ̄χ = ψ†γ⁰χ"""
    return complex(np.conj(left) @ _GAMMAS[0] @ right)


# Conjugações discretas da matriz de matching (paridade intrínseca p = 0)

def parity_conjugate(matrix: Mat2C) -> Mat2C:
    """T^P = γ⁰ T⁻¹ γ⁰"""
    return _GAMMAS[0] @ inverse(matrix) @ _GAMMAS[0]


def time_reversal_conjugate(matrix: Mat2C) -> Mat2C:
    """T^T = γ⁰ T* γ⁰"""
    return _GAMMAS[0] @ np.conj(matrix) @ _GAMMAS[0]


def charge_conjugate(matrix: Mat2C) -> Mat2C:
    """T^C = γ² T* γ²"""
    return _GAMMAS[2] @ np.conj(matrix) @ _GAMMAS[2]


def max_abs_difference(a: Union[Mat2C, Spinor], b: Union[Mat2C, Spinor]) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
