"""
Núcleo físico: álgebra de Clifford, impurezas pontuais, estados livres,
resultados em forma fechada e solver de matrizes de transferência
"""

__all__ = [
    'clifford',
    'point_interaction',
    'free_states',
    'analytic_spectra',
    'transfer_solver',
]
