"""
Configurações numéricas dos solvers
"""

# Tolerâncias usadas nas verificações e nos erros
TOLERANCES = {
    'unitarity_analytic': 1e-12,
    'unitarity_numeric': 1e-10,
    'phase_consistency': 1e-8,       # |σ|²+|ρ|² antes de extrair δ
    'phase_denominator': 1e-8,       # |Re(σ²-ρ²)| mínimo para comparar tan 2δ
    'degenerate_basis': 1e-14,       # |det W|
    'transmission_pole': 1e-14,      # |M22| no eixo real
    'region_boundary': 1e-12,        # q em {0, π/2, π, 3π/2}
    'series_switch': 1e-6,           # |s| abaixo do qual sinh(s)/s vira série
    'matching_residual': 1e-10,
    'pole_residual': 1e-10,
}

# Busca de estados ligados por varredura + bisseção
BOUND_STATE_SEARCH = {
    'grid_points': 2048,
    'epsilon': 1e-6,                 # κ ∈ (εm, (1-ε)m)
    'xtol': 1e-12,
    'max_iterations': 200,
}

# Malha padrão das densidades de carga
DENSITY_GRID = {
    'half_width_decay_lengths': 10.0,  # x ∈ [-10/κ_b, 10/κ_b]
    'points': 2001,
}

# Formatação dos artefatos
OUTPUT_FORMAT = {
    'csv_float_format': '%.16e',     # 17 algarismos significativos
    'csv_na_rep': 'nan',
    'encoding': 'utf-8',
}

# Tamanho das amostras da suíte verify (semente fixa)
VERIFY_SAMPLES = {
    'matching': 200,
    'unitarity': 1000,
    'arrays': 200,
    'oracle': 500,
    'oracle_bound_states': 100,   # cada amostra faz duas buscas completas
    'densities': 200,
    'phase_couplings': 20,
    'phase_grid': 512,
    'stability': 10,
}
