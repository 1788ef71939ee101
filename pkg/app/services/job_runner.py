"""
Execução dos comandos scatter, bound, density e phase
Cada comando devolve uma tabela (pandas) com metadados e verificações
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from scipy import integrate

from app.config.job_config import JobConfig
from app.config.solver import DENSITY_GRID, TOLERANCES
from app.interfaces.spectrum_service import BoundState, PotentialKind, SolverPath
from app.modules.analytic_spectra import (
    bound_state_density, closed_form_tan_2delta, matching_residual, phase_residual,
    phase_shift_curve, pole_condition_residual, s_matrix_eigenphases, tan_two_delta,
    total_phase_shift,
)
from app.modules.point_interaction import PointInteraction, Species
from app.modules.transfer_solver import ImpurityArray, secular_function
from app.services.spectrum_manager import SpectrumManager
from app.utils.error_handler import NoBoundStateError
from app.utils.helpers import linear_grid, quadrant_sweep

logger = logging.getLogger(__name__)

SCATTER_COLUMNS = [
    'species', 'side', 'path', 'k', 're_sigma', 'im_sigma', 're_rho', 'im_rho',
    'abs_sigma2', 'abs_rho2', 'unitarity_residual', 'unitarity_bound',
]
BOUND_COLUMNS = ['species', 'path', 'kappa_b', 'omega_b', 'sign_flip', 'matching_residual', 'pole_residual']
SWEEP_COLUMNS = ['q', 'lambda'] + BOUND_COLUMNS
DENSITY_COLUMNS = ['species', 'state', 'x', 'j0']
PHASE_COLUMNS = [
    'species', 'path', 'k', 'delta_plus', 'delta_minus', 'delta', 'delta_unwrapped',
    'tan_2delta', 'closed_form_tan_2delta', 'residual',
]


@dataclass
class JobResult:
    """Tabela de um comando, eco da configuração e verificações"""
    verb: str
    table: pd.DataFrame
    config: Dict[str, str]
    checks: Dict[str, Any] = field(default_factory=dict)


def _unitarity_bound(path: SolverPath) -> float:
    return TOLERANCES['unitarity_analytic'] if path is SolverPath.ANALYTIC else TOLERANCES['unitarity_numeric']


def _nanmax(values: List[float]) -> float:
    finite = [v for v in values if not math.isnan(v)]
    return max(finite) if finite else math.nan


def cmd_scatter(cfg: JobConfig, manager: Optional[SpectrumManager] = None) -> JobResult:
    """Linhas (k, σ, ρ, |σ|², |ρ|², resíduo de unitariedade) para os dois lados de incidência"""
    manager = manager or SpectrumManager()
    array = cfg.array()
    ks = cfg.k_grid.values()

    rows = []
    worst = 0.0
    within_bound = True
    for species in cfg.species:
        path, pairs = manager.scatter(array, species, ks)
        bound = _unitarity_bound(path)
        for pair in pairs:
            for amps in pair:
                residual = amps.unitarity_residual
                worst = max(worst, residual)
                within_bound = within_bound and residual < bound
                rows.append([
                    species.value, amps.side.value, path.value, amps.k,
                    amps.sigma.real, amps.sigma.imag, amps.rho.real, amps.rho.imag,
                    amps.transmission_probability, amps.reflection_probability, residual, bound,
                ])

    logger.info(f"scatter: {len(rows)} linha(s)")
    return JobResult(
        verb='scatter',
        table=pd.DataFrame(rows, columns=SCATTER_COLUMNS),
        config=cfg.echo(),
        checks={'max_unitarity_residual': worst, 'unitarity_within_bound': within_bound},
    )


def _pole_residual(array: ImpurityArray, state: BoundState, path: SolverPath) -> float:
    """Denominador de σ em k = iκ_b (forma fechada) ou |M₂₂(iκ_b)| (transferência)"""
    if path is SolverPath.ANALYTIC:
        impurity = array.impurities[0]
        if impurity.is_electrostatic:
            return pole_condition_residual(array.mass, impurity.q, PotentialKind.ELECTROSTATIC,
                                           state.species, state.kappa_b)
        return pole_condition_residual(array.mass, impurity.lam, PotentialKind.MASS_SPIKE,
                                       state.species, state.kappa_b)
    return abs(secular_function(array, state.species, array.mass, state.kappa_b))


def _bound_rows(manager: SpectrumManager, array: ImpurityArray, species_list) -> List[list]:
    rows = []
    for species in species_list:
        path, states = manager.bound_states(array, species)
        for state in states:
            rows.append([
                species.value, path.value, state.kappa_b, state.omega_b, state.sign_flip,
                matching_residual(state.spinor_profile, array.impurities, species),
                _pole_residual(array, state, path),
            ])
    return rows


def cmd_bound(cfg: JobConfig, manager: Optional[SpectrumManager] = None) -> JobResult:
    """Uma linha por estado ligado; no modo varredura, q ou λ percorre a malha da varredura"""
    manager = manager or SpectrumManager()
    sweep = cfg.sweep

    if sweep.kind == 'none':
        rows = _bound_rows(manager, cfg.array(), cfg.species)
        table = pd.DataFrame(rows, columns=BOUND_COLUMNS)
    else:
        if sweep.kind == 'q':
            couplings = [(q, sweep.lam) for q in quadrant_sweep(sweep.samples)]
        else:
            couplings = [(sweep.q, lam) for lam in linear_grid(-sweep.lambda_max, sweep.lambda_max, sweep.samples)]
        rows = []
        for q, lam in couplings:
            array = ImpurityArray.single(PointInteraction(0.0, float(q), float(lam)), cfg.mass)
            rows.extend([float(q), float(lam)] + row for row in _bound_rows(manager, array, cfg.species))
        table = pd.DataFrame(rows, columns=SWEEP_COLUMNS)

    matching = table['matching_residual'].tolist()
    poles = table['pole_residual'].tolist()
    checks = {
        'states': len(table),
        'max_matching_residual': _nanmax(matching) if matching else 0.0,
        'max_pole_residual': _nanmax(poles) if poles else 0.0,
        'max_energy_residual': float(np.max(np.abs(
            table['omega_b'] ** 2 + table['kappa_b'] ** 2 - cfg.mass ** 2))) if len(table) else 0.0,
    }
    logger.info(f"bound: {len(table)} estado(s)")
    return JobResult(verb='bound', table=table, config=cfg.echo(), checks=checks)


def default_density_grid(array: ImpurityArray, kappa_b: float) -> np.ndarray:
    """x ∈ [c - 10/κ_b - a, c + 10/κ_b + a], c e a o centro e a meia extensão do arranjo"""
    first, last = array.impurities[0].position, array.impurities[-1].position
    center = 0.5 * (first + last)
    half_width = DENSITY_GRID['half_width_decay_lengths'] / kappa_b + 0.5 * (last - first)
    points = DENSITY_GRID['points']
    if center == 0.0:
        return linear_grid(-half_width, half_width, points)
    return np.linspace(center - half_width, center + half_width, points)


def cmd_density(cfg: JobConfig, manager: Optional[SpectrumManager] = None) -> JobResult:
    """j⁰(x) de cada estado ligado, com carga total por Simpson e por trapézios"""
    manager = manager or SpectrumManager()
    array = cfg.array()

    frames = []
    states_checks = []
    for species in cfg.species:
        path, states = manager.bound_states(array, species)
        for index, state in enumerate(states):
            xs = cfg.x_grid.values() if cfg.x_grid else default_density_grid(array, state.kappa_b)
            if path is SolverPath.ANALYTIC:
                profile = bound_state_density(state, cfg.Q)
                j0 = profile(xs)
                closed_total = profile.total_charge
                peak = profile.sign * profile.amplitude
            else:
                j0 = species.charge_sign * cfg.Q * state.spinor_profile.density(xs)
                closed_total = species.charge_sign * cfg.Q * state.spinor_profile.norm_squared()
                peak = math.nan

            frames.append(pd.DataFrame({
                'species': species.value, 'state': index, 'x': xs, 'j0': j0,
            }, columns=DENSITY_COLUMNS))
            states_checks.append({
                'species': species.value,
                'state': index,
                'path': path.value,
                'kappa_b': state.kappa_b,
                'decay_rate': 2.0 * state.kappa_b,
                'j0_peak': peak,
                'expected_charge': species.charge_sign * cfg.Q,
                'closed_form_charge': closed_total,
                'total_charge': float(integrate.simpson(j0, x=xs)),
                'total_charge_trapezoid': float(integrate.trapezoid(j0, x=xs)),
            })

    if not frames:
        raise NoBoundStateError("A configuração não admite estado ligado para a(s) espécie(s) pedida(s)")

    logger.info(f"density: {len(frames)} estado(s)")
    return JobResult(
        verb='density',
        table=pd.concat(frames, ignore_index=True),
        config=cfg.echo(),
        checks={'states': states_checks},
    )


def _closed_form_available(array: ImpurityArray, path: SolverPath) -> bool:
    return path is SolverPath.ANALYTIC and array.impurities[0].position == 0.0


def cmd_phase(cfg: JobConfig, manager: Optional[SpectrumManager] = None) -> JobResult:
    """δ±, δ e tan 2δ por k, comparados com a forma fechada quando existe"""
    manager = manager or SpectrumManager()
    array = cfg.array()
    ks = cfg.k_grid.values()

    rows = []
    residuals = []
    for species in cfg.species:
        path, pairs = manager.scatter(array, species, ks)
        lefts = [left for left, _ in pairs]
        unwrapped = phase_shift_curve(lefts)
        closed = _closed_form_available(array, path)
        impurity = array.impurities[0]
        kind = PotentialKind.ELECTROSTATIC if impurity.is_electrostatic else PotentialKind.MASS_SPIKE
        coupling = impurity.q if impurity.is_electrostatic else impurity.lam

        for amps, delta_unwrapped in zip(lefts, unwrapped):
            delta_plus, delta_minus = s_matrix_eigenphases(amps)
            delta = total_phase_shift(amps)
            observed = tan_two_delta(amps)
            expected = closed_form_tan_2delta(cfg.mass, coupling, kind, species, amps.k) if closed else math.nan
            residual = phase_residual(observed, expected)
            residuals.append(residual)
            rows.append([
                species.value, path.value, amps.k, delta_plus, delta_minus, delta,
                float(delta_unwrapped), observed, expected, residual,
            ])

    logger.info(f"phase: {len(rows)} linha(s)")
    return JobResult(
        verb='phase',
        table=pd.DataFrame(rows, columns=PHASE_COLUMNS),
        config=cfg.echo(),
        checks={'max_residual': _nanmax(residuals), 'residual_bound': TOLERANCES['phase_consistency']},
    )


COMMANDS = {
    'scatter': cmd_scatter,
    'bound': cmd_bound,
    'density': cmd_density,
    'phase': cmd_phase,
}
