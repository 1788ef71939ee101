"""
Solver em forma fechada para uma única impureza pura (eletrostática ou de massa)
"""

import logging
from typing import List, Tuple

from app.interfaces.spectrum_service import (
    BaseSpectrumSolver, BoundState, ScatteringResult, SolverPath, SpectrumSolverFactory,
)
from app.modules.analytic_spectra import impurity_amplitudes, impurity_bound_states
from app.modules.point_interaction import Species
from app.modules.transfer_solver import ImpurityArray

logger = logging.getLogger(__name__)


class AnalyticSpectrumSolver(BaseSpectrumSolver):
    """Fórmulas fechadas; válido só para uma impureza pura em qualquer posição"""

    def __init__(self):
        super().__init__("analytic")

    @property
    def path(self) -> SolverPath:
        return SolverPath.ANALYTIC

    def supports(self, array: ImpurityArray) -> bool:
        return array.is_single_pure

    def scatter(self, array: ImpurityArray, species: Species, k: float) -> Tuple[ScatteringResult, ScatteringResult]:
        return impurity_amplitudes(array.mass, array.impurities[0], k, species)

    def bound_states(self, array: ImpurityArray, species: Species) -> List[BoundState]:
        states = impurity_bound_states(array.mass, array.impurities[0])
        return [state for state in states if state.species is species]


# Registrar solver na factory
SpectrumSolverFactory.register_solver('analytic', AnalyticSpectrumSolver)
