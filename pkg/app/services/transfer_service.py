"""
Solver numérico por matrizes de transferência (arranjos arbitrários e acoplamentos mistos)
"""

import logging
from typing import List, Tuple

from app.interfaces.spectrum_service import (
    BaseSpectrumSolver, BoundState, ScatteringResult, SolverPath, SpectrumSolverFactory,
)
from app.modules.point_interaction import Species
from app.modules.transfer_solver import ImpurityArray, find_bound_states, s_matrix

logger = logging.getLogger(__name__)


class TransferSpectrumSolver(BaseSpectrumSolver):
    """Solver exato para qualquer arranjo"""

    def __init__(self):
        super().__init__("numeric")

    @property
    def path(self) -> SolverPath:
        return SolverPath.NUMERIC

    def supports(self, array: ImpurityArray) -> bool:
        return True

    def scatter(self, array: ImpurityArray, species: Species, k: float) -> Tuple[ScatteringResult, ScatteringResult]:
        return s_matrix(array, species, array.mass, k)

    def bound_states(self, array: ImpurityArray, species: Species) -> List[BoundState]:
        states = find_bound_states(array, species, array.mass)
        self.logger.debug(f"{len(states)} estado(s) ligado(s) de {species.value} em {len(array)} impureza(s)")
        return states


# Registrar solver na factory
SpectrumSolverFactory.register_solver('numeric', TransferSpectrumSolver)
