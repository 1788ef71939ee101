"""
Gerenciador unificado dos solvers espectrais
Escolhe entre o caminho analítico e o numérico e distribui as malhas de k
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from app.config.settings import CONFIG
from app.interfaces.spectrum_service import (
    BoundState, ISpectrumSolver, ScatteringResult, SolverPath, SpectrumSolverFactory,
)
from app.modules.point_interaction import Species
from app.modules.transfer_solver import ImpurityArray

logger = logging.getLogger(__name__)


class SpectrumManager:
    """Gerenciador central dos solvers"""

    def __init__(self, workers: Optional[int] = None):
        self.solvers: Dict[str, ISpectrumSolver] = {}
        self.default_solver = 'numeric'
        self.workers = workers if workers is not None else CONFIG['GRID_WORKERS']
        self._init_solvers()

    def _init_solvers(self):
        """Inicializa os solvers registrados"""
        self.solvers['analytic'] = SpectrumSolverFactory.create_solver('analytic')
        self.solvers['numeric'] = SpectrumSolverFactory.create_solver('numeric')
        logger.debug(f"Solvers inicializados: {list(self.solvers.keys())}")

    def _determine_best_solver(self, array: ImpurityArray, solver_type: Optional[str] = None) -> ISpectrumSolver:
        """Forma fechada para uma impureza pura; transferência para o resto"""
        if solver_type:
            solver = self.solvers[solver_type]
            if not solver.supports(array):
                raise ValueError(f"Solver {solver_type} não trata este arranjo")
            return solver
        analytic = self.solvers['analytic']
        if analytic.supports(array):
            return analytic
        return self.solvers[self.default_solver]

    def path_for(self, array: ImpurityArray) -> SolverPath:
        return self._determine_best_solver(array).path

    def scatter(self, array: ImpurityArray, species: Species, ks: Sequence[float],
                solver_type: Optional[str] = None) -> Tuple[SolverPath, List[Tuple[ScatteringResult, ScatteringResult]]]:
        """Amplitudes (esquerda, direita) em toda a malha, na ordem de ks"""
        solver = self._determine_best_solver(array, solver_type)
        logger.info(f"Espalhamento de {species.value}: {len(ks)} pontos via {solver.get_solver_name()}")

        if self.workers > 1 and len(ks) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                results = solver.scatter_grid(array, species, ks, mapper=executor.map)
        else:
            results = solver.scatter_grid(array, species, ks)
        return solver.path, results

    def bound_states(self, array: ImpurityArray, species: Species,
                     solver_type: Optional[str] = None) -> Tuple[SolverPath, List[BoundState]]:
        solver = self._determine_best_solver(array, solver_type)
        states = solver.bound_states(array, species)
        logger.info(f"{len(states)} estado(s) ligado(s) de {species.value} via {solver.get_solver_name()}")
        return solver.path, states

    def get_solver_status(self) -> Dict[str, Dict[str, str]]:
        """Resumo dos solvers disponíveis"""
        return {
            name: {'solver_name': solver.get_solver_name(), 'path': solver.path.value}
            for name, solver in self.solvers.items()
        }
