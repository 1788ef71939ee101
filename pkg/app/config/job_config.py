"""
Arquivo de job (KEY = value) e sobreposições da linha de comando.

Precedência: preset < arquivo < flags. Variáveis de ambiente nunca entram num job.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from dotenv import dotenv_values

from app.data.figure_presets import get_preset
from app.modules.point_interaction import PointInteraction, Species
from app.modules.transfer_solver import ImpurityArray
from app.utils.error_handler import ConfigError
from app.utils.helpers import evaluate_number, linear_grid, split_fields
from app.utils.validation import JobValidator

logger = logging.getLogger(__name__)

SCALAR_KEYS = (
    'MASS', 'CHARGE', 'SPECIES', 'COMB',
    'K_MIN', 'K_MAX', 'N_K', 'X_MIN', 'X_MAX', 'N_X',
    'SWEEP', 'SWEEP_SAMPLES', 'LAMBDA_MAX', 'SWEEP_Q', 'SWEEP_LAMBDA',
    'FORMAT', 'OUTPUT',
)
IMPURITY_KEY = re.compile(r'^IMPURITY_(\d+)$')
_ASSIGNMENT = re.compile(r'^\s*(?:export\s+)?([A-Za-z_][A-Za-z0-9_]*)\s*=')

DEFAULTS = {
    'MASS': '1',
    'CHARGE': '1',
    'SPECIES': 'both',
    'K_MIN': '0.01',
    'K_MAX': '10',
    'N_K': '512',
    'SWEEP': 'none',
    'SWEEP_SAMPLES': '8',
    'LAMBDA_MAX': '2',
    'SWEEP_Q': '0',
    'SWEEP_LAMBDA': '0',
    'FORMAT': 'csv',
}

SPECIES_CHOICES = {
    'electron': (Species.ELECTRON,),
    'positron': (Species.POSITRON,),
    'both': (Species.ELECTRON, Species.POSITRON),
}


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    points: int

    def values(self) -> np.ndarray:
        return linear_grid(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """Varredura de estados ligados: kind em {'none', 'q', 'lambda'}"""
    kind: str = 'none'
    samples: int = 8
    lambda_max: float = 2.0
    q: float = 0.0
    lam: float = 0.0


@dataclass(frozen=True)
class JobConfig:
    """Job validado, pronto para os comandos"""
    mass: float = 1.0
    Q: float = 1.0
    species: Tuple[Species, ...] = (Species.ELECTRON, Species.POSITRON)
    impurities: Tuple[PointInteraction, ...] = ()
    k_grid: GridSpec = GridSpec(0.01, 10.0, 512)
    x_grid: Optional[GridSpec] = None
    sweep: SweepSpec = SweepSpec()
    output_format: str = 'csv'
    output_path: Optional[str] = None
    values: Tuple[Tuple[str, str], ...] = field(default=(), compare=False)

    def array(self) -> ImpurityArray:
        """Arranjo de impurezas do job"""
        if not self.impurities:
            raise ConfigError("nenhuma impureza definida (use IMPURITY_<n>, COMB ou --impurity)", key="IMPURITY_1")
        return ImpurityArray(self.impurities, self.mass)

    def echo(self) -> Dict[str, str]:
        """Valores efetivos em ordem estável, para os metadados dos artefatos"""
        return dict(sorted(self.values))


@dataclass
class _Entry:
    raw: str
    path: Optional[str] = None
    line: Optional[int] = None


def _scan_lines(path: Path) -> Dict[str, int]:
    """Linha (1-based) de cada chave; linhas malformadas e chaves repetidas viram ConfigError"""
    lines: Dict[str, int] = {}
    with open(path, encoding='utf-8') as handle:
        for number, text in enumerate(handle, start=1):
            stripped = text.strip()
            if not stripped or stripped.startswith('#'):
                continue
            match = _ASSIGNMENT.match(text)
            if not match:
                raise ConfigError(f"linha malformada (esperado KEY = value): {stripped!r}", line=number, path=path)
            key = match.group(1)
            if key in lines:
                raise ConfigError(f"chave repetida (primeira ocorrência na linha {lines[key]})",
                                  key=key, line=number, path=path)
            lines[key] = number
    return lines


def _is_impurity_key(key: str) -> bool:
    return key == 'COMB' or IMPURITY_KEY.match(key) is not None


def _merge_layer(entries: Dict[str, _Entry], layer: Dict[str, _Entry]) -> None:
    """Uma camada que define impurezas substitui todas as impurezas anteriores"""
    if any(_is_impurity_key(key) for key in layer):
        for key in [key for key in entries if _is_impurity_key(key)]:
            del entries[key]
    entries.update(layer)


def _read_file(path: Union[str, Path]) -> Dict[str, _Entry]:
    path = Path(path)
    if not path.is_file():
        raise ConfigError("arquivo de job não encontrado", path=path)
    lines = _scan_lines(path)
    raw = dotenv_values(path, interpolate=False)
    layer = {}
    for key, value in raw.items():
        if value is None:
            raise ConfigError("chave sem valor", key=key, line=lines.get(key), path=path)
        layer[key] = _Entry(value, str(path), lines.get(key))
    logger.debug(f"{len(layer)} chave(s) lidas de {path}")
    return layer


def _overrides_layer(overrides: Dict[str, Any]) -> Dict[str, _Entry]:
    layer = {}
    impurities = overrides.get('IMPURITIES') or []
    for index, text in enumerate(impurities, start=1):
        layer[f'IMPURITY_{index}'] = _Entry(str(text))
    for key, value in overrides.items():
        if key == 'IMPURITIES' or value is None:
            continue
        layer[key] = _Entry(str(value))
    return layer


class _Parser:
    """Converte as entradas brutas em valores tipados, com erros apontando a linha"""

    def __init__(self, entries: Dict[str, _Entry]):
        self.entries = entries

    def error(self, key: str, message: str) -> ConfigError:
        entry = self.entries.get(key)
        if entry is None:
            return ConfigError(message, key=key)
        return ConfigError(message, key=key, line=entry.line, path=entry.path)

    def raw(self, key: str) -> Optional[str]:
        entry = self.entries.get(key)
        if entry is not None:
            return entry.raw.strip()
        return DEFAULTS.get(key)

    def number(self, key: str) -> Optional[float]:
        text = self.raw(key)
        if text is None:
            return None
        try:
            return evaluate_number(text)
        except ValueError as e:
            raise self.error(key, f"valor numérico inválido ({e})")

    def integer(self, key: str) -> Optional[int]:
        value = self.number(key)
        if value is None:
            return None
        if value != int(value):
            raise self.error(key, f"esperado um inteiro, recebido {self.raw(key)!r}")
        return int(value)

    def choice(self, key: str, options) -> str:
        text = self.raw(key).lower()
        if text not in options:
            raise self.error(key, f"valor {text!r} inválido (use {'|'.join(options)})")
        return text

    def fields(self, key: str, count: int) -> List[float]:
        try:
            return [evaluate_number(item) for item in split_fields(self.raw(key), count)]
        except ValueError as e:
            raise self.error(key, str(e))


def load_job_config(path: Optional[Union[str, Path]] = None,
                    overrides: Optional[Dict[str, Any]] = None,
                    preset: Optional[str] = None) -> JobConfig:
    """
    Lê e valida um job.

    overrides usa as mesmas chaves do arquivo; 'IMPURITIES' é uma lista de
    textos 'x, q, lambda' que substitui todas as impurezas anteriores.
    """
    entries: Dict[str, _Entry] = {}
    if preset:
        _merge_layer(entries, {key: _Entry(value, f"<preset {preset}>") for key, value in get_preset(preset).items()})
    if path is not None:
        _merge_layer(entries, _read_file(path))
    if overrides:
        _merge_layer(entries, _overrides_layer(overrides))

    parser = _Parser(entries)
    for key in entries:
        if key not in SCALAR_KEYS and not IMPURITY_KEY.match(key):
            raise parser.error(key, "chave desconhecida")

    mass = parser.number('MASS')
    charge = parser.number('CHARGE')
    species = SPECIES_CHOICES[parser.choice('SPECIES', SPECIES_CHOICES)]

    impurity_keys = sorted((key for key in entries if IMPURITY_KEY.match(key)),
                           key=lambda key: int(IMPURITY_KEY.match(key).group(1)))
    if impurity_keys and 'COMB' in entries:
        raise parser.error('COMB', "COMB não pode ser combinado com IMPURITY_<n>")

    impurities: Tuple[PointInteraction, ...] = ()
    if 'COMB' in entries:
        count, spacing, q, lam = parser.fields('COMB', 4)
        if count != int(count) or count < 1 or not spacing > 0:
            raise parser.error('COMB', "esperado count inteiro ≥ 1 e spacing > 0")
        if mass > 0:
            impurities = ImpurityArray.comb(int(count), spacing, q, lam, mass).impurities
    else:
        impurities = tuple(PointInteraction(*parser.fields(key, 3)) for key in impurity_keys)

    k_grid = (parser.number('K_MIN'), parser.number('K_MAX'), parser.integer('N_K'))
    x_values = [parser.raw(key) for key in ('X_MIN', 'X_MAX', 'N_X')]
    x_grid = None
    if any(value is not None for value in x_values):
        if not all(value is not None for value in x_values):
            missing = [key for key, value in zip(('X_MIN', 'X_MAX', 'N_X'), x_values) if value is None]
            raise parser.error(missing[0], "a malha em x exige X_MIN, X_MAX e N_X")
        x_grid = (parser.number('X_MIN'), parser.number('X_MAX'), parser.integer('N_X'))

    sweep_kind = parser.choice('SWEEP', ('none', 'q', 'lambda'))
    sweep_samples = parser.integer('SWEEP_SAMPLES')
    lambda_max = parser.number('LAMBDA_MAX')

    check = JobValidator.validate_job({
        'mass': mass,
        'Q': charge,
        'k_grid': k_grid,
        'x_grid': x_grid,
        'positions': [p.position for p in impurities],
        'impurity_keys': impurity_keys,
        'sweep': sweep_kind,
        'sweep_samples': sweep_samples,
        'lambda_max': lambda_max,
    })
    if not check["valid"]:
        first = check["errors"][0]
        logger.warning(f"Job inválido: {len(check['errors'])} erro(s)")
        raise parser.error(first["key"], first["message"])

    # OUTPUT indica o destino do artefato, não faz parte do job
    values = {key: entry.raw.strip() for key, entry in entries.items() if key != 'OUTPUT'}
    for key, default in DEFAULTS.items():
        values.setdefault(key, default)

    return JobConfig(
        mass=mass,
        Q=charge,
        species=species,
        impurities=impurities,
        k_grid=GridSpec(*k_grid),
        x_grid=GridSpec(*x_grid) if x_grid else None,
        sweep=SweepSpec(sweep_kind, sweep_samples, lambda_max, parser.number('SWEEP_Q'), parser.number('SWEEP_LAMBDA')),
        output_format=parser.choice('FORMAT', ('csv', 'json')),
        output_path=parser.raw('OUTPUT'),
        values=tuple(values.items()),
    )
