"""
Escrita determinística dos artefatos em CSV ou JSON
"""

import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from app import __version__
from app.config.solver import OUTPUT_FORMAT
from app.services.job_runner import JobResult

logger = logging.getLogger(__name__)

TOOL_NAME = "dirac-delta-spectra"


def _plain(value: Any) -> Any:
    """Converte escalares numpy em tipos nativos; NaN vira None"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else value
    return value


def _format_check(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return OUTPUT_FORMAT['csv_float_format'] % float(value)
    return json.dumps(_plain(value), separators=(',', ':'))


def render_csv(result: JobResult) -> str:
    """Metadados '#', cabeçalho, linhas e verificações no rodapé"""
    buffer = io.StringIO()
    buffer.write(f"# tool: {TOOL_NAME} {__version__}\n")
    buffer.write(f"# verb: {result.verb}\n")
    for key, value in result.config.items():
        buffer.write(f"# config: {key} = {value}\n")
    result.table.to_csv(
        buffer,
        index=False,
        float_format=OUTPUT_FORMAT['csv_float_format'],
        na_rep=OUTPUT_FORMAT['csv_na_rep'],
        lineterminator='\n',
    )
    for key, value in result.checks.items():
        buffer.write(f"# check: {key} = {_format_check(value)}\n")
    return buffer.getvalue()


def render_json(result: JobResult) -> str:
    """Objeto {config, columns, rows, checks} com floats na menor representação exata"""
    document = {
        'config': dict(result.config, tool=f"{TOOL_NAME} {__version__}", verb=result.verb),
        'columns': list(result.table.columns),
        'rows': [_plain(list(row)) for row in result.table.itertuples(index=False, name=None)],
        'checks': _plain(result.checks),
    }
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


def write_result(result: JobResult, fmt: str = 'csv', path: Optional[Union[str, Path]] = None) -> str:
    """Renderiza e grava em path (se dado); devolve o texto"""
    text = render_json(result) if fmt == 'json' else render_csv(result)
    if path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding=OUTPUT_FORMAT['encoding'])
        logger.info(f"✅ Artefato {fmt} gravado em {target}")
    return text
