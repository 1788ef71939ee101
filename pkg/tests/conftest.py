"""
Configuração compartilhada dos testes
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar o diretório raiz ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


@pytest.fixture
def rng():
    """Gerador com semente fixa"""
    return np.random.default_rng(20240611)


@pytest.fixture
def write_job(tmp_path):
    """Grava um arquivo de job e devolve o caminho"""
    def _write(text: str, name: str = "job.env") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write
