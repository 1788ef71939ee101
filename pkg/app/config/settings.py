import logging
import os
from dotenv import load_dotenv
from pathlib import Path

logger = logging.getLogger(__name__)


def _grid_workers(raw: str) -> int:
    """Número de workers a partir do ambiente; valores inválidos caem para 1"""
    try:
        return max(1, int(raw))
    except (TypeError, ValueError):
        logger.warning(f"GRID_WORKERS inválido ({raw!r}); usando 1")
        return 1


def load_config():
    """Carrega as configurações de ambiente da aplicação (apenas diagnóstico e paralelismo)"""
    
    # Carregar variáveis de ambiente
    load_dotenv()
    
    # Diretório raiz do projeto
    ROOT_DIR = Path(__file__).parent.parent.parent
    
    config = {
        # Configurações gerais
        'ROOT_DIR': ROOT_DIR,
        'DEBUG': os.getenv('DEBUG', 'False').lower() == 'true',
        
        # Logging
        'LOG_LEVEL': os.getenv('LOG_LEVEL', 'WARNING').upper(),
        'LOG_DIR': os.getenv('LOG_DIR', ''),
        
        # Avaliação das malhas em paralelo (não altera os resultados)
        'GRID_WORKERS': _grid_workers(os.getenv('GRID_WORKERS', '1')),
    }
    
    if config['DEBUG']:
        config['LOG_LEVEL'] = 'DEBUG'
    
    return config

# Configurações globais
CONFIG = load_config()
