"""
Configurações prontas que reproduzem as figuras de referência (Q = m = 1)
Os valores usam a mesma sintaxe do arquivo de job
"""

from typing import Dict, List

from app.utils.error_handler import ConfigError

FIGURE_PRESETS = {
    "fig1": {
        "description": "Estados ligados na δ eletrostática: varredura de q em (0, 2π), ambas as espécies",
        "verb": "bound",
        "config": {
            "MASS": "1",
            "SPECIES": "both",
            "SWEEP": "q",
            "SWEEP_SAMPLES": "8",
        },
    },
    "fig2a": {
        "description": "Densidade do pósitron, δ eletrostática com q = π/6",
        "verb": "density",
        "config": {"MASS": "1", "CHARGE": "1", "SPECIES": "positron", "IMPURITY_1": "0, pi/6, 0"},
    },
    "fig2b": {
        "description": "Densidade do elétron, δ eletrostática com q = 2π/3",
        "verb": "density",
        "config": {"MASS": "1", "CHARGE": "1", "SPECIES": "electron", "IMPURITY_1": "0, 2*pi/3, 0"},
    },
    "fig2c": {
        "description": "Densidade do pósitron, δ eletrostática com q = 7π/6",
        "verb": "density",
        "config": {"MASS": "1", "CHARGE": "1", "SPECIES": "positron", "IMPURITY_1": "0, 7*pi/6, 0"},
    },
    "fig2d": {
        "description": "Densidade do elétron, δ eletrostática com q = 5π/3",
        "verb": "density",
        "config": {"MASS": "1", "CHARGE": "1", "SPECIES": "electron", "IMPURITY_1": "0, 5*pi/3, 0"},
    },
    "fig3": {
        "description": "Densidade do elétron no spike de massa λ = -1",
        "verb": "density",
        "config": {"MASS": "1", "CHARGE": "1", "SPECIES": "electron", "IMPURITY_1": "0, 0, -1"},
    },
    "fig4": {
        "description": "Densidade do pósitron no spike de massa λ = +1",
        "verb": "density",
        "config": {"MASS": "1", "CHARGE": "1", "SPECIES": "positron", "IMPURITY_1": "0, 0, 1"},
    },
    "mass-sweep": {
        "description": "Estados ligados no spike de massa: λ ∈ [-2, 2]",
        "verb": "bound",
        "config": {
            "MASS": "1",
            "SPECIES": "both",
            "SWEEP": "lambda",
            "SWEEP_SAMPLES": "41",
            "LAMBDA_MAX": "2",
        },
    },
}


def get_preset(name: str) -> Dict[str, str]:
    """Valores de configuração de um preset (cópia)"""
    if name not in FIGURE_PRESETS:
        raise ConfigError(f"preset desconhecido (disponíveis: {', '.join(list_presets())})", key="--preset")
    return dict(FIGURE_PRESETS[name]["config"])


def list_presets() -> List[str]:
    return list(FIGURE_PRESETS.keys())
