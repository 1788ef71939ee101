#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sistema Robusto de Tratamento de Erros
Hierarquia de exceções do pacote, configuração de logging e captura de erros na CLI
"""

import logging
import sys
import traceback
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Optional, Union

import click

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


class SpectrumError(Exception):
    """Base de todos os erros lançados intencionalmente pelo pacote"""
    exit_code = 1


class DomainError(SpectrumError, ValueError):
    """Argumento fora do domínio da operação"""
    exit_code = 3


class InconsistencyError(SpectrumError):
    """Amplitudes que violam a unitariedade além da tolerância"""
    exit_code = 4


class DegenerateBasisError(SpectrumError):
    """Base de ondas planas singular (ocorre apenas em k=0)"""
    exit_code = 4


class TransmissionPoleError(SpectrumError):
    """Polo da transmissão sobre o eixo real"""
    exit_code = 4


class NoBoundStateError(SpectrumError):
    """A configuração não admite estado ligado"""
    exit_code = 5


class ConfigError(SpectrumError):
    """Erro de leitura ou validação do arquivo de job"""
    exit_code = 2

    def __init__(self, message: str, key: Optional[str] = None,
                 line: Optional[int] = None, path: Optional[Union[str, Path]] = None):
        self.message = message
        self.key = key
        self.line = line
        self.path = str(path) if path is not None else None
        super().__init__(self._format())

    def _format(self) -> str:
        prefix = self.path or "<flags>"
        if self.line is not None:
            prefix = f"{prefix}:{self.line}"
        if self.key:
            return f"{prefix}: {self.key}: {self.message}"
        return f"{prefix}: {self.message}"


def configure_logging(level: str = "WARNING", log_dir: Optional[Union[str, Path]] = None) -> None:
    """Configura o logging da aplicação (stderr e, opcionalmente, arquivo)"""
    handlers = [logging.StreamHandler(sys.stderr)]

    if log_dir:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path / "spectrum.log"))

    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )


class ErrorHandler:
    """Gerenciador centralizado de erros"""

    @staticmethod
    def handle_config_error(error: ConfigError, context: str = "") -> None:
        """Trata erros de configuração"""
        logger.warning(f"Erro de configuração {context}: {error}")
        click.echo(f"❌ Configuração inválida: {error}", err=True)

    @staticmethod
    def handle_domain_error(error: DomainError, context: str = "") -> None:
        """Trata argumentos fora do domínio"""
        logger.warning(f"Erro de domínio {context}: {error}")
        click.echo(f"⚠️ Parâmetros fora do domínio: {error}", err=True)

    @staticmethod
    def handle_numerical_error(error: SpectrumError, context: str = "") -> None:
        """Trata falhas numéricas (base degenerada, polos, unitariedade)"""
        logger.error(f"Erro numérico {context}: {error}")
        click.echo(f"❌ Falha numérica: {error}", err=True)

    @staticmethod
    def handle_no_bound_state(error: NoBoundStateError, context: str = "") -> None:
        """Trata pedidos de densidade sem estado ligado"""
        logger.info(f"Sem estado ligado {context}: {error}")
        click.echo(f"⚠️ {error}", err=True)

    @staticmethod
    def handle_generic_error(error: Exception, context: str = "", verbose: bool = False) -> None:
        """Trata erros genéricos"""
        logger.error(f"Erro genérico {context}: {str(error)}")
        logger.debug(traceback.format_exc())
        click.echo("❌ Ocorreu um erro inesperado.", err=True)
        if verbose:
            click.echo(traceback.format_exc(), err=True)


def safe_command(func: Callable) -> Callable:
    """Decorator para execução segura dos comandos da CLI, mapeando erros em códigos de saída"""
    @wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        context = f"em {func.__name__}"
        ctx = click.get_current_context(silent=True)
        verbose = bool(ctx and ctx.find_root().params.get('verbose'))
        try:
            return func(*args, **kwargs)
        except ConfigError as e:
            ErrorHandler.handle_config_error(e, context)
            sys.exit(e.exit_code)
        except NoBoundStateError as e:
            ErrorHandler.handle_no_bound_state(e, context)
            sys.exit(e.exit_code)
        except DomainError as e:
            ErrorHandler.handle_domain_error(e, context)
            sys.exit(e.exit_code)
        except SpectrumError as e:
            ErrorHandler.handle_numerical_error(e, context)
            sys.exit(e.exit_code)
        except click.exceptions.Exit:
            raise
        except Exception as e:
            ErrorHandler.handle_generic_error(e, context, verbose)
            sys.exit(1)

    return wrapper
