import json
import sys
from functools import wraps
from pathlib import Path

import click

# Adicionar o diretório raiz ao path
root_dir = Path(__file__).parent.parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from app import __version__
from app.config.job_config import load_job_config
from app.config.settings import CONFIG
from app.data.figure_presets import FIGURE_PRESETS, list_presets
from app.services.job_runner import COMMANDS
from app.services.report_writer import write_result
from app.services.verification import QUICK_SAMPLES, run_verification
from app.utils.error_handler import configure_logging, safe_command


def job_options(func):
    """Opções comuns aos comandos de job; sobrepõem o arquivo de configuração"""
    options = [
        click.option('--config', 'config_path', type=click.Path(dir_okay=False), help='Arquivo de job (KEY = value)'),
        click.option('--preset', type=click.Choice(list_presets()), help='Configuração de figura pronta'),
        click.option('--mass', help='Massa m (unidade natural)'),
        click.option('--charge', help='Carga Q'),
        click.option('--species', type=click.Choice(['electron', 'positron', 'both']), help='Espécie'),
        click.option('--impurity', 'impurities', multiple=True, help='Impureza "x, q, lambda" (repetível)'),
        click.option('--k-min'), click.option('--k-max'), click.option('--n-k'),
        click.option('--x-min'), click.option('--x-max'), click.option('--n-x'),
        click.option('--format', 'output_format', type=click.Choice(['csv', 'json']), help='Formato do artefato'),
        click.option('--output', type=click.Path(dir_okay=False), help='Arquivo de saída (padrão: stdout)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _overrides(params):
    keys = {
        'mass': 'MASS', 'charge': 'CHARGE', 'species': 'SPECIES',
        'k_min': 'K_MIN', 'k_max': 'K_MAX', 'n_k': 'N_K',
        'x_min': 'X_MIN', 'x_max': 'X_MAX', 'n_x': 'N_X',
        'output_format': 'FORMAT', 'output': 'OUTPUT',
    }
    overrides = {key: params.get(name) for name, key in keys.items() if params.get(name) is not None}
    if params.get('impurities'):
        overrides['IMPURITIES'] = list(params['impurities'])
    return overrides


def run_job(verb):
    """Carrega o job, executa o comando e grava o artefato"""
    def decorator(func):
        @wraps(func)
        def wrapper(**params):
            cfg = load_job_config(params.get('config_path'), _overrides(params), params.get('preset'))
            result = COMMANDS[verb](cfg)
            text = write_result(result, cfg.output_format, cfg.output_path)
            if not cfg.output_path:
                click.echo(text, nl=False)
        return wrapper
    return decorator


@click.group()
@click.version_option(__version__, prog_name='dirac-delta-spectra')
@click.option('--verbose', '-v', is_flag=True, help='Logging detalhado (DEBUG) e traceback em erros')
def cli(verbose):
    """Espalhamento e estados ligados de elétrons e pósitrons em impurezas δ de Dirac"""
    configure_logging('DEBUG' if verbose else CONFIG['LOG_LEVEL'], CONFIG['LOG_DIR'] or None)


@cli.command()
@job_options
@safe_command
@run_job('scatter')
def scatter(**params):
    """Amplitudes σ, ρ numa malha de k, para os dois lados de incidência"""


@cli.command()
@job_options
@safe_command
@run_job('bound')
def bound(**params):
    """Estados ligados (ou varredura em q/λ definida no job)"""


@cli.command()
@job_options
@safe_command
@run_job('density')
def density(**params):
    """Densidade de carga j⁰(x) dos estados ligados"""


@cli.command()
@job_options
@safe_command
@run_job('phase')
def phase(**params):
    """Defasagens δ±, δ e tan 2δ numa malha de k"""


@cli.command()
@click.option('--seed', default=2024, show_default=True, type=int, help='Semente dos sorteios')
@click.option('--quick', is_flag=True, help='Amostras reduzidas')
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text', show_default=True)
@safe_command
def verify(seed, quick, output_format):
    """Executa a suíte de invariantes e imprime PASS/FAIL por verificação"""
    report = run_verification(seed, QUICK_SAMPLES if quick else None)
    if output_format == 'json':
        click.echo(json.dumps(report.to_dict(), indent=2, allow_nan=False, default=str))
    else:
        for line in report.lines():
            click.echo(line)
    if not report.passed:
        sys.exit(1)


@cli.command()
def presets():
    """Lista as configurações de figura disponíveis"""
    for name, preset in FIGURE_PRESETS.items():
        click.echo(f"{name:<11} [{preset['verb']}] {preset['description']}")


def main():
    """Função principal da aplicação"""
    cli()


if __name__ == "__main__":
    main()
