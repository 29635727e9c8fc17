#!/usr/bin/env python3
"""caplab CLI - Main interface"""

import click
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

# Load environment variables from .env file
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv not installed, will use system env vars only

# Try to import rich for better output
try:
    from rich.console import Console
    from rich.logging import RichHandler
    from rich.panel import Panel
    from rich.table import Table
    RICH_AVAILABLE = True
    console = Console()
    err_console = Console(stderr=True)
except ImportError:
    RICH_AVAILABLE = False
    console = None
    err_console = None

from caplab import __version__
from caplab.core.config import RunConfig, load_config
from caplab.core.errors import CaplabError
from caplab.core.experiment import ExperimentResult, run_subcommand
from caplab.exporters import get_exporter
from caplab.exporters.json_exporter import dumps

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def _setup_logging(verbose: bool):
    level = logging.DEBUG if verbose else logging.WARNING
    if RICH_AVAILABLE:
        handler: logging.Handler = RichHandler(console=err_console, show_path=False)
    else:
        handler = logging.StreamHandler(sys.stderr)
    logging.basicConfig(level=level, format="%(name)s: %(message)s", handlers=[handler],
                        force=True)


@click.group()
@click.version_option(version=__version__)
@click.option('--verbose', '-v', is_flag=True, help='Log solver and check progress')
def cli(verbose: bool):
    """caplab - moving-plane caps, Kelvin transforms and a priori bounds

    Every subcommand reads one JSON config, writes its artifacts and
    effective_config.json to the output directory, and exits 0 when all
    requested checks pass, 1 when a check fails, 2 on errors.
    """
    _setup_logging(verbose)


def common_options(func):
    func = click.option('--out', '-o', 'out', type=click.Path(file_okay=False),
                        help='Output directory (default: output_dir from config)')(func)
    func = click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False),
                        help='Run configuration (JSON)')(func)
    return func


def _error_payload(exc: BaseException) -> Dict[str, Any]:
    if isinstance(exc, CaplabError):
        return exc.to_dict()
    return {"error": "internal", "type": type(exc).__name__, "message": str(exc), "details": {}}


def _write_error(payload: Dict[str, Any], out_dir: Path):
    try:
        get_exporter("json").export(payload, out_dir / "error.json")
    except OSError as exc:
        click.echo(f"Warning: could not write error.json: {exc}", err=True)


def _execute(subcommand: str, config_path: Optional[str], out: Optional[str],
             report_format: str = "json", **overrides):
    out_dir = Path(out) if out else Path(RunConfig.output_dir)
    try:
        config = load_config(config_path)
        if out:
            config.output_dir = out
        out_dir = Path(config.output_dir)
        for section, key, value in overrides.get("settings", ()):
            setattr(getattr(config, section), key, value)
        result = run_subcommand(subcommand, config, out_dir, report_format)
    except Exception as exc:  # every failure maps to exit code 2
        payload = _error_payload(exc)
        logging.getLogger(__name__).debug("run failed", exc_info=True)
        click.echo(dumps(payload), err=True)
        _write_error(payload, out_dir)
        sys.exit(EXIT_ERROR)

    _render(result)
    sys.exit(EXIT_PASS if result.passed else EXIT_CHECK_FAILED)


def _render(result: ExperimentResult):
    status = "PASS" if result.passed else "FAIL"
    rows = []
    if result.subcommand == "verify":
        for report in result.report["verification"]["reports"]:
            rows.append((report["name"], "PASS" if report["pass"] else "FAIL",
                         f"{report['margin']:.6g}", f"{report['tolerance']:.3g}"))
    if RICH_AVAILABLE:
        color = "green" if result.passed else "red"
        if rows:
            table = Table(title="Checks")
            for column in ("Check", "Status", "Margin", "Tolerance"):
                table.add_column(column)
            for name, state, margin, tol in rows:
                table.add_row(name, f"[{'green' if state == 'PASS' else 'red'}]{state}[/]",
                              margin, tol)
            console.print(table)
        console.print(Panel.fit(
            f"[{color}]{status}[/{color}] {result.subcommand}\n"
            f"[dim]Artifacts:[/dim] {len(result.artifacts)}\n"
            + "\n".join(f"  {path}" for path in result.artifacts),
            title="caplab"
        ))
    else:
        for name, state, margin, tol in rows:
            click.echo(f"  {name}: {state} margin={margin} tol={tol}")
        click.echo(f"{status}: {result.subcommand}")
        for path in result.artifacts:
            click.echo(f"  {path}")


@cli.command()
@common_options
def caps(config_path: Optional[str], out: Optional[str]):
    """Maximal caps per direction and the optimal cap set"""
    _execute("caps", config_path, out)


@cli.command()
@common_options
def eigen(config_path: Optional[str], out: Optional[str]):
    """Principal Dirichlet eigenpair of the domain"""
    _execute("eigen", config_path, out)


@cli.command()
@common_options
def solve(config_path: Optional[str], out: Optional[str]):
    """Positive solution of -Δu = f(u) (grid or radial)"""
    _execute("solve", config_path, out)


@cli.command()
@common_options
def kelvin(config_path: Optional[str], out: Optional[str]):
    """Kelvin transform of the solution at the base point"""
    _execute("kelvin", config_path, out)


@cli.command()
@common_options
@click.option('--format', '-f', 'report_format',
              type=click.Choice(['json', 'text', 'csv', 'excel']), default='json',
              help='Format of the check table (default: json only)')
def verify(config_path: Optional[str], out: Optional[str], report_format: str):
    """Run the enabled checks against the solution"""
    _execute("verify", config_path, out, report_format)


@cli.command()
@common_options
@click.option('--curve', type=click.Choice(['gamma1', 'gamma2']),
              help='Appendix curve datasets to emit (default: from config)')
def appendix(config_path: Optional[str], out: Optional[str], curve: Optional[str]):
    """Convexity certificates and the appendix curve datasets"""
    settings = [("appendix", "curve", curve)] if curve else []
    _execute("appendix", config_path, out, settings=settings)


@cli.command()
@common_options
def nonlin(config_path: Optional[str], out: Optional[str]):
    """Sampled hypothesis verdicts for the configured nonlinearity"""
    _execute("nonlin", config_path, out)


@cli.command('show-config')
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False),
              help='Run configuration (JSON)')
def show_config(config_path: Optional[str]):
    """Print the effective configuration"""
    try:
        config = load_config(config_path)
    except CaplabError as exc:
        click.echo(json.dumps(exc.to_dict(), indent=2), err=True)
        sys.exit(EXIT_ERROR)
    click.echo(dumps(config.to_dict()))


if __name__ == '__main__':
    cli()
