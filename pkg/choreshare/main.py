import logging
import sys
from typing import Optional, Sequence

import click
from pythonjsonlogger.json import JsonFormatter

from choreshare import __version__
from choreshare.cli.commands import audit, bench, certify, generate, mms, solve
from choreshare.cli.dependencies import use_settings
from choreshare.core.config import Settings, get_settings
from choreshare.core.errors import USAGE_EXIT_CODE, ChoreShareError
from choreshare.core.executors import shutdown_executor

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(settings: Settings):
    # Get the root logger
    logger = logging.getLogger()

    # Clear existing handlers
    if logger.hasHandlers():
        logger.handlers.clear()

    logger.setLevel(settings.log.level.upper())

    # Logs go to stderr; stdout carries reports
    handler = logging.StreamHandler(sys.stderr)
    if settings.log.json_format:
        formatter = JsonFormatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")
    else:
        formatter = logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")
    handler.setFormatter(formatter)
    logger.addHandler(handler)


@click.group()
@click.version_option(__version__, prog_name="choreshare")
@click.option("--budget-items", type=click.IntRange(min=1), default=None,
              help="Item limit of the exact packing and scheduling oracles.")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None)
@click.option("--json-logs", is_flag=True, default=False, help="Structured JSON log records.")
def cli(budget_items, log_level, json_logs):
    """Maximin-share allocation of chores: generate, solve, audit, mms, certify, bench."""
    settings = get_settings()
    oracle = settings.oracle
    log = settings.log
    if budget_items is not None:
        oracle = oracle.model_copy(update={"budget_items": budget_items})
    if log_level is not None or json_logs:
        log = log.model_copy(update={
            "level": log_level or log.level,
            "json_format": json_logs or log.json_format,
        })
    settings = settings.model_copy(update={"oracle": oracle, "log": log})
    setup_logging(settings)
    use_settings(settings)
    logging.debug(f"{settings.project_name} {__version__} starting.")


# --- Commands ---
cli.add_command(generate.generate)
cli.add_command(solve.solve)
cli.add_command(audit.audit)
cli.add_command(mms.mms)
cli.add_command(certify.certify)
cli.add_command(bench.bench)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs the command line and returns the process exit code."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="choreshare", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (click.ClickException, click.exceptions.Abort) as exc:
        if isinstance(exc, click.ClickException):
            exc.show()
        return USAGE_EXIT_CODE
    except ChoreShareError as exc:
        click.echo(f"Error: {exc.detail}", err=True)
        return exc.exit_code
    finally:
        shutdown_executor()
    return 0
