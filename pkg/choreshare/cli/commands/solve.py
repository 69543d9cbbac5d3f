import logging

import click

from choreshare.cli.dependencies import get_allocation_service, get_run_config, get_validation_service
from choreshare.cli.output import FRACTION, emit
from choreshare.cli.schemas import dump_allocation, load_instance
from choreshare.services.allocation_service import ALLOCATORS


@click.command("solve")
@click.option("--instance", required=True, type=click.Path(dir_okay=False))
@click.option("--allocator", required=True, type=click.Choice(ALLOCATORS))
@click.option("--delta", type=FRACTION, default=None, help="Threshold growth for threshold-search.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def solve(instance, allocator, delta, out):
    """Runs an allocator and writes the allocation with one certificate per agent."""
    config = get_run_config("solve", instances=[instance], allocator=allocator, delta=delta, out=out)
    inst = load_instance(instance)
    get_validation_service().require_valid(inst)

    result = get_allocation_service().solve(inst, config.allocator, config.delta)
    for agent, certificate in enumerate(result.certificates):
        if certificate is not None:
            logging.info(f"Agent {agent + 1}: certified value {certificate.value}.")
    emit(dump_allocation(inst, result), config.out)
