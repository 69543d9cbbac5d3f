import logging

import click

from choreshare.cli.dependencies import get_generator_service, get_run_config, get_validation_service
from choreshare.cli.output import emit
from choreshare.cli.schemas import dump_instance
from choreshare.services.generator_service import GENERATORS


@click.command("generate")
@click.argument("kind", type=click.Choice(GENERATORS))
@click.option("--n", "n", type=int, default=None, help="Agent count (parameter n for propx).")
@click.option("--m", "m", type=int, default=None, help="Item count for random families.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-capacity", type=int, default=None, help="Largest bin capacity for random-binpacking.")
@click.option("--variant", type=click.Choice(["bin", "job"]), default="bin", show_default=True,
              help="Which of the two propx instances to write.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def generate(kind, n, m, seed, max_capacity, variant, out):
    """Writes a generated instance file; the same seed always gives the same bytes."""
    config = get_run_config("generate", seed=seed, out=out)
    service = get_generator_service()

    if kind == "feige":
        inst = service.gen_feige_binpacking()
    elif kind == "covering-planes":
        inst = service.gen_covering_planes(n or 2)
    elif kind == "propx":
        bins, jobs = service.gen_propx_instances(n or 2)
        inst = bins if variant == "bin" else jobs
    elif kind == "random-binpacking":
        inst = service.random_bin_packing(n or 3, 8 if m is None else m, config.seed, max_capacity)
    else:
        inst = service.random_job_scheduling(n or 2, 6 if m is None else m, config.seed)

    get_validation_service().require_valid(inst)
    logging.info(f"Generated {kind} instance with n={inst.n}, m={inst.m}.")
    emit(dump_instance(inst), config.out)
