import logging
from pathlib import Path

import click

from choreshare.cli.dependencies import get_bench_service, get_run_config
from choreshare.cli.output import FRACTION, emit, frame_to_csv
from choreshare.core.models import BIN_PACKING, JOB_SCHEDULING
from choreshare.services.allocation_service import ALLOCATORS


@click.command("bench")
@click.option("--kind", type=click.Choice([BIN_PACKING, JOB_SCHEDULING]), default=BIN_PACKING, show_default=True)
@click.option("--instances", "count", type=int, default=None, help="Instance count; settings default when omitted.")
@click.option("--allocator", "allocators", type=click.Choice(ALLOCATORS), multiple=True)
@click.option("--alpha", type=FRACTION, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-items", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Row CSV path; the summary goes next to it as <stem>.summary.csv.")
def bench(kind, count, allocators, alpha, seed, max_items, out):
    """Seeded random sweep, audited against exact MMS values where the budget allows."""
    config = get_run_config("bench", allocator=",".join(allocators) or None, alpha=alpha, seed=seed, out=out)
    if count is not None and count < 0:
        raise click.BadParameter("must be >= 0", param_hint="--instances")

    rows, summary = get_bench_service().run(
        kind, config.seed, count=count, allocators=allocators or None, alpha=config.alpha, max_items=max_items
    )
    emit(frame_to_csv(rows), config.out)
    if config.out:
        emit(frame_to_csv(summary), str(Path(config.out).with_suffix(".summary.csv")))
    for record in summary.to_dict("records"):
        logging.info(
            f"{record['allocator']}: {record['instances']} instances, max ratio {record['max_ratio']}, "
            f"mean {record['mean_ratio_decimal']:.4f}."
        )
