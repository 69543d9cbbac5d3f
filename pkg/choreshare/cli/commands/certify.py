import logging

import click

from choreshare.cli.dependencies import get_audit_service, get_run_config, get_validation_service
from choreshare.cli.output import FRACTION, emit, to_yaml
from choreshare.cli.schemas import load_instance
from choreshare.core.errors import CertificationFailedError
from choreshare.services.audit_service import format_value


@click.command("certify")
@click.option("--instance", required=True, type=click.Path(dir_okay=False))
@click.option("--alpha", "target", type=FRACTION, default=None, help="Ratio every allocation must force on some agent.")
@click.option("--mode", type=click.Choice(["exhaustive", "sampled"]), default="exhaustive", show_default=True)
@click.option("--trials", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def certify(instance, target, mode, trials, seed, out):
    """
    Certifies that no allocation gets every agent below the target MMS ratio.
    Exits 2 when an allocation below the target turns up.
    """
    config = get_run_config("certify", instances=[instance], alpha=target, seed=seed, trials=trials, out=out)
    inst = load_instance(instance)
    get_validation_service().require_valid(inst)

    certificate = get_audit_service().certify_lower_bound(
        inst, config.alpha, mode=mode, trials=config.trials, seed=config.seed
    )
    summary = {
        "instance": instance,
        "target": format_value(certificate.target),
        "mode": certificate.mode,
        "allocations_checked": certificate.allocations_checked,
        "holds": certificate.holds,
        "min_max_ratio": format_value(certificate.min_max_ratio),
        "seed": certificate.seed,
        "statement": certificate.statement,
    }
    if certificate.best_allocation is not None:
        summary["best_allocation"] = [[j + 1 for j in b] for b in certificate.best_allocation.bundles]
    if certificate.counterexample is not None:
        summary["counterexample"] = [[j + 1 for j in b] for b in certificate.counterexample.bundles]
    emit(to_yaml(summary), config.out)
    logging.info(certificate.statement)
    if not certificate.holds:
        raise CertificationFailedError(f"Found an allocation below ratio {certificate.target}.")
