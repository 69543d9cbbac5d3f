import logging
from pathlib import Path

import click

from choreshare.cli.dependencies import (
    get_audit_service,
    get_mms_service,
    get_run_config,
    get_validation_service,
    get_valuation_service,
)
from choreshare.cli.output import FRACTION, emit, report_to_csv, summarize_report, to_yaml
from choreshare.cli.schemas import load_allocation, load_instance
from choreshare.core.errors import AuditFailedError, InvalidAllocationError
from choreshare.core.models import AuditReport


@click.command("audit")
@click.option("--instance", required=True, type=click.Path(dir_okay=False))
@click.option("--allocation", required=True, type=click.Path(dir_okay=False))
@click.option("--alpha", type=FRACTION, default=None, help="Approximation factor the verdicts test.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "report_format", type=click.Choice(["csv", "text"]), default="csv", show_default=True)
def audit(instance, allocation, alpha, out, report_format):
    """
    Audits an allocation for MMS, PROP1 and PROPX. Exits 2 when an MMS verdict fails.
    """
    config = get_run_config("audit", instances=[instance, allocation], alpha=alpha, out=out, format=report_format)
    inst = load_instance(instance)
    validation_service = get_validation_service()
    validation_service.require_valid(inst)
    allocation_file = load_allocation(allocation)
    alloc = allocation_file.to_allocation()
    validation_service.require_partition(inst, alloc)

    # --- Certificates must reproduce their claimed values ---
    valuation_service = get_valuation_service()
    for agent, certificate in enumerate(allocation_file.to_certificates()):
        if certificate is None or agent >= inst.n:
            continue
        value = valuation_service.evaluate_certificate(inst, agent, alloc.bundles[agent], certificate)
        if value != certificate.value:
            raise InvalidAllocationError(
                f"Agent {agent + 1}: certificate realizes {value}, file claims {certificate.value}."
            )

    instance_id = Path(instance).stem
    audit_service = get_audit_service()
    mms = get_mms_service().profile(inst)
    mms_report = audit_service.audit_mms(inst, alloc, mms, config.alpha, instance_id)
    prop_report = audit_service.audit_prop(inst, alloc, config.alpha, instance_id)
    report = AuditReport(instance_id=instance_id, alpha=config.alpha, rows=mms_report.rows + prop_report.rows)

    emit(report_to_csv(report) if config.format == "csv" else to_yaml(summarize_report(report)), config.out)
    worst = mms_report.max_ratio("mms")
    logging.info(f"Audit of {instance_id}: max MMS ratio {worst} (exact={mms_report.exact}).")
    if not mms_report.passed:
        raise AuditFailedError(f"MMS ratio {worst} exceeds alpha {config.alpha}.")
