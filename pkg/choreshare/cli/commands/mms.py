import click

from choreshare.cli.dependencies import get_mms_service, get_run_config, get_validation_service
from choreshare.cli.output import emit, records_to_csv, to_yaml
from choreshare.cli.schemas import load_instance
from choreshare.services.audit_service import format_value

MMS_COLUMNS = ("agent", "value", "exact", "method", "lower", "upper")


@click.command("mms")
@click.option("--instance", required=True, type=click.Path(dir_okay=False))
@click.option("--agent", type=int, default=None, help="1-based agent; all agents when omitted.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "report_format", type=click.Choice(["csv", "text"]), default="text", show_default=True)
def mms(instance, agent, out, report_format):
    """Prints the MMS profile: exact values with a defining partition, or flagged bounds."""
    config = get_run_config("mms", instances=[instance], out=out, format=report_format)
    inst = load_instance(instance)
    get_validation_service().require_valid(inst)
    if agent is not None and not 1 <= agent <= inst.n:
        raise click.BadParameter(f"agent must lie in [1, {inst.n}]", param_hint="--agent")

    profile = get_mms_service().profile(inst)
    records = []
    for entry in profile.entries:
        if agent is not None and entry.agent != agent - 1:
            continue
        record = {
            "agent": entry.agent + 1,
            "value": format_value(entry.value),
            "exact": entry.exact,
            "method": entry.bounds.method if entry.bounds else None,
            "lower": format_value(entry.bounds.lower) if entry.bounds else None,
            "upper": format_value(entry.bounds.upper) if entry.bounds else None,
        }
        if entry.defining_partition is not None and config.format == "text":
            record["defining_partition"] = [
                [j + 1 for j in bundle] for bundle in entry.defining_partition.bundles
            ]
        records.append(record)

    if config.format == "csv":
        emit(records_to_csv(records, MMS_COLUMNS), config.out)
    else:
        emit(to_yaml({"instance": instance, "exact": profile.exact, "agents": records}), config.out)
