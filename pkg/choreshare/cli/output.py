import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, Optional

import click
import pandas as pd
import yaml

from choreshare.cli.schemas import jsonable
from choreshare.core.models import AuditReport
from choreshare.services.audit_service import REPORT_COLUMNS, format_value, report_records


class FractionParam(click.ParamType):
    """Exact rationals from text such as ``3/2`` or ``0.1``."""
    name = "fraction"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            parsed = Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number", param, ctx)
        if parsed <= 0:
            self.fail(f"{value!r} must be positive", param, ctx)
        return parsed


FRACTION = FractionParam()


def emit(text: str, out: Optional[str] = None):
    """Writes to ``out`` when given, else to stdout."""
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logging.info(f"Wrote {out}.")
    else:
        click.echo(text, nl=False)


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def records_to_csv(records: Iterable[Dict[str, object]], columns) -> str:
    return frame_to_csv(pd.DataFrame.from_records(list(records), columns=list(columns)))


def report_to_csv(report: AuditReport) -> str:
    return records_to_csv(report_records(report), REPORT_COLUMNS)


def to_yaml(data) -> str:
    return yaml.safe_dump(jsonable(data), sort_keys=False, allow_unicode=True)


def summarize_report(report: AuditReport) -> Dict[str, object]:
    """Per-notion maxima and flags for the text summary."""
    notions = {}
    for notion in ("mms", "prop1", "propx"):
        rows = report.rows_for(notion)
        if not rows:
            continue
        worst = report.max_ratio(notion)
        notions[notion] = {
            "max_ratio": format_value(worst),
            "max_ratio_decimal": float(worst),
            "passed": all(row.verdict is not False for row in rows),
            "exact": all(row.exact for row in rows),
        }
    return {
        "instance_id": report.instance_id,
        "alpha": format_value(report.alpha) if report.alpha is not None else None,
        "exact": report.exact,
        "passed": report.passed,
        "notions": notions,
    }

