import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from choreshare.core.config import Settings
from choreshare.core.errors import PreconditionError
from choreshare.core.executors import get_executor
from choreshare.core.models import BIN_PACKING, JOB_SCHEDULING, ChoreInstance
from choreshare.services.allocation_service import AllocationService
from choreshare.services.audit_service import REPORT_COLUMNS, AuditService, format_value, report_records
from choreshare.services.generator_service import GeneratorService
from choreshare.services.mms_service import MmsService

BENCH_COLUMNS = ("instance_id", "allocator") + tuple(c for c in REPORT_COLUMNS if c not in ("instance_id", "notion"))
SUMMARY_COLUMNS = ("allocator", "instances", "max_ratio", "max_ratio_decimal", "mean_ratio_decimal")

DEFAULT_ALLOCATORS = {
    BIN_PACKING: ("bagfill", "bagfill32"),
    JOB_SCHEDULING: ("roundrobin", "threshold-search"),
}
# Agent counts drawn per family.
AGENT_CHOICES = {BIN_PACKING: (2, 3, 4), JOB_SCHEDULING: (2, 3)}


class BenchService:
    """
    Seeded random sweeps: generate, solve with each allocator, audit against MMS.
    Instances run on the shared worker pool; rows come back sorted by instance id.
    """

    def __init__(
        self,
        settings: Settings,
        generator_service: GeneratorService,
        allocation_service: AllocationService,
        mms_service: MmsService,
        audit_service: AuditService,
    ):
        self.settings = settings
        self.generator_service = generator_service
        self.allocation_service = allocation_service
        self.mms_service = mms_service
        self.audit_service = audit_service
        logging.info("BenchService initialized.")

    def draw_instances(self, kind: str, count: int, seed: int, max_items: Optional[int] = None) -> List[Tuple[str, ChoreInstance]]:
        if kind not in AGENT_CHOICES:
            raise PreconditionError(f"Bench sweeps support {', '.join(AGENT_CHOICES)}, not {kind}.")
        max_items = self.settings.bench.max_items if max_items is None else max_items
        rng = np.random.default_rng(seed)
        drawn = []
        for t in range(count):
            n = int(rng.choice(AGENT_CHOICES[kind]))
            m = int(rng.integers(1, max_items + 1)) if max_items > 0 else 0
            sub_seed = int(rng.integers(0, 2 ** 32))
            if kind == BIN_PACKING:
                inst = self.generator_service.random_bin_packing(n, m, sub_seed)
            else:
                inst = self.generator_service.random_job_scheduling(n, m, sub_seed)
            drawn.append((f"{kind}-{t:04d}", inst))
        return drawn

    def _run_one(self, instance_id: str, inst: ChoreInstance, allocators: Sequence[str], alpha: Fraction) -> List[Dict[str, object]]:
        mms = self.mms_service.profile(inst)
        records = []
        for allocator in allocators:
            result = self.allocation_service.solve(inst, allocator)
            report = self.audit_service.audit_mms(inst, result.allocation, mms, alpha, instance_id)
            for record in report_records(report):
                record.pop("notion")
                record["allocator"] = allocator
                records.append(record)
        return records

    def run(
        self,
        kind: str,
        seed: int,
        count: Optional[int] = None,
        allocators: Optional[Sequence[str]] = None,
        alpha: Optional[Fraction] = None,
        max_items: Optional[int] = None,
    ) -> Tuple[pd.DataFrame, pd.DataFrame]:
        """Returns the per-agent rows and the per-allocator summary."""
        count = self.settings.bench.instances if count is None else count
        allocators = tuple(allocators or DEFAULT_ALLOCATORS.get(kind, ()))
        alpha = self.settings.allocator.alpha_fraction if alpha is None else alpha
        drawn = self.draw_instances(kind, count, seed, max_items)
        logging.info(f"Benchmarking {len(drawn)} {kind} instances with {', '.join(allocators)}.")

        executor = get_executor(self.settings)
        futures = [
            executor.submit(self._run_one, instance_id, inst, allocators, alpha)
            for instance_id, inst in drawn
        ]
        records = [record for future in futures for record in future.result()]
        rows = pd.DataFrame.from_records(records, columns=list(BENCH_COLUMNS))
        rows = rows.sort_values(["instance_id", "allocator", "agent"], kind="stable").reset_index(drop=True)
        return rows, self.summarize(rows)

    @staticmethod
    def summarize(rows: pd.DataFrame) -> pd.DataFrame:
        if rows.empty:
            return pd.DataFrame(columns=list(SUMMARY_COLUMNS))
        summary = []
        for allocator, group in rows.groupby("allocator", sort=True):
            exact_ratios = [Fraction(r) if r != "inf" else float("inf") for r in group["ratio"]]
            summary.append(
                {
                    "allocator": allocator,
                    "instances": group["instance_id"].nunique(),
                    "max_ratio": format_value(max(exact_ratios)),
                    "max_ratio_decimal": group["ratio_decimal"].max(),
                    "mean_ratio_decimal": group["ratio_decimal"].mean(),
                }
            )
        return pd.DataFrame.from_records(summary, columns=list(SUMMARY_COLUMNS))
