import logging
import math
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from choreshare.core.config import Settings
from choreshare.core.errors import BudgetExceededError, PreconditionError
from choreshare.core.models import (
    COVERING_PLANE,
    AgentAudit,
    Allocation,
    AuditReport,
    ChoreInstance,
    LowerBoundCertificate,
    MmsProfile,
    Value,
)
from choreshare.services.mms_service import MmsService
from choreshare.services.validation_service import ValidationService
from choreshare.services.valuation_service import ValuationService

Ratio = Union[Fraction, float]


def exact_ratio(value: Value, reference: Value) -> Ratio:
    """value / reference; 0 over 0 is 0 and a positive value over 0 is ``math.inf``."""
    if reference == 0:
        return Fraction(0) if value == 0 else math.inf
    return Fraction(value) / Fraction(reference)


def _verdict(ratio: Ratio, alpha: Optional[Fraction]) -> Optional[bool]:
    return None if alpha is None else bool(ratio <= alpha)


def format_value(value: Union[Value, float]) -> str:
    """Exact text form: ``p/q`` for fractions, ``inf`` for an unbounded ratio."""
    return "inf" if value == math.inf else str(value)


REPORT_COLUMNS = ("instance_id", "agent", "notion", "value", "reference", "ratio", "ratio_decimal", "verdict", "exact")


def report_records(report: AuditReport) -> List[Dict[str, object]]:
    """One flat record per audit row, agents 1-based."""
    return [
        {
            "instance_id": report.instance_id,
            "agent": row.agent + 1,
            "notion": row.notion,
            "value": format_value(row.value),
            "reference": format_value(row.reference),
            "ratio": format_value(row.ratio),
            "ratio_decimal": float(row.ratio),
            "verdict": "" if row.verdict is None else row.verdict,
            "exact": row.exact,
        }
        for row in report.rows
    ]


class AuditService:
    def __init__(
        self,
        settings: Settings,
        validation_service: ValidationService,
        valuation_service: ValuationService,
        mms_service: MmsService,
    ):
        self.settings = settings
        self.validation_service = validation_service
        self.valuation_service = valuation_service
        self.mms_service = mms_service
        logging.info("AuditService initialized.")

    # --- Approximation audits ---

    def audit_mms(
        self,
        inst: ChoreInstance,
        alloc: Allocation,
        mms: Optional[MmsProfile] = None,
        alpha: Optional[Fraction] = None,
        instance_id: str = "",
    ) -> AuditReport:
        """Per-agent v_i(X_i) / MMS_i. Bound-based references and heuristic values are flagged inexact."""
        self.validation_service.require_partition(inst, alloc)
        mms = mms or self.mms_service.profile(inst)
        rows = []
        for agent, bundle in enumerate(alloc.bundles):
            result = self.valuation_service.value(inst, agent, bundle)
            entry = mms.entries[agent]
            ratio = exact_ratio(result.value, entry.value)
            rows.append(
                AgentAudit(
                    agent=agent,
                    notion="mms",
                    value=result.value,
                    reference=entry.value,
                    ratio=ratio,
                    verdict=_verdict(ratio, alpha),
                    exact=result.exact and entry.exact,
                )
            )
        return AuditReport(instance_id=instance_id, alpha=alpha, rows=tuple(rows))

    def audit_prop(
        self,
        inst: ChoreInstance,
        alloc: Allocation,
        alpha: Optional[Fraction] = None,
        instance_id: str = "",
    ) -> AuditReport:
        """
        PROP1 and PROPX rows per agent. The reported value is v_i(X_i minus g)
        for the most favourable g (PROP1) or the least favourable g (PROPX), so
        the ratio is the smallest alpha passing that notion. An empty bundle passes both at 0.
        """
        self.validation_service.require_partition(inst, alloc)
        everything = tuple(range(inst.m))
        rows = []
        for agent, bundle in enumerate(alloc.bundles):
            whole = self.valuation_service.value(inst, agent, everything)
            prop = Fraction(whole.value) / inst.n
            exact = whole.exact
            without = []
            for g in bundle:
                result = self.valuation_service.value(inst, agent, [j for j in bundle if j != g])
                exact = exact and result.exact
                without.append(result.value)
            for notion, value in (("prop1", min(without, default=0)), ("propx", max(without, default=0))):
                ratio = exact_ratio(value, prop)
                rows.append(
                    AgentAudit(
                        agent=agent,
                        notion=notion,
                        value=value,
                        reference=prop,
                        ratio=ratio,
                        verdict=_verdict(ratio, alpha),
                        exact=exact,
                    )
                )
        return AuditReport(instance_id=instance_id, alpha=alpha, rows=tuple(rows))

    # --- Lower-bound certification ---

    def certify_lower_bound(
        self,
        inst: ChoreInstance,
        target: Fraction,
        mode: str = "exhaustive",
        trials: int = 100_000,
        seed: int = 0,
        mms: Optional[MmsProfile] = None,
    ) -> LowerBoundCertificate:
        """
        Checks that every allocation leaves some agent at ratio >= target.

        Exhaustive mode walks all n^m allocations; sampled mode draws ``trials``
        uniform allocations and only reports evidence.
        """
        target = Fraction(target)
        mms = mms or self.mms_service.profile(inst)
        if not mms.exact:
            raise PreconditionError("Lower-bound certification needs exact MMS values.")
        references = [entry.value for entry in mms.entries]

        if mode == "exhaustive":
            limit = self.settings.oracle.exhaustive_allocation_limit
            if inst.n ** inst.m > limit:
                raise BudgetExceededError(
                    f"{inst.n}^{inst.m} allocations exceed the exhaustive limit of {limit}; "
                    "use sampled mode instead."
                )
            assignments = product(range(inst.n), repeat=inst.m)
            checked = inst.n ** inst.m
        elif mode == "sampled":
            if trials < 1:
                raise PreconditionError("Sampled certification needs at least one trial.")
            if inst.kind == COVERING_PLANE:
                return self._sample_covering_planes(inst, target, trials, seed, references)
            rng = np.random.default_rng(seed)
            assignments = (tuple(int(a) for a in row) for row in rng.integers(0, inst.n, size=(trials, inst.m)))
            checked = trials
        else:
            raise PreconditionError(f"Unknown certification mode '{mode}'.")

        logging.info(f"Certifying ratio >= {target} over {checked} {mode} allocations.")
        memo: Dict[Tuple[int, int], Value] = {}

        def bundle_value(agent: int, items: Tuple[int, ...]) -> Value:
            key = (agent, sum(1 << j for j in items))
            if key not in memo:
                memo[key] = self.valuation_service.value_exact(inst, agent, items).value
            return memo[key]

        best_ratio: Optional[Ratio] = None
        best_assignment, counterexample = None, None
        for assignment in assignments:
            bundles = [[] for _ in range(inst.n)]
            for item, agent in enumerate(assignment):
                bundles[agent].append(item)
            worst = max(
                exact_ratio(bundle_value(agent, tuple(items)), references[agent])
                for agent, items in enumerate(bundles)
            )
            if best_ratio is None or worst < best_ratio:
                best_ratio, best_assignment = worst, assignment
            if counterexample is None and worst < target:
                counterexample = assignment

        return self._certificate(inst, target, mode, checked, best_ratio, best_assignment, counterexample, seed)

    def _sample_covering_planes(
        self,
        inst: ChoreInstance,
        target: Fraction,
        trials: int,
        seed: int,
        references: Sequence[Value],
    ) -> LowerBoundCertificate:
        """Vectorized sampling: an agent's value is the number of her coordinates present in her bundle."""
        n = inst.n
        rng = np.random.default_rng(seed)
        assignments = rng.integers(0, n, size=(trials, inst.m))
        coordinates = np.asarray(inst.valuation_spec.points, dtype=np.int64)
        values = np.zeros((trials, n), dtype=np.int64)
        for agent in range(n):
            owned = assignments == agent
            for plane in range(1, n + 1):
                values[:, agent] += np.any(owned & (coordinates[:, agent] == plane), axis=1)

        references_arr = np.asarray(references, dtype=np.int64)
        below = np.all(values * target.denominator < target.numerator * references_arr, axis=1)
        scores = np.max(values / references_arr, axis=1)
        best_row = int(np.argmin(scores))
        best_ratio = max(exact_ratio(int(v), r) for v, r in zip(values[best_row], references))
        counterexample = None
        if below.any():
            counterexample = tuple(int(a) for a in assignments[int(np.argmax(below))])
        logging.info(f"Sampled {trials} covering-plane allocations, {int(below.sum())} below {target}.")
        return self._certificate(
            inst,
            target,
            "sampled",
            trials,
            best_ratio,
            tuple(int(a) for a in assignments[best_row]),
            counterexample,
            seed,
        )

    def _certificate(self, inst, target, mode, checked, best_ratio, best_assignment, counterexample, seed):
        holds = counterexample is None
        if mode == "exhaustive":
            statement = (
                f"All {checked} allocations checked: "
                + (f"every one leaves some agent at ratio >= {target}." if holds else f"some allocation stays below {target}.")
            )
        else:
            statement = (
                f"Evidence only, not exhaustive: {checked} random allocations (seed {seed}); "
                + (f"none stayed below ratio {target}." if holds else f"found one below ratio {target}.")
            )
        return LowerBoundCertificate(
            target=target,
            mode=mode,
            allocations_checked=checked,
            holds=holds,
            min_max_ratio=best_ratio if best_ratio is not None else Fraction(0),
            best_allocation=Allocation.from_assignment(best_assignment, inst.n) if best_assignment is not None else None,
            counterexample=Allocation.from_assignment(counterexample, inst.n) if counterexample is not None else None,
            seed=seed if mode == "sampled" else None,
            statement=statement,
        )

    # --- Covering-plane refutation ---

    def find_unallocated_point(self, inst: ChoreInstance, alloc: Allocation) -> Optional[Tuple[int, ...]]:
        """
        If every agent's bundle misses one of her planes, returns the point b
        with b_i a missing plane of agent i; b then lies in no bundle. Returns
        None when some agent already needs all n planes.
        """
        self.validation_service.require_kind(inst, COVERING_PLANE, "find_unallocated_point")
        points = inst.valuation_spec.points
        point = []
        for agent, bundle in enumerate(alloc.bundles):
            used = {points[j][agent] for j in bundle}
            missing = [plane for plane in range(1, inst.n + 1) if plane not in used]
            if not missing:
                return None
            point.append(missing[0])
        b = tuple(point)
        held = {points[j] for bundle in alloc.bundles for j in bundle}
        return None if b in held else b
