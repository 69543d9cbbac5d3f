import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from choreshare.core.bin_packing import count_bins, exact_bin_packing, first_fit_decreasing, fits
from choreshare.core.config import Settings
from choreshare.core.errors import BudgetExceededError, InvalidAllocationError, PreconditionError
from choreshare.core.models import (
    ADDITIVE,
    BIN_PACKING,
    COVERING_PLANE,
    JOB_SCHEDULING,
    Certificate,
    ChoreInstance,
    CoverCertificate,
    OracleResult,
    PackingCertificate,
    ScheduleCertificate,
    SubmodularityReport,
    Value,
)
from choreshare.core.scheduling import exact_schedule, lpt_schedule, makespan


def _relabel(groups, items: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Maps position tuples back to the item indices they stand for."""
    return tuple(tuple(items[p] for p in group) for group in groups)


class ValuationService:
    """
    Computes v_i(S) for every valuation kind.

    ``value_exact`` is budgeted for bin packing and scheduling and raises
    ``BudgetExceededError`` past the configured item or machine limit;
    ``value`` falls back to the heuristic there and flags the result inexact.
    """

    def __init__(self, settings: Settings):
        self.settings = settings
        self.budget_items = settings.oracle.budget_items
        self.budget_machines = settings.oracle.budget_machines
        logging.info("ValuationService initialized.")

    # --- Budget checks ---

    def within_budget(self, inst: ChoreInstance, agent: int, size: int) -> bool:
        if inst.kind in (COVERING_PLANE, ADDITIVE):
            return True
        if size > self.budget_items:
            return False
        if inst.kind == JOB_SCHEDULING:
            return len(inst.valuation_spec.speeds[agent]) <= self.budget_machines
        return True

    def _require_budget(self, inst: ChoreInstance, agent: int, items: Sequence[int]):
        if not self.within_budget(inst, agent, len(items)):
            raise BudgetExceededError(
                f"Exact {inst.kind} oracle limited to {self.budget_items} items and "
                f"{self.budget_machines} machines; use the bounds or the heuristic instead."
            )

    # --- Oracles ---

    def value_exact(self, inst: ChoreInstance, agent: int, items: Sequence[int]) -> OracleResult:
        items = tuple(items)
        spec = inst.valuation_spec
        if inst.kind == COVERING_PLANE:
            planes = tuple(sorted({spec.points[j][agent] for j in items}))
            return OracleResult(
                value=len(planes),
                certificate=CoverCertificate(planes=planes, value=len(planes)),
            )
        if inst.kind == ADDITIVE:
            return OracleResult(value=inst.total_size(agent, items))

        self._require_budget(inst, agent, items)
        sizes = [inst.sizes[agent][j] for j in items]
        if inst.kind == BIN_PACKING:
            bins = exact_bin_packing(sizes, spec.capacities[agent])
            return OracleResult(
                value=count_bins(bins, sizes),
                certificate=PackingCertificate(bins=_relabel(bins, items), value=count_bins(bins, sizes)),
            )
        speeds = spec.speeds[agent]
        schedule = exact_schedule(sizes, speeds)
        span = makespan(schedule, sizes, speeds)
        return OracleResult(
            value=span,
            certificate=ScheduleCertificate(machines=_relabel(schedule, items), makespan=span),
        )

    def value_upper_heuristic(self, inst: ChoreInstance, agent: int, items: Sequence[int]) -> OracleResult:
        """First-fit-decreasing bins or the LPT makespan; never below the exact value."""
        items = tuple(items)
        sizes = [inst.sizes[agent][j] for j in items] if inst.has_sizes else []
        if inst.kind == BIN_PACKING:
            bins = first_fit_decreasing(sizes, inst.valuation_spec.capacities[agent])
            value = count_bins(bins, sizes)
            return OracleResult(
                value=value,
                certificate=PackingCertificate(bins=_relabel(bins, items), value=value),
                exact=False,
            )
        if inst.kind == JOB_SCHEDULING:
            speeds = inst.valuation_spec.speeds[agent]
            schedule = lpt_schedule(sizes, speeds)
            span = makespan(schedule, sizes, speeds)
            return OracleResult(
                value=span,
                certificate=ScheduleCertificate(machines=_relabel(schedule, items), makespan=span),
                exact=False,
            )
        raise PreconditionError(f"No heuristic oracle for {inst.kind} valuations.")

    def value(self, inst: ChoreInstance, agent: int, items: Sequence[int]) -> OracleResult:
        """Exact when the budget allows, heuristic (flagged) otherwise."""
        if self.within_budget(inst, agent, len(items)):
            return self.value_exact(inst, agent, items)
        logging.info(f"Agent {agent + 1}: {len(items)} items over the exact budget, using the heuristic.")
        return self.value_upper_heuristic(inst, agent, items)

    def evaluate_certificate(
        self,
        inst: ChoreInstance,
        agent: int,
        items: Sequence[int],
        certificate: Optional[Certificate],
    ) -> Value:
        """
        Recomputes the value a certificate realizes for the agent on ``items``.
        Raises ``InvalidAllocationError`` if it does not partition the items or a bin overflows.
        """
        if certificate is None:
            raise InvalidAllocationError("Missing certificate.")
        groups = certificate.planes if isinstance(certificate, CoverCertificate) else (
            certificate.bins if isinstance(certificate, PackingCertificate) else certificate.machines
        )
        if isinstance(certificate, CoverCertificate):
            spec = inst.valuation_spec
            uncovered = [j for j in items if spec.points[j][agent] not in set(groups)]
            if uncovered:
                raise InvalidAllocationError(f"Planes leave item {uncovered[0] + 1} uncovered.")
            return len(set(groups))

        placed = [j for group in groups for j in group]
        if sorted(placed) != sorted(items):
            raise InvalidAllocationError("Certificate does not partition the bundle.")
        row = inst.sizes[agent]
        if isinstance(certificate, PackingCertificate):
            capacity = inst.valuation_spec.capacities[agent]
            if not fits(groups, row, capacity):
                raise InvalidAllocationError(f"Bin over capacity {capacity}.")
            return count_bins(groups, row)

        speeds = inst.valuation_spec.speeds[agent]
        if len(groups) > len(speeds):
            raise InvalidAllocationError("Schedule uses more machines than the agent has.")
        return max(
            (Fraction(sum(row[j] for j in group), speed) for group, speed in zip(groups, speeds)),
            default=Fraction(0),
        )

    # --- Property checks ---

    def check_subadditive_submodular(
        self,
        inst: ChoreInstance,
        agent: int,
        trials: int,
        seed: int = 0,
    ) -> SubmodularityReport:
        """
        Samples nested pairs S ⊆ T with e ∉ T and disjoint pairs A, B, counting
        violations of v(T+e)-v(T) <= v(S+e)-v(S) and of v(A∪B) <= v(A)+v(B).
        """
        rng = np.random.default_rng(seed)
        limit = inst.m if self.within_budget(inst, agent, inst.m) else self.budget_items
        sub_violations, add_violations = 0, 0
        first_sub, first_add = None, None
        if inst.m == 0:
            trials = 0

        def v(items) -> Value:
            return self.value_exact(inst, agent, items).value

        for _ in range(trials):
            order = [int(j) for j in rng.permutation(inst.m)]
            t = int(rng.integers(0, min(limit, inst.m)))
            s = int(rng.integers(0, t + 1))
            big, small, e = tuple(order[:t]), tuple(order[:s]), order[t]
            if v(big + (e,)) - v(big) > v(small + (e,)) - v(small):
                sub_violations += 1
                first_sub = first_sub or (small, big, e)

            u = int(rng.integers(0, min(limit, inst.m) + 1))
            cut = int(rng.integers(0, u + 1))
            a, b = tuple(order[:cut]), tuple(order[cut:u])
            if v(a + b) > v(a) + v(b):
                add_violations += 1
                first_add = first_add or (a, b)

        logging.info(
            f"Agent {agent + 1}: {trials} trials, {sub_violations} submodularity and "
            f"{add_violations} subadditivity violations."
        )
        return SubmodularityReport(
            agent=agent,
            trials=trials,
            submodular_violations=sub_violations,
            subadditive_violations=add_violations,
            first_submodular_violation=first_sub,
            first_subadditive_violation=first_add,
        )
