import logging
from fractions import Fraction
from math import ceil
from typing import Dict, List, Tuple

from choreshare.core.bin_packing import decreasing_order
from choreshare.core.config import Settings
from choreshare.core.errors import BudgetExceededError
from choreshare.core.models import (
    BIN_PACKING,
    COVERING_PLANE,
    JOB_SCHEDULING,
    Allocation,
    ChoreInstance,
    MmsBounds,
    MmsEntry,
    MmsProfile,
    Value,
)
from choreshare.core.partitions import min_max_partition
from choreshare.services.valuation_service import ValuationService


class MmsService:
    def __init__(self, settings: Settings, valuation_service: ValuationService):
        self.settings = settings
        self.valuation_service = valuation_service
        self.budget_items = settings.oracle.mms_budget_items
        self.budget_agents = settings.oracle.mms_budget_agents
        logging.info("MmsService initialized.")

    def reference_partition(self, inst: ChoreInstance, agent: int) -> Allocation:
        """
        A cheap n-partition the agent finds reasonable: her own planes for
        covering-plane instances, otherwise her items dealt round-robin from largest to smallest.
        """
        if inst.kind == COVERING_PLANE:
            points = inst.valuation_spec.points
            return Allocation.from_assignment([points[j][agent] - 1 for j in range(inst.m)], inst.n)
        assignment = [0] * inst.m
        for rank, j in enumerate(decreasing_order(inst.sizes[agent])):
            assignment[j] = rank % inst.n
        return Allocation.from_assignment(assignment, inst.n)

    def _partition_value(self, inst: ChoreInstance, agent: int, alloc: Allocation) -> Tuple[Value, bool]:
        results = [self.valuation_service.value(inst, agent, bundle) for bundle in alloc.bundles]
        return max(r.value for r in results), all(r.exact for r in results)

    # --- Exact search ---

    def mms_exact(self, inst: ChoreInstance, agent: int) -> MmsEntry:
        """
        Minimum over n-partitions of the largest bundle value, with a witnessing partition.
        Raises ``BudgetExceededError`` when the partition space is out of budget.
        """
        if inst.kind == COVERING_PLANE:
            witness = self.reference_partition(inst, agent)
            value = 1 if inst.m > 0 else 0
            return MmsEntry(agent=agent, value=value, defining_partition=witness, bounds=MmsBounds.exact(value))

        if inst.n == 1:
            everything = tuple(range(inst.m))
            value = self.valuation_service.value_exact(inst, agent, everything).value
            return MmsEntry(
                agent=agent,
                value=value,
                defining_partition=Allocation(bundles=(everything,)),
                bounds=MmsBounds.exact(value),
            )

        if inst.m > self.budget_items or inst.n > self.budget_agents or not (
            self.valuation_service.within_budget(inst, agent, inst.m)
        ):
            raise BudgetExceededError(
                f"Exact MMS limited to {self.budget_items} items and {self.budget_agents} agents; "
                "use the bounds instead."
            )

        memo: Dict[int, Value] = {}

        def block_value(mask: int) -> Value:
            if mask not in memo:
                items = [j for j in range(inst.m) if mask >> j & 1]
                memo[mask] = self.valuation_service.value_exact(inst, agent, items).value
            return memo[mask]

        incumbent = self.reference_partition(inst, agent)
        incumbent_value = max(
            block_value(sum(1 << j for j in bundle)) for bundle in incumbent.bundles
        )
        floor = self.mms_bounds(inst, agent).lower
        best = None
        if incumbent_value > floor:
            best = min_max_partition(
                decreasing_order(inst.sizes[agent]),
                inst.n,
                block_value,
                incumbent=incumbent_value,
                floor=floor,
            )

        if best is None:
            value, witness = incumbent_value, incumbent
        else:
            value, masks = best
            bundles: List[Tuple[int, ...]] = [
                tuple(j for j in range(inst.m) if mask >> j & 1) for mask in masks
            ]
            bundles += [()] * (inst.n - len(bundles))
            witness = Allocation(bundles=tuple(bundles))
        logging.info(
            f"Agent {agent + 1}: MMS {value} after {len(memo)} bundle evaluations "
            f"(round-robin incumbent {incumbent_value})."
        )
        return MmsEntry(agent=agent, value=value, defining_partition=witness, bounds=MmsBounds.exact(value))

    # --- Analytic bounds ---

    def mms_bounds(self, inst: ChoreInstance, agent: int) -> MmsBounds:
        """
        Lower bound from the largest singleton and the average share of v(M)
        (for bin packing also the total size over n bins); upper bound from
        v(M) and the reference partition, heuristic values allowed.
        """
        if inst.m == 0:
            return MmsBounds(lower=0, upper=0, method="lemma1-singleton")

        everything = tuple(range(inst.m))
        whole = self.valuation_service.value(inst, agent, everything)
        n = inst.n

        if inst.kind == JOB_SCHEDULING:
            speeds = inst.valuation_spec.speeds[agent]
            singleton: Value = Fraction(max(inst.sizes[agent]), speeds[0])
            if whole.exact:
                average: Value = Fraction(whole.value) / n
            else:
                average = Fraction(inst.total_size(agent), n * sum(speeds))
            method = "lemma1-average"
        elif inst.kind == BIN_PACKING:
            capacity = inst.valuation_spec.capacities[agent]
            singleton = 1 if max(inst.sizes[agent]) > 0 else 0
            average = ceil(Fraction(inst.total_size(agent), n * capacity))
            method = "lemma2-capacity"
            if whole.exact and ceil(Fraction(whole.value, n)) > average:
                average, method = ceil(Fraction(whole.value, n)), "lemma1-average"
        elif inst.kind == COVERING_PLANE:
            singleton = 1
            average = ceil(Fraction(whole.value, n))
            method = "lemma1-average"
        else:
            singleton = max(inst.sizes[agent])
            average = ceil(Fraction(whole.value, n))
            method = "lemma1-average"

        if singleton >= average:
            lower, method = singleton, "lemma1-singleton"
        else:
            lower = average

        partition_value, _ = self._partition_value(inst, agent, self.reference_partition(inst, agent))
        upper = min(whole.value, partition_value)
        return MmsBounds(lower=lower, upper=upper, method=method)

    def profile(self, inst: ChoreInstance) -> MmsProfile:
        """Exact MMS per agent where the budget allows, bounds (flagged inexact) elsewhere."""
        entries = []
        for agent in range(inst.n):
            try:
                entries.append(self.mms_exact(inst, agent))
            except BudgetExceededError as exc:
                logging.warning(f"Agent {agent + 1}: {exc.detail}")
                bounds = self.mms_bounds(inst, agent)
                entries.append(MmsEntry(agent=agent, value=bounds.lower, exact=False, bounds=bounds))
        return MmsProfile(entries=tuple(entries))
