import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from choreshare.core.config import Settings
from choreshare.core.errors import (
    AllocatorInvariantError,
    IncompatibleAllocatorError,
    PreconditionError,
    UnsortedInputError,
)
from choreshare.core.models import (
    BIN_PACKING,
    JOB_SCHEDULING,
    Allocation,
    BagRound,
    ChoreInstance,
    PackingCertificate,
    ScheduleCertificate,
    SolveResult,
    ThresholdSchedule,
    ThresholdSearchResult,
)
from choreshare.core.scheduling import is_nonincreasing
from choreshare.services.ido_service import IdoService
from choreshare.services.validation_service import ValidationService
from choreshare.services.valuation_service import ValuationService

ALLOCATORS = ("bagfill", "bagfill32", "roundrobin", "threshold-search", "allornothing")
_ALLOCATOR_KINDS = {
    "bagfill": BIN_PACKING,
    "bagfill32": BIN_PACKING,
    "roundrobin": JOB_SCHEDULING,
    "threshold-search": JOB_SCHEDULING,
}


def passable_set_packing(
    sizes: Sequence[int],
    capacity: int,
    bundle: Sequence[int],
    mms_value: Optional[int] = None,
) -> PackingCertificate:
    """
    Packs an ordered bundle through passable sets.

    Each large item seeds its own set. Small items, in bundle order, fill the
    current set until it exceeds the capacity, at which point the set is
    passable (dropping its last small item makes it fit) and filling moves
    on; a new set opens only when every set is passable. The dropped items
    are then first-fit into the resulting bins, opening new bins as needed.
    """
    large = [j for j in bundle if 2 * sizes[j] > capacity]
    if mms_value is not None and len(large) > mms_value:
        raise PreconditionError(
            f"Bundle holds {len(large)} large items, more than the MMS value {mms_value}."
        )
    sets: List[List[int]] = [[j] for j in large]
    loads = [sizes[j] for j in large]
    cursor = 0
    for j in bundle:
        if 2 * sizes[j] > capacity:
            continue
        while cursor < len(sets) and loads[cursor] > capacity:
            cursor += 1
        if cursor == len(sets):
            sets.append([])
            loads.append(0)
        sets[cursor].append(j)
        loads[cursor] += sizes[j]

    dropped = []
    for b, items in enumerate(sets):
        if loads[b] > capacity:
            j = items.pop()
            loads[b] -= sizes[j]
            dropped.append(j)
    for j in dropped:
        for b, load in enumerate(loads):
            if load + sizes[j] <= capacity:
                sets[b].append(j)
                loads[b] += sizes[j]
                break
        else:
            sets.append([j])
            loads.append(sizes[j])

    bins = tuple(tuple(items) for items in sets if items)
    return PackingCertificate(bins=bins, value=sum(1 for load in loads if load > 0))


def _require_sorted(jobs: Sequence[int], speeds: Sequence[int]):
    if not is_nonincreasing(jobs) or not is_nonincreasing(speeds):
        raise UnsortedInputError("Jobs and speeds must be sorted nonincreasing.")


def threshold_schedule(jobs: Sequence[int], speeds: Sequence[int], tau: Fraction) -> ThresholdSchedule:
    """
    Machine l, in speed order, takes the next jobs largest-first while its load
    stays within 2·tau·speed; jobs never taken are left over.
    """
    _require_sorted(jobs, speeds)
    tau = Fraction(tau)
    if tau <= 0:
        raise PreconditionError("Threshold must be positive.")
    return _fill_machines(jobs, speeds, tau)


def _fill_machines(jobs: Sequence[int], speeds: Sequence[int], tau: Fraction) -> ThresholdSchedule:
    capacities = tuple(tau * speed for speed in speeds)
    machines = []
    g = 0
    for capacity in capacities:
        load, taken = 0, []
        while g < len(jobs) and load + jobs[g] <= 2 * capacity:
            load += jobs[g]
            taken.append(g)
            g += 1
        machines.append(tuple(taken))
    return ThresholdSchedule(
        tau=tau,
        capacities=capacities,
        machines=tuple(machines),
        leftover=tuple(range(g, len(jobs))),
    )


def threshold_search_schedule(jobs: Sequence[int], speeds: Sequence[int], delta: Fraction) -> ThresholdSearchResult:
    """Raises tau geometrically from max(jobs)/speeds[0] until nothing is left over."""
    delta = Fraction(delta)
    if delta <= 0:
        raise PreconditionError("delta must be positive.")
    if not jobs or not speeds:
        raise PreconditionError("Threshold search needs at least one job and one machine.")
    _require_sorted(jobs, speeds)
    # all-zero bundles start and stay at tau = 0, where every job fits
    tau = Fraction(max(jobs), speeds[0])
    iterations = 1
    schedule = _fill_machines(jobs, speeds, tau)
    while schedule.leftover:
        tau *= 1 + delta
        iterations += 1
        schedule = _fill_machines(jobs, speeds, tau)
    return ThresholdSearchResult(tau=tau, schedule=schedule, iterations=iterations)


class AllocationService:
    def __init__(
        self,
        settings: Settings,
        validation_service: ValidationService,
        valuation_service: ValuationService,
        ido_service: IdoService,
    ):
        self.settings = settings
        self.validation_service = validation_service
        self.valuation_service = valuation_service
        self.ido_service = ido_service
        logging.info("AllocationService initialized.")

    # --- Bag filling for IDO bin packing ---

    def bag_fill_rounds(self, inst: ChoreInstance, smallest_first: bool = False) -> List[BagRound]:
        """
        Runs bag filling and returns one round per agent in the order bags were handed out.

        A bag starts with the largest remaining item of every group up to the
        last group holding an item large for some remaining agent. While some
        remaining agent still has small items and values the bag at most a
        1/n share of everything, the lowest-index such agent adds one of her
        small items (the largest, or the smallest when ``smallest_first``).
        The bag goes to the last agent who filled it, or else to the
        lowest-index agent for whom every bag item is large. The final agent
        takes what is left.
        """
        self.validation_service.require_kind(inst, BIN_PACKING, "bag filling")
        self.validation_service.require_ido(inst, "bag filling")
        n, m = inst.n, inst.m
        sizes, capacities = inst.sizes, inst.valuation_spec.capacities
        totals = [sum(row) for row in sizes]

        def is_large(i: int, j: int) -> bool:
            return 2 * sizes[i][j] > capacities[i]

        remaining_items = set(range(m))
        remaining_agents = list(range(n))
        rounds: List[BagRound] = []

        while len(remaining_agents) > 1:
            # --- Bag initialization ---
            # Large is strict (2s > c) and counted only over agents still waiting;
            # an item large for a served agent alone is small for everyone left.
            large_somewhere = [
                j for j in remaining_items if any(is_large(i, j) for i in remaining_agents)
            ]
            k = max((j // n + 1 for j in large_somewhere), default=0)
            bag: List[int] = []
            for t in range(k):
                group = [j for j in range(t * n, min((t + 1) * n, m)) if j in remaining_items]
                if group:
                    bag.append(group[0])
                    remaining_items.discard(group[0])
            candidates = [
                i for i in remaining_agents if not bag or all(is_large(i, j) for j in bag)
            ]

            # --- Bag filling ---
            filled = False
            while True:
                filler = None
                for i in remaining_agents:
                    small = [j for j in remaining_items if not is_large(i, j)]
                    if small and n * sum(sizes[i][j] for j in bag) <= totals[i]:
                        filler = i
                        break
                if filler is None:
                    break
                g = max(small) if smallest_first else min(small)
                bag.append(g)
                remaining_items.discard(g)
                candidates = [filler]
                filled = True

            if not candidates:
                raise AllocatorInvariantError("Bag filling found no agent to receive the bag.")
            recipient = min(candidates)
            remaining_agents.remove(recipient)
            rounds.append(BagRound(recipient=recipient, items=tuple(bag), filled=filled))
            logging.debug(f"Bag of {len(bag)} items to agent {recipient + 1} (filled={filled}).")

        rounds.append(
            BagRound(recipient=remaining_agents[0], items=tuple(sorted(remaining_items)), filled=False)
        )
        return rounds

    def _rounds_to_allocation(self, inst: ChoreInstance, rounds: List[BagRound]) -> Allocation:
        bundles = [()] * inst.n
        for bag_round in rounds:
            bundles[bag_round.recipient] = bag_round.items
        return Allocation(bundles=tuple(bundles))

    def bag_fill_allocate(self, inst: ChoreInstance) -> Allocation:
        return self._rounds_to_allocation(inst, self.bag_fill_rounds(inst))

    def bag_fill_allocate_v2(self, inst: ChoreInstance) -> Allocation:
        """Bag filling where every filler adds her smallest small item."""
        return self._rounds_to_allocation(inst, self.bag_fill_rounds(inst, smallest_first=True))

    def passable_set_packing(
        self,
        inst: ChoreInstance,
        agent: int,
        bundle: Sequence[int],
        mms_value: Optional[int] = None,
    ) -> PackingCertificate:
        self.validation_service.require_kind(inst, BIN_PACKING, "passable-set packing")
        return passable_set_packing(
            inst.sizes[agent], inst.valuation_spec.capacities[agent], bundle, mms_value
        )

    # --- Job scheduling ---

    def round_robin_allocate(self, inst: ChoreInstance) -> Allocation:
        """Agents take turns picking the largest job; under IDO item j goes to agent j mod n."""
        self.validation_service.require_kind(inst, JOB_SCHEDULING, "round-robin")
        self.validation_service.require_ido(inst, "round-robin")
        return Allocation.from_assignment([j % inst.n for j in range(inst.m)], inst.n)

    def threshold_schedule(self, jobs: Sequence[int], speeds: Sequence[int], tau: Fraction) -> ThresholdSchedule:
        return threshold_schedule(jobs, speeds, tau)

    def threshold_search_schedule(
        self,
        jobs: Sequence[int],
        speeds: Sequence[int],
        delta: Optional[Fraction] = None,
    ) -> ThresholdSearchResult:
        delta = self.settings.allocator.delta_fraction if delta is None else delta
        return threshold_search_schedule(jobs, speeds, delta)

    # --- Baseline ---

    def all_or_nothing_allocate(self, inst: ChoreInstance) -> Allocation:
        """Everything goes to the agent with the smallest v_i(M), lowest index on ties."""
        everything = tuple(range(inst.m))
        costs = [self.valuation_service.value(inst, i, everything).value for i in range(inst.n)]
        recipient = min(range(inst.n), key=lambda i: (costs[i], i))
        return Allocation(
            bundles=tuple(everything if i == recipient else () for i in range(inst.n))
        )

    # --- Dispatch ---

    def solve(self, inst: ChoreInstance, allocator: str, delta: Optional[Fraction] = None) -> SolveResult:
        """
        Runs an allocator by name and attaches one certificate per agent.
        IDO-only allocators run on the reduced instance and their output is lifted back.
        """
        if allocator not in ALLOCATORS:
            raise IncompatibleAllocatorError(
                f"Unknown allocator '{allocator}'; choose one of {', '.join(ALLOCATORS)}."
            )
        self.validation_service.require_valid(inst)
        if allocator in _ALLOCATOR_KINDS:
            self.validation_service.require_kind(inst, _ALLOCATOR_KINDS[allocator], allocator)
        logging.info(f"Solving a {inst.kind} instance (n={inst.n}, m={inst.m}) with '{allocator}'.")

        if allocator == "allornothing":
            alloc = self.all_or_nothing_allocate(inst)
            certificates = tuple(
                self.valuation_service.value(inst, i, bundle).certificate
                for i, bundle in enumerate(alloc.bundles)
            )
            return self._checked(inst, SolveResult(allocator=allocator, allocation=alloc, certificates=certificates))

        ido, _ = self.ido_service.to_ido(inst)
        if allocator in ("bagfill", "bagfill32"):
            ido_alloc = (
                self.bag_fill_allocate(ido) if allocator == "bagfill" else self.bag_fill_allocate_v2(ido)
            )
        else:
            ido_alloc = self.round_robin_allocate(ido)
        lift = self.ido_service.lift_mapping(inst, ido_alloc)
        alloc = self.ido_service.lift_allocation(inst, ido_alloc, lift)

        taus = None
        if allocator == "bagfill32":
            certificates = []
            for i, bundle in enumerate(ido_alloc.bundles):
                packing = self.ido_service.lift_certificate(self.passable_set_packing(ido, i, bundle), lift)
                value = self.valuation_service.evaluate_certificate(inst, i, alloc.bundles[i], packing)
                certificates.append(packing.model_copy(update={"value": value}))
        elif allocator == "threshold-search":
            certificates, taus = [], []
            for i, bundle in enumerate(ido_alloc.bundles):
                if not bundle:
                    certificates.append(ScheduleCertificate(machines=(), makespan=Fraction(0)))
                    taus.append(None)
                    continue
                jobs = [ido.sizes[i][g] for g in bundle]
                search = self.threshold_search_schedule(jobs, ido.valuation_spec.speeds[i], delta)
                machines = tuple(tuple(lift[bundle[p]] for p in jobs_on) for jobs_on in search.schedule.machines)
                schedule = ScheduleCertificate(machines=machines, makespan=Fraction(0))
                span = self.valuation_service.evaluate_certificate(inst, i, alloc.bundles[i], schedule)
                certificates.append(schedule.model_copy(update={"makespan": span}))
                taus.append(search.tau)
        else:
            certificates = [
                self.valuation_service.value(inst, i, bundle).certificate
                for i, bundle in enumerate(alloc.bundles)
            ]

        result = SolveResult(
            allocator=allocator,
            allocation=alloc,
            certificates=tuple(certificates),
            taus=tuple(taus) if taus is not None else None,
        )
        return self._checked(inst, result)

    def _checked(self, inst: ChoreInstance, result: SolveResult) -> SolveResult:
        self.validation_service.require_partition(inst, result.allocation)
        return result
