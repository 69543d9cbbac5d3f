"""
Makespan scheduling on related machines with exact rational completion times.

Speeds are given in nonincreasing order; a schedule is a tuple with one tuple
of job positions per machine.
"""
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from choreshare.core.bin_packing import decreasing_order

Schedule = Tuple[Tuple[int, ...], ...]


def makespan(schedule: Schedule, sizes: Sequence[int], speeds: Sequence[int]) -> Fraction:
    return max(
        (Fraction(sum(sizes[j] for j in jobs), speed) for jobs, speed in zip(schedule, speeds)),
        default=Fraction(0),
    )


def is_nonincreasing(values: Sequence) -> bool:
    return all(values[k] >= values[k + 1] for k in range(len(values) - 1))


def lpt_schedule(sizes: Sequence[int], speeds: Sequence[int]) -> Schedule:
    """Largest job first, each onto the machine that would finish it earliest."""
    machines: List[List[int]] = [[] for _ in speeds]
    loads = [0] * len(speeds)
    for j in decreasing_order(sizes):
        best = min(
            range(len(speeds)),
            key=lambda l: (Fraction(loads[l] + sizes[j], speeds[l]), l),
        )
        machines[best].append(j)
        loads[best] += sizes[j]
    return tuple(tuple(jobs) for jobs in machines)


def exact_schedule(sizes: Sequence[int], speeds: Sequence[int]) -> Schedule:
    order = decreasing_order(sizes)
    sorted_schedule = _solve_sorted(tuple(sizes[j] for j in order), tuple(speeds))
    return tuple(tuple(order[p] for p in jobs) for jobs in sorted_schedule)


@lru_cache(maxsize=1 << 16)
def _solve_sorted(sizes: Tuple[int, ...], speeds: Tuple[int, ...]) -> Schedule:
    """Branch and bound assigning nonincreasing jobs to machines in index order.

    A branch is cut once some machine's load/speed reaches the incumbent.
    Machines with equal speed and equal load are interchangeable, so only the
    first of them is tried.
    """
    m, k = len(sizes), len(speeds)
    incumbent = lpt_schedule(sizes, speeds)
    if m == 0:
        return incumbent
    best_value = makespan(incumbent, sizes, speeds)
    total = sum(sizes)
    lower = max(Fraction(sizes[0], speeds[0]), Fraction(total, sum(speeds)))
    if best_value == lower:
        return incumbent

    best = [list(jobs) for jobs in incumbent]
    num, den = best_value.numerator, best_value.denominator
    loads = [0] * k
    machines: List[List[int]] = [[] for _ in range(k)]

    def search(j: int) -> bool:
        nonlocal best, num, den
        if j == m:
            value = max(Fraction(loads[l], speeds[l]) for l in range(k))
            if value < Fraction(num, den):
                num, den = value.numerator, value.denominator
                best = [list(jobs) for jobs in machines]
            return Fraction(num, den) == lower
        tried = set()
        for l in range(k):
            key = (speeds[l], loads[l])
            if key in tried:
                continue
            tried.add(key)
            if (loads[l] + sizes[j]) * den >= num * speeds[l]:
                continue
            loads[l] += sizes[j]
            machines[l].append(j)
            done = search(j + 1)
            machines[l].pop()
            loads[l] -= sizes[j]
            if done:
                return True
        return False

    search(0)
    return tuple(tuple(jobs) for jobs in best)
