"""
Bin packing on integer sizes: first-fit-decreasing and an exact branch and bound.

Both work on positions into the ``sizes`` sequence they are given and return
bins as tuples of positions. Zero-size items never open a bin; they ride in
the first bin (or in a single zero-load bin when nothing else is packed).
"""
from functools import lru_cache
from typing import List, Sequence, Tuple

Bins = Tuple[Tuple[int, ...], ...]


def decreasing_order(sizes: Sequence[int]) -> List[int]:
    """Positions sorted by nonincreasing size, index ascending on ties."""
    return sorted(range(len(sizes)), key=lambda j: (-sizes[j], j))


def count_bins(bins: Bins, sizes: Sequence[int]) -> int:
    return sum(1 for b in bins if sum(sizes[j] for j in b) > 0)


def fits(bins: Bins, sizes: Sequence[int], capacity: int) -> bool:
    return all(sum(sizes[j] for j in b) <= capacity for b in bins)


def _attach_zeros(bins: List[List[int]], zeros: List[int]) -> Bins:
    if zeros:
        if bins:
            bins[0].extend(zeros)
        else:
            bins.append(list(zeros))
    return tuple(tuple(b) for b in bins)


def first_fit_decreasing(sizes: Sequence[int], capacity: int) -> Bins:
    bins: List[List[int]] = []
    loads: List[int] = []
    zeros = []
    for j in decreasing_order(sizes):
        size = sizes[j]
        if size == 0:
            zeros.append(j)
            continue
        for b, load in enumerate(loads):
            if load + size <= capacity:
                bins[b].append(j)
                loads[b] += size
                break
        else:
            bins.append([j])
            loads.append(size)
    return _attach_zeros(bins, zeros)


def exact_bin_packing(sizes: Sequence[int], capacity: int) -> Bins:
    """Minimum-bin packing; raises ``ValueError`` if an item exceeds the capacity."""
    if any(size > capacity for size in sizes):
        raise ValueError("item larger than the bin capacity")
    order = [j for j in decreasing_order(sizes) if sizes[j] > 0]
    zeros = [j for j in range(len(sizes)) if sizes[j] == 0]
    sorted_bins = _solve_sorted(tuple(sizes[j] for j in order), capacity)
    bins = [[order[p] for p in b] for b in sorted_bins]
    return _attach_zeros(bins, zeros)


@lru_cache(maxsize=1 << 16)
def _solve_sorted(sizes: Tuple[int, ...], capacity: int) -> Bins:
    """Branch and bound over canonical packings of positive, nonincreasing sizes.

    Items go into an existing bin or a new one appended at the end. An item
    equal in size to its predecessor never goes into an earlier bin than the
    predecessor did.
    """
    m = len(sizes)
    if m == 0:
        return ()
    total = sum(sizes)
    lower = -(-total // capacity)
    incumbent = first_fit_decreasing(sizes, capacity)
    if len(incumbent) == lower:
        return incumbent

    suffix = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix[j] = suffix[j + 1] + sizes[j]

    best = [list(b) for b in incumbent]
    best_count = len(incumbent)
    contents: List[List[int]] = []
    loads: List[int] = []
    placed_in = [0] * m

    def search(j: int) -> bool:
        nonlocal best, best_count
        if j == m:
            if len(loads) < best_count:
                best_count = len(loads)
                best = [list(b) for b in contents]
            return best_count == lower
        free = len(loads) * capacity - (total - suffix[j])
        overflow = suffix[j] - free
        needed = -(-overflow // capacity) if overflow > 0 else 0
        if len(loads) + needed >= best_count:
            return False

        start = placed_in[j - 1] if j > 0 and sizes[j] == sizes[j - 1] else 0
        for b in range(start, len(loads)):
            if loads[b] + sizes[j] <= capacity:
                loads[b] += sizes[j]
                contents[b].append(j)
                placed_in[j] = b
                done = search(j + 1)
                contents[b].pop()
                loads[b] -= sizes[j]
                if done:
                    return True
        if len(loads) + 1 < best_count:
            loads.append(sizes[j])
            contents.append([j])
            placed_in[j] = len(loads) - 1
            done = search(j + 1)
            contents.pop()
            loads.pop()
            if done:
                return True
        return False

    search(0)
    return tuple(tuple(b) for b in best)
