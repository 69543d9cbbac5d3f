from itertools import product

from hypothesis import given, settings, strategies as st

from choreshare.core.bin_packing import (
    count_bins,
    decreasing_order,
    exact_bin_packing,
    first_fit_decreasing,
    fits,
)


@st.composite
def packing_inputs(draw, max_items=5):
    capacity = draw(st.integers(min_value=1, max_value=12))
    sizes = draw(st.lists(st.integers(min_value=0, max_value=capacity), max_size=max_items))
    return sizes, capacity


def brute_force_bins(sizes, capacity):
    """Fewest positive-load bins over every assignment of items to bins."""
    m = len(sizes)
    best = m
    for assignment in product(range(m), repeat=m):
        loads = [0] * m
        for j, b in enumerate(assignment):
            loads[b] += sizes[j]
        if max(loads, default=0) <= capacity:
            best = min(best, sum(1 for load in loads if load > 0))
    return best


def is_partition(bins, m):
    placed = [j for b in bins for j in b]
    return sorted(placed) == list(range(m))


def test_decreasing_order_breaks_ties_by_index():
    assert decreasing_order([2, 5, 2, 7]) == [3, 1, 0, 2]


def test_first_fit_decreasing_example():
    sizes = [3, 3, 2, 2]
    bins = first_fit_decreasing(sizes, 5)
    assert count_bins(bins, sizes) == 2
    assert fits(bins, sizes, 5)


def test_zero_sizes_open_no_bin():
    assert count_bins(exact_bin_packing([0, 0], 3), [0, 0]) == 0
    assert exact_bin_packing([], 3) == ()


@settings(max_examples=60, deadline=None)
@given(packing_inputs())
def test_exact_matches_brute_force(data):
    sizes, capacity = data
    bins = exact_bin_packing(sizes, capacity)
    assert is_partition(bins, len(sizes))
    assert fits(bins, sizes, capacity)
    assert count_bins(bins, sizes) == brute_force_bins(sizes, capacity)


@settings(max_examples=100, deadline=None)
@given(packing_inputs(max_items=9))
def test_first_fit_decreasing_never_beats_exact(data):
    sizes, capacity = data
    heuristic = first_fit_decreasing(sizes, capacity)
    assert is_partition(heuristic, len(sizes))
    assert fits(heuristic, sizes, capacity)
    assert count_bins(heuristic, sizes) >= count_bins(exact_bin_packing(sizes, capacity), sizes)
