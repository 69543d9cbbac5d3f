from itertools import product

from hypothesis import given, settings, strategies as st

from choreshare.core.partitions import min_max_partition


def _additive(weights):
    def block_value(mask):
        return sum(w for j, w in enumerate(weights) if mask >> j & 1)
    return block_value


def test_min_max_partition_without_items():
    assert min_max_partition([], 3, _additive([])) == (0, [])


def test_min_max_partition_with_a_block_per_item():
    value, masks = min_max_partition([0, 1, 2, 3], 4, _additive([5, 1, 4, 2]))
    assert value == 5
    assert len(masks) <= 4


def test_min_max_partition_single_block():
    value, masks = min_max_partition([2, 0, 1], 1, _additive([1, 2, 3]))
    assert value == 6
    assert masks == [0b111]


def test_min_max_partition_stops_at_floor():
    weights = _additive([3, 3, 2, 2])
    assert min_max_partition([0, 1, 2, 3], 2, weights)[0] == 5
    assert min_max_partition([0, 1, 2, 3], 2, weights, floor=6)[0] == 6


@settings(max_examples=60, deadline=None)
@given(
    weights=st.lists(st.integers(min_value=0, max_value=9), max_size=6),
    blocks=st.integers(min_value=1, max_value=3),
)
def test_min_max_partition_matches_brute_force(weights, blocks):
    m = len(weights)

    def block_value(mask):
        return sum(w for j, w in enumerate(weights) if mask >> j & 1)

    value, masks = min_max_partition(list(range(m)), blocks, block_value)
    expected = min(
        max((sum(w for w, b in zip(weights, labels) if b == label) for label in range(blocks)), default=0)
        for labels in product(range(blocks), repeat=m)
    )
    assert value == expected
    assert len(masks) <= blocks
    union = 0
    for mask in masks:
        assert union & mask == 0
        union |= mask
    assert union == (1 << m) - 1


def test_min_max_partition_returns_none_without_improvement():
    weights = [4, 3, 3]

    def block_value(mask):
        return sum(w for j, w in enumerate(weights) if mask >> j & 1)

    assert min_max_partition([0, 1, 2], 2, block_value, incumbent=6) is None
    assert min_max_partition([0, 1, 2], 2, block_value, incumbent=7)[0] == 6
