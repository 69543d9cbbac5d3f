"""Depth-first search over set partitions into at most k blocks"""
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

V = TypeVar("V")


def min_max_partition(
    order: Sequence[int],
    max_blocks: int,
    block_value: Callable[[int], V],
    incumbent: Optional[V] = None,
    floor: Optional[V] = None,
) -> Optional[Tuple[V, List[int]]]:
    """Minimizes the largest block value over partitions of ``order`` into at most ``max_blocks`` blocks.

    Partitions are walked as restricted growth strings: item p joins one of the
    blocks opened so far or opens the next one, so each unlabeled partition is
    visited once and empty trailing blocks stand for unused bundles.
    ``block_value`` maps an item bitmask to a value and must be monotone, since
    a partial block already at or above the incumbent cuts the branch. Returns
    ``(value, masks)`` for a partition strictly better than ``incumbent``, or
    None if there is none. The search stops early once ``floor`` is reached.
    """
    m = len(order)
    best: Optional[Tuple[V, List[int]]] = None
    bound = incumbent
    masks: List[int] = []
    values: List[V] = []

    def search(p: int) -> bool:
        nonlocal best, bound
        if p == m:
            value = max(values) if values else block_value(0)
            if bound is None or value < bound:
                bound = value
                best = (value, list(masks))
            return floor is not None and bound <= floor
        bit = 1 << order[p]
        for b in range(len(masks) + 1):
            if b == len(masks):
                if len(masks) == max_blocks:
                    break
                masks.append(0)
                values.append(block_value(0))
            previous_mask, previous_value = masks[b], values[b]
            masks[b] |= bit
            values[b] = block_value(masks[b])
            if bound is None or values[b] < bound:
                if search(p + 1):
                    return True
            masks[b], values[b] = previous_mask, previous_value
            if previous_mask == 0:
                masks.pop()
                values.pop()
        return False

    search(0)
    return best
