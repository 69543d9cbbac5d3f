from itertools import product
from typing import Optional

from choreshare.core.config import Settings
from choreshare.core.errors import (
    IncompatibleAllocatorError,
    InvalidAllocationError,
    InvalidInstanceError,
    PreconditionError,
)
from choreshare.core.models import (
    BIN_PACKING,
    COVERING_PLANE,
    JOB_SCHEDULING,
    Allocation,
    ChoreInstance,
)


def validate_instance(inst: ChoreInstance) -> Optional[str]:
    """
    Returns None when every instance invariant holds, otherwise names the first violation.
    """
    if inst.n < 1:
        return "agent count below 1"
    if inst.m < 0:
        return "negative item count"
    spec = inst.valuation_spec

    # --- Covering planes carry points instead of sizes ---
    if inst.kind == COVERING_PLANE:
        if spec.dimension != inst.n:
            return "dimension differs from agent count"
        if len(spec.points) != inst.n ** inst.n or inst.m != inst.n ** inst.n:
            return "point count ≠ n^n"
        if any(len(p) != inst.n or not all(1 <= x <= inst.n for x in p) for p in spec.points):
            return "point coordinate outside [n]"
        if len(set(spec.points)) != len(spec.points):
            return "duplicate point"
        return None

    # --- Size matrix ---
    if len(inst.sizes) != inst.n:
        return "size matrix row count differs from n"
    if any(len(row) != inst.m for row in inst.sizes):
        return "size matrix column count differs from m"
    if any(s < 0 for row in inst.sizes for s in row):
        return "negative item size"

    # --- Valuation parameters ---
    if inst.kind == BIN_PACKING:
        if len(spec.capacities) != inst.n:
            return "capacity count differs from n"
        for c, row in zip(spec.capacities, inst.sizes):
            if c <= 0:
                return "capacity not positive"
            if row and c < max(row):
                return "capacity below max item size"
    elif inst.kind == JOB_SCHEDULING:
        if len(spec.speeds) != inst.n:
            return "speed list count differs from n"
        for speeds in spec.speeds:
            if not speeds:
                return "agent without machines"
            if any(s <= 0 for s in speeds):
                return "speed not positive"
            if any(speeds[l] < speeds[l + 1] for l in range(len(speeds) - 1)):
                return "speeds not sorted nonincreasing"
    return None


def is_ido(inst: ChoreInstance) -> bool:
    if not inst.has_sizes:
        raise PreconditionError("Covering-plane instances have no item sizes.")
    return all(
        row[j] >= row[j + 1]
        for row in inst.sizes
        for j in range(inst.m - 1)
    )


def covering_points(n: int):
    """All points of [n]^n in lexicographic order."""
    return tuple(product(range(1, n + 1), repeat=n))


class ValidationService:
    def __init__(self, settings: Settings):
        self.settings = settings

    # --- Instance-based validation functions ---

    def require_valid(self, inst: ChoreInstance):
        """
        Raises when the instance breaks one of its invariants.
        """
        violation = validate_instance(inst)
        if violation:
            raise InvalidInstanceError(f"Invalid instance: {violation}.")
        else:
            pass

    def require_kind(self, inst: ChoreInstance, kind: str, operation: str):
        """
        Checks the valuation kind an operation is defined for.
        """
        if inst.kind != kind:
            raise IncompatibleAllocatorError(
                f"'{operation}' needs a {kind} instance, got {inst.kind}."
            )
        else:
            pass

    def require_ido(self, inst: ChoreInstance, operation: str):
        """
        Checks that all agents rank items identically by size.
        """
        if not is_ido(inst):
            raise PreconditionError(f"'{operation}' needs an identical-ordering instance.")
        else:
            pass

    # --- Allocation-based validation functions ---

    def require_partition(self, inst: ChoreInstance, alloc: Allocation):
        """
        Checks that the bundles are n pairwise disjoint sets covering every item.
        """
        if alloc.n != inst.n:
            raise InvalidAllocationError(
                f"Allocation has {alloc.n} bundles for {inst.n} agents."
            )
        seen = set()
        for bundle in alloc.bundles:
            for item in bundle:
                if not 0 <= item < inst.m:
                    raise InvalidAllocationError(f"Item {item + 1} is outside [m].")
                if item in seen:
                    raise InvalidAllocationError(f"Item {item + 1} is allocated twice.")
                seen.add(item)
        if len(seen) != inst.m:
            raise InvalidAllocationError(
                f"Allocation leaves {inst.m - len(seen)} item(s) unallocated."
            )
