import pytest

from choreshare.core.errors import (
    IncompatibleAllocatorError,
    InvalidAllocationError,
    InvalidInstanceError,
    PreconditionError,
)
from choreshare.core.models import (
    JOB_SCHEDULING,
    Allocation,
    BinPackingSpec,
    ChoreInstance,
    CoveringPlaneSpec,
)
from choreshare.services.validation_service import covering_points, is_ido, validate_instance
from tests.factories import additive_instance, bin_instance, job_instance


def test_valid_instances_have_no_violation():
    assert validate_instance(bin_instance([[3, 2], [1, 4]], [5, 4])) is None
    assert validate_instance(job_instance([[3, 2]], [[2, 1]])) is None
    assert validate_instance(additive_instance([[0, 7]])) is None


@pytest.mark.parametrize(
    "inst, violation",
    [
        (bin_instance([[6, 2]], [5]), "capacity below max item size"),
        (bin_instance([[1, 2]], [0]), "capacity not positive"),
        (bin_instance([[-1, 2]], [5]), "negative item size"),
        (job_instance([[1, 2]], [[1, 2]]), "speeds not sorted nonincreasing"),
        (job_instance([[1, 2]], [[]]), "agent without machines"),
        (job_instance([[1, 2]], [[0]]), "speed not positive"),
    ],
)
def test_first_violation_is_named(inst, violation):
    assert validate_instance(inst) == violation


def test_size_matrix_shape_is_checked():
    inst = ChoreInstance(n=2, m=2, sizes=((1, 1),), valuation_spec=BinPackingSpec(capacities=(2, 2)))
    assert validate_instance(inst) == "size matrix row count differs from n"
    inst = ChoreInstance(n=1, m=3, sizes=((1, 1),), valuation_spec=BinPackingSpec(capacities=(2,)))
    assert validate_instance(inst) == "size matrix column count differs from m"


def test_covering_plane_instances():
    points = covering_points(2)
    assert points == ((1, 1), (1, 2), (2, 1), (2, 2))
    good = ChoreInstance(n=2, m=4, valuation_spec=CoveringPlaneSpec(dimension=2, points=points))
    assert validate_instance(good) is None

    short = ChoreInstance(n=2, m=3, valuation_spec=CoveringPlaneSpec(dimension=2, points=points[:3]))
    assert validate_instance(short) == "point count ≠ n^n"

    twice = ChoreInstance(n=2, m=4, valuation_spec=CoveringPlaneSpec(dimension=2, points=points[:3] + points[:1]))
    assert validate_instance(twice) == "duplicate point"


def test_is_ido():
    assert is_ido(bin_instance([[3, 2, 2], [5, 1, 0]], [5, 5]))
    assert not is_ido(bin_instance([[3, 2, 2], [1, 5, 0]], [5, 5]))
    with pytest.raises(PreconditionError):
        is_ido(ChoreInstance(n=1, m=1, valuation_spec=CoveringPlaneSpec(dimension=1, points=((1,),))))


def test_require_valid_raises_invariant_error(validation_service):
    with pytest.raises(InvalidInstanceError) as exc_info:
        validation_service.require_valid(bin_instance([[9]], [5]))
    assert exc_info.value.exit_code == 2


def test_require_kind(validation_service):
    inst = bin_instance([[1]], [1])
    with pytest.raises(IncompatibleAllocatorError):
        validation_service.require_kind(inst, JOB_SCHEDULING, "round-robin")


@pytest.mark.parametrize(
    "bundles, message",
    [
        (((0, 1, 2),), "bundles for 2 agents"),
        (((0, 1), (1, 2)), "allocated twice"),
        (((0,), (2,)), "unallocated"),
        (((0, 1), (2, 3)), "outside [m]"),
    ],
)
def test_require_partition(validation_service, bundles, message):
    inst = bin_instance([[1, 1, 1], [1, 1, 1]], [2, 2])
    with pytest.raises(InvalidAllocationError, match=message.replace("[", r"\[").replace("]", r"\]")):
        validation_service.require_partition(inst, Allocation(bundles=bundles))


def test_allocation_from_assignment():
    alloc = Allocation.from_assignment([0, 1, 0], 2)
    assert alloc.bundles == ((0, 2), (1,))
    assert alloc.owners() == {0: 0, 1: 1, 2: 0}
