import pytest

from choreshare.core.errors import PreconditionError
from choreshare.services.validation_service import validate_instance


def test_covering_planes(generator_service):
    inst = generator_service.gen_covering_planes(3)
    assert (inst.n, inst.m) == (3, 27)
    assert validate_instance(inst) is None
    with pytest.raises(PreconditionError):
        generator_service.gen_covering_planes(5)


def test_feige_instance(generator_service):
    inst = generator_service.gen_feige_binpacking()
    assert validate_instance(inst) is None
    assert [inst.total_size(i) for i in range(3)] == [129, 129, 129]
    assert inst.valuation_spec.capacities == (43, 43, 43)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_propx_instances(generator_service, n):
    bins, jobs = generator_service.gen_propx_instances(n)
    assert (bins.n, bins.m) == (n, n + 1)
    assert bins.valuation_spec.capacities == (n + 1,) * n
    assert (jobs.n, jobs.m) == (2 * n, 2 * n + 1)
    assert all(len(speeds) == 2 * n for speeds in jobs.valuation_spec.speeds)
    assert validate_instance(bins) is None
    assert validate_instance(jobs) is None


def test_random_bin_packing_is_seeded(generator_service):
    first = generator_service.random_bin_packing(3, 8, seed=11)
    assert first == generator_service.random_bin_packing(3, 8, seed=11)
    assert validate_instance(first) is None
    assert all(c <= 50 for c in first.valuation_spec.capacities)
    small = generator_service.random_bin_packing(2, 5, seed=3, max_capacity=4)
    assert all(c <= 4 for c in small.valuation_spec.capacities)


def test_random_job_scheduling_is_seeded(generator_service):
    first = generator_service.random_job_scheduling(2, 6, seed=5)
    assert first == generator_service.random_job_scheduling(2, 6, seed=5)
    assert validate_instance(first) is None
    for speeds in first.valuation_spec.speeds:
        assert 1 <= len(speeds) <= 3
        assert all(1 <= s <= 5 for s in speeds)
    assert all(1 <= s <= 20 for row in first.sizes for s in row)


def test_random_families_reject_bad_counts(generator_service):
    with pytest.raises(PreconditionError):
        generator_service.random_bin_packing(0, 3, seed=1)
    with pytest.raises(PreconditionError):
        generator_service.random_job_scheduling(2, -1, seed=1)
    assert generator_service.random_bin_packing(2, 0, seed=1).m == 0
