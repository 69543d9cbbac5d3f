from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from choreshare.core.config import OracleSettings, Settings
from choreshare.core.errors import BudgetExceededError
from choreshare.services.generator_service import GeneratorService
from choreshare.services.mms_service import MmsService
from choreshare.services.valuation_service import ValuationService
from tests.factories import (
    additive_instance,
    additive_instances,
    bin_instance,
    bin_instances,
    brute_force_mms,
    job_instance,
    job_instances,
    permute_items,
)


def test_covering_planes_have_unit_mms(mms_service, validation_service):
    inst = GeneratorService(Settings()).gen_covering_planes(3)
    for agent in range(3):
        entry = mms_service.mms_exact(inst, agent)
        assert entry.value == 1
        validation_service.require_partition(inst, entry.defining_partition)


def test_single_agent_mms_is_whole_value(mms_service):
    inst = job_instance([[3, 4]], [[1]])
    entry = mms_service.mms_exact(inst, 0)
    assert entry.value == 7
    assert entry.defining_partition.bundles == ((0, 1),)


def test_additive_example(mms_service):
    entry = mms_service.mms_exact(additive_instance([[3, 3, 2, 2], [1, 1, 1, 1]]), 0)
    assert entry.value == 5
    assert sorted(len(bundle) for bundle in entry.defining_partition.bundles) == [2, 2]


def test_no_items(mms_service):
    inst = bin_instance([[], []], [3, 3])
    assert mms_service.mms_exact(inst, 0).value == 0
    bounds = mms_service.mms_bounds(inst, 0)
    assert (bounds.lower, bounds.upper) == (0, 0)


def test_feige_instance_has_unit_mms(mms_service):
    inst = GeneratorService(Settings()).gen_feige_binpacking()
    assert [entry.value for entry in mms_service.profile(inst).entries] == [1, 1, 1]


@settings(max_examples=25, deadline=None)
@given(st.one_of(bin_instances(max_items=6), job_instances(max_items=6)), st.data())
def test_exact_mms_matches_brute_force(mms_service, valuation_service, validation_service, inst, data):
    agent = data.draw(st.integers(min_value=0, max_value=inst.n - 1))
    entry = mms_service.mms_exact(inst, agent)
    assert entry.value == brute_force_mms(valuation_service, inst, agent)
    validation_service.require_partition(inst, entry.defining_partition)
    witnessed = max(
        valuation_service.value_exact(inst, agent, bundle).value for bundle in entry.defining_partition.bundles
    )
    assert witnessed == entry.value


@settings(max_examples=40, deadline=None)
@given(st.one_of(bin_instances(max_items=8), job_instances(max_items=8)))
def test_bounds_bracket_exact_mms(mms_service, inst):
    for agent in range(inst.n):
        bounds = mms_service.mms_bounds(inst, agent)
        value = mms_service.mms_exact(inst, agent).value
        assert bounds.lower <= value <= bounds.upper


def test_bound_methods(mms_service):
    tall = job_instance([[10, 1, 1], [2, 2, 2]], [[1], [1]])
    assert mms_service.mms_bounds(tall, 0).method == "lemma1-singleton"
    assert mms_service.mms_bounds(tall, 0).lower == 10
    assert mms_service.mms_bounds(tall, 1).lower == Fraction(3)

    spread = bin_instance([[2, 2, 2, 2, 2, 2], [2, 2, 2, 2, 2, 2]], [3, 3])
    bounds = mms_service.mms_bounds(spread, 0)
    assert bounds.lower == 3
    assert bounds.method in ("lemma2-capacity", "lemma1-average")


def test_profile_falls_back_to_bounds():
    settings_ = Settings(oracle=OracleSettings(mms_budget_items=3))
    service = MmsService(settings_, ValuationService(settings_))
    inst = bin_instance([[3, 3, 2, 2], [1, 1, 1, 1]], [5, 2])
    with pytest.raises(BudgetExceededError):
        service.mms_exact(inst, 0)
    profile = service.profile(inst)
    assert not profile.exact
    for entry in profile.entries:
        assert entry.value == entry.bounds.lower
        assert entry.defining_partition is None


def test_reference_partition_deals_largest_first(mms_service):
    inst = bin_instance([[1, 5, 3, 4], [1, 1, 1, 1]], [5, 5])
    assert mms_service.reference_partition(inst, 0).bundles == ((1, 2), (0, 3))


@settings(max_examples=40, deadline=None)
@given(st.one_of(bin_instances(max_items=6), job_instances(max_items=6), additive_instances(max_items=6)), st.data())
def test_mms_ignores_item_order(mms_service, ido_service, inst, data):
    order = data.draw(st.permutations(range(inst.m)))
    shuffled = permute_items(inst, order)
    for agent in range(inst.n):
        value = mms_service.mms_exact(inst, agent).value
        assert mms_service.mms_exact(shuffled, agent).value == value
        ido, _ = ido_service.to_ido(inst)
        assert mms_service.mms_exact(ido, agent).value == value


@settings(max_examples=40, deadline=None)
@given(bin_instances(agents=(2, 3, 4), max_items=7))
def test_large_items_fit_in_mms_many_bundles(mms_service, inst):
    capacities = inst.valuation_spec.capacities
    for agent, row in enumerate(inst.sizes):
        large = sum(1 for size in row if 2 * size > capacities[agent])
        assert large <= inst.n * mms_service.mms_exact(inst, agent).value
