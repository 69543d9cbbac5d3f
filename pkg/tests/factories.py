from itertools import product

from hypothesis import strategies as st

from choreshare.core.models import (
    AdditiveSpec,
    BinPackingSpec,
    ChoreInstance,
    JobSchedulingSpec,
)


def bin_instance(sizes, capacities) -> ChoreInstance:
    return ChoreInstance(
        n=len(sizes),
        m=len(sizes[0]),
        sizes=tuple(tuple(row) for row in sizes),
        valuation_spec=BinPackingSpec(capacities=tuple(capacities)),
    )


def job_instance(sizes, speeds) -> ChoreInstance:
    return ChoreInstance(
        n=len(sizes),
        m=len(sizes[0]),
        sizes=tuple(tuple(row) for row in sizes),
        valuation_spec=JobSchedulingSpec(speeds=tuple(tuple(row) for row in speeds)),
    )


def additive_instance(sizes) -> ChoreInstance:
    return ChoreInstance(
        n=len(sizes),
        m=len(sizes[0]),
        sizes=tuple(tuple(row) for row in sizes),
        valuation_spec=AdditiveSpec(),
    )


def all_assignments(n: int, m: int):
    return product(range(n), repeat=m)


@st.composite
def bin_instances(draw, agents=(2, 3), max_items=6, max_capacity=12, ido=False):
    n = draw(st.sampled_from(agents))
    m = draw(st.integers(min_value=0, max_value=max_items))
    capacities = [draw(st.integers(min_value=1, max_value=max_capacity)) for _ in range(n)]
    sizes = []
    for c in capacities:
        row = draw(st.lists(st.integers(min_value=1, max_value=c), min_size=m, max_size=m))
        sizes.append(sorted(row, reverse=True) if ido else row)
    return bin_instance(sizes, capacities)


@st.composite
def job_instances(draw, agents=(2, 3), max_items=6, max_machines=3, max_speed=5, max_size=20, ido=False):
    n = draw(st.sampled_from(agents))
    m = draw(st.integers(min_value=0, max_value=max_items))
    speeds, sizes = [], []
    for _ in range(n):
        k = draw(st.integers(min_value=1, max_value=max_machines))
        speeds.append(sorted(draw(st.lists(st.integers(min_value=1, max_value=max_speed), min_size=k, max_size=k)), reverse=True))
        row = draw(st.lists(st.integers(min_value=1, max_value=max_size), min_size=m, max_size=m))
        sizes.append(sorted(row, reverse=True) if ido else row)
    return job_instance(sizes, speeds)


@st.composite
def additive_instances(draw, agents=(2, 3), max_items=6, max_size=20):
    n = draw(st.sampled_from(agents))
    m = draw(st.integers(min_value=0, max_value=max_items))
    sizes = [draw(st.lists(st.integers(min_value=0, max_value=max_size), min_size=m, max_size=m)) for _ in range(n)]
    return additive_instance(sizes)


def permute_items(inst: ChoreInstance, order) -> ChoreInstance:
    """Item p of the result is item ``order[p]`` of ``inst``, for every agent."""
    return inst.model_copy(update={"sizes": tuple(tuple(row[j] for j in order) for row in inst.sizes)})


def brute_force_mms(valuation_service, inst: ChoreInstance, agent: int):
    """Min over every n-partition of the agent's largest exact bundle value."""
    best = None
    for assignment in all_assignments(inst.n, inst.m):
        bundles = [[] for _ in range(inst.n)]
        for item, owner in enumerate(assignment):
            bundles[owner].append(item)
        worst = max(valuation_service.value_exact(inst, agent, bundle).value for bundle in bundles)
        best = worst if best is None else min(best, worst)
    return best
