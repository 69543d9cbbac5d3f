from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from choreshare.core.scheduling import exact_schedule, is_nonincreasing, lpt_schedule, makespan


@st.composite
def scheduling_inputs(draw, max_jobs=6):
    speeds = sorted(draw(st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=3)), reverse=True)
    sizes = draw(st.lists(st.integers(min_value=0, max_value=15), max_size=max_jobs))
    return sizes, speeds


def brute_force_makespan(sizes, speeds):
    return min(
        max(
            Fraction(sum(s for s, machine in zip(sizes, assignment) if machine == l), speed)
            for l, speed in enumerate(speeds)
        )
        for assignment in product(range(len(speeds)), repeat=len(sizes))
    )


def test_lpt_examples():
    assert makespan(lpt_schedule([4, 2], [2, 1]), [4, 2], [2, 1]) == 2
    assert makespan(lpt_schedule([3, 4], [1]), [3, 4], [1]) == 7


def test_empty_schedule_has_zero_makespan():
    assert makespan(exact_schedule([], [3, 1]), [], [3, 1]) == 0


def test_is_nonincreasing():
    assert is_nonincreasing([5, 5, 1])
    assert is_nonincreasing([])
    assert not is_nonincreasing([1, 2])


@settings(max_examples=60, deadline=None)
@given(scheduling_inputs())
def test_exact_matches_brute_force(data):
    sizes, speeds = data
    schedule = exact_schedule(sizes, speeds)
    assert len(schedule) == len(speeds)
    assert sorted(j for jobs in schedule for j in jobs) == list(range(len(sizes)))
    assert makespan(schedule, sizes, speeds) == brute_force_makespan(sizes, speeds)


@settings(max_examples=100, deadline=None)
@given(scheduling_inputs(max_jobs=9))
def test_lpt_never_beats_exact(data):
    sizes, speeds = data
    assert makespan(lpt_schedule(sizes, speeds), sizes, speeds) >= makespan(exact_schedule(sizes, speeds), sizes, speeds)
