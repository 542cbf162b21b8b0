import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cutstock import (
    Tube,
    crossing_point,
    dominates,
    enumerate_configurations,
    enumerate_neighborhood,
    in_tube,
    l1_distance_to_segment,
    make_instance,
    sum_from,
)
from cutstock.geometry import membership_test

from conftest import grid_distance, instances


@pytest.fixture
def inst23():
    return make_instance(["1/2", "1/3"], [2, 3])


def test_distance_at_endpoints(inst23):
    assert l1_distance_to_segment(inst23, inst23.demands) == 0
    assert l1_distance_to_segment(inst23, (0, 0)) == 0


def test_distance_example(inst23):
    assert grid_distance(inst23, (1, 0)) == Fraction(1, 2)
    assert l1_distance_to_segment(inst23, (1, 0)) == Fraction(1, 2)


@settings(max_examples=200, deadline=None)
@given(instances(max_k=3, max_demand=6), st.data())
def test_distance_matches_grid_scan(inst, data):
    state = tuple(data.draw(st.integers(0, n + 2)) for n in inst.demands)
    assert l1_distance_to_segment(inst, state) == grid_distance(inst, state)


@settings(max_examples=100, deadline=None)
@given(instances(max_k=3, max_demand=6), st.data())
def test_distance_independent_of_input_order(inst, data):
    state = tuple(data.draw(st.integers(0, n)) for n in inst.demands)
    perm = data.draw(st.permutations(range(inst.k)))
    other = make_instance([inst.sizes[i] for i in perm], [inst.demands[i] for i in perm])
    assert other == inst
    assert l1_distance_to_segment(other, state) == l1_distance_to_segment(inst, state)


def test_distance_zero_only_on_segment(inst23):
    for state in itertools.product(range(3), range(4)):
        on_segment = state[0] * 3 == state[1] * 2
        assert (l1_distance_to_segment(inst23, state) == 0) == on_segment


def test_in_tube_examples(inst23):
    for r in (1, 2, Fraction(7, 3)):
        assert in_tube(Tube(inst23, r), inst23.demands)
    assert in_tube(Tube(inst23, 1), (1, 0))
    assert not in_tube(Tube(inst23, 10), (3, 0))
    assert not in_tube(Tube(inst23, 10), (-1, 0))
    assert (1, 0) in Tube(inst23, 1)


def test_tube_radius_must_be_at_least_one(inst23):
    with pytest.raises(ValueError):
        Tube(inst23, Fraction(1, 2))


def test_neighborhood_one_dimensional():
    inst = make_instance(["1/2"], [4])
    assert enumerate_neighborhood(Tube(inst, 1)) == [(0,), (1,), (2,), (3,), (4,)]


def brute_neighborhood(tube):
    box = itertools.product(*(range(n + 1) for n in tube.instance.demands))
    return sorted(s for s in box if in_tube(tube, s))


def test_neighborhood_example(inst23):
    tube = Tube(inst23, 1)
    got = enumerate_neighborhood(tube)
    assert got == brute_neighborhood(tube)
    assert inst23.zero() in got and inst23.demands in got


@settings(max_examples=120, deadline=None)
@given(instances(max_k=3, max_delta=8, max_demand=6), st.sampled_from([1, Fraction(3, 2), 2, 5]))
def test_neighborhood_matches_brute_filter(inst, radius):
    tube = Tube(inst, radius)
    got = enumerate_neighborhood(tube)
    assert got == brute_neighborhood(tube)
    assert len(set(got)) == len(got)
    fast = membership_test(inst, Fraction(radius))
    assert all(fast(s) for s in got)


@pytest.mark.parametrize(
    "p, q, expected",
    [((1, 1), (1, 0), True), ((1, 0), (0, 1), False), ((2, 3), (2, 3), True)],
)
def test_dominates(p, q, expected):
    assert dominates(p, q) is expected


def test_sum_from(inst23):
    cfg = enumerate_configurations(inst23).all
    by_counts = {c.counts: c for c in cfg}
    assert sum_from((0, 0), [by_counts[(1, 1)], by_counts[(1, 1)]]) == (2, 2)
    assert sum_from((1, 0), []) == (1, 0)
    assert sum_from((0, 1), [(2, 0)]) == (2, 1)


def test_crossing_examples():
    inst = make_instance(["1/2", "1/3"], [2, 2])
    assert crossing_point(inst, (0, 0), [(1, 1), (1, 1)]) == 1
    assert crossing_point(inst, (0, 0), []) is None
    one = make_instance(["1/2"], [4])
    assert crossing_point(one, (0,), [(2,)]) == Fraction(1, 2)


@settings(max_examples=60, deadline=None)
@given(instances(max_k=3, max_demand=6), st.data())
def test_crossing_is_largest_dominated_parameter(inst, data):
    cs = enumerate_configurations(inst).all
    picks = data.draw(st.lists(st.sampled_from(cs), max_size=4))
    t = crossing_point(inst, inst.zero(), picks)
    end = sum_from(inst.zero(), picks)
    if t is None:
        assert any(m == 0 for m in end)
        return
    assert 0 < t <= 1
    assert all(m >= t * n for m, n in zip(end, inst.demands))
    if t < 1:
        bigger = t + Fraction(1, 10**6)
        assert any(m < bigger * n for m, n in zip(end, inst.demands))


@settings(max_examples=60, deadline=None)
@given(instances(max_k=3))
def test_single_step_length_at_most_one(inst):
    for c in enumerate_configurations(inst).all:
        assert sum(x * s for x, s in zip(c.counts, inst.sizes)) <= 1
