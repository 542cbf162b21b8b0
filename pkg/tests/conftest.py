import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cutstock import make_instance
from cutstock.generate import size_pool


NAMED = {
    "A": (["1/2"], [4], 2),
    "B": (["1/2", "1/3"], [2, 2], 2),
    "C": (["7/10", "3/10"], [3, 1], 3),
}


@pytest.fixture(params=sorted(NAMED))
def named(request):
    sizes, demands, bins = NAMED[request.param]
    return make_instance(sizes, demands, name=request.param), bins


@st.composite
def instances(draw, max_k=3, max_delta=6, max_demand=5):
    pool = size_pool(max_delta) + [Fraction(1)]
    k = draw(st.integers(1, max_k))
    sizes = draw(st.lists(st.sampled_from(pool), min_size=k, max_size=k, unique=True))
    demands = draw(st.lists(st.integers(1, max_demand), min_size=k, max_size=k))
    return make_instance(sizes, demands)


def brute_configurations(instance):
    """Filter the whole box [0..floor(1/s_i)]^k with Fraction arithmetic."""
    ranges = [range(int(1 / s) + 1) for s in instance.sizes]
    out = []
    for counts in itertools.product(*ranges):
        if any(counts) and sum(c * s for c, s in zip(counts, instance.sizes)) <= 1:
            out.append(counts)
    return out


def grid_distance(instance, state):
    """Distance to the segment by scanning t on the grid j/L, L = lcm(n_i).

    Every kink m_i/n_i of the objective lies on that grid, so the grid
    minimum is the exact minimum.
    """
    import math

    grid = math.lcm(*instance.demands)
    best = None
    for j in range(grid + 1):
        t = Fraction(j, grid)
        val = sum(
            abs(m * s - t * n * s)
            for m, n, s in zip(state, instance.demands, instance.sizes)
        )
        best = val if best is None else min(best, val)
    return best


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, passed, detail)``."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
