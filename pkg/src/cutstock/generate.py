"""Seeded random instance generation."""

from __future__ import annotations

import random
from fractions import Fraction

from cutstock.model import Instance, make_instance


def size_pool(max_delta: int) -> list[Fraction]:
    """Distinct reduced fractions ``p/q`` with ``p < q <= max_delta``, sorted."""
    return sorted({Fraction(p, q) for q in range(2, max_delta + 1) for p in range(1, q)})


def random_instance(
    rng: random.Random,
    k: int,
    max_delta: int,
    max_demand: int,
    name: str | None = None,
    pin_delta: bool = False,
) -> Instance:
    """One instance; with ``pin_delta`` the size ``1/max_delta`` is always present."""
    pool = size_pool(max_delta)
    if k > len(pool):
        raise ValueError(
            f"only {len(pool)} distinct sizes have denominator <= {max_delta}, need {k}"
        )
    if pin_delta:
        smallest = Fraction(1, max_delta)
        sizes = [smallest] + rng.sample([s for s in pool if s != smallest], k - 1)
    else:
        sizes = rng.sample(pool, k)
    demands = [rng.randint(1, max_demand) for _ in range(k)]
    return make_instance(sizes, demands, name=name)


def generate(
    k: int, max_delta: int, max_demand: int, count: int, seed: int, pin_delta: bool = False
) -> list[Instance]:
    """``count`` instances, fully determined by the arguments.

    Uses ``random.Random(seed)`` (MT19937) so the stream is portable.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if max_delta < 2:
        raise ValueError("max_delta must be >= 2")
    if max_demand < 1:
        raise ValueError("max_demand must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = random.Random(seed)
    width = len(str(max(count - 1, 0)))
    return [
        random_instance(
            rng, k, max_delta, max_demand,
            name=f"gen-k{k}-d{max_delta}-s{seed}-{i:0{width}d}",
            pin_delta=pin_delta,
        )
        for i in range(count)
    ]
