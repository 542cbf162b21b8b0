"""Exact l1 geometry around the segment from the origin to the demand point.

A state ``m`` (item counts) sits at the coordinate point ``(m_1*s_1, ...,
m_k*s_k)``; the segment runs from the origin to ``(n_1*s_1, ..., n_k*s_k)``.
Distances are computed in integer units of ``1/D`` so no fractions are built
on the hot path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from cutstock.configs import DEFAULT_CONFIG_CEILING
from cutstock.errors import CeilingExceeded
from cutstock.model import Configuration, Instance, StateVector, delta, parse_rational


@dataclass(frozen=True)
class Tube:
    instance: Instance
    radius: Fraction = Fraction(1)

    def __post_init__(self):
        radius = parse_rational(self.radius)
        if radius < 1:
            raise ValueError(f"tube radius must be >= 1, got {radius}")
        object.__setattr__(self, "radius", radius)

    def __contains__(self, state: StateVector) -> bool:
        return in_tube(self, state)


def full_box_radius(instance: Instance) -> Fraction:
    """A radius at which the tube covers every state of the demand box."""
    return instance.total_size + 1


def _breakpoints(state: Sequence[int], demands: Sequence[int]) -> set[tuple[int, int]]:
    # (a, b) encodes t = a/b
    points = {(0, 1), (1, 1)}
    for m, n in zip(state, demands):
        points.add((min(max(m, 0), n), n))
    return points


def _scaled_objective(instance: Instance, state: Sequence[int], a: int, b: int) -> int:
    # b * D * (l1 distance from state to the segment point t = a/b)
    return sum(
        abs(b * m * w - a * n * w)
        for m, n, w in zip(state, instance.demands, instance.weights)
    )


def l1_distance_to_segment(instance: Instance, state: Sequence[int]) -> Fraction:
    """Exact ``min_{t in [0,1]} sum_i |m_i*s_i - t*n_i*s_i|``.

    The objective is piecewise linear in ``t`` with kinks only at
    ``t = m_i/n_i``, so evaluating it at those points and at the ends suffices.
    """
    if len(state) != instance.k:
        raise ValueError(f"state has {len(state)} entries, expected {instance.k}")
    return min(
        Fraction(_scaled_objective(instance, state, a, b), b * instance.scale)
        for a, b in _breakpoints(state, instance.demands)
    )


def membership_test(instance: Instance, radius: Fraction) -> Callable[[Sequence[int]], bool]:
    """A fast exact predicate equivalent to ``in_tube(Tube(instance, radius), .)``."""
    radius = parse_rational(radius)
    p, q = radius.numerator, radius.denominator
    demands, weights, scale = instance.demands, instance.weights, instance.scale
    spans = [n * w for n, w in zip(demands, weights)]

    def inside(state: Sequence[int]) -> bool:
        for m, n in zip(state, demands):
            if m < 0 or m > n:
                return False
        xs = [m * w for m, w in zip(state, weights)]
        cands = [(0, 1), (1, 1)]
        cands.extend(zip(state, demands))
        for a, b in cands:
            total = 0
            for x, span in zip(xs, spans):
                total += abs(b * x - a * span)
            if q * total <= p * b * scale:
                return True
        return False

    return inside


def in_tube(tube: Tube, state: Sequence[int]) -> bool:
    inst = tube.instance
    if len(state) != inst.k:
        return False
    if any(m < 0 or m > n for m, n in zip(state, inst.demands)):
        return False
    return l1_distance_to_segment(inst, state) <= tube.radius


def enumerate_neighborhood(
    tube: Tube, ceiling: int = DEFAULT_CONFIG_CEILING
) -> list[StateVector]:
    """All demand-box states within ``tube.radius`` of the segment, sorted.

    Walks ``t = j/N`` (``N = max n_i``) along the segment and scans a count
    box around the rounded segment point.  A coordinate deviation of at most
    ``r`` is at most ``r*Delta`` items, and the grid/rounding slack adds at
    most one more, so the scanned boxes cover the whole tube.
    """
    inst = tube.instance
    half = math.ceil(tube.radius * delta(inst)) + 1
    steps = max(inst.demands)
    inside = membership_test(inst, tube.radius)
    candidates: set[StateVector] = set()
    for j in range(steps + 1):
        center = [round(Fraction(j * n, steps)) for n in inst.demands]
        ranges = [
            range(max(0, c - half), min(n, c + half) + 1)
            for c, n in zip(center, inst.demands)
        ]
        candidates.update(itertools.product(*ranges))
        if len(candidates) > ceiling:
            raise CeilingExceeded("neighborhood candidates", len(candidates), ceiling)
    return sorted(s for s in candidates if inside(s))


def dominates(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff ``q_i <= p_i`` for every ``i``."""
    if len(p) != len(q):
        raise ValueError("dimension mismatch")
    return all(b <= a for a, b in zip(p, q))


def _counts(config) -> Sequence[int]:
    return config.counts if isinstance(config, Configuration) else config


def sum_from(p: Sequence[int], configs: Iterable[Configuration | Sequence[int]]) -> StateVector:
    total = list(p)
    for config in configs:
        counts = _counts(config)
        if len(counts) != len(total):
            raise ValueError("dimension mismatch")
        for i, c in enumerate(counts):
            total[i] += c
    return tuple(total)


def _coverage(instance: Instance, state: Sequence[int]) -> Fraction:
    # largest t in [0, 1] with state_i >= t * n_i for all i
    return min([Fraction(1)] + [Fraction(max(m, 0), n) for m, n in zip(state, instance.demands)])


def crossing_point(
    instance: Instance,
    start: Sequence[int],
    configs: Iterable[Configuration | Sequence[int]],
) -> Fraction | None:
    """Largest segment parameter ``t`` dominated by ``start + sum(configs)``.

    Returns ``None`` when the configurations add no coverage beyond what
    ``start`` already dominates.
    """
    end = sum_from(start, configs)
    reached = _coverage(instance, end)
    if reached <= _coverage(instance, start):
        return None
    return reached
