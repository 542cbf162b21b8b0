"""Configuration-vector shortest path solvers.

Two equivalent routes to the optimum:

* :func:`solve_literal` mirrors the grouped recursion: from each state it
  precomputes every state reachable by a multiset of at most ``c_max``
  configurations that lands back inside the unit neighborhood, then recurses
  on those landing points with memoization.
* :func:`solve_tube` is the engineered default: a unit-cost breadth-first
  search that adds one configuration per step and stays inside a tube of a
  larger radius around the segment.
"""

from __future__ import annotations

import logging
import math
import sys
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from cutstock.configs import enumerate_configurations
from cutstock.errors import CeilingExceeded, UnreachableTarget
from cutstock.geometry import full_box_radius, membership_test
from cutstock.model import (
    Configuration,
    Instance,
    Solution,
    StateVector,
    format_rational,
    parse_rational,
)

log = logging.getLogger(__name__)

DEFAULT_MULTISET_CEILING = 10**7


@dataclass
class ReachabilityTable:
    origin: StateVector
    reachable: dict[StateVector, tuple[Configuration, ...]] = field(default_factory=dict)

    def __contains__(self, state) -> bool:
        return tuple(state) in self.reachable

    def __len__(self) -> int:
        return len(self.reachable)


def _multiset_count(n_configs: int, c_max: int) -> int:
    return sum(math.comb(n_configs + c - 1, c) for c in range(1, c_max + 1))


@lru_cache(maxsize=32)
def _group_offsets(
    instance: Instance, config_source: str, c_max: int, ceiling: int
) -> tuple[tuple[StateVector, tuple[Configuration, ...]], ...]:
    """Distinct sums of multisets of <= c_max configurations.

    Each sum keeps the first multiset generated for it.  Multisets come out
    by nondecreasing size and, within a size, in lexicographic order of their
    sorted configuration lists, so the kept multiset is a smallest one with
    the lexicographic tie-break.  Sums exceeding the demand vector are
    dropped since no state in the demand box can absorb them.
    """
    configs = enumerate_configurations(instance).source(config_source)
    total = _multiset_count(len(configs), c_max)
    if total > ceiling:
        raise CeilingExceeded(f"multisets of <= {c_max} configurations", total, ceiling)
    demands = instance.demands
    k = instance.k
    best: dict[StateVector, tuple[int, ...]] = {}
    # level: (multiset as nondecreasing config indices, its sum)
    level = [((), (0,) * k)]
    for _ in range(c_max):
        nxt = []
        for group, offset in level:
            start = group[-1] if group else 0
            for j in range(start, len(configs)):
                counts = configs[j].counts
                new = tuple(o + c for o, c in zip(offset, counts))
                if any(x > n for x, n in zip(new, demands)):
                    continue
                grown = group + (j,)
                nxt.append((grown, new))
                if new not in best:
                    best[new] = grown
        level = nxt
    return tuple(
        (offset, tuple(configs[j] for j in group)) for offset, group in best.items()
    )


def build_reachability(
    instance: Instance,
    origin: Sequence[int],
    c_max: int,
    config_source: str = "all",
    ceiling: int = DEFAULT_MULTISET_CEILING,
) -> ReachabilityTable:
    """States reachable from ``origin`` by one group of ``<= c_max`` bins.

    Only landing states inside the unit neighborhood are recorded, each with
    a smallest multiset that reaches it.
    """
    if c_max < 1:
        raise ValueError("c_max must be >= 1")
    origin = tuple(origin)
    inside = membership_test(instance, Fraction(1))
    table = ReachabilityTable(origin)
    for offset, group in _group_offsets(instance, config_source, c_max, ceiling):
        state = tuple(p + o for p, o in zip(origin, offset))
        if inside(state):
            table.reachable[state] = group
    return table


def solve_literal(
    instance: Instance,
    c_max: int | None = None,
    config_source: str = "all",
    ceiling: int = DEFAULT_MULTISET_CEILING,
) -> Solution:
    """Memoized grouped recursion from the origin to the demand vector.

    ``A(p) = |RSET(target)|`` when the target is one group away, otherwise
    ``min_q |RSET(q)| + A(q)`` over the landing points ``q`` reachable
    from ``p``.  The target is fixed, so memoizing on ``p`` alone suffices.
    """
    if c_max is None:
        c_max = instance.k + 1
    target = instance.demands
    tables: dict[StateVector, ReachabilityTable] = {}
    best: dict[StateVector, tuple[float, StateVector | None]] = {}

    def table(p: StateVector) -> ReachabilityTable:
        if p not in tables:
            tables[p] = build_reachability(instance, p, c_max, config_source, ceiling)
        return tables[p]

    def solve(p: StateVector) -> float:
        if p in best:
            return best[p][0]
        reach = table(p).reachable
        if target in reach:
            best[p] = (len(reach[target]), target)
            return best[p][0]
        value, choice = math.inf, None
        for q in sorted(reach):
            sub = len(reach[q]) + solve(q)
            if sub < value:
                value, choice = sub, q
        best[p] = (value, choice)
        return value

    origin = instance.zero()
    if origin == target:
        raise ValueError("instance has no items")
    bins = _run_deep(lambda: solve(origin))
    params = {"c_max": c_max, "configs": config_source}
    if math.isinf(bins):
        raise UnreachableTarget(
            f"demand vector unreachable with groups of <= {c_max} "
            f"{config_source} configurations inside the unit neighborhood"
        )

    sequence, path = [], [origin]
    p = origin
    while p != target:
        q = best[p][1]
        sequence.extend(c.counts for c in tables[p].reachable[q])
        path.append(q)
        p = q
    return Solution.from_sequence(
        instance,
        sequence,
        solver="literal",
        parameters=params,
        path=path,
        stats={"subproblems": len(best)},
    )


def _run_deep(fn):
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))
    try:
        return fn()
    finally:
        sys.setrecursionlimit(limit)


def tube_search(
    instance: Instance,
    configs: Sequence[Configuration],
    radius: Fraction,
) -> tuple[list[StateVector], list[tuple[int, ...]], int]:
    """Breadth-first search from the origin to the demand vector.

    Returns the state path, the configuration sequence and the number of
    expanded states.  Neighbors are tried in the given configuration order
    and the first predecessor found is kept.
    """
    target = instance.demands
    start = instance.zero()
    inside = membership_test(instance, radius)
    moves = [c.counts for c in configs]
    parent: dict[StateVector, tuple[StateVector, int] | None] = {start: None}
    queue = deque([start])
    expanded = 0
    found = start == target
    while queue and not found:
        state = queue.popleft()
        expanded += 1
        for idx, move in enumerate(moves):
            nxt = tuple(a + b for a, b in zip(state, move))
            if nxt in parent:
                continue
            if any(x > n for x, n in zip(nxt, target)):
                continue
            if not inside(nxt):
                continue
            parent[nxt] = (state, idx)
            if nxt == target:
                found = True
                break
            queue.append(nxt)
    if not found:
        raise UnreachableTarget(
            f"demand vector unreachable inside tube of radius {radius}", radius=radius
        )
    path, sequence = [target], []
    node = target
    while parent[node] is not None:
        prev, idx = parent[node]
        sequence.append(moves[idx])
        path.append(prev)
        node = prev
    path.reverse()
    sequence.reverse()
    return path, sequence, expanded


def solve_tube(
    instance: Instance,
    radius: Fraction | str | int | None = None,
    config_source: str = "all",
    escalate: bool = True,
    configs: Sequence[Configuration] | None = None,
    solver_tag: str = "tube",
) -> Solution:
    """Shortest path in bins through the tube of ``radius`` (default ``k+2``).

    With ``escalate`` an unreachable target doubles the radius until the tube
    covers the whole demand box; only then is :class:`UnreachableTarget`
    raised.  ``configs`` overrides the configuration set entirely.
    """
    radius = Fraction(instance.k + 2) if radius is None else parse_rational(radius)
    if radius < 1:
        raise ValueError(f"tube radius must be >= 1, got {radius}")
    if configs is None:
        configs = enumerate_configurations(instance).source(config_source)
    ceiling_radius = full_box_radius(instance)
    requested = radius
    while True:
        try:
            path, sequence, expanded = tube_search(instance, configs, radius)
            break
        except UnreachableTarget:
            if not escalate or radius >= ceiling_radius:
                raise
            log.info("target unreachable at radius %s, doubling", radius)
            radius = min(radius * 2, ceiling_radius)
    params = {"radius": format_rational(radius), "configs": config_source}
    if radius != requested:
        params["requested_radius"] = format_rational(requested)
    return Solution.from_sequence(
        instance,
        sequence,
        solver=solver_tag,
        parameters=params,
        path=path,
        stats={"expanded_states": expanded, "configurations": len(configs)},
    )


def optimal_bins(instance: Instance) -> int:
    """Minimum number of unit bins that pack the instance."""
    return solve_tube(instance).bins
