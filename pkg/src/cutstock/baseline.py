"""Independent exact oracles, bounds and heuristics.

The lattice DP shares only the configuration ground set with the tube
solver.  Branch-and-bound works item by item and never enumerates
configurations, so an enumeration bug cannot agree with itself across both.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from cutstock.configs import enumerate_configurations
from cutstock.errors import CeilingExceeded
from cutstock.model import Configuration, Instance, Solution, format_rational, parse_rational
from cutstock.paper_solver import solve_tube

DEFAULT_LATTICE_CEILING = 10**7
DEFAULT_BB_CEILING = 20


@dataclass(frozen=True)
class BoundsReport:
    lower: int
    upper: int
    optimal: int | None = None

    @property
    def consistent(self) -> bool:
        if self.optimal is None:
            return self.lower <= self.upper
        return self.lower <= self.optimal <= self.upper


def lower_bound_size(instance: Instance) -> int:
    """``ceil(sum n_i * s_i)``."""
    return math.ceil(instance.total_size)


def bounds(instance: Instance, optimal: int | None = None) -> BoundsReport:
    return BoundsReport(lower_bound_size(instance), ffd(instance).bins, optimal)


def _items_decreasing(instance: Instance) -> list[int]:
    # sizes are stored in decreasing order, so this is nonincreasing by weight
    return [i for i, m in enumerate(instance.demands) for _ in range(m)]


def ffd(instance: Instance) -> Solution:
    """First-fit decreasing."""
    weights, cap = instance.weights, instance.scale
    free: list[int] = []
    contents: list[list[int]] = []
    for i in _items_decreasing(instance):
        w = weights[i]
        for b, room in enumerate(free):
            if room >= w:
                free[b] -= w
                contents[b][i] += 1
                break
        else:
            free.append(cap - w)
            bin_counts = [0] * instance.k
            bin_counts[i] = 1
            contents.append(bin_counts)
    return Solution.from_sequence(instance, contents, solver="ffd")


def solve_full_lattice(
    instance: Instance, ceiling: int = DEFAULT_LATTICE_CEILING
) -> Solution:
    """Exact DP over the whole demand box.

    ``bins(m) = 1 + min over configurations v <= m of bins(m - v)`` with
    ``bins(0) = 0``; ties go to the lexicographically first configuration.
    """
    if instance.box_size > ceiling:
        raise CeilingExceeded("demand box states", instance.box_size, ceiling)
    demands = instance.demands
    k = instance.k
    strides = [1] * k
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * (demands[i + 1] + 1)
    moves = [
        (c.counts, sum(x * s for x, s in zip(c.counts, strides)))
        for c in enumerate_configurations(instance).all
    ]
    size = instance.box_size
    bins = [0] * size
    choice = [-1] * size
    # product() walks the box in lexicographic order, which is also index order,
    # so every m - v is final before m is reached
    for idx, m in enumerate(itertools.product(*(range(n + 1) for n in demands))):
        if idx == 0:
            continue
        best, arg = math.inf, -1
        for j, (counts, off) in enumerate(moves):
            for a, b in zip(counts, m):
                if a > b:
                    break
            else:
                cand = bins[idx - off]
                if cand < best:
                    best, arg = cand, j
        bins[idx] = best + 1
        choice[idx] = arg

    sequence = []
    idx = size - 1
    while idx:
        counts, off = moves[choice[idx]]
        sequence.append(counts)
        idx -= off
    return Solution.from_sequence(instance, sequence, solver="lattice")


def solve_branch_bound(instance: Instance, ceiling: int = DEFAULT_BB_CEILING) -> Solution:
    """Depth-first branch-and-bound over bins, item by item.

    Items are placed largest first into an existing bin or a fresh one.
    Nodes whose bin count plus the volume bound on the remaining items
    cannot beat the incumbent are pruned.
    """
    if instance.n > ceiling:
        raise CeilingExceeded("items for branch-and-bound", instance.n, ceiling)
    weights, cap, k = instance.weights, instance.scale, instance.k
    items = _items_decreasing(instance)
    n = len(items)
    suffix = [0] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + weights[items[pos]]

    incumbent = ffd(instance)
    best = [incumbent.bins, incumbent.expanded()]
    floor = lower_bound_size(instance)
    free: list[int] = []
    contents: list[list[int]] = []

    def dfs(pos: int, first_bin: int) -> None:
        if best[0] == floor:
            return
        if pos == n:
            best[0] = len(free)
            best[1] = [list(c) for c in contents]
            return
        spare = max(0, suffix[pos] - sum(free))
        if len(free) + -(-spare // cap) >= best[0]:
            return
        i = items[pos]
        w = weights[i]
        # identical items go to nondecreasing bin indices
        same = pos > 0 and items[pos - 1] == i
        tried = set()
        for b in range(first_bin if same else 0, len(free)):
            room = free[b]
            if room < w or (room, tuple(contents[b])) in tried:
                continue
            tried.add((room, tuple(contents[b])))
            free[b] -= w
            contents[b][i] += 1
            dfs(pos + 1, b)
            free[b] += w
            contents[b][i] -= 1
        if len(free) + 1 < best[0]:
            free.append(cap - w)
            fresh = [0] * k
            fresh[i] = 1
            contents.append(fresh)
            dfs(pos + 1, len(free) - 1)
            free.pop()
            contents.pop()

    dfs(0, 0)
    sequence = [c.counts if isinstance(c, Configuration) else c for c in best[1]]
    return Solution.from_sequence(instance, sequence, solver="bb")


def sample_configurations(
    instance: Instance, fraction: Fraction | str, seed: int
) -> list[Configuration]:
    """Seeded subset of the feasible configurations, singletons always kept.

    Draws ``ceil(fraction * |all|)`` configurations with
    ``random.Random(seed).sample`` (Mersenne Twister MT19937), then adds the
    ``k`` single-item configurations.  Output is lexicographically sorted.
    """
    fraction = parse_rational(fraction)
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {format_rational(fraction)}")
    pool = enumerate_configurations(instance).all
    take = math.ceil(fraction * len(pool))
    picked = {pool[j] for j in random.Random(seed).sample(range(len(pool)), take)}
    for i in range(instance.k):
        unit = [0] * instance.k
        unit[i] = 1
        picked.add(Configuration.of(instance, unit))
    return sorted(picked)


def heuristic_sampled_configs(
    instance: Instance, fraction: Fraction | str = Fraction(1, 10), seed: int = 0
) -> Solution:
    """Tube search restricted to a sampled configuration set.

    Feasible but not necessarily optimal.
    """
    configs = sample_configurations(instance, fraction, seed)
    solution = solve_tube(instance, configs=configs, solver_tag="sampled")
    solution.parameters.update(
        fraction=format_rational(parse_rational(fraction)), seed=seed
    )
    solution.parameters.pop("configs", None)
    return solution
