"""Name-based dispatch over every solver, shared by the CLI, verify and bench."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from cutstock.baseline import ffd, heuristic_sampled_configs, solve_branch_bound, solve_full_lattice
from cutstock.model import Instance, Solution
from cutstock.paper_solver import solve_literal, solve_tube

SOLVER_NAMES = ("tube", "literal", "lattice", "bb", "ffd", "sampled")
EXACT_SOLVERS = ("tube", "literal", "lattice", "bb")


@dataclass(frozen=True)
class SolverOptions:
    radius: Fraction | None = None
    c_max: int | None = None
    config_source: str = "all"
    fraction: Fraction = Fraction(1, 10)
    seed: int = 0


def run_solver(name: str, instance: Instance, options: SolverOptions | None = None) -> Solution:
    opts = options or SolverOptions()
    if name == "tube":
        return solve_tube(instance, radius=opts.radius, config_source=opts.config_source)
    if name == "literal":
        return solve_literal(instance, c_max=opts.c_max, config_source=opts.config_source)
    if name == "lattice":
        return solve_full_lattice(instance)
    if name == "bb":
        return solve_branch_bound(instance)
    if name == "ffd":
        return ffd(instance)
    if name == "sampled":
        return heuristic_sampled_configs(instance, opts.fraction, opts.seed)
    raise ValueError(f"unknown solver {name!r}; choose from {', '.join(SOLVER_NAMES)}")
