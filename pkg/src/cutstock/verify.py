"""Cross-checking exact solvers against each other and dumping counterexamples."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from cutstock.errors import CeilingExceeded, UnreachableTarget
from cutstock.fileio import instance_to_dict
from cutstock.geometry import l1_distance_to_segment
from cutstock.model import Instance, Solution, StateVector, format_rational, validate_solution
from cutstock.solvers import EXACT_SOLVERS, SolverOptions, run_solver

log = logging.getLogger(__name__)

# Gates so verify stays fast; the solvers' own ceilings still apply.
LITERAL_MAX_BOX = 2_000
BB_MAX_ITEMS = 14


def greedy_prefix_order(
    instance: Instance, solution: Solution
) -> tuple[list[StateVector], Fraction]:
    """Order a solution's bins so prefix sums hug the segment.

    At each step the remaining configuration whose addition leaves the prefix
    closest (l1) to the segment is taken, lexicographically first on ties.
    Returns the prefix states (origin included) and the largest distance.
    """
    remaining = {config.counts: mult for config, mult in solution.configurations}
    state = instance.zero()
    states = [state]
    worst = Fraction(0)
    while remaining:
        best = None
        for counts in sorted(remaining):
            nxt = tuple(a + b for a, b in zip(state, counts))
            dist = l1_distance_to_segment(instance, nxt)
            if best is None or dist < best[0]:
                best = (dist, counts, nxt)
        dist, counts, state = best
        remaining[counts] -= 1
        if not remaining[counts]:
            del remaining[counts]
        states.append(state)
        worst = max(worst, dist)
    return states, worst


@dataclass
class InstanceCheck:
    index: int
    name: str | None
    k: int
    n: int
    results: dict[str, int | str] = field(default_factory=dict)
    confinement: Fraction | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def check_instance(
    index: int,
    instance: Instance,
    options: SolverOptions = SolverOptions(),
    solvers: Sequence[str] = EXACT_SOLVERS,
    confinement_radius: Fraction | None = None,
) -> InstanceCheck:
    """Run every applicable exact solver and compare bin counts.

    A solver that is gated out or hits its ceiling is ``"skipped"``.  An
    unreachable target or an invalid solution is a problem, as is any
    disagreement or a greedy prefix order leaving the confinement radius
    (``k + 2`` by default).
    """
    check = InstanceCheck(index, instance.name, instance.k, instance.n)
    solutions: dict[str, Solution] = {}
    for name in solvers:
        if name == "literal" and instance.box_size > LITERAL_MAX_BOX:
            check.results[name] = "skipped"
            continue
        if name == "bb" and instance.n > BB_MAX_ITEMS:
            check.results[name] = "skipped"
            continue
        try:
            solution = run_solver(name, instance, options)
        except CeilingExceeded:
            check.results[name] = "skipped"
            continue
        except UnreachableTarget as exc:
            check.results[name] = "unreachable"
            check.problems.append(f"{name}: {exc}")
            continue
        report = validate_solution(instance, solution)
        if not report:
            check.results[name] = "invalid"
            check.problems.append(f"{name}: {report}")
            continue
        check.results[name] = solution.bins
        solutions[name] = solution

    values = {v for v in check.results.values() if isinstance(v, int)}
    if len(values) > 1:
        check.problems.append(
            "disagreement: "
            + ", ".join(f"{k}={v}" for k, v in check.results.items() if isinstance(v, int))
        )
    if "tube" in solutions:
        radius = confinement_radius if confinement_radius is not None else Fraction(instance.k + 2)
        _, worst = greedy_prefix_order(instance, solutions["tube"])
        check.confinement = worst
        if worst > radius:
            check.problems.append(
                f"greedy prefix order leaves radius {format_rational(radius)} "
                f"(max distance {format_rational(worst)})"
            )
    return check


def _check_star(args):
    return check_instance(*args)


@dataclass
class VerifyReport:
    checks: list[InstanceCheck]
    solvers: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def agreement_matrix(self) -> dict[tuple[str, str], tuple[int, int]]:
        """(agreeing, compared) counts for each solver pair."""
        matrix = {}
        for a in self.solvers:
            for b in self.solvers:
                agree = compared = 0
                for c in self.checks:
                    x, y = c.results.get(a), c.results.get(b)
                    if x == "skipped" or y == "skipped" or x is None or y is None:
                        continue
                    compared += 1
                    agree += x == y
                matrix[a, b] = (agree, compared)
        return matrix

    def render(self) -> str:
        lines = []
        for c in self.checks:
            status = "ok" if c.ok else "FAIL"
            res = " ".join(f"{k}={v}" for k, v in c.results.items())
            conf = "" if c.confinement is None else f" confinement={format_rational(c.confinement)}"
            lines.append(f"[{c.index}] {c.name or '-'} {status} {res}{conf}")
            lines.extend(f"    {p}" for p in c.problems)
        lines.append("")
        lines.append("agreement (agree/compared):")
        width = max(len(s) for s in self.solvers) + 2
        lines.append(" " * width + "".join(s.rjust(12) for s in self.solvers))
        matrix = self.agreement_matrix()
        for a in self.solvers:
            cells = "".join(f"{matrix[a, b][0]}/{matrix[a, b][1]}".rjust(12) for b in self.solvers)
            lines.append(a.ljust(width) + cells)
        failed = sum(not c.ok for c in self.checks)
        lines.append(f"instances={len(self.checks)} failed={failed}")
        return "\n".join(lines)


def dump_counterexample(instance: Instance, check: InstanceCheck, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    name = instance.name or f"instance-{check.index}"
    data = instance_to_dict(instance)
    data["name"] = name
    data["problems"] = check.problems
    data["results"] = check.results
    path = directory / f"{name}.json"
    path.write_text(json.dumps(data, indent=2) + "\n")
    return path


def verify(
    instances: Iterable[Instance],
    options: SolverOptions = SolverOptions(),
    solvers: Sequence[str] = EXACT_SOLVERS,
    counterexample_dir: str | Path | None = None,
    jobs: int = 1,
) -> VerifyReport:
    instances = list(instances)
    tasks = [(i, inst, options, tuple(solvers)) for i, inst in enumerate(instances)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            checks = list(pool.map(_check_star, tasks))
    else:
        checks = [_check_star(t) for t in tasks]
    for check in checks:
        if not check.ok:
            log.warning("cross-check failed on %s: %s", check.name, "; ".join(check.problems))
            if counterexample_dir is not None:
                dump_counterexample(instances[check.index], check, counterexample_dir)
    return VerifyReport(checks, tuple(solvers))
