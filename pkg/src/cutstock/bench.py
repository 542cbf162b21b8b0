"""Scaling benchmark: wall time and state counts per (k, Delta, demand) cell."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from cutstock.configs import enumerate_configurations
from cutstock.errors import CeilingExceeded
from cutstock.generate import generate
from cutstock.geometry import Tube, enumerate_neighborhood
from cutstock.model import Instance, delta, validate_solution
from cutstock.solvers import EXACT_SOLVERS, SolverOptions, run_solver

DEFAULT_SOLVERS = ("tube", "lattice", "ffd")


@dataclass(frozen=True)
class Cell:
    k: int
    max_delta: int
    max_demand: int


@dataclass
class BenchRecord:
    """One solver run on one instance."""

    k: int
    delta: int
    n: int
    solver: str
    parameters: dict
    bins: int
    time_ms: float
    neighborhood: int
    configurations: int
    maximal: int
    expanded: int | None = None


@dataclass
class CellRow:
    k: int
    max_delta: int
    max_demand: int
    solver: str
    status: str
    instances: int = 0
    median_n: float | None = None
    median_time_ms: float | None = None
    total_bins: int | None = None
    median_neighborhood: float | None = None
    neighborhood_ratio: float | None = None
    median_configurations: float | None = None
    max_maximal: int | None = None
    maximal_within_bound: bool | None = None
    median_expanded: float | None = None
    note: str = ""


@dataclass
class BenchResult:
    rows: list[CellRow]
    records: list[BenchRecord] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = list(CellRow.__dataclass_fields__)
        writer = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _fmt(v) for k, v in asdict(row).items()})
        return buf.getvalue()

    def to_markdown(self) -> str:
        head = ["k", "Δ", "demand≤", "solver", "status", "inst", "med n", "med ms",
                "bins", "med N1", "N1/(nΔ^k)", "med configs", "max maximal",
                "maximal≤Δ^k", "med expanded", "note"]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for r in self.rows:
            cells = [r.k, r.max_delta, r.max_demand, r.solver, r.status, r.instances,
                     r.median_n, r.median_time_ms, r.total_bins, r.median_neighborhood,
                     r.neighborhood_ratio, r.median_configurations, r.max_maximal,
                     r.maximal_within_bound, r.median_expanded, r.note]
            lines.append("| " + " | ".join(_fmt(c).replace("|", "/") for c in cells) + " |")
        return "\n".join(lines) + "\n"

    @property
    def skipped(self) -> list[CellRow]:
        return [r for r in self.rows if r.status != "ok"]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def _instance_metrics(instance: Instance) -> tuple[int, int, int]:
    cs = enumerate_configurations(instance)
    nbhd = len(enumerate_neighborhood(Tube(instance, 1)))
    return nbhd, len(cs.all), len(cs.maximal)


def bench_cell(
    cell: Cell,
    count: int,
    seed: int,
    solvers: Sequence[str] = DEFAULT_SOLVERS,
    options: SolverOptions = SolverOptions(),
) -> tuple[list[CellRow], list[BenchRecord]]:
    base = dict(k=cell.k, max_delta=cell.max_delta, max_demand=cell.max_demand)
    try:
        instances = generate(cell.k, cell.max_delta, cell.max_demand, count, seed, pin_delta=True)
        metrics = [_instance_metrics(inst) for inst in instances]
    except (ValueError, CeilingExceeded) as exc:
        return [CellRow(**base, solver=s, status="skipped", note=str(exc)) for s in solvers], []

    rows, records = [], []
    for solver in solvers:
        runs: list[BenchRecord] = []
        note = ""
        for inst, (nbhd, n_cfg, n_max) in zip(instances, metrics):
            t0 = time.perf_counter()
            try:
                sol = run_solver(solver, inst, options)
            except CeilingExceeded as exc:
                note = str(exc)
                break
            elapsed = (time.perf_counter() - t0) * 1000
            if not validate_solution(inst, sol):
                raise AssertionError(f"{solver} returned an invalid solution on {inst}")
            runs.append(BenchRecord(
                k=inst.k, delta=delta(inst), n=inst.n, solver=solver,
                parameters=sol.parameters, bins=sol.bins, time_ms=elapsed,
                neighborhood=nbhd, configurations=n_cfg, maximal=n_max,
                expanded=sol.stats.get("expanded_states"),
            ))
        if note:
            rows.append(CellRow(**base, solver=solver, status="skipped", note=note))
            continue
        records.extend(runs)
        expanded = [r.expanded for r in runs if r.expanded is not None]
        rows.append(CellRow(
            **base,
            solver=solver,
            status="ok",
            instances=len(runs),
            median_n=statistics.median(r.n for r in runs),
            median_time_ms=statistics.median(r.time_ms for r in runs),
            total_bins=sum(r.bins for r in runs),
            median_neighborhood=statistics.median(r.neighborhood for r in runs),
            neighborhood_ratio=statistics.median(
                r.neighborhood / (r.n * r.delta ** r.k) for r in runs
            ),
            median_configurations=statistics.median(r.configurations for r in runs),
            max_maximal=max(r.maximal for r in runs),
            maximal_within_bound=all(r.maximal <= r.delta ** r.k for r in runs),
            median_expanded=statistics.median(expanded) if expanded else None,
        ))
    return rows, records


def bench(
    cells: Iterable[Cell],
    count: int = 5,
    seed: int = 0,
    solvers: Sequence[str] = DEFAULT_SOLVERS,
    options: SolverOptions = SolverOptions(),
) -> BenchResult:
    result = BenchResult(rows=[])
    for cell in cells:
        rows, records = bench_cell(cell, count, seed, solvers, options)
        result.rows.extend(rows)
        result.records.extend(records)
    return result


def exact_bins_agree(result: BenchResult) -> bool:
    """Whether every cell reports the same total bins for all exact solvers."""
    by_cell: dict[tuple, set[int]] = {}
    for r in result.rows:
        if r.status == "ok" and r.solver in EXACT_SOLVERS:
            by_cell.setdefault((r.k, r.max_delta, r.max_demand), set()).add(r.total_bins)
    return all(len(v) == 1 for v in by_cell.values())
