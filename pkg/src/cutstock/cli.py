"""Command line interface: ``cutstock {solve,configs,gen,verify,bench}``.

Exit codes: 0 ok, 2 bad input, 3 ceiling guard or unreachable target,
4 a solver returned an invalid solution, 5 cross-check disagreement.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from cutstock.bench import DEFAULT_SOLVERS, Cell, bench
from cutstock.configs import enumerate_configurations
from cutstock.errors import CeilingExceeded, InvalidInstance, UnreachableTarget
from cutstock.fileio import (
    instance_to_dict,
    parse_instance_csv,
    instance_from_dict,
    solution_to_dict,
    write_solution,
)
from cutstock.generate import generate
from cutstock.model import Instance, format_rational, parse_rational, validate_solution
from cutstock.solvers import EXACT_SOLVERS, SOLVER_NAMES, SolverOptions, run_solver
from cutstock.verify import verify

EXIT_OK, EXIT_INPUT, EXIT_CEILING, EXIT_INVALID, EXIT_DISAGREE = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return parse_rational(text)
    except InvalidInstance as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--solver", choices=SOLVER_NAMES, default="tube")
    p.add_argument("--radius", type=_rational, default=None, help="tube radius (default k+2)")
    p.add_argument("--cmax", type=int, default=None, help="group size bound for the literal solver (default k+1)")
    p.add_argument("--configs", choices=("all", "maximal"), default="all", dest="config_source")
    p.add_argument("--fraction", type=_rational, default="1/10", help="sampled heuristic: share of configurations kept")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="instance file format (default: from the file suffix)")
    p.add_argument("--out", default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cutstock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve one instance file")
    p.add_argument("instance")

    p = sub.add_parser("configs", parents=[common], help="list bin configurations")
    p.add_argument("instance")

    p = sub.add_parser("gen", parents=[common], help="generate random instances")
    _gen_args(p, count=10)

    p = sub.add_parser("verify", parents=[common], help="cross-check exact solvers")
    p.add_argument("paths", nargs="*", help="instance files or directories (default: generate)")
    _gen_args(p, count=100, k=2, max_delta=4, max_demand=4)
    p.add_argument("--solvers", default=",".join(EXACT_SOLVERS))
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("bench", parents=[common], help="scaling table of time and state counts")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--deltas", default="3,4,5,6", help="comma-separated Delta values")
    p.add_argument("--max-demand", type=int, default=16)
    p.add_argument("--count", type=int, default=5, help="instances per cell")
    p.add_argument("--solvers", default=",".join(DEFAULT_SOLVERS))
    return parser


def _gen_args(p, count, k=2, max_delta=4, max_demand=4):
    p.add_argument("--k", type=int, default=k)
    p.add_argument("--max-delta", type=int, default=max_delta)
    p.add_argument("--max-demand", type=int, default=max_demand)
    p.add_argument("--count", type=int, default=count)


def _options(args) -> SolverOptions:
    return SolverOptions(
        radius=args.radius,
        c_max=args.cmax,
        config_source=args.config_source,
        fraction=args.fraction,
        seed=args.seed,
    )


def load_instance(path: str | Path, fmt: str | None = None) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    try:
        if fmt == "csv":
            return parse_instance_csv(text, name=path.stem)
        return instance_from_dict(json.loads(text), name=path.stem)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from None
    except InvalidInstance as exc:
        raise UsageError(f"{path}: {exc}") from None


def _instance_paths(paths) -> list[Path]:
    found = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found.extend(sorted(q for q in p.iterdir() if q.suffix.lower() in (".json", ".csv")))
        else:
            found.append(p)
    return found


def cmd_solve(args) -> int:
    instance = load_instance(args.instance, args.format)
    t0 = time.perf_counter()
    solution = run_solver(args.solver, instance, _options(args))
    elapsed = (time.perf_counter() - t0) * 1000
    report = validate_solution(instance, solution)
    if not report:
        print(f"internal error: {args.solver} returned {report}", file=sys.stderr)
        return EXIT_INVALID
    print(f"bins={solution.bins} solver={solution.solver} time={elapsed:.1f}")
    if args.out:
        write_solution(solution, args.out)
    else:
        print(json.dumps(solution_to_dict(solution)))
    return EXIT_OK


def cmd_configs(args) -> int:
    instance = load_instance(args.instance, args.format)
    cs = enumerate_configurations(instance)
    maximal = set(cs.maximal)
    lines = [
        f"counts={','.join(map(str, c.counts))} load={format_rational(c.load)} "
        f"maximal={'true' if c in maximal else 'false'}"
        for c in cs.all
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _format_instance(instance: Instance, fmt: str) -> str:
    if fmt == "csv":
        rows = ["size,demand"] + [
            f"{format_rational(s)},{m}" for s, m in zip(instance.sizes, instance.demands)
        ]
        return "\n".join(rows) + "\n"
    return json.dumps(instance_to_dict(instance)) + "\n"


def _generate(args) -> list[Instance]:
    try:
        return generate(args.k, args.max_delta, args.max_demand, args.count, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_gen(args) -> int:
    instances = _generate(args)
    fmt = args.format or "json"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for inst in instances:
            (out / f"{inst.name}.{fmt}").write_text(_format_instance(inst, fmt))
    else:
        for inst in instances:
            sys.stdout.write(json.dumps(instance_to_dict(inst)) + "\n")
    return EXIT_OK


def _solver_list(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in SOLVER_NAMES]
    if unknown or not names:
        raise UsageError(f"unknown solvers {unknown}; choose from {', '.join(SOLVER_NAMES)}")
    return names


def cmd_verify(args) -> int:
    if args.paths:
        instances = [load_instance(p, args.format) for p in _instance_paths(args.paths)]
    else:
        instances = _generate(args)
    out = Path(args.out) if args.out else Path("counterexamples")
    report = verify(
        instances,
        options=_options(args),
        solvers=_solver_list(args.solvers),
        counterexample_dir=out,
        jobs=args.jobs,
    )
    print(report.render())
    if not report.ok:
        print(f"counterexamples written to {out}/", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        deltas = [int(d) for d in args.deltas.split(",") if d.strip()]
    except ValueError:
        raise UsageError(f"bad --deltas {args.deltas!r}") from None
    cells = [Cell(args.k, d, args.max_demand) for d in deltas]
    result = bench(cells, count=args.count, seed=args.seed,
                   solvers=_solver_list(args.solvers), options=_options(args))
    md = result.to_markdown()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "bench.csv").write_text(result.to_csv())
        (out / "bench.md").write_text(md)
    sys.stdout.write(md)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "configs": cmd_configs,
    "gen": cmd_gen,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InvalidInstance) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CeilingExceeded, UnreachableTarget) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING


if __name__ == "__main__":
    sys.exit(main())
