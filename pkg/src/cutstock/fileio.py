"""Instance and solution file formats.

Instance JSON::

    {"name": "optional", "sizes": ["7/10", "0.3"], "demands": [3, 1]}

Instance CSV: one ``size,demand`` line per size (a header line
``size,demand`` is allowed).  Solution JSON::

    {"bins": 3, "solver": "tube", "parameters": {...},
     "configurations": [{"counts": [1, 0], "multiplicity": 2}, ...]}
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

from cutstock.errors import InvalidInstance
from cutstock.model import Configuration, Instance, Solution, format_rational, make_instance


def instance_from_dict(data: dict[str, Any], name: str | None = None) -> Instance:
    if not isinstance(data, dict):
        raise InvalidInstance("instance JSON must be an object")
    try:
        sizes, demands = data["sizes"], data["demands"]
    except KeyError as exc:
        raise InvalidInstance(f"instance is missing {exc.args[0]!r}") from None
    if not isinstance(sizes, list) or not isinstance(demands, list):
        raise InvalidInstance("sizes and demands must be lists")
    return make_instance(sizes, demands, name=data.get("name", name))


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    data: dict[str, Any] = {}
    if instance.name is not None:
        data["name"] = instance.name
    data["sizes"] = [format_rational(s) for s in instance.sizes]
    data["demands"] = list(instance.demands)
    return data


def parse_instance_csv(text: str, name: str | None = None) -> Instance:
    sizes, demands = [], []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if lineno == 1 and row[0].strip().lower() == "size":
            continue
        if len(row) != 2:
            raise InvalidInstance(f"line {lineno}: expected 'size,demand', got {row!r}")
        sizes.append(row[0].strip())
        try:
            demands.append(int(row[1]))
        except ValueError:
            raise InvalidInstance(f"line {lineno}: demand {row[1]!r} is not an integer") from None
    return make_instance(sizes, demands, name=name)


def read_instance(path: str | Path) -> Instance:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return parse_instance_csv(text, name=path.stem)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"{path}: not valid JSON ({exc})") from None
    return instance_from_dict(data, name=path.stem)


def write_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance)) + "\n")


def solution_to_dict(solution: Solution) -> dict[str, Any]:
    return {
        "bins": solution.bins,
        "solver": solution.solver,
        "parameters": solution.parameters,
        "configurations": [
            {"counts": list(config.counts), "multiplicity": mult}
            for config, mult in solution.configurations
        ],
    }


def solution_from_dict(instance: Instance, data: dict[str, Any]) -> Solution:
    return Solution(
        bins=int(data["bins"]),
        configurations=[
            (Configuration.of(instance, entry["counts"]), int(entry["multiplicity"]))
            for entry in data["configurations"]
        ],
        solver=data.get("solver", "unknown"),
        parameters=dict(data.get("parameters", {})),
    )


def write_solution(solution: Solution, path: str | Path) -> None:
    Path(path).write_text(json.dumps(solution_to_dict(solution), indent=2) + "\n")


def read_solution(instance: Instance, path: str | Path) -> Solution:
    return solution_from_dict(instance, json.loads(Path(path).read_text()))
