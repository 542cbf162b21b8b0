"""Exact data model: instances, configurations, solutions.

All sizes are :class:`fractions.Fraction`.  Internally every size ``s_i`` is
also carried as an integer weight ``w_i = s_i * D`` where ``D`` is the lcm of
the size denominators, so capacity checks reduce to ``sum(c_i * w_i) <= D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from cutstock.errors import InvalidInstance

StateVector = tuple[int, ...]
"""Counts of items packed so far, one entry per size."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or a decimal string such as ``"0.3"`` exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise InvalidInstance(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise InvalidInstance(f"floats are not exact, pass a string: {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInstance(f"not a rational: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Canonical text form, always ``p/q`` in lowest terms."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Instance:
    sizes: tuple[Fraction, ...]
    demands: tuple[int, ...]
    scale: int
    weights: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.demands)

    @property
    def total_size(self) -> Fraction:
        return sum((s * m for s, m in zip(self.sizes, self.demands)), Fraction(0))

    @property
    def box_size(self) -> int:
        """Number of lattice states ``0 <= m <= demands``."""
        return math.prod(m + 1 for m in self.demands)

    def load(self, counts: Sequence[int]) -> Fraction:
        return Fraction(self.weighted(counts), self.scale)

    def weighted(self, counts: Sequence[int]) -> int:
        return sum(c * w for c, w in zip(counts, self.weights))

    def zero(self) -> StateVector:
        return (0,) * self.k

    def __str__(self) -> str:
        parts = ", ".join(
            f"{format_rational(s)}x{m}" for s, m in zip(self.sizes, self.demands)
        )
        return f"Instance({parts})"


def make_instance(
    sizes: Iterable[str | int | Fraction],
    demands: Iterable[int],
    name: str | None = None,
) -> Instance:
    """Build a normalized instance.

    Duplicate sizes are merged by summing their demands and the result is
    sorted by strictly decreasing size, so input order never matters.
    """
    sizes = [parse_rational(s) for s in sizes]
    demands = list(demands)
    if not sizes:
        raise InvalidInstance("instance has no sizes")
    if len(sizes) != len(demands):
        raise InvalidInstance(
            f"{len(sizes)} sizes but {len(demands)} demands"
        )
    merged: dict[Fraction, int] = {}
    for s, m in zip(sizes, demands):
        if not 0 < s <= 1:
            raise InvalidInstance(
                f"size {format_rational(s)} is outside (0, 1]"
            )
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise InvalidInstance(f"demand {m!r} for size {format_rational(s)} must be a positive integer")
        merged[s] = merged.get(s, 0) + m
    order = sorted(merged, reverse=True)
    scale = math.lcm(*(s.denominator for s in order))
    return Instance(
        sizes=tuple(order),
        demands=tuple(merged[s] for s in order),
        scale=scale,
        weights=tuple(int(s * scale) for s in order),
        name=name,
    )


def delta(instance: Instance) -> int:
    """``max_i ceil(1 / s_i)``, the count granularity of the smallest size."""
    return max(math.ceil(1 / s) for s in instance.sizes)


def distribution_vector(instance: Instance) -> tuple[Fraction, ...]:
    return tuple(m * s for s, m in zip(instance.sizes, instance.demands))


@dataclass(frozen=True, order=True)
class Configuration:
    """Content of one unit bin as a count per size."""

    counts: tuple[int, ...]
    load: Fraction = field(compare=False)

    @classmethod
    def of(cls, instance: Instance, counts: Sequence[int]) -> "Configuration":
        counts = tuple(int(c) for c in counts)
        if len(counts) != instance.k:
            raise ValueError(f"expected {instance.k} counts, got {len(counts)}")
        return cls(counts, instance.load(counts))

    @property
    def free_space(self) -> Fraction:
        return 1 - self.load

    def __str__(self) -> str:
        return f"({','.join(map(str, self.counts))})"


@dataclass
class Solution:
    bins: int
    configurations: list[tuple[Configuration, int]]
    solver: str
    parameters: dict[str, Any] = field(default_factory=dict)
    # lattice states from the origin to the demand vector; the grouped
    # solver records group landing points only
    path: list[StateVector] | None = field(default=None, compare=False, repr=False)
    stats: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_sequence(
        cls,
        instance: Instance,
        sequence: Iterable[Sequence[int]],
        solver: str,
        parameters: dict[str, Any] | None = None,
        path: list[StateVector] | None = None,
        stats: dict[str, int] | None = None,
    ) -> "Solution":
        """Collapse a sequence of bins into configurations with multiplicities."""
        tally: dict[tuple[int, ...], int] = {}
        for counts in sequence:
            key = tuple(counts)
            tally[key] = tally.get(key, 0) + 1
        configurations = [
            (Configuration.of(instance, counts), mult)
            for counts, mult in sorted(tally.items())
        ]
        return cls(
            bins=sum(tally.values()),
            configurations=configurations,
            solver=solver,
            parameters=dict(parameters or {}),
            path=path,
            stats=dict(stats or {}),
        )

    def expanded(self) -> list[Configuration]:
        """One entry per bin, in configuration order."""
        return [c for c, mult in self.configurations for _ in range(mult)]


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        return "invalid: " + "; ".join(self.violations)


def validate_solution(instance: Instance, solution: Solution) -> ValidationReport:
    """Check capacity, exact demand coverage and the bin count.

    Every violated clause is listed; nothing is raised.
    """
    report = ValidationReport()
    packed = [0] * instance.k
    total = 0
    for config, mult in solution.configurations:
        counts = tuple(config.counts)
        if len(counts) != instance.k:
            report.violations.append(
                f"configuration {counts} has {len(counts)} entries, expected {instance.k}"
            )
            continue
        if any(c < 0 for c in counts) or not any(counts):
            report.violations.append(f"configuration {counts} is empty or negative")
        if instance.weighted(counts) > instance.scale:
            report.violations.append(
                f"configuration {counts} overfills its bin "
                f"(load {format_rational(instance.load(counts))})"
            )
        if mult < 1:
            report.violations.append(
                f"configuration {counts} has nonpositive multiplicity {mult}"
            )
        total += mult
        for i, c in enumerate(counts):
            packed[i] += mult * c
    for i, (got, want) in enumerate(zip(packed, instance.demands)):
        if got < want:
            report.violations.append(
                f"demand shortfall for size {format_rational(instance.sizes[i])} "
                f"({got} of {want} packed)"
            )
        elif got > want:
            report.violations.append(
                f"demand excess for size {format_rational(instance.sizes[i])} "
                f"({got} packed, {want} demanded)"
            )
    if solution.bins != total:
        report.violations.append(
            f"bins={solution.bins} but multiplicities sum to {total}"
        )
    return report
