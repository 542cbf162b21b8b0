"""Enumeration of bin configurations and the maximal subset."""

from __future__ import annotations

from dataclasses import dataclass

from cutstock.errors import CeilingExceeded
from cutstock.model import Configuration, Instance

DEFAULT_CONFIG_CEILING = 10**7


@dataclass(frozen=True)
class ConfigurationSet:
    all: tuple[Configuration, ...]
    maximal: tuple[Configuration, ...]

    def source(self, name: str) -> tuple[Configuration, ...]:
        if name == "all":
            return self.all
        if name == "maximal":
            return self.maximal
        raise ValueError(f"unknown configuration source {name!r}")

    def __len__(self) -> int:
        return len(self.all)


def is_maximal(instance: Instance, config: Configuration) -> bool:
    """True iff no single further item of any size fits."""
    used = instance.weighted(config.counts)
    return all(used + w > instance.scale for w in instance.weights)


def enumerate_configurations(
    instance: Instance, ceiling: int = DEFAULT_CONFIG_CEILING
) -> ConfigurationSet:
    """All nonempty ``c`` with ``sum(c_i * w_i) <= D``, in lexicographic order."""
    k, cap, weights = instance.k, instance.scale, instance.weights
    smallest = min(weights)
    found: list[tuple[int, ...]] = []
    counts = [0] * k

    # Depth-first over coordinates in index order yields lexicographic output.
    def walk(i: int, room: int) -> None:
        if i == k:
            if room != cap:
                found.append(tuple(counts))
                if len(found) > ceiling:
                    raise CeilingExceeded("configurations", len(found), ceiling)
            return
        for c in range(room // weights[i] + 1):
            counts[i] = c
            walk(i + 1, room - c * weights[i])
        counts[i] = 0

    walk(0, cap)
    configs = tuple(Configuration.of(instance, c) for c in found)
    maximal = tuple(
        c for c in configs if cap - instance.weighted(c.counts) < smallest
    )
    return ConfigurationSet(all=configs, maximal=maximal)
