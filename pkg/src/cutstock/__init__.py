"""Exact solvers for one-dimensional cutting stock with few distinct sizes.

Items come in ``k`` distinct sizes with integer demands.  The main solver
walks the integer lattice of "items packed so far" from the origin to the
demand vector, adding one bin configuration per step, while staying inside a
tube around the segment from the origin to the demand point.
"""

from cutstock.errors import CeilingExceeded, CutstockError, UnreachableTarget
from cutstock.model import (
    Configuration,
    Instance,
    Solution,
    StateVector,
    ValidationReport,
    delta,
    distribution_vector,
    format_rational,
    make_instance,
    parse_rational,
    validate_solution,
)
from cutstock.configs import ConfigurationSet, enumerate_configurations, is_maximal
from cutstock.geometry import (
    Tube,
    crossing_point,
    dominates,
    enumerate_neighborhood,
    in_tube,
    l1_distance_to_segment,
    sum_from,
)
from cutstock.paper_solver import (
    ReachabilityTable,
    build_reachability,
    optimal_bins,
    solve_literal,
    solve_tube,
)
from cutstock.baseline import (
    BoundsReport,
    bounds,
    ffd,
    heuristic_sampled_configs,
    lower_bound_size,
    solve_branch_bound,
    solve_full_lattice,
)

__all__ = [
    "BoundsReport",
    "CeilingExceeded",
    "Configuration",
    "ConfigurationSet",
    "CutstockError",
    "Instance",
    "ReachabilityTable",
    "Solution",
    "StateVector",
    "Tube",
    "UnreachableTarget",
    "ValidationReport",
    "bounds",
    "build_reachability",
    "crossing_point",
    "delta",
    "distribution_vector",
    "dominates",
    "enumerate_configurations",
    "enumerate_neighborhood",
    "ffd",
    "format_rational",
    "heuristic_sampled_configs",
    "in_tube",
    "is_maximal",
    "l1_distance_to_segment",
    "lower_bound_size",
    "make_instance",
    "optimal_bins",
    "parse_rational",
    "solve_branch_bound",
    "solve_full_lattice",
    "solve_literal",
    "solve_tube",
    "sum_from",
    "validate_solution",
]
