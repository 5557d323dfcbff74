"""Tracking paths: verifiers, reductions, Algorithm A, an exact solver and
a 3-SAT compiler."""

from .approx import ApproxCertificate, algorithm_a, opt_lower_bound
from .exact import count_min_tracking_sets, min_tracking_set
from .graph import Graph, Instance, enumerate_simple_cycles, enumerate_st_paths, face_count, from_edge_list
from .reduce import ReductionTrace, reduce_fully, reduction1, reduction2, reduction3, reduction4
from .verify import entry_exit_pairs, find_violation, is_cycle_tracked, verify_by_cycles, verify_by_definition

__all__ = [
    "ApproxCertificate",
    "Graph",
    "Instance",
    "ReductionTrace",
    "algorithm_a",
    "count_min_tracking_sets",
    "entry_exit_pairs",
    "enumerate_simple_cycles",
    "enumerate_st_paths",
    "face_count",
    "find_violation",
    "from_edge_list",
    "is_cycle_tracked",
    "min_tracking_set",
    "opt_lower_bound",
    "reduce_fully",
    "reduction1",
    "reduction2",
    "reduction3",
    "reduction4",
    "verify_by_cycles",
    "verify_by_definition",
]
