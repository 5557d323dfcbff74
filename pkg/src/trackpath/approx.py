"""Algorithm A (a 4-approximation on planar instances) and the face lower bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Instance, face_count
from .reduce import ReductionTrace, reduce_fully, reduction1
from .verify import TrackerSet


@dataclass(frozen=True)
class ApproxCertificate:
    trackers: TrackerSet
    alg_size: int
    faces: int
    opt_lower: int
    ratio_bound: Fraction | None  # None when there is no cycle at all
    trace: ReductionTrace

    def upper_bound_holds(self) -> bool:
        """``alg_size <= 2(faces - 2)``, the bound claimed for graphs with a cycle."""
        return self.alg_size <= 2 * (self.faces - 2)


def lower_bound_from_faces(faces: int) -> int:
    # ceil((faces - 1) / 2), never negative
    return max(0, faces // 2)


def opt_lower_bound(inst: Instance) -> int:
    """Lower bound on OPT from the face count; the graph should already be
    fixed under rule 1 and planar (not checked)."""
    return lower_bound_from_faces(face_count(inst.graph))


def algorithm_a(inst: Instance) -> ApproxCertificate:
    first, trace1 = reduction1(inst)
    faces = face_count(first.graph)
    reduced, trace_rest = reduce_fully(first)
    trace = trace1.then(trace_rest)
    g = reduced.graph
    heavy = [v for v in range(g.n) if g.degree(v) >= 3 and v not in (reduced.s, reduced.t)]
    trackers = trace.lift(heavy)
    lower = lower_bound_from_faces(faces)
    ratio = Fraction(len(trackers), lower) if lower else None
    return ApproxCertificate(trackers, len(trackers), faces, lower, ratio, trace)
