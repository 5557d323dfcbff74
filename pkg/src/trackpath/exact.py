"""Exhaustive minimum tracking sets, used as the ground-truth oracle.

The cycle verifier turns the instance into a hitting-set problem: each
entry-exit pair of each simple cycle yields a requirement bitset (the cycle
minus the pair) and a set is tracking iff it meets all of them.  Subsets of
V - {s, t} are then tried by increasing size, lexicographically within a size.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, islice
from typing import Sequence

from .errors import BudgetExceeded, EmptyResult
from .graph import Instance
from .reduce import reduce_fully
from .verify import CycleOracle, TrackerSet


def requirements(inst: Instance, cap: int | None = None) -> list[int]:
    return CycleOracle(inst, cap=cap).minimal_requirements()


def _hits_all(mask: int, reqs: Sequence[int]) -> bool:
    for r in reqs:
        if not mask & r:
            return False
    return True


def _first_hit(reqs: Sequence[int], combos: Sequence[tuple[int, ...]]) -> tuple[int, ...] | None:
    for c in combos:
        mask = 0
        for v in c:
            mask |= 1 << v
        if _hits_all(mask, reqs):
            return c
    return None


def _chunks(it, size):
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def _level(reqs, cands, k, pool, chunk=20000):
    """Lexicographically first hitting set of size k, or None."""
    combos = combinations(cands, k)
    if pool is None:
        return _first_hit(reqs, combos)
    # blocks are lexicographically ordered, so the first block with a hit wins
    for batch in _chunks(_chunks(combos, chunk), pool._max_workers):
        for hit in pool.map(_first_hit, [reqs] * len(batch), batch):
            if hit is not None:
                return hit
    return None


def min_hitting_set(
    reqs: Sequence[int], cands: Sequence[int], budget: int | None = None, jobs: int = 1
) -> frozenset[int]:
    """Lexicographically first smallest subset of ``cands`` meeting every
    requirement bitset."""
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for k in range(len(cands) + 1):
            if budget is not None and k > budget:
                raise BudgetExceeded(budget)
            hit = _level(reqs, cands, k, pool)
            if hit is not None:
                return frozenset(hit)
    finally:
        if pool is not None:
            pool.shutdown()
    raise EmptyResult("requirements cannot be met")


def _search(inst: Instance, budget: int | None, jobs: int, cap: int | None) -> frozenset[int]:
    # V - {s, t} always tracks, so the search below always succeeds
    return min_hitting_set(requirements(inst, cap), _candidates(inst), budget, jobs)


def _candidates(inst: Instance) -> list[int]:
    return [v for v in range(inst.n) if v != inst.s and v != inst.t]


def min_tracking_set(
    inst: Instance,
    budget: int | None = None,
    reduce: bool = True,
    jobs: int = 1,
    cap: int | None = None,
) -> TrackerSet:
    """A minimum tracking set.

    With ``reduce=False`` the result is the lexicographically smallest
    minimum set of the instance itself.  With ``reduce=True`` (default) the
    search runs on the fully reduced instance and the lexicographically
    smallest answer there is lifted back together with the forced trackers.
    """
    if not reduce:
        return _search(inst, budget, jobs, cap)
    try:
        small, trace = reduce_fully(inst)
    except EmptyResult:
        return frozenset()  # no s-t path at all
    forced = trace.forced_trackers
    rest = None if budget is None else budget - len(forced)
    if rest is not None and rest < 0:
        raise BudgetExceeded(budget)
    try:
        found = _search(small, rest, jobs, cap)
    except BudgetExceeded:
        raise BudgetExceeded(budget) from None
    return trace.lift(found)


def count_min_tracking_sets(inst: Instance, cap: int | None = None) -> tuple[int, int]:
    """(OPT, number of tracking sets of size OPT), without reductions."""
    reqs = requirements(inst, cap)
    cands = _candidates(inst)
    for k in range(len(cands) + 1):
        count = 0
        for c in combinations(cands, k):
            mask = 0
            for v in c:
                mask |= 1 << v
            if _hits_all(mask, reqs):
                count += 1
        if count:
            return k, count
    raise AssertionError("V - {s, t} always tracks")  # pragma: no cover


def all_min_tracking_sets(inst: Instance, cap: int | None = None) -> list[TrackerSet]:
    """Every minimum tracking set, in lexicographic order."""
    reqs = requirements(inst, cap)
    cands = _candidates(inst)
    for k in range(len(cands) + 1):
        found = [frozenset(c) for c in combinations(cands, k) if _hits_all(sum(1 << v for v in c), reqs)]
        if found:
            return found
    raise AssertionError("V - {s, t} always tracks")  # pragma: no cover
