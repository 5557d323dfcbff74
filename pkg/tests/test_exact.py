from itertools import combinations

import pytest
from helpers import PATH3, SQUARE, THETA, TRIANGLE, instances, instances_with_mask
from hypothesis import given, settings

from trackpath.errors import BudgetExceeded, CapExceeded, EmptyResult
from trackpath.exact import (
    all_min_tracking_sets,
    count_min_tracking_sets,
    min_hitting_set,
    min_tracking_set,
    requirements,
)
from trackpath.graph import Instance, bits, from_edge_list, members
from trackpath.verify import PathOracle, find_violation, verify_by_cycles, verify_by_definition


def brute_opt(inst, universe):
    """Smallest tracking set by path enumeration over subsets of ``universe``."""
    oracle = PathOracle(inst)
    for k in range(len(universe) + 1):
        for c in combinations(universe, k):
            if oracle.is_tracking(bits(c)):
                return k
    raise AssertionError


def test_path_needs_nothing():
    assert min_tracking_set(PATH3) == frozenset()
    assert count_min_tracking_sets(PATH3) == (0, 1)


def test_square():
    assert min_tracking_set(SQUARE, reduce=False) == {1}
    assert count_min_tracking_sets(SQUARE) == (1, 2)
    assert all_min_tracking_sets(SQUARE) == [{1}, {3}]


def test_theta():
    assert len(min_tracking_set(THETA)) == 2
    assert min_tracking_set(THETA, reduce=False) == {1, 2}
    assert count_min_tracking_sets(THETA) == (2, 3)


def test_triangle():
    assert min_tracking_set(TRIANGLE) == {1}


def test_budget():
    with pytest.raises(BudgetExceeded):
        min_tracking_set(THETA, budget=1)
    with pytest.raises(BudgetExceeded):
        min_tracking_set(THETA, budget=1, reduce=False)
    assert len(min_tracking_set(THETA, budget=2)) == 2


def test_cycle_cap():
    k5 = from_edge_list(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    with pytest.raises(CapExceeded):
        min_tracking_set(Instance(k5, 0, 4), cap=10)


def test_no_path_means_empty_set():
    assert min_tracking_set(Instance(from_edge_list(4, [(0, 1), (2, 3)]), 0, 3)) == frozenset()


def test_hitting_set_core():
    assert min_hitting_set([0b011, 0b110], [0, 1, 2]) == {1}
    assert min_hitting_set([], [0, 1]) == frozenset()
    with pytest.raises(EmptyResult):
        min_hitting_set([0b100], [0, 1])


@settings(max_examples=80, deadline=None)
@given(instances(max_n=8))
def test_result_passes_every_verifier(inst):
    for reduce in (True, False):
        ts = min_tracking_set(inst, reduce=reduce)
        assert verify_by_definition(inst, ts)
        assert verify_by_cycles(inst, ts)
        assert find_violation(inst, ts) is None


@settings(max_examples=80, deadline=None)
@given(instances(max_n=8))
def test_optimum_matches_path_enumeration(inst):
    cands = [v for v in range(inst.n) if v not in (inst.s, inst.t)]
    assert len(min_tracking_set(inst, reduce=False)) == brute_opt(inst, cands)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=8))
def test_terminals_never_help(inst):
    assert brute_opt(inst, list(range(inst.n))) == len(min_tracking_set(inst, reduce=False))


@settings(max_examples=80, deadline=None)
@given(instances_with_mask(max_n=8))
def test_supersets_still_track(case):
    inst, extra = case
    ts = min_tracking_set(inst)
    assert verify_by_definition(inst, ts | set(members(extra)))


@settings(max_examples=60, deadline=None)
@given(instances(max_n=8))
def test_lex_first_minimum(inst):
    ts = min_tracking_set(inst, reduce=False)
    everything = all_min_tracking_sets(inst)
    assert ts == everything[0] and ts in everything
    assert count_min_tracking_sets(inst) == (len(ts), len(everything))
    assert everything == sorted(everything, key=sorted)


@settings(max_examples=40, deadline=None)
@given(instances(max_n=8))
def test_reduction_keeps_optimum(inst):
    assert len(min_tracking_set(inst)) == len(min_tracking_set(inst, reduce=False))


def test_jobs_do_not_change_the_answer():
    ladder = Instance(
        from_edge_list(10, [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8),
                            (1, 5), (2, 6), (3, 7), (4, 8), (4, 9), (8, 9)]),
        0,
        9,
    )
    reqs = requirements(ladder)
    cands = [v for v in range(1, 9)]
    one = min_hitting_set(reqs, cands)
    assert min_hitting_set(reqs, cands, jobs=2) == one
    assert min_tracking_set(ladder, reduce=False, jobs=3) == min_tracking_set(ladder, reduce=False)
