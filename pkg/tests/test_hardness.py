import itertools

import pytest
from helpers import is_planar
from hypothesis import given, settings
from hypothesis import strategies as st

from trackpath.errors import (
    BadParameter,
    ForbiddenSlot,
    FormatError,
    LayoutInvalid,
    SideMismatch,
    SlotConflict,
)
from trackpath.exact import all_min_tracking_sets, count_min_tracking_sets
from trackpath.graph import Instance, enumerate_simple_cycles, reachable
from trackpath.hardness import (
    ABOVE,
    BELOW,
    ClausePlacement,
    CnfFormula,
    CnfLayout,
    SpineHost,
    build_clause_gadget,
    build_variable_gadget,
    canonical_tracking_set,
    format_labels,
    format_layout,
    parse_dimacs,
    parse_layout,
    reduce_sat,
)
from trackpath.reduce import reduction1
from trackpath.verify import entry_exit_pairs, find_violation, is_cycle_tracked, verify_by_cycles

ONE_CLAUSE = CnfFormula(3, ((1, 2, 3),))


def gadget(m):
    g, lab = build_variable_gadget(m)
    return Instance(g, lab.s, lab.t), lab


def assignments(p):
    for values in itertools.product((False, True), repeat=p):
        yield dict(zip(range(1, p + 1), values))


# --- variable gadget


def test_gadget_needs_two_columns():
    with pytest.raises(BadParameter):
        build_variable_gadget(1)


@pytest.mark.parametrize("m", [2, 3])
def test_gadget_minimum_sets(m):
    inst, lab = gadget(m)
    assert count_min_tracking_sets(inst) == (2 * m + 4, 2)
    minima = all_min_tracking_sets(inst)
    assert set(minima) == {lab.assignment_trackers(True), lab.assignment_trackers(False)}
    for ts in minima:
        for k in range(m):
            assert len(ts & {lab.h[k], lab.mu[k], lab.l[k]}) == 2


def triangle_pair_vertices(inst, lab):
    """R vertices lying in a triangle whose other corners are an entry-exit pair."""
    g = inst.graph
    out = set()
    for r in lab.R:
        for x in g.adj[r]:
            for y in g.adj[r]:
                if x < y and g.has_edge(x, y):
                    pairs = {(p.entry, p.exit) for p in entry_exit_pairs(inst, (r, x, y))}
                    if (x, y) in pairs or (y, x) in pairs:
                        out.add(r)
    return out


@pytest.mark.parametrize("m", [2, 3, 4])
def test_gadget_structure(m):
    inst, lab = gadget(m)
    assert is_planar(inst.graph)
    assert lab.literal_vertices == set(lab.h) | set(lab.l) and len(lab.literal_vertices) == 2 * m
    # alone, alpha and beta both hang off a terminal, so the end mu triangles have no pair
    assert triangle_pair_vertices(inst, lab) == lab.R - {lab.mu[0], lab.mu[-1]}


def test_r_triangles_inside_a_chain():
    red = reduce_sat(CnfFormula(3, ()))
    first, middle, last = red.labels
    assert triangle_pair_vertices(red.instance, middle) == middle.R
    assert triangle_pair_vertices(red.instance, first) == first.R - {first.mu[0]}
    assert triangle_pair_vertices(red.instance, last) == last.R - {last.mu[-1]}


@pytest.mark.parametrize("m", [2, 3])
def test_minima_leave_no_adjacent_untracked(m):
    inst, lab = gadget(m)
    inner = set(range(inst.n)) - {inst.s, inst.t}
    for ts in all_min_tracking_sets(inst):
        for u, v in inst.graph.edges:
            if u in inner and v in inner:
                assert u in ts or v in ts
        # every square between two columns carries three trackers
        for k in range(m - 1):
            for top, bottom in ((lab.h, lab.mu), (lab.mu, lab.l)):
                assert len(ts & {top[k], top[k + 1], bottom[k], bottom[k + 1]}) >= 3


def test_true_assignment_tracks_even_h_and_odd_l():
    _, lab = build_variable_gadget(4)
    ts = lab.assignment_trackers(True)
    assert [k for k in range(1, 5) if lab.h[k - 1] in ts] == [2, 4]
    assert [k for k in range(1, 5) if lab.l[k - 1] in ts] == [1, 3]


def test_chain_forces_shared_terminal():
    red = reduce_sat(CnfFormula(2, ()))
    first, second = red.labels
    assert first.t == second.s
    minima = all_min_tracking_sets(red.instance)
    assert minima and all(first.t in ts for ts in minima)
    assert len(minima[0]) == red.target == 17


# --- compiler


def test_target_for_one_clause():
    red = reduce_sat(ONE_CLAUSE)
    assert [lab.m for lab in red.labels] == [7, 7, 7]
    assert red.target == sum(2 * lab.m + 4 for lab in red.labels) + 2 == 56


def test_single_variable_without_clauses():
    red = reduce_sat(CnfFormula(1, ()))
    g, _ = build_variable_gadget(2)
    assert red.target == 8
    assert sorted(red.instance.graph.edges) == sorted(g.edges)


def test_larger_m_accepted_and_smaller_rejected():
    assert reduce_sat(ONE_CLAUSE, m={1: 9}).labels[0].m == 9
    with pytest.raises(BadParameter):
        reduce_sat(ONE_CLAUSE, m={1: 3})


def test_spine_and_forcing_edges():
    red = reduce_sat(CnfFormula(3, ()))
    g = red.instance.graph
    for a, b in zip(red.labels, red.labels[1:]):
        assert a.t == b.s
        assert g.has_edge(a.alpha_prime, b.alpha) and g.has_edge(a.beta_prime, b.beta)
    assert red.instance.s == red.labels[0].s and red.instance.t == red.labels[-1].t
    assert is_planar(g)


FORMULAS = [
    ONE_CLAUSE,
    CnfFormula(3, ((-1, 2, -3),)),
    CnfFormula(5, ((1, -2, 3), (-3, 4, 5))),
]


@pytest.mark.parametrize("formula", FORMULAS)
def test_output_is_fixed_under_rule_one(formula):
    red = reduce_sat(formula)
    inst = red.instance
    assert reachable(inst.graph, 0) == (1 << inst.n) - 1
    out, trace = reduction1(inst)
    assert trace.steps == () and sorted(out.graph.edges) == sorted(inst.graph.edges)


@pytest.mark.parametrize("formula", FORMULAS)
def test_clause_face_criterion(formula):
    red = reduce_sat(formula)
    for a in assignments(formula.num_vars):
        ts = canonical_tracking_set(red, a)
        assert len(ts) == red.target
        for face, clause in zip(red.faces, formula.clauses):
            sat = any(a[abs(x)] == (x > 0) for x in clause)
            assert is_cycle_tracked(red.instance, face.cycle, ts) == sat


def test_clause_face_tracked_by_seven_of_eight():
    red = reduce_sat(ONE_CLAUSE)
    face = red.faces[0]
    tracked = [is_cycle_tracked(red.instance, face.cycle, canonical_tracking_set(red, a)) for a in assignments(3)]
    assert sum(tracked) == 7 and not tracked[0]
    pairs = {(p.entry, p.exit) for p in entry_exit_pairs(red.instance, face.cycle)}
    assert face.designated_pair in pairs


@pytest.mark.parametrize("formula", FORMULAS)
def test_forward_direction(formula):
    red = reduce_sat(formula)
    for a in assignments(formula.num_vars):
        ts = canonical_tracking_set(red, a)
        ok = formula.satisfied(a)
        assert verify_by_cycles(red.instance, ts) == ok
        assert (find_violation(red.instance, ts) is None) == ok


def test_falsified_clause_violation_runs_around_its_face():
    red = reduce_sat(ONE_CLAUSE)
    face = red.faces[0]
    v = find_violation(red.instance, canonical_tracking_set(red, {1: False, 2: False, 3: False}))
    assert (v.entry, v.exit) == face.designated_pair
    assert set(v.detour_a) | set(v.detour_b) == set(face.cycle)


def test_canonical_set_needs_every_variable():
    with pytest.raises(BadParameter):
        canonical_tracking_set(reduce_sat(ONE_CLAUSE), {1: True})


# --- restrictions


def bare_host(p=3, m=7):
    red = reduce_sat(CnfFormula(p, ()), m={v: m for v in range(1, p + 1)})
    labels = {lab.var: lab for lab in red.labels}
    return SpineHost(red.instance.n, list(red.instance.graph.edges), labels, {v: v - 1 for v in labels})


def test_clause_gadget_edges():
    host = bare_host()
    added, face = build_clause_gadget(host, (1, 2, 3), [(ABOVE, 2), (ABOVE, 2), (ABOVE, 6)])
    assert added == [(face.alpha, face.gamma), (face.alpha, face.betas[0]), (face.betas[-1], face.gamma)]
    assert face.alpha == host.labels[1].h[1] and face.gamma == host.labels[3].h[5]
    assert face.betas == host.labels[2].h[1:6]


def test_slot_reuse_conflicts():
    host = bare_host()
    build_clause_gadget(host, (1, 2, 3), [(ABOVE, 2), (ABOVE, 2), (ABOVE, 6)], 0)
    with pytest.raises(SlotConflict):
        build_clause_gadget(host, (1, 2, 3), [(ABOVE, 2), (ABOVE, 2), (ABOVE, 6)], 1)


def test_reserved_vertex_conflicts():
    host = bare_host(m=12)
    build_clause_gadget(host, (1, 2, 3), [(ABOVE, 2), (ABOVE, 2), (ABOVE, 6)], 0)
    # only h_3 of x1 overlaps: it is reserved beside the first clause's alpha leg
    with pytest.raises(SlotConflict, match="already used by clause 0"):
        build_clause_gadget(host, (-1, 2, 3), [(ABOVE, 3), (ABOVE, 8), (ABOVE, 12)], 1)
    build_clause_gadget(host, (-1, 2, 3), [(ABOVE, 7), (ABOVE, 8), (ABOVE, 12)], 1)


def test_legs_on_both_sides():
    with pytest.raises(SideMismatch):
        build_clause_gadget(bare_host(), (1, 2, 3), [(ABOVE, 2), (BELOW, 1), (ABOVE, 6)])


def test_first_h_column_is_forbidden():
    with pytest.raises(ForbiddenSlot):
        build_clause_gadget(bare_host(), (-1, 2, 3), [(ABOVE, 1), (ABOVE, 2), (ABOVE, 6)])


def test_wrong_polarity_and_range():
    with pytest.raises(LayoutInvalid):
        build_clause_gadget(bare_host(), (1, 2, 3), [(ABOVE, 3), (ABOVE, 2), (ABOVE, 6)])
    with pytest.raises(LayoutInvalid):
        build_clause_gadget(bare_host(), (1, 2, 3), [(ABOVE, 2), (ABOVE, 4), (ABOVE, 6)])


def test_shared_span_rejected():
    formula = CnfFormula(4, ((1, -2, 4), (-1, 3, 4)))
    with pytest.raises(LayoutInvalid):
        reduce_sat(formula)


def test_crossing_layout_rejected():
    formula = CnfFormula(4, ((1, 2, 3), (2, 3, 4)))
    with pytest.raises(LayoutInvalid):
        reduce_sat(formula)
    red = reduce_sat(formula, CnfLayout.simple(formula, [ABOVE, BELOW]))
    assert len(red.faces) == 2


def test_nested_layout_accepted():
    formula = CnfFormula(5, ((1, 3, 5), (3, 4, 5)))
    red = reduce_sat(formula)
    for a in assignments(5):
        assert verify_by_cycles(red.instance, canonical_tracking_set(red, a)) == formula.satisfied(a)


@pytest.mark.parametrize("clauses", [((1, 1, 2),), ((1, 2),), ((1, 2, 4),)])
def test_bad_formulas(clauses):
    with pytest.raises(BadParameter):
        CnfFormula(3, clauses)


# --- formats


def test_dimacs_round():
    f = parse_dimacs("c demo\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n")
    assert f == CnfFormula(3, ((1, -2, 3), (-1, 2, 3)))


@pytest.mark.parametrize(
    "text, line",
    [
        ("1 2 3 0\n", 1),
        ("p cnf 3 1\n1 2 0\n", 2),
        ("p cnf 3 1\n1 2 x 0\n", 2),
        ("p cnf 3 2\n1 2 3 0\n", 0),
        ("p cnf 3 1\n1 2 3\n", 0),
    ],
)
def test_dimacs_errors(text, line):
    with pytest.raises(FormatError) as err:
        parse_dimacs(text)
    assert err.value.line == line


def test_layout_round_trip():
    formula = CnfFormula(4, ((1, -2, 4), (-1, 3, 4)))
    layout = reduce_sat(formula, CnfLayout.simple(formula, [ABOVE, BELOW])).layout
    assert parse_layout(format_layout(layout), formula) == layout
    assert parse_layout("clause 1 side below\nclause 2 side above\n", formula).placements == (
        ClausePlacement(BELOW),
        ClausePlacement(ABOVE),
    )


@pytest.mark.parametrize("text", ["clause 1 side left\nclause 2 side above\n", "clause 1 side above\n",
                                  "clause 1 side above\nclause 1 side above\nclause 2 side above\n"])
def test_layout_errors(text):
    with pytest.raises(FormatError):
        parse_layout(text, CnfFormula(4, ((1, -2, 4), (-1, 3, 4))))


def test_labels_sidecar():
    red = reduce_sat(ONE_CLAUSE)
    lines = format_labels(red).splitlines()
    assert lines[-1] == "T 56"
    names = dict(line.split() for line in lines[:-1])
    assert names["x1.s"] == "0" and int(names["x3.mu1"]) == red.labels[2].mu[0]


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from([1, -1]), min_size=3, max_size=3), st.sampled_from([ABOVE, BELOW]))
def test_any_signs_and_side(signs, side):
    formula = CnfFormula(3, (tuple(s * v for s, v in zip(signs, (1, 2, 3))),))
    red = reduce_sat(formula, CnfLayout.simple(formula, [side]))
    for a in assignments(3):
        ts = canonical_tracking_set(red, a)
        assert is_cycle_tracked(red.instance, red.faces[0].cycle, ts) == formula.satisfied(a)
        assert verify_by_cycles(red.instance, ts) == formula.satisfied(a)
