"""Compile Planar-3-SAT instances into tracking instances.

Each variable becomes a three-row gadget: an ``h`` row on top, a ``mu`` row
in the middle and an ``l`` row at the bottom, joined column by column, with
end vertices ``alpha``/``beta`` on the left and ``alpha'``/``beta'`` on the
right.  Gadgets are chained left to right (``t_i = s_{i+1}``) and consecutive
gadgets are tied by ``alpha'_i - alpha_{i+1}`` and ``beta'_i - beta_{i+1}``,
which forces a tracker on every shared terminal.

A gadget has exactly two minimum tracking sets.  Both contain every
non-literal vertex; "true" adds the even ``h`` and odd ``l`` columns, "false"
the odd ``h`` and even ``l`` columns.  So ``h_k`` (k even) and ``l_k`` (k odd)
stand for the positive literal, the others for the negated one.

A clause above the spine closes the face ``alpha, beta_1 .. beta_3, gamma``
over ``h`` rows; below the spine it uses ``l`` rows.  The face is tracked iff
the clause is satisfied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadParameter,
    FormatError,
    ForbiddenSlot,
    LayoutInvalid,
    SideMismatch,
    SlotConflict,
)
from .graph import Graph, Instance, from_edge_list
from .verify import TrackerSet

ABOVE, BELOW = "above", "below"
SIDES = (ABOVE, BELOW)
RESERVED = 4  # literal vertices reserved beside an alpha or gamma leg
BETA_SPAN = 5  # beta_1, ~beta_1, beta_2, ~beta_2, beta_3

# Left end of a gadget, in role names; the right end is its mirror image
# (s -> t, alpha -> alpha', beta -> beta', column 1 -> column m).  The
# triangles s-alpha-beta and alpha-beta-mu1 force alpha, beta and mu1, and
# every face at s carries three non-literal trackers.
_END_EDGES = (
    ("s", "alpha"),
    ("s", "beta"),
    ("s", "h1"),
    ("s", "l1"),
    ("alpha", "beta"),
    ("alpha", "mu1"),
    ("beta", "mu1"),
)


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF over variables 1..num_vars; literals are signed ints as in DIMACS."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise BadParameter("need at least one variable")
        for c in self.clauses:
            if len(c) != 3:
                raise BadParameter(f"clause {c} does not have exactly three literals")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in c):
                raise BadParameter(f"clause {c} has a literal out of range")
            if len({abs(lit) for lit in c}) != 3:
                raise BadParameter(f"clause {c} repeats a variable")

    def occurrences(self, var: int) -> int:
        return sum(1 for c in self.clauses for lit in c if abs(lit) == var)

    def satisfied(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(x)] == (x > 0) for x in c) for c in self.clauses)


@dataclass(frozen=True)
class ClausePlacement:
    side: str
    slots: tuple[int, int, int] | None = None  # column per literal, clause order

    def __post_init__(self):
        if self.side not in SIDES:
            raise BadParameter(f"side must be 'above' or 'below', not {self.side!r}")


@dataclass(frozen=True)
class CnfLayout:
    """Rectilinear placement: spine order of the variables and, per clause,
    its side and optionally the column of each literal leg.  For the middle
    literal the column is that of ``beta_1``."""

    order: tuple[int, ...]
    placements: tuple[ClausePlacement, ...]

    @classmethod
    def simple(cls, formula: CnfFormula, sides: Sequence[str] | None = None) -> "CnfLayout":
        if sides is None:
            sides = [ABOVE] * len(formula.clauses)
        return cls(
            tuple(range(1, formula.num_vars + 1)),
            tuple(ClausePlacement(side) for side in sides),
        )


# ----------------------------------------------------------------- gadgets


@dataclass(frozen=True)
class GadgetLabels:
    """Vertex ids of one variable gadget inside its host graph."""

    var: int
    m: int
    h: tuple[int, ...]  # h[k - 1] is h_k
    mu: tuple[int, ...]
    l: tuple[int, ...]
    alpha: int
    beta: int
    alpha_prime: int
    beta_prime: int
    s: int
    t: int

    @property
    def R(self) -> frozenset[int]:
        return frozenset(
            (self.alpha, self.alpha_prime, self.beta, self.beta_prime, self.mu[0], self.mu[-1])
        )

    @property
    def literal_vertices(self) -> frozenset[int]:
        return frozenset(self.h) | frozenset(self.l)

    def row(self, side: str) -> tuple[int, ...]:
        return self.h if side == ABOVE else self.l

    def is_positive(self, side: str, k: int) -> bool:
        """Whether column ``k`` of the row on ``side`` stands for the positive literal."""
        return (k % 2 == 0) if side == ABOVE else (k % 2 == 1)

    def assignment_trackers(self, value: bool) -> frozenset[int]:
        """The gadget's minimum tracking set for ``x = value`` (terminals excluded)."""
        lits = [
            v
            for side in SIDES
            for k, v in enumerate(self.row(side), start=1)
            if self.is_positive(side, k) == value
        ]
        fixed = (self.alpha, self.beta, self.alpha_prime, self.beta_prime, *self.mu)
        return frozenset(lits) | frozenset(fixed)

    def forbidden(self) -> frozenset[int]:
        """Literal vertices that may not carry a clause endpoint."""
        return frozenset((self.h[0], self.l[-1]))

    def names(self) -> dict[str, int]:
        out = {"s": self.s, "t": self.t, "alpha": self.alpha, "beta": self.beta,
               "alpha'": self.alpha_prime, "beta'": self.beta_prime}
        for k in range(1, self.m + 1):
            out[f"h{k}"] = self.h[k - 1]
            out[f"mu{k}"] = self.mu[k - 1]
            out[f"l{k}"] = self.l[k - 1]
        return out


def _gadget_edges(lab: GadgetLabels) -> list[tuple[int, int]]:
    m = lab.m
    edges = []
    for row in (lab.h, lab.mu, lab.l):
        edges += list(zip(row, row[1:]))
    for k in range(m):
        edges += [(lab.h[k], lab.mu[k]), (lab.mu[k], lab.l[k])]
    left = {"s": lab.s, "alpha": lab.alpha, "beta": lab.beta,
            "h1": lab.h[0], "l1": lab.l[0], "mu1": lab.mu[0]}
    right = {"s": lab.t, "alpha": lab.alpha_prime, "beta": lab.beta_prime,
             "h1": lab.h[-1], "l1": lab.l[-1], "mu1": lab.mu[-1]}
    for end in (left, right):
        edges += [(end[a], end[b]) for a, b in _END_EDGES]
    return sorted({(min(e), max(e)) for e in edges})


def _place_gadget(var: int, m: int, s: int, first: int) -> GadgetLabels:
    """Labels for a gadget whose private vertices start at ``first``; ``s`` is shared."""
    ids = iter(range(first, first + 3 * m + 5))
    alpha, beta = next(ids), next(ids)
    h, mu, l = [], [], []
    for _ in range(m):
        h.append(next(ids))
        mu.append(next(ids))
        l.append(next(ids))
    alpha_p, beta_p, t = next(ids), next(ids), next(ids)
    return GadgetLabels(var, m, tuple(h), tuple(mu), tuple(l), alpha, beta, alpha_p, beta_p, s, t)


def build_variable_gadget(m: int, var: int = 1) -> tuple[Graph, GadgetLabels]:
    """Standalone gadget with ``m`` columns; s = 0 and t is the last id."""
    if m < 2:
        raise BadParameter("a variable gadget needs m >= 2")
    lab = _place_gadget(var, m, 0, 1)
    return from_edge_list(3 * m + 6, _gadget_edges(lab)), lab


# ------------------------------------------------------------------ clauses


@dataclass
class SpineHost:
    """Working graph for a chain of gadgets while clauses are attached."""

    n: int
    edges: list[tuple[int, int]]
    labels: dict[int, GadgetLabels]  # by variable
    position: dict[int, int]  # variable -> spine index
    claimed: dict[int, int] = field(default_factory=dict)  # vertex -> clause index

    def owner(self, v: int) -> GadgetLabels:
        for lab in self.labels.values():
            if v in lab.literal_vertices:
                return lab
        raise LayoutInvalid(f"vertex {v} is not a literal vertex")


@dataclass(frozen=True)
class ClauseFace:
    """The closed clause face, listed along its boundary."""

    index: int
    alpha: int
    betas: tuple[int, ...]  # beta_1, ~beta_1, beta_2, ~beta_2, beta_3
    gamma: int

    @property
    def cycle(self) -> tuple[int, ...]:
        return (self.alpha, *self.betas, self.gamma)

    @property
    def designated_pair(self) -> tuple[int, int]:
        return self.betas[1], self.betas[3]


def _ordered_literals(host: SpineHost, clause: Sequence[int]) -> list[int]:
    """Indices into ``clause`` sorted by spine position of their variables."""
    return sorted(range(3), key=lambda i: host.position[abs(clause[i])])


def build_clause_gadget(
    host: SpineHost,
    clause: Sequence[int],
    slots: Sequence[tuple[str, int]],
    index: int = 0,
) -> tuple[list[tuple[int, int]], ClauseFace]:
    """Attach one clause; ``slots[i]`` is (side, column) for literal ``clause[i]``.

    Returns the added edges and the clause face; the host's edge list and
    slot claims are updated.
    """
    if len({side for side, _ in slots}) != 1:
        raise SideMismatch(f"clause {index}: legs on both sides of the spine")
    side = slots[0][0]
    order = _ordered_literals(host, clause)
    ia, ib, ic = order
    legs = []
    for role, i in (("alpha", ia), ("beta", ib), ("gamma", ic)):
        lit = clause[i]
        lab = host.labels[abs(lit)]
        k = slots[i][1]
        row = lab.row(side)
        span = BETA_SPAN if role == "beta" else 1
        if not (1 <= k and k + span - 1 <= lab.m):
            raise LayoutInvalid(f"clause {index}: column {k} out of range for x{lab.var}")
        if lab.is_positive(side, k) != (lit > 0):
            raise LayoutInvalid(
                f"clause {index}: column {k} of x{lab.var} {side} has the wrong polarity"
            )
        vertices = row[k - 1 : k - 1 + span]
        ends = (vertices[0], vertices[-1])
        if any(v in lab.forbidden() for v in ends):
            raise ForbiddenSlot(f"clause {index}: x{lab.var} column {k} is not available")
        if role == "alpha":
            claim = row[k - 1 : k + RESERVED]
            if len(claim) < RESERVED + 1:
                raise LayoutInvalid(f"clause {index}: no room for reserved vertices after alpha")
        elif role == "gamma":
            if k - 1 - RESERVED < 0:
                raise LayoutInvalid(f"clause {index}: no room for reserved vertices before gamma")
            claim = row[k - 1 - RESERVED : k]
        else:
            claim = vertices
        legs.append((vertices, claim))
    for _, claim in legs:
        for v in claim:
            if v in host.claimed and host.claimed[v] != index:
                raise SlotConflict(f"clause {index}: vertex {v} already used by clause {host.claimed[v]}")
    for _, claim in legs:
        for v in claim:
            host.claimed[v] = index
    alpha = legs[0][0][0]
    betas = legs[1][0]
    gamma = legs[2][0][0]
    added = [(alpha, gamma), (alpha, betas[0]), (betas[-1], gamma)]
    host.edges += added
    return added, ClauseFace(index, alpha, tuple(betas), gamma)


# ------------------------------------------------------------------ layouts


def _interval(order_pos: Mapping[int, int], clause: Sequence[int]) -> tuple[int, int, int]:
    a, b, c = sorted(order_pos[abs(x)] for x in clause)
    return a, b, c


def validate_layout(formula: CnfFormula, layout: CnfLayout) -> None:
    """Check that same-side clauses nest or are disjoint, as in a planar drawing."""
    p = formula.num_vars
    if sorted(layout.order) != list(range(1, p + 1)):
        raise LayoutInvalid("variable order must be a permutation of 1..p")
    if len(layout.placements) != len(formula.clauses):
        raise LayoutInvalid("one placement per clause required")
    pos = {v: i for i, v in enumerate(layout.order)}
    spans = [_interval(pos, c) for c in formula.clauses]
    for i in range(len(spans)):
        for j in range(i + 1, len(spans)):
            if layout.placements[i].side != layout.placements[j].side:
                continue
            _check_pair(i, spans[i], j, spans[j])


def _check_pair(i, ci, j, cj):
    (a1, b1, c1), (a2, b2, c2) = ci, cj
    if c1 <= a2 or c2 <= a1:
        return  # side by side
    if (a1, c1) == (a2, c2):
        raise LayoutInvalid(f"clauses {i} and {j} span the same variables on one side")
    if a1 <= a2 and c2 <= c1:
        outer, inner, oi, ii = ci, cj, i, j
    elif a2 <= a1 and c1 <= c2:
        outer, inner, oi, ii = cj, ci, j, i
    else:
        raise LayoutInvalid(f"clauses {i} and {j} cross on the same side")
    a, b, c = outer
    if not (inner[2] <= b or inner[0] >= b):
        raise LayoutInvalid(f"clause {ii} encloses the middle leg of clause {oi}")


def _legs(formula, layout):
    """Per (variable, side): list of (kind, clause index) legs."""
    pos = {v: i for i, v in enumerate(layout.order)}
    legs: dict[tuple[int, str], list[tuple[str, int]]] = {}
    for j, clause in enumerate(formula.clauses):
        side = layout.placements[j].side
        by_pos = sorted(clause, key=lambda x: pos[abs(x)])
        for kind, lit in zip(("alpha", "beta", "gamma"), by_pos):
            legs.setdefault((abs(lit), side), []).append((kind, j))
    return pos, legs


def assign_slots(formula: CnfFormula, layout: CnfLayout) -> tuple[CnfLayout, dict[int, int]]:
    """Fill in missing slot columns and size every gadget.

    On each row the legs are laid out left to right as: gamma legs (inner
    clauses first), the middle leg, then alpha legs (outer clauses first).
    Returns the completed layout and ``m`` per variable.
    """
    validate_layout(formula, layout)
    pos, legs = _legs(formula, layout)
    spans = [_interval(pos, c) for c in formula.clauses]
    given = all(pl.slots is not None for pl in layout.placements)
    if any(pl.slots is not None for pl in layout.placements) and not given:
        raise LayoutInvalid("slots must be given for every clause or for none")
    cols: dict[tuple[int, int], int] = {}  # (clause, literal index) -> column
    need: dict[int, int] = {v: 2 for v in range(1, formula.num_vars + 1)}
    if given:
        for j, pl in enumerate(layout.placements):
            for i, k in enumerate(pl.slots):
                cols[(j, i)] = k
        for j, clause in enumerate(formula.clauses):
            by_pos = sorted(range(3), key=lambda i: pos[abs(clause[i])])
            for kind, i in zip(("alpha", "beta", "gamma"), by_pos):
                k = cols[(j, i)]
                last = k + (RESERVED if kind == "alpha" else BETA_SPAN - 1 if kind == "beta" else 0)
                need[abs(clause[i])] = max(need[abs(clause[i])], last + 1)
        _check_leg_order(formula, layout, pos, legs, spans, cols)
    else:
        for (var, side), items in legs.items():
            def key(item):
                kind, j = item
                a, _, c = spans[j]
                if kind == "gamma":
                    return (0, -a)  # inner (later start) first
                if kind == "beta":
                    return (1, 0)
                return (2, -c)  # outer (later end) first
            k = 2 if side == ABOVE else 1  # keep clear of h_1
            for kind, j in sorted(items, key=key):
                clause = formula.clauses[j]
                i = next(i for i in range(3) if abs(clause[i]) == var)
                positive = clause[i] > 0
                first = k + RESERVED if kind == "gamma" else k
                parity_ok = (first % 2 == 0) == positive if side == ABOVE else (first % 2 == 1) == positive
                if not parity_ok:
                    first += 1
                cols[(j, i)] = first
                k = first + (RESERVED + 1 if kind == "alpha" else BETA_SPAN if kind == "beta" else 1)
            # the last column on the l row is off limits, so leave one spare
            need[var] = max(need[var], k if side == ABOVE else k + 1)
    m = {}
    for v in range(1, formula.num_vars + 1):
        m[v] = max(2, 5 * formula.occurrences(v) + 2, need[v])
    placements = tuple(
        ClausePlacement(pl.side, tuple(cols[(j, i)] for i in range(3)))
        for j, pl in enumerate(layout.placements)
    )
    return CnfLayout(layout.order, placements), m


def _check_leg_order(formula, layout, pos, legs, spans, cols):
    def column(j, var):
        clause = formula.clauses[j]
        return cols[(j, next(i for i in range(3) if abs(clause[i]) == var))]

    for (var, side), items in legs.items():
        for x in range(len(items)):
            for y in range(x + 1, len(items)):
                (k1, j1), (k2, j2) = items[x], items[y]
                c1, c2 = column(j1, var), column(j2, var)
                first = _must_precede(k1, spans[j1], k2, spans[j2])
                if first == 1 and not c1 < c2 or first == 2 and not c2 < c1:
                    raise LayoutInvalid(
                        f"clauses {j1} and {j2}: legs on x{var} {side} are out of order"
                    )


def _must_precede(kind1, span1, kind2, span2):
    """1 if leg 1 must lie left of leg 2 on a shared row, 2 for the reverse."""
    rank = {"gamma": 0, "beta": 1, "alpha": 2}
    if rank[kind1] != rank[kind2]:
        return 1 if rank[kind1] < rank[kind2] else 2
    if kind1 == "gamma":  # inner clause (later start) first
        return 1 if span1[0] > span2[0] else 2
    if kind1 == "alpha":  # outer clause (later end) first
        return 1 if span1[2] > span2[2] else 2
    raise LayoutInvalid("two middle legs on one variable and side")


# -------------------------------------------------------------- the compiler


@dataclass(frozen=True)
class SatReduction:
    instance: Instance
    target: int
    labels: tuple[GadgetLabels, ...]  # by variable, labels[v - 1]
    faces: tuple[ClauseFace, ...]
    layout: CnfLayout

    def names(self) -> dict[str, int]:
        out = {}
        for lab in self.labels:
            for role, v in lab.names().items():
                out[f"x{lab.var}.{role}"] = v
        return out


def reduce_sat(
    formula: CnfFormula, layout: CnfLayout | None = None, m: Mapping[int, int] | None = None
) -> SatReduction:
    """Build the tracking instance and its budget ``T``.

    ``m`` may raise gadget lengths above the computed minimum.
    """
    if layout is None:
        layout = CnfLayout.simple(formula)
    layout, sizes = assign_slots(formula, layout)
    if m is not None:
        for v, k in m.items():
            if k < sizes[v]:
                raise BadParameter(f"m for x{v} must be at least {sizes[v]}")
            sizes[v] = k
    labels: dict[int, GadgetLabels] = {}
    edges: list[tuple[int, int]] = []
    s = 0
    nxt = 1
    prev = None
    for var in layout.order:
        lab = _place_gadget(var, sizes[var], s, nxt)
        labels[var] = lab
        edges += _gadget_edges(lab)
        if prev is not None:
            edges += [(prev.alpha_prime, lab.alpha), (prev.beta_prime, lab.beta)]
        nxt = lab.t + 1
        s = lab.t
        prev = lab
    position = {v: i for i, v in enumerate(layout.order)}
    host = SpineHost(nxt, edges, labels, position)
    faces = []
    for j, (clause, pl) in enumerate(zip(formula.clauses, layout.placements)):
        slots = [(pl.side, k) for k in pl.slots]
        faces.append(build_clause_gadget(host, clause, slots, j)[1])
    first, last = labels[layout.order[0]], labels[layout.order[-1]]
    inst = Instance(from_edge_list(host.n, host.edges), first.s, last.t)
    p = formula.num_vars
    target = sum(2 * lab.m + 4 for lab in labels.values()) + p - 1
    ordered = tuple(labels[v] for v in range(1, p + 1))
    return SatReduction(inst, target, ordered, tuple(faces), layout)


def canonical_tracking_set(red: SatReduction, assignment: Mapping[int, bool]) -> TrackerSet:
    """Literal vertices of the assignment plus every non-literal vertex but s, t."""
    missing = [lab.var for lab in red.labels if lab.var not in assignment]
    if missing:
        raise BadParameter(f"assignment misses variables {missing}")
    out: set[int] = set()
    for lab in red.labels:
        out |= lab.assignment_trackers(bool(assignment[lab.var]))
        out |= {lab.s, lab.t}
    out -= {red.instance.s, red.instance.t}
    return frozenset(out)


# ------------------------------------------------------------------ formats


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("bad or repeated 'p cnf' header", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError("non-integer in header", lineno) from None
            continue
        if header is None:
            raise FormatError("clause before 'p cnf' header", lineno)
        try:
            nums = [int(x) for x in line.split()]
        except ValueError:
            raise FormatError("non-integer literal", lineno) from None
        for x in nums:
            if x == 0:
                if len(pending) != 3:
                    raise FormatError("clause must have exactly three literals", lineno)
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(x)
    if header is None:
        raise FormatError("missing 'p cnf' header", 0)
    if pending:
        raise FormatError("last clause not terminated by 0", 0)
    if len(clauses) != header[1]:
        raise FormatError(f"header says {header[1]} clauses, found {len(clauses)}", 0)
    try:
        return CnfFormula(header[0], tuple(clauses))
    except BadParameter as e:
        raise FormatError(str(e), 0) from None


def parse_layout(text: str, formula: CnfFormula) -> CnfLayout:
    """Layout sidecar: optional ``order v1 v2 ...`` then one line per clause,
    ``clause <i> side <above|below> [slots <k_a> <k_b> <k_c>]`` (1-based i)."""
    order = tuple(range(1, formula.num_vars + 1))
    found: dict[int, ClausePlacement] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "order":
                order = tuple(int(x) for x in parts[1:])
            elif parts[0] == "clause" and parts[2] == "side":
                idx = int(parts[1])
                slots = None
                if len(parts) > 4:
                    if parts[4] != "slots" or len(parts) != 8:
                        raise ValueError
                    slots = tuple(int(x) for x in parts[5:8])
                if idx in found:
                    raise FormatError(f"clause {idx} placed twice", lineno)
                found[idx] = ClausePlacement(parts[3], slots)
            else:
                raise ValueError
        except (ValueError, IndexError, BadParameter):
            raise FormatError(f"cannot parse layout line {raw.strip()!r}", lineno) from None
    want = set(range(1, len(formula.clauses) + 1))
    if set(found) != want:
        raise FormatError("layout must place every clause exactly once", 0)
    return CnfLayout(order, tuple(found[i] for i in sorted(found)))


def format_layout(layout: CnfLayout) -> str:
    lines = ["order " + " ".join(map(str, layout.order))]
    for i, pl in enumerate(layout.placements, start=1):
        tail = "" if pl.slots is None else " slots " + " ".join(map(str, pl.slots))
        lines.append(f"clause {i} side {pl.side}{tail}")
    return "\n".join(lines) + "\n"


def format_labels(red: SatReduction) -> str:
    lines = [f"{name} {v}" for name, v in sorted(red.names().items(), key=lambda kv: (kv[1], kv[0]))]
    lines.append(f"T {red.target}")
    return "\n".join(lines) + "\n"
