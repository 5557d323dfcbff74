"""Tracking-set verification by three independent routes.

* ``verify_by_definition`` enumerates every simple s-t path and compares the
  ordered tracker sequences they induce.
* ``verify_by_cycles`` checks that every simple cycle is tracked with respect
  to all of its entry-exit pairs.
* ``find_violation`` searches entry/exit vertices first, then two tracker-free
  detours between them, then a disjoint prefix and suffix that reach them from
  ``s`` and continue to ``t``.

Each route has a batch form (``PathOracle``, ``CycleOracle``,
``DetourOracle``) that does the expensive enumeration once and then answers
for many tracker sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceeded
from .graph import (
    Cycle,
    Graph,
    Instance,
    VertexPath,
    bits,
    canonical_cycle,
    default_caps,
    enumerate_simple_cycles,
    enumerate_st_paths,
    members,
    path_support,
    reachable,
)

TrackerSet = frozenset

DEFAULT_SEARCH_BUDGET = 10**7
SUPPORT_THRESHOLD = 16


@dataclass(frozen=True)
class EntryExitPair:
    entry: int
    exit: int
    cycle: Cycle
    witness_entry_path: VertexPath  # s ... entry
    witness_exit_path: VertexPath  # exit ... t


@dataclass(frozen=True)
class Violation:
    entry: int
    exit: int
    detour_a: VertexPath  # entry ... exit
    detour_b: VertexPath  # entry ... exit
    prefix: VertexPath  # s ... entry
    suffix: VertexPath  # exit ... t

    def paths(self) -> tuple[VertexPath, VertexPath]:
        """The two distinct s-t paths that share a tracker sequence."""
        head = self.prefix[:-1]
        tail = self.suffix[1:]
        return head + self.detour_a + tail, head + self.detour_b + tail

    def report(self) -> str:
        def fmt(p):
            return " ".join(map(str, p))

        return "\n".join(
            [
                f"violation entry {self.entry} exit {self.exit}",
                f"prefix {fmt(self.prefix)}",
                f"detour {fmt(self.detour_a)}",
                f"detour {fmt(self.detour_b)}",
                f"suffix {fmt(self.suffix)}",
            ]
        )


class _Budget:
    __slots__ = ("left", "cap")

    def __init__(self, cap: int):
        self.left = cap
        self.cap = cap

    def spend(self, k: int = 1):
        self.left -= k
        if self.left < 0:
            raise CapExceeded("search steps", self.cap)


def _bfs_path(g: Graph, start: int, goal: int, blocked: int) -> VertexPath | None:
    """Shortest path avoiding ``blocked`` (endpoints must not be blocked)."""
    if start == goal:
        return (start,)
    parent = {start: start}
    frontier = [start]
    adj = g.adj
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w in parent or blocked >> w & 1:
                    continue
                parent[w] = v
                if w == goal:
                    out = [w]
                    while out[-1] != start:
                        out.append(parent[out[-1]])
                    return tuple(reversed(out))
                nxt.append(w)
        frontier = nxt
    return None


class _LinkageSearch:
    """Steppable DFS for disjoint paths ``s..a`` and ``b..t`` avoiding ``blocked``.

    The ``s..a`` route is grown one vertex at a time.  With the route fixed
    up to its last vertex w, success depends only on w and on the vertices
    that can still lie on a simple w-a path or a simple b-t path, so failed
    states are remembered by that pair.  Each call to :meth:`step` expands
    one state; ``result`` is set once the search is decided.
    """

    def __init__(self, g: Graph, s: int, a: int, b: int, t: int, blocked: int):
        self.g, self.a, self.b, self.t = g, a, b, t
        self.blocked = blocked
        self.everything = (1 << g.n) - 1
        self.dead: set[tuple[int, int]] = set()
        self.path = [s]
        self.frames: list[tuple[int, Iterator[int], tuple[int, int]]] = []
        self.done = False
        self.result: tuple[VertexPath, VertexPath] | None = None
        self._enter(s, 1 << s)

    def _support(self, x: int, y: int, allowed: int) -> int:
        # block-cut-tree support pays off only on larger graphs; the plain
        # component is a valid (coarser) stand-in
        if self.g.n > SUPPORT_THRESHOLD:
            return path_support(self.g, x, y, allowed)
        comp = reachable(self.g, x, ~allowed)
        return comp if comp >> y & 1 else 0

    def _finish(self, result):
        self.done = True
        self.result = result

    def _enter(self, w: int, used: int) -> None:
        g, a, b, t, path = self.g, self.a, self.b, self.t, self.path
        free = self.everything & ~self.blocked & ~used
        to_a = self._support(w, a, free | 1 << w)
        to_t = self._support(b, t, free) if to_a else 0
        if not to_t:
            return self._backtrack()
        if not to_a & to_t:
            tail = _bfs_path(g, w, a, ~to_a)
            return self._finish(((*path[:-1], *tail), _bfs_path(g, b, t, ~to_t)))
        key = (w, to_a | to_t)
        if key in self.dead:
            return self._backtrack()
        # cheap attempts first: shortest completion of either route, then the other
        tail = _bfs_path(g, w, a, ~to_a | 1 << b | 1 << t)
        if tail is not None:
            r = _bfs_path(g, b, t, ~to_t | bits(tail))
            if r is not None:
                return self._finish(((*path[:-1], *tail), r))
        r = _bfs_path(g, b, t, ~to_t | 1 << a)
        if r is not None:
            tail = _bfs_path(g, w, a, ~to_a | bits(r))
            if tail is not None:
                return self._finish(((*path[:-1], *tail), r))
        nbrs = [x for x in g.adj[w] if to_a >> x & 1 and x != b and x != t]
        self.frames.append((used, iter(nbrs), key))

    def _backtrack(self) -> None:
        self.path.pop()
        if not self.path:
            self._finish(None)

    def step(self) -> None:
        used, it, key = self.frames[-1]
        for x in it:
            if x == self.a:
                r = _bfs_path(self.g, self.b, self.t, self.blocked | used | 1 << x)
                if r is not None:
                    return self._finish(((*self.path, x), r))
                continue
            self.path.append(x)
            return self._enter(x, used | 1 << x)
        self.frames.pop()
        self.dead.add(key)
        self._backtrack()


def disjoint_prefix_suffix(
    g: Graph, s: int, a: int, b: int, t: int, blocked: int, budget: _Budget | None = None
) -> tuple[VertexPath, VertexPath] | None:
    """Vertex-disjoint paths ``s..a`` and ``b..t`` that avoid ``blocked``.

    Bounded exhaustive search.  The same question can be attacked by growing
    a route from any of the four endpoints and the best choice varies a lot,
    so on larger graphs four searches are stepped round-robin and the first
    to finish answers.
    """
    if a == b or s == t or b == s or a == t:
        return None
    for v in (s, a, b, t):
        if blocked >> v & 1:
            return None
    if budget is None:
        budget = _Budget(DEFAULT_SEARCH_BUDGET)
    if s == a:
        r = _bfs_path(g, b, t, blocked | 1 << s)
        return ((s,), r) if r is not None else None
    if b == t:
        p = _bfs_path(g, s, a, blocked | 1 << t)
        return (p, (t,)) if p is not None else None

    def rev(p):
        return tuple(reversed(p))

    # (search, how to turn its answer into (s..a, b..t))
    searches = [
        (_LinkageSearch(g, s, a, b, t, blocked), lambda p, r: (p, r)),
        (_LinkageSearch(g, b, t, s, a, blocked), lambda p, r: (r, p)),
        (_LinkageSearch(g, a, s, t, b, blocked), lambda p, r: (rev(p), rev(r))),
        (_LinkageSearch(g, t, b, a, s, blocked), lambda p, r: (rev(r), rev(p))),
    ]
    if g.n <= SUPPORT_THRESHOLD:
        searches = searches[:1]  # small graphs: setup would dominate
    while True:
        for search, convert in searches:
            if search.done:
                return None if search.result is None else convert(*search.result)
            budget.spend()
            search.step()


def _side_paths(
    g: Graph, start: int, cmask: int, budget: _Budget
) -> dict[int, dict[int, VertexPath]]:
    """For each cycle vertex c: {vertex-set bitset: path start..c} over all
    paths from ``start`` that meet the cycle only in their last vertex c."""
    out: dict[int, dict[int, VertexPath]] = {}
    if cmask >> start & 1:
        out[start] = {1 << start: (start,)}
        return out
    adj = g.adj
    masks = g.masks
    path = [start]
    used = 1 << start

    def record():
        hits = masks[path[-1]] & cmask
        while hits:
            low = hits & -hits
            hits ^= low
            c = low.bit_length() - 1
            out.setdefault(c, {}).setdefault(used | low, (*path, c))

    record()
    stack = [iter(adj[start])]
    while stack:
        budget.spend()
        for w in stack[-1]:
            if used >> w & 1 or cmask >> w & 1:
                continue
            path.append(w)
            used |= 1 << w
            record()
            stack.append(iter(adj[w]))
            break
        else:
            stack.pop()
            used &= ~(1 << path.pop())
    return out


def entry_exit_pairs(
    inst: Instance, cycle: Cycle, budget: int | None = None
) -> list[EntryExitPair]:
    """All entry-exit pairs of ``cycle``, ordered by (entry, exit).

    Each ordered pair gets its own linkage search, so the cost stays
    polynomial in the cycle length times one search even on graphs with
    exponentially many side paths.
    """
    g = inst.graph
    cycle = canonical_cycle(cycle)
    cmask = bits(cycle)
    b = _Budget(budget or DEFAULT_SEARCH_BUDGET)
    # off the terminals, an entry or exit needs a third edge leaving the cycle
    ends = [v for v in sorted(cycle) if v in (inst.s, inst.t) or g.masks[v] & ~cmask]
    pairs = []
    for entry in ends:
        for exit_ in ends:
            found = _targeted_witness(inst, cmask, entry, exit_, b)
            if found is not None:
                p, r = found
                pairs.append(EntryExitPair(entry, exit_, cycle, p, r))
    return pairs


def _first_disjoint(left: dict[int, VertexPath], right: dict[int, VertexPath]):
    for lm, lp in left.items():
        for rm, rp in right.items():
            if not lm & rm:
                return lp, rp
    return None


def is_entry_exit(inst: Instance, cycle: Cycle, entry: int, exit_: int, budget: int | None = None) -> bool:
    """Targeted check of the four entry-exit conditions for one ordered pair."""
    return _targeted_witness(inst, bits(cycle), entry, exit_, _Budget(budget or DEFAULT_SEARCH_BUDGET)) is not None


def _targeted_witness(inst: Instance, cmask: int, a: int, b: int, budget: _Budget):
    s, t = inst.s, inst.t
    if a == b:
        return None
    if cmask >> s & 1 and a != s:
        return None
    if cmask >> t & 1 and b != t:
        return None
    blocked = cmask & ~(1 << a) & ~(1 << b)
    return disjoint_prefix_suffix(inst.graph, s, a, b, t, blocked, budget)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _candidate_pairs(cycle: Cycle, on_cycle: int) -> Iterator[tuple[int, int]]:
    """Ordered pairs (a, b) that leave no tracker in cycle minus {a, b}."""
    tracked = members(on_cycle)
    if len(tracked) == 2:
        x, y = tracked
        yield x, y
        yield y, x
    elif len(tracked) == 1:
        (x,) = tracked
        for y in cycle:
            if y != x:
                yield x, y
                yield y, x
    elif not tracked:
        for x in cycle:
            for y in cycle:
                if x != y:
                    yield x, y


class CycleOracle:
    """Cycle-based verifier: every simple cycle must be tracked.

    Without a hint every cycle and every entry-exit pair is enumerated, and
    each pair is stored as its requirement bitset (cycle minus the pair): a
    set is tracking iff it meets every requirement.  With a ``hint`` tracker
    set only cycles carrying at most two hint trackers are examined, since a
    cycle with three trackers is tracked whatever its entry-exit pairs are.

    ``cycles`` and ``side_cache`` let callers share work between instances
    on the same graph: side paths depend only on the start vertex and the
    cycle, so one cache dict may serve every terminal pair of a graph.
    """

    def __init__(
        self,
        inst: Instance,
        hint: Iterable[int] | None = None,
        cap: int | None = None,
        cycles: list[Cycle] | None = None,
        budget: int | None = None,
        side_cache: dict | None = None,
    ):
        self.inst = inst
        self._sides = {} if side_cache is None else side_cache
        if cap is None:
            cap = default_caps()["cycles"]
        self._budget = _Budget(budget or DEFAULT_SEARCH_BUDGET)
        self.hint = None if hint is None else bits(hint)
        if cycles is None:
            if self.hint is None:
                cycles = enumerate_simple_cycles(inst.graph, cap)
            else:
                cycles = enumerate_simple_cycles(inst.graph, cap, marked=self.hint, max_marked=2)
        self.cycles = cycles
        # (requirement bitset, cycle, entry, exit)
        self.requirements: list[tuple[int, Cycle, int, int]] = []
        if self.hint is None:
            self._collect_all()
        else:
            self._collect_hinted()

    def _collect_all(self):
        g, s, t = self.inst.graph, self.inst.s, self.inst.t
        for cycle in self.cycles:
            cmask = bits(cycle)
            from_s = self._side(s, cmask)
            from_t = self._side(t, cmask)
            for a in sorted(from_s):
                sa = from_s[a]
                for b in sorted(from_t):
                    if a != b and _first_disjoint(sa, from_t[b]) is not None:
                        self.requirements.append((cmask & ~(1 << a) & ~(1 << b), cycle, a, b))

    def _side(self, start: int, cmask: int):
        key = (start, cmask)
        if key not in self._sides:
            self._sides[key] = _side_paths(self.inst.graph, start, cmask, self._budget)
        return self._sides[key]

    def _collect_hinted(self):
        for cycle in self.cycles:
            cmask = bits(cycle)
            for a, b in _candidate_pairs(cycle, cmask & self.hint):
                if _targeted_witness(self.inst, cmask, a, b, self._budget) is not None:
                    self.requirements.append((cmask & ~(1 << a) & ~(1 << b), cycle, a, b))

    def minimal_requirements(self) -> list[int]:
        """Inclusion-minimal requirement bitsets, sorted."""
        reqs = sorted({r for r, *_ in self.requirements}, key=lambda r: (_popcount(r), r))
        kept: list[int] = []
        for r in reqs:
            if not any(k & r == k for k in kept):
                kept.append(r)
        return sorted(kept)

    def untracked(self, trackers: Iterable[int] | int):
        """First (cycle, entry, exit) left untracked, or None."""
        tmask = trackers if isinstance(trackers, int) else bits(trackers)
        for req, cycle, a, b in self.requirements:
            if not req & tmask:
                return cycle, a, b
        return None

    def is_tracking(self, trackers: Iterable[int] | int) -> bool:
        return self.untracked(trackers) is None


class PathOracle:
    """Definition-based verifier over the full list of simple s-t paths."""

    def __init__(self, inst: Instance, cap: int | None = None):
        self.inst = inst
        self.paths = enumerate_st_paths(inst, cap)

    def collision(self, trackers: Iterable[int] | int):
        """Two distinct paths with equal tracker sequences, or None."""
        tmask = trackers if isinstance(trackers, int) else bits(trackers)
        seen: dict[tuple[int, ...], VertexPath] = {}
        for p in self.paths:
            key = tuple(v for v in p if tmask >> v & 1)
            other = seen.get(key)
            if other is not None:
                return other, p
            seen[key] = p
        return None

    def is_tracking(self, trackers: Iterable[int] | int) -> bool:
        return self.collision(trackers) is None


class DetourOracle:
    """Violation search: an entry s', an exit t', two distinct s'-t' detours
    free of trackers except possibly at s' and t', and a prefix s..s' and
    suffix t'..t that avoid the detours and each other.

    Detours are searched as internally disjoint path pairs (any two distinct
    s'-t' paths contain such a pair in their union).  With a ``hint`` the
    detour interiors are restricted to vertices outside the hint, which is
    the only case a violation for that tracker set can use.
    """

    def __init__(
        self,
        inst: Instance,
        hint: Iterable[int] | None = None,
        budget: int | None = None,
        pair_cache: dict | None = None,
    ):
        """``pair_cache`` may be shared by every terminal pair of one graph:
        it then holds detour pairs of the whole graph, and each oracle keeps
        those whose interiors avoid its own s and t."""
        self.inst = inst
        self.hint = 0 if hint is None else bits(hint)
        if self.hint and pair_cache is not None:
            raise ValueError("a shared pair cache cannot be combined with a hint")
        self._budget = _Budget(budget or DEFAULT_SEARCH_BUDGET)
        self._st = 1 << inst.s | 1 << inst.t
        if pair_cache is None:
            self._pairs_cache: dict = {}
            self._forbidden = self.hint | self._st
        else:
            self._pairs_cache = pair_cache
            self._forbidden = 0
        self._cache: dict[tuple[int, int], list] = {}
        self._ends_cache: dict[tuple[int, int, int], tuple | None] = {}
        self._flat: list = []
        self._pending: Iterator | None = self._scan()

    def _detours(self, a: int, b: int) -> list[tuple[int, VertexPath, VertexPath]]:
        """[(interior bitset, detour, detour)] for pair (a, b), one per
        inclusion-minimal union of interiors.

        A pair whose interior contains another's is dominated: it meets more
        tracker sets and blocks more of the prefix/suffix search.  Routes
        avoid s and t, so the (b, a) list is the (a, b) list reversed.
        """
        if (a, b) in self._cache:
            return self._cache[(a, b)]
        if a > b:
            out = [(u, q[::-1], q2[::-1]) for u, q, q2 in self._detours(b, a)]
            self._cache[(a, b)] = out
            return out
        st = self._st
        out = [item for item in self._pairs(a, b) if not item[0] & st]
        minimal: list[int] = []
        for union in sorted({item[0] for item in out}, key=_popcount):
            if not any(m & union == m for m in minimal):
                minimal.append(union)
        keep = set(minimal)
        out = [item for item in out if item[0] in keep]
        self._cache[(a, b)] = out
        return out

    def _pairs(self, a: int, b: int) -> list[tuple[int, VertexPath, VertexPath]]:
        """Internally disjoint a-b route pairs, first pair per union, a < b."""
        key = ("pairs", a, b)
        if key in self._pairs_cache:
            return self._pairs_cache[key]
        out = []
        routes = [(bits(q[1:-1]), q) for q in self._routes_from(a).get(b, ())]
        seen_union = set()
        for i, (qi, q) in enumerate(routes):
            for q2i, q2 in routes[i + 1 :]:
                if qi & q2i:
                    continue
                union = qi | q2i
                if union in seen_union:
                    continue
                seen_union.add(union)
                out.append((union, q, q2))
        self._pairs_cache[key] = out
        return out

    def _scan(self) -> Iterator[tuple[int, int, int, VertexPath, VertexPath]]:
        """(entry, exit, interior, detour, detour) in scan order."""
        inst = self.inst
        g, s, t = inst.graph, inst.s, inst.t
        # the entry meets two detours and the prefix on distinct edges unless
        # it is s; likewise the exit unless it is t
        entries = [a for a in range(inst.n) if a != t and (a == s or g.degree(a) >= 3)]
        exits = [b for b in range(inst.n) if b != s and (b == t or g.degree(b) >= 3)]
        for a in entries:
            for b in exits:
                if a != b:
                    for u, q, q2 in self._detours(a, b):
                        yield a, b, u, q, q2

    def _candidates(self) -> Iterator[tuple[int, int, int, VertexPath, VertexPath]]:
        """The scan, produced lazily once and replayed from a list after."""
        flat = self._flat
        i = 0
        while True:
            if i == len(flat):
                if self._pending is None:
                    return
                item = next(self._pending, None)
                if item is None:
                    self._pending = None
                    return
                flat.append(item)
            yield flat[i]
            i += 1

    def _ends(self, a: int, b: int, union: int):
        """Prefix and suffix avoiding ``union``, searched once per query."""
        key = (a, b, union)
        if key not in self._ends_cache:
            inst = self.inst
            self._ends_cache[key] = disjoint_prefix_suffix(inst.graph, inst.s, a, b, inst.t, union, self._budget)
        return self._ends_cache[key]

    def _routes_from(self, a: int) -> dict[int, list[VertexPath]]:
        """Every simple path from ``a`` whose interior avoids the forbidden
        set, grouped by its last vertex (one DFS serves every exit)."""
        key = ("routes", a)
        if key in self._pairs_cache:
            return self._pairs_cache[key]
        adj = self.inst.graph.adj
        forbidden = self._forbidden & ~(1 << a)
        out: dict[int, list[VertexPath]] = {}
        path = [a]
        on_path = 1 << a
        stack = [iter(adj[a])]
        while stack:
            self._budget.spend()
            for w in stack[-1]:
                if on_path >> w & 1:
                    continue
                out.setdefault(w, []).append((*path, w))
                if forbidden >> w & 1:
                    continue
                path.append(w)
                on_path |= 1 << w
                stack.append(iter(adj[w]))
                break
            else:
                stack.pop()
                on_path &= ~(1 << path.pop())
        self._pairs_cache[key] = out
        return out

    def find(self, trackers: Iterable[int] | int) -> Violation | None:
        tmask = trackers if isinstance(trackers, int) else bits(trackers)
        if self.hint and self.hint & ~tmask:
            raise ValueError("hinted oracle only answers for supersets of its hint")
        scan = self._flat if self._pending is None else self._candidates()
        for a, b, interior, q, q2 in scan:
            if interior & tmask:
                continue
            ends = self._ends(a, b, interior)
            if ends is not None:
                return Violation(a, b, q, q2, *ends)
        return None


def _tmask(trackers: Iterable[int]) -> int:
    return bits(trackers)


def verify_by_definition(inst: Instance, trackers: Iterable[int], cap: int | None = None) -> bool:
    """True iff all simple s-t paths induce pairwise distinct tracker sequences."""
    return PathOracle(inst, cap).is_tracking(_tmask(trackers))


def verify_by_cycles(inst: Instance, trackers: Iterable[int], cap: int | None = None) -> bool:
    """True iff every simple cycle is tracked."""
    tmask = _tmask(trackers)
    return CycleOracle(inst, hint=members(tmask), cap=cap).is_tracking(tmask)


def find_violation(inst: Instance, trackers: Iterable[int], budget: int | None = None) -> Violation | None:
    """First violation witness, scanning (entry, exit) in increasing id order."""
    tmask = _tmask(trackers)
    return DetourOracle(inst, hint=members(tmask), budget=budget).find(tmask)


def is_cycle_tracked(inst: Instance, cycle: Cycle, trackers: Iterable[int], budget: int | None = None) -> bool:
    """True iff every entry-exit pair of ``cycle`` has a tracker on the cycle
    outside the pair."""
    tmask = _tmask(trackers)
    cmask = bits(cycle)
    b = _Budget(budget or DEFAULT_SEARCH_BUDGET)
    for a, c in _candidate_pairs(tuple(cycle), cmask & tmask):
        if _targeted_witness(inst, cmask, a, c, b) is not None:
            return False
    return True


def verify(inst: Instance, trackers: Iterable[int], method: str = "cycles") -> bool:
    if method == "def":
        return verify_by_definition(inst, trackers)
    if method == "cycles":
        return verify_by_cycles(inst, trackers)
    if method == "witness":
        return find_violation(inst, trackers) is None
    raise ValueError(f"unknown method {method!r}")
