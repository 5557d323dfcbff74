"""Safe reductions for the tracking problem.

Rule 1 removes every vertex and edge that lies on no simple s-t path.
Rule 2 contracts one of two adjacent degree-2 vertices.  Rule 3 tracks and
removes a degree-2 vertex whose neighbours are adjacent.  Rule 4 tracks and
removes one of two degree-2 vertices with the same two neighbours.  Rules
2-4 are only sound after rule 1 and never make rule 1 applicable again.

All rules work on a private copy.  Vertices removed during a call are
tombstoned and ids are compacted once at the end; the returned trace maps
compacted ids back to the caller's ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyResult, PreconditionViolated
from .graph import Graph, Instance, from_edge_list, st_path_edges

Edge = tuple[int, int]


def _e(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ReductionStep:
    rule: int
    removed_vertices: tuple[int, ...] = ()
    removed_edges: tuple[Edge, ...] = ()
    added_edges: tuple[Edge, ...] = ()
    forced_trackers: tuple[int, ...] = ()


@dataclass(frozen=True)
class ReductionTrace:
    """Steps in the ids of the reduced call's input; ``id_map[new] = old``."""

    steps: tuple[ReductionStep, ...]
    id_map: tuple[int, ...]

    @property
    def forced_trackers(self) -> frozenset[int]:
        return frozenset(v for step in self.steps for v in step.forced_trackers)

    def lift(self, vertices: Iterable[int]) -> frozenset[int]:
        """Map reduced ids back and add the forced trackers."""
        return frozenset(self.id_map[v] for v in vertices) | self.forced_trackers

    def then(self, later: "ReductionTrace") -> "ReductionTrace":
        """Compose with a trace recorded on this trace's output."""
        m = self.id_map

        def vs(xs):
            return tuple(m[x] for x in xs)

        def es(xs):
            return tuple(_e(m[u], m[v]) for u, v in xs)

        mapped = tuple(
            ReductionStep(
                st.rule,
                vs(st.removed_vertices),
                es(st.removed_edges),
                es(st.added_edges),
                vs(st.forced_trackers),
            )
            for st in later.steps
        )
        return ReductionTrace(self.steps + mapped, tuple(m[x] for x in later.id_map))

    def replay(self, inst: Instance) -> Instance:
        """Re-apply the recorded steps to the original instance."""
        adj = [set(a) for a in inst.graph.adj]
        alive = [True] * inst.n
        for st in self.steps:
            for u, v in st.removed_edges:
                adj[u].discard(v)
                adj[v].discard(u)
            for u, v in st.added_edges:
                adj[u].add(v)
                adj[v].add(u)
            for v in st.removed_vertices:
                if adj[v]:
                    raise ValueError(f"replayed removal of non-isolated vertex {v}")
                alive[v] = False
        kept = [v for v in range(inst.n) if alive[v]]
        if tuple(kept) != self.id_map:
            raise ValueError("trace id map does not match replay")
        return _compact(adj, kept, inst.s, inst.t)

    def lines(self) -> list[str]:
        out = []
        for st in self.steps:
            r = st.rule
            out += [f"rule {r} track {v}" for v in st.forced_trackers]
            out += [f"rule {r} edge- {u} {v}" for u, v in st.removed_edges]
            out += [f"rule {r} edge+ {u} {v}" for u, v in st.added_edges]
            out += [f"rule {r} drop {v}" for v in st.removed_vertices]
        out += [f"map {new} {old}" for new, old in enumerate(self.id_map)]
        return out


def _compact(adj: Sequence[set[int]], kept: Sequence[int], s: int, t: int) -> Instance:
    new_id = {old: i for i, old in enumerate(kept)}
    edges = [(new_id[u], new_id[v]) for u in kept for v in adj[u] if u < v]
    return Instance(from_edge_list(len(kept), edges), new_id[s], new_id[t])


class _Work:
    """Mutable working copy with tombstoned vertices."""

    def __init__(self, inst: Instance):
        self.s, self.t = inst.s, inst.t
        self.adj = [set(a) for a in inst.graph.adj]
        self.alive = [True] * inst.n
        self.steps: list[ReductionStep] = []

    def deg(self, v: int) -> int:
        return len(self.adj[v])

    def terminal(self, v: int) -> bool:
        return v == self.s or v == self.t

    def _drop(self, v: int) -> tuple[Edge, ...]:
        removed = tuple(sorted(_e(v, w) for w in self.adj[v]))
        for w in self.adj[v]:
            self.adj[w].discard(v)
        self.adj[v].clear()
        self.alive[v] = False
        return removed

    def finish(self) -> tuple[Instance, ReductionTrace]:
        kept = [v for v, ok in enumerate(self.alive) if ok]
        inst = _compact(self.adj, kept, self.s, self.t)
        return inst, ReductionTrace(tuple(self.steps), tuple(kept))

    def graph_snapshot(self) -> tuple[Graph, list[int]]:
        kept = [v for v, ok in enumerate(self.alive) if ok]
        return _compact(self.adj, kept, self.s, self.t).graph, kept

    # rule 1 -----------------------------------------------------------
    def rule1(self) -> bool:
        g, kept = self.graph_snapshot()
        index = {old: i for i, old in enumerate(kept)}
        keep_edges = st_path_edges(g, index[self.s], index[self.t])
        if keep_edges is None:
            raise EmptyResult("s and t are not connected")
        keep_vertices = {x for e in keep_edges for x in e} | {index[self.s], index[self.t]}
        removed_edges = sorted(
            _e(kept[u], kept[v]) for u, v in g.edges if (u, v) not in keep_edges
        )
        removed_vertices = sorted(kept[v] for v in range(g.n) if v not in keep_vertices)
        if not removed_edges and not removed_vertices:
            return False
        for u, v in removed_edges:
            self.adj[u].discard(v)
            self.adj[v].discard(u)
        for v in removed_vertices:
            self.alive[v] = False
        self.steps.append(
            ReductionStep(1, tuple(removed_vertices), tuple(removed_edges))
        )
        return True

    # rule 2 -----------------------------------------------------------
    def rule2(self) -> bool:
        for u, alive in enumerate(self.alive):
            if not alive or self.terminal(u) or self.deg(u) != 2:
                continue
            for v in sorted(self.adj[u]):
                if v < u or self.terminal(v) or self.deg(v) != 2:
                    continue
                (far,) = self.adj[v] - {u}
                if far in self.adj[u]:
                    raise PreconditionViolated(
                        f"contracting {v} would duplicate edge ({u}, {far}); run rule 1 first"
                    )
                removed = self._drop(v)
                self.adj[u].add(far)
                self.adj[far].add(u)
                self.steps.append(ReductionStep(2, (v,), removed, (_e(u, far),)))
                return True
        return False

    # rule 3 -----------------------------------------------------------
    def rule3(self) -> bool:
        for v, alive in enumerate(self.alive):
            if not alive or self.terminal(v) or self.deg(v) != 2:
                continue
            x, y = self.adj[v]
            if y in self.adj[x]:
                removed = self._drop(v)
                self.steps.append(ReductionStep(3, (v,), removed, (), (v,)))
                return True
        return False

    # rule 4 -----------------------------------------------------------
    def rule4(self) -> bool:
        seen: dict[frozenset[int], int] = {}
        for v, alive in enumerate(self.alive):
            if not alive or self.terminal(v) or self.deg(v) != 2:
                continue
            key = frozenset(self.adj[v])
            if key in seen:
                u = seen[key]  # lower id of the pair
                removed = self._drop(u)
                self.steps.append(ReductionStep(4, (u,), removed, (), (u,)))
                return True
            seen[key] = v
        return False


def st_path_edges_bruteforce(inst: Instance) -> set[tuple[int, int]]:
    """Oracle for :func:`st_path_edges` by marking every enumerated path."""
    from .graph import enumerate_st_paths

    keep = set()
    for p in enumerate_st_paths(inst):
        keep.update(_e(a, b) for a, b in zip(p, p[1:]))
    return keep


_RULES = {1: _Work.rule1, 2: _Work.rule2, 3: _Work.rule3, 4: _Work.rule4}


def _run(inst: Instance, rules: Sequence[int], first_rule1: bool = False):
    w = _Work(inst)
    if first_rule1:
        w.rule1()
    while True:
        for r in rules:
            if _RULES[r](w):
                break
        else:
            return w.finish()


def reduction1(inst: Instance) -> tuple[Instance, ReductionTrace]:
    w = _Work(inst)
    w.rule1()
    return w.finish()


def reduction2(inst: Instance) -> tuple[Instance, ReductionTrace]:
    return _run(inst, (2,))


def reduction3(inst: Instance) -> tuple[Instance, ReductionTrace]:
    return _run(inst, (3,))


def reduction4(inst: Instance) -> tuple[Instance, ReductionTrace]:
    return _run(inst, (4,))


def reduce_fully(
    inst: Instance, order: Sequence[int] = (2, 3, 4)
) -> tuple[Instance, ReductionTrace]:
    """Rule 1 once, then rules 2-4 round-robin in ``order`` until none applies."""
    if sorted(order) != [2, 3, 4]:
        raise ValueError("order must be a permutation of (2, 3, 4)")
    return _run(inst, tuple(order), first_rule1=True)
