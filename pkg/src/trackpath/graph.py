"""Simple undirected graphs on dense integer ids, plus the enumeration
primitives (s-t paths, simple cycles, blocks) the solvers are built on.

Vertex sets are passed around internally as Python ints used as bitsets;
bit ``v`` is set when vertex ``v`` is a member.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BadParameter, CapExceeded, Disconnected, MalformedEdge

VertexPath = tuple[int, ...]
Cycle = tuple[int, ...]

DEFAULT_PATH_CAP = 10**6
DEFAULT_CYCLE_CAP = 10**6


def default_caps() -> dict[str, int]:
    """Enumeration caps, overridable as ``TRACKPATH_CAPS=paths=<n>,cycles=<n>``."""
    caps = {"paths": DEFAULT_PATH_CAP, "cycles": DEFAULT_CYCLE_CAP}
    raw = os.environ.get("TRACKPATH_CAPS", "").strip()
    if raw:
        for item in raw.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in caps or not value.strip().isdigit():
                raise BadParameter(f"bad TRACKPATH_CAPS entry {item!r}")
            caps[key] = int(value)
    return caps


def bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[v]`` is the sorted tuple of neighbours."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(bits(a) for a in self.adj)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return reachable(self, 0) == (1 << self.n) - 1

    def relabeled(self, order: Sequence[int]) -> "Graph":
        """Subgraph induced on ``order``, with ``order[i]`` renamed to ``i``."""
        new_id = {old: i for i, old in enumerate(order)}
        adj = []
        for old in order:
            adj.append(tuple(sorted(new_id[w] for w in self.adj[old] if w in new_id)))
        return Graph(len(order), tuple(adj))


@dataclass(frozen=True)
class Instance:
    graph: Graph
    s: int
    t: int

    def __post_init__(self):
        n = self.graph.n
        if not (0 <= self.s < n and 0 <= self.t < n):
            raise BadParameter(f"terminals ({self.s}, {self.t}) out of range for n={n}")
        if self.s == self.t:
            raise BadParameter("source and destination must differ")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, rejecting self-loops, duplicates and out-of-range ids."""
    if n < 0:
        raise BadParameter("vertex count must be non-negative")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedEdge(u, v, "vertex id out of range")
        if u == v:
            raise MalformedEdge(u, v, "self-loop")
        if v in adj[u]:
            raise MalformedEdge(u, v, "duplicate edge")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


def reachable(g: Graph, start: int, blocked: int = 0) -> int:
    """Bitset of vertices reachable from ``start`` avoiding ``blocked``."""
    masks = g.masks
    seen = 1 << start
    frontier = seen
    allowed = ~blocked
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def canonical_cycle(vertices: Sequence[int]) -> Cycle:
    """Rotate/reflect a cyclic vertex sequence into its canonical form."""
    k = len(vertices)
    if k < 3:
        raise BadParameter("a cycle needs at least 3 vertices")
    i = min(range(k), key=vertices.__getitem__)
    fwd = [vertices[(i + j) % k] for j in range(k)]
    if fwd[1] > fwd[-1]:
        fwd = [fwd[0]] + fwd[:0:-1]
    return tuple(fwd)


def enumerate_st_paths(inst: Instance, cap: int | None = None) -> list[VertexPath]:
    """All simple s-t paths, in lexicographic order."""
    if cap is None:
        cap = default_caps()["paths"]
    if cap <= 0:
        raise BadParameter("cap must be positive")
    adj = inst.graph.adj
    s, t = inst.s, inst.t
    out: list[VertexPath] = []
    path = [s]
    visited = 1 << s
    stack = [iter(adj[s])]
    while stack:
        for w in stack[-1]:
            if visited >> w & 1:
                continue
            if w == t:
                out.append((*path, t))
                if len(out) > cap:
                    raise CapExceeded("s-t paths", cap)
                continue
            path.append(w)
            visited |= 1 << w
            stack.append(iter(adj[w]))
            break
        else:
            stack.pop()
            visited &= ~(1 << path.pop())
    return out


def enumerate_simple_cycles(
    g: Graph, cap: int | None = None, marked: int = 0, max_marked: int | None = None
) -> list[Cycle]:
    """All simple cycles in canonical form, each exactly once.

    With ``max_marked`` set, only cycles holding at most that many vertices of
    the ``marked`` bitset are produced (the search prunes on the fly).
    """
    if cap is None:
        cap = default_caps()["cycles"]
    if cap <= 0:
        raise BadParameter("cap must be positive")
    limit = g.n + 1 if max_marked is None else max_marked
    adj = g.adj
    out: list[Cycle] = []
    for root in range(g.n):
        root_marked = marked >> root & 1
        if root_marked > limit:
            continue
        # only vertices above root may appear, so each cycle is rooted at its minimum
        path = [root]
        visited = 1 << root
        used = [root_marked]
        stack = [iter(adj[root])]
        while stack:
            for w in stack[-1]:
                if w < root:
                    continue
                if w == root:
                    if len(path) >= 3 and path[1] < path[-1]:
                        out.append(tuple(path))
                        if len(out) > cap:
                            raise CapExceeded("simple cycles", cap)
                    continue
                if visited >> w & 1:
                    continue
                k = used[-1] + (marked >> w & 1)
                if k > limit:
                    continue
                path.append(w)
                used.append(k)
                visited |= 1 << w
                stack.append(iter(adj[w]))
                break
            else:
                stack.pop()
                used.pop()
                visited &= ~(1 << path.pop())
    return out


def biconnected_components(
    g: Graph, allowed: int | None = None, roots: Iterable[int] | None = None
) -> tuple[list[frozenset[tuple[int, int]]], frozenset[int]]:
    """Blocks (as edge sets, edges written ``(u, v)`` with ``u < v``) and cut vertices.

    ``allowed`` restricts the computation to an induced subgraph and
    ``roots`` to the components containing the given vertices.
    """
    n = g.n
    adj = g.adj
    if allowed is None:
        allowed = (1 << n) - 1
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[tuple[int, int]]] = []
    cuts: set[int] = set()
    counter = 0
    for root in range(n) if roots is None else roots:
        if disc[root] != -1 or not allowed >> root & 1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent or not allowed >> w & 1:
                    continue
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                block = set()
                while True:
                    a, b = edge_stack.pop()
                    block.add((a, b) if a < b else (b, a))
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(block))
        if root_children > 1:
            cuts.add(root)
    return blocks, frozenset(cuts)


def st_path_edges(
    g: Graph, s: int, t: int, allowed: int | None = None
) -> set[tuple[int, int]] | None:
    """Edges lying on some simple s-t path (inside ``allowed`` if given).

    An edge lies on a simple s-t path iff its block is on the block-cut-tree
    path between s and t.  Returns None when s and t are disconnected.
    """
    blocks, cuts = biconnected_components(g, allowed, (s,))
    # tree nodes: ("b", i) for blocks, ("c", v) for cut vertices
    tree: dict[tuple[str, int], list[tuple[str, int]]] = {}
    home: dict[int, int] = {}
    for i, block in enumerate(blocks):
        tree[("b", i)] = []
        for v in {x for e in block for x in e}:
            home.setdefault(v, i)
            if v in cuts:
                tree[("b", i)].append(("c", v))
                tree.setdefault(("c", v), []).append(("b", i))

    def node(v):
        if v in cuts:
            return ("c", v)
        if v in home:
            return ("b", home[v])
        return None

    src, dst = node(s), node(t)
    if src is None or dst is None:
        return None
    parent = {src: src}
    queue = [src]
    for x in queue:
        if x == dst:
            break
        for y in tree.get(x, ()):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if dst not in parent:
        return None
    keep: set[tuple[int, int]] = set()
    x = dst
    while True:
        if x[0] == "b":
            keep |= blocks[x[1]]
        if x == src:
            break
        x = parent[x]
    return keep


def path_support(g: Graph, s: int, t: int, allowed: int | None = None) -> int:
    """Bitset of vertices on some simple s-t path inside ``allowed``; 0 if none."""
    edges = st_path_edges(g, s, t, allowed)
    if edges is None:
        return 0
    mask = 0
    for u, v in edges:
        mask |= 1 << u | 1 << v
    return mask


def face_count(g: Graph) -> int:
    """Number of faces of a connected planar graph by Euler's formula.

    Planarity is the caller's promise; it is not checked.
    """
    if not g.is_connected():
        raise Disconnected("face count needs a connected graph")
    return g.m - g.n + 2
