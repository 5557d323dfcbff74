"""Small named instances, networkx bridges and hypothesis strategies."""

from __future__ import annotations

import networkx as nx
from hypothesis import strategies as st

from trackpath.graph import Graph, Instance, from_edge_list
from trackpath.instancegen import gen_random_planar

# theta: s = 0, internal a = 1, b = 2, c = 3, t = 4
THETA = Instance(from_edge_list(5, [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)]), 0, 4)
TRIANGLE = Instance(from_edge_list(3, [(0, 1), (1, 2), (0, 2)]), 0, 2)  # s, v, t
SQUARE = Instance(from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 0, 2)  # s, u, t, v
PATH3 = Instance(from_edge_list(3, [(0, 1), (1, 2)]), 0, 2)
K4 = from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(to_nx(g))[0]


@st.composite
def graphs(draw, min_n: int = 2, max_n: int = 8, connected: bool = True) -> Graph:
    """Random simple graphs; connected ones get a random spanning tree first."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = set()
    if connected:
        for v in range(1, n):
            edges.add((draw(st.integers(0, v - 1)), v))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n)) if pairs else []
    edges |= set(extra)
    return from_edge_list(n, sorted(edges))


@st.composite
def instances(draw, min_n: int = 2, max_n: int = 8, connected: bool = True) -> Instance:
    g = draw(graphs(min_n, max_n, connected))
    s = draw(st.integers(0, g.n - 1))
    t = draw(st.integers(0, g.n - 2))
    if t >= s:
        t += 1
    return Instance(g, s, t)


@st.composite
def planar_instances(draw, min_n: int = 3, max_n: int = 10) -> Instance:
    return gen_random_planar(draw(st.integers(min_n, max_n)), draw(st.integers(0, 10**6)))


@st.composite
def instances_with_mask(draw, **kw) -> tuple[Instance, int]:
    inst = draw(instances(**kw))
    return inst, draw(st.integers(0, (1 << inst.n) - 1))
