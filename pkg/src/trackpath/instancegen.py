"""Instance families: the two tight examples and random planar graphs."""

from __future__ import annotations

import numpy as np

from .errors import BadParameter
from .graph import Instance, from_edge_list, reachable


def gen_tight_opt(k: int) -> Instance:
    """Bipyramid over a rim of k + 2 vertices, with s and t as the apexes.

    Every rim vertex must be tracked, so OPT = k + 2 = |F| / 2.
    Ids: s = 0, rim 1..k+2, t = k+3.
    """
    if k < 1:
        raise BadParameter("k must be at least 1")
    r = k + 2
    t = r + 1
    rim = range(1, r + 1)
    edges = [(0, i) for i in rim] + [(i, t) for i in rim] + [(i, i % r + 1) for i in rim]
    return Instance(from_edge_list(r + 2, edges), 0, t)


def gen_tight_alg(k: int) -> Instance:
    """Ladder with k + 1 rungs between s and t.

    Nothing reduces and every rung vertex has degree 3, so Algorithm A
    returns all 2k + 2 of them while |F| = k + 3.
    Ids: s = 0, top row 1..k+1, bottom row k+2..2k+2, t = 2k+3.
    """
    if k < 1:
        raise BadParameter("k must be at least 1")
    top = list(range(1, k + 2))
    bottom = list(range(k + 2, 2 * k + 3))
    t = 2 * k + 3
    edges = [(0, top[0]), (0, bottom[0]), (top[-1], t), (bottom[-1], t)]
    edges += list(zip(top, bottom))
    edges += list(zip(top, top[1:])) + list(zip(bottom, bottom[1:]))
    return Instance(from_edge_list(2 * k + 4, edges), 0, t)


def gen_random_planar(n: int, seed: int) -> Instance:
    """Random connected planar instance, deterministic in (n, seed).

    Grows a stacked triangulation by inserting each new vertex into a
    uniformly chosen face, then deletes a random number of edges, skipping
    any deletion that would disconnect the graph.
    """
    if n < 3:
        raise BadParameter("n must be at least 3")
    rng = np.random.default_rng(seed)
    faces = [(0, 1, 2), (0, 2, 1)]
    edges = {(0, 1), (1, 2), (0, 2)}
    for v in range(3, n):
        a, b, c = faces.pop(int(rng.integers(len(faces))))
        faces += [(a, b, v), (b, c, v), (c, a, v)]
        edges |= {(a, v), (b, v), (c, v)}
    order = sorted(edges)
    rng.shuffle(order)
    target = int(rng.integers(0, len(order) - (n - 1) + 1))
    kept = set(order)
    removed = 0
    for e in order:
        if removed == target:
            break
        trial = from_edge_list(n, kept - {e})
        if reachable(trial, 0) == (1 << n) - 1:
            kept.discard(e)
            removed += 1
    s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
    return Instance(from_edge_list(n, sorted(kept)), s, t)
