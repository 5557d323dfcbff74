"""One pass over the desk-scale suites, shared by acceptance criteria 1-3.

Every instance is checked once: the three verifiers are compared on sampled
tracker sets, the exact optimum is computed with and without reductions,
and Algorithm A is run.  Cycles are enumerated once per graph and reused for
every terminal pair, and so are the detour pairs of the witness search.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from catalog import connected_graphs, is_planar, terminal_pairs

from trackpath.approx import algorithm_a
from trackpath.exact import min_hitting_set, min_tracking_set
from trackpath.graph import Instance, bits, enumerate_simple_cycles
from trackpath.instancegen import gen_random_planar
from trackpath.reduce import reduce_fully
from trackpath.verify import CycleOracle, DetourOracle, PathOracle

SUBSETS = 50
RANDOM_COUNT = 500


def random_suite(count: int = RANDOM_COUNT) -> list[Instance]:
    """Seeded random planar instances with 4 <= n <= 12."""
    return [gen_random_planar(4 + seed % 9, seed) for seed in range(count)]


def sample_masks(n: int, rng: random.Random, k: int = SUBSETS) -> list[int]:
    if 1 << n <= k:
        return list(range(1 << n))
    return rng.sample(range(1 << n), k)


@dataclass
class Tally:
    instances: int = 0
    checks: int = 0
    disagreements: list = field(default_factory=list)
    verify_seconds: float = 0.0
    safety_failures: list = field(default_factory=list)
    approx_infeasible: list = field(default_factory=list)
    upper_failures: list = field(default_factory=list)  # (inst, alg, faces)
    upper_checked: int = 0
    lower_failures: list = field(default_factory=list)
    ratio_failures: list = field(default_factory=list)
    planar_checked: int = 0
    nonplanar_skipped: int = 0


def check(
    inst: Instance, cycles, sides: dict, pairs: dict, planar: bool, rng: random.Random, tally: Tally
) -> None:
    tally.instances += 1
    start = time.perf_counter()
    paths = PathOracle(inst)
    cyc = CycleOracle(inst, cycles=cycles, side_cache=sides)
    det = DetourOracle(inst, pair_cache=pairs)
    for mask in sample_masks(inst.n, rng):
        a = paths.is_tracking(mask)
        b = cyc.is_tracking(mask)
        c = det.find(mask) is None
        tally.checks += 1
        if not a == b == c:
            tally.disagreements.append((inst, mask, a, b, c))
    tally.verify_seconds += time.perf_counter() - start

    # criterion 2: exact optimum before and after reductions
    cands = [v for v in range(inst.n) if v not in (inst.s, inst.t)]
    opt = len(min_hitting_set(cyc.minimal_requirements(), cands))
    small, trace = reduce_fully(inst)
    inner = min_tracking_set(small, reduce=False)
    lifted = trace.lift(inner)
    if opt != len(inner) + len(trace.forced_trackers) or not paths.is_tracking(bits(lifted)):
        tally.safety_failures.append((inst, opt, len(inner), len(trace.forced_trackers)))

    # criterion 3
    cert = algorithm_a(inst)
    if not paths.is_tracking(bits(cert.trackers)):
        tally.approx_infeasible.append(inst)
    if not planar:
        tally.nonplanar_skipped += 1
        return
    tally.planar_checked += 1
    if cert.faces >= 2:
        tally.upper_checked += 1
        if not cert.upper_bound_holds():
            tally.upper_failures.append((inst, cert.alg_size, cert.faces))
    if opt < cert.opt_lower:
        tally.lower_failures.append((inst, opt, cert.opt_lower))
    if cert.alg_size > 4 * opt:
        tally.ratio_failures.append((inst, cert.alg_size, opt))


def run_suites(max_n: int = 8, random_count: int = RANDOM_COUNT, seed: int = 0) -> dict[str, Tally]:
    rng = random.Random(seed)
    catalog = Tally()
    for g in connected_graphs(max_n):
        cycles = enumerate_simple_cycles(g)
        planar = is_planar(g)
        sides: dict = {}
        pairs: dict = {}
        for s, t in terminal_pairs(g):
            check(Instance(g, s, t), cycles, sides, pairs, planar, rng, catalog)
    rand = Tally()
    for inst in random_suite(random_count):
        # planar by construction
        check(inst, enumerate_simple_cycles(inst.graph), {}, {}, True, rng, rand)
    return {"catalog": catalog, "random": rand}
