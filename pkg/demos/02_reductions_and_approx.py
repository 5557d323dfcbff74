"""Reductions, Algorithm A and its face certificate on random planar graphs.

Run: python demos/02_reductions_and_approx.py
"""

from trackpath import algorithm_a, reduce_fully
from trackpath.exact import min_tracking_set
from trackpath.instancegen import gen_random_planar, gen_tight_alg, gen_tight_opt

inst = gen_random_planar(10, seed=6)
print(f"random instance: n={inst.n} m={inst.m} s={inst.s} t={inst.t}")
small, trace = reduce_fully(inst)
print(f"reduced: n={small.n} m={small.m}, forced trackers {sorted(trace.forced_trackers)}")
for line in trace.lines():
    if line.startswith("rule"):
        print("  " + line)

print("\nseed  n  ALG  OPT  LB  FACES")
for seed in range(8):
    inst = gen_random_planar(8 + seed % 4, seed)
    cert = algorithm_a(inst)
    opt = len(min_tracking_set(inst))
    # lower bound <= OPT <= ALG <= 4 OPT
    print(f"{seed:4d} {inst.n:2d} {cert.alg_size:4d} {opt:4d} {cert.opt_lower:3d} {cert.faces:6d}")

print("\ntight families")
for k in (1, 2, 3):
    opt_inst = gen_tight_opt(k)
    faces = opt_inst.m - opt_inst.n + 2
    cert = algorithm_a(gen_tight_alg(k))
    print(f"k={k}: OPT {len(min_tracking_set(opt_inst))} = |F|/2 = {faces // 2};"
          f" ALG {cert.alg_size} = 2(|F|-2) = {2 * (cert.faces - 2)}")
