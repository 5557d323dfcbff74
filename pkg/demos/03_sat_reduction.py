"""Compiling one 3-SAT clause and watching its face get tracked.

Run: python demos/03_sat_reduction.py
"""

import itertools

from trackpath.exact import count_min_tracking_sets
from trackpath.graph import Instance
from trackpath.hardness import CnfFormula, build_variable_gadget, canonical_tracking_set, reduce_sat
from trackpath.verify import find_violation, is_cycle_tracked, verify_by_cycles

g, lab = build_variable_gadget(3)
opt, count = count_min_tracking_sets(Instance(g, lab.s, lab.t))
print(f"gadget m=3: {g.n} vertices, OPT {opt}, {count} minimum sets (true and false)")

formula = CnfFormula(3, ((1, -2, 3),))
red = reduce_sat(formula)
face = red.faces[0]
print(f"\nclause (x1 or not x2 or x3): n={red.instance.n}, m={red.instance.m}, T={red.target}")
print(f"clause face {face.cycle}, designated pair {face.designated_pair}")

for values in itertools.product((False, True), repeat=3):
    a = dict(zip((1, 2, 3), values))
    ts = canonical_tracking_set(red, a)
    tracked = is_cycle_tracked(red.instance, face.cycle, ts)
    valid = verify_by_cycles(red.instance, ts)
    print(f"x = {[int(v) for v in values]}  |set|={len(ts)}  face tracked {tracked}  tracking set {valid}")

bad = canonical_tracking_set(red, {1: False, 2: True, 3: False})
print("\nwitness for the falsifying assignment:")
print(find_violation(red.instance, bad).report())
