"""Tracking sets on a theta graph: three verifiers, a violation, the optimum.

Run: python demos/01_tracking_basics.py
"""

from trackpath import Instance, find_violation, from_edge_list, verify_by_cycles, verify_by_definition
from trackpath.exact import count_min_tracking_sets, min_tracking_set
from trackpath.graph import enumerate_st_paths
from trackpath.verify import entry_exit_pairs

# s = 0, three parallel routes through 1, 2, 3, t = 4
theta = Instance(from_edge_list(5, [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)]), 0, 4)

print("s-t paths:", enumerate_st_paths(theta))
for pair in entry_exit_pairs(theta, (0, 1, 4, 2)):
    print(f"cycle 0-1-4-2 has entry {pair.entry} and exit {pair.exit}")

for trackers in ({1}, {1, 2}):
    by_def = verify_by_definition(theta, trackers)
    by_cyc = verify_by_cycles(theta, trackers)
    print(f"trackers {sorted(trackers)}: definition {by_def}, cycles {by_cyc}")
    v = find_violation(theta, trackers)
    if v is not None:
        print(v.report())
        p1, p2 = v.paths()
        print(f"  {p1} and {p2} both read {[x for x in p1 if x in trackers]}")

best = min_tracking_set(theta)
print("minimum tracking set:", sorted(best))
print("(OPT, number of minima):", count_min_tracking_sets(theta))
