"""Exact m_t for the built-in graphs, with the witnessing tuples."""

import sys

from mcover.corpus import corpus
from mcover.cover import depth_profile, mt_exact
from mcover.matchings import enumerate_pms

t_max = int(sys.argv[1]) if len(sys.argv) > 1 else 5

print(f"{'graph':<14}{'#pm':>5}  " + "  ".join(f"{'m' + str(t):>7}" for t in range(1, t_max + 1)))
for g in corpus():
    G = g.graph
    pms = enumerate_pms(G)
    vals = [mt_exact(G, t, pms).value for t in range(1, t_max + 1)]
    print(f"{g.name:<14}{len(pms):>5}  " + "  ".join(f"{str(v):>7}" for v in vals))

# the depth profile of an optimal triple: how often each edge is used
G = next(g.graph for g in corpus() if g.name == "j5")
r = mt_exact(G, 3, enumerate_pms(G))
prof = depth_profile(G, r.witness)
print("\nJ5, best triple:", r.value, " eps =", [str(e) for e in prof.eps])
