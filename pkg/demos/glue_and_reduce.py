"""Gadget glueing, and deciding m_t(G) > tau through the glued graph.

A 3-edge-colorable base lands above the threshold, a snark below it.
"""

from mcover.corpus import k4, petersen
from mcover.cover import mt_exact
from mcover.gadget import GlueRecipe, decide_via_reduction, gadget_profile, glue_all, glue_one
from mcover.matchings import enumerate_pms

g = glue_one(k4(), 0, "k4")
print(f"K4 glued onto an edge of K4: n={g.graph.n}, m={g.graph.m}, clones of edge 0: {g.clones[0]}")

# the compositional value agrees with brute force on the expanded graph
recipe = GlueRecipe.single(k4(), 0, "petersen")
glued = glue_all(recipe)
print("K4 + Petersen gadget, m_2 on the expanded graph:",
      mt_exact(glued.graph, 2, enumerate_pms(glued.graph)).value)

for kind in ("k4", "petersen"):
    prof = gadget_profile(kind, 2)
    print(f"{kind} profile t=2 (k_in, k_out) -> retained edges:", prof.values)

for t, tau in ((2, "5/8"), (3, "5/6"), (4, "143/150")):
    for base in (k4(), petersen()):
        d = decide_via_reduction(base, t, tau)
        p = d.params
        print(f"t={t} n={base.n:<3} a={p.a:<3} b={p.b:<3} |E'|={d.edges:<6} {d.summary()}")
