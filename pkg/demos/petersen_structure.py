"""The six perfect matchings of the Petersen graph and how they overlap."""

from itertools import combinations

from mcover.corpus import petersen
from mcover.matchings import enumerate_pms

G = petersen()
pms = enumerate_pms(G)
print(f"Petersen graph: n={G.n}, m={G.m}, girth={G.girth()}")
print(f"{len(pms)} perfect matchings:")
for i, M in enumerate(pms):
    print(f"  M{i}: " + " ".join(f"{G.edges[e][0]}-{G.edges[e][1]}" for e in M.edges))

bits = pms.bits
per_edge = {sum(b >> e & 1 for b in bits) for e in range(G.m)}
print("matchings through each edge:", sorted(per_edge))

# any two share one edge, so k matchings cover 5k minus the pairwise overlaps
for k in range(1, 7):
    sizes = set()
    for combo in combinations(bits, k):
        u = 0
        for b in combo:
            u |= b
        sizes.add(u.bit_count())
    print(f"union of {k}: {sorted(sizes)} edges")
