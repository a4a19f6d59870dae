"""Witnesses for three matching conjectures on every corpus graph."""

from mcover.corpus import corpus
from mcover.cover import berge_fulkerson_search, conjecture3_search, fan_raspaud_search
from mcover.matchings import enumerate_pms

for g in corpus():
    G = g.graph
    pms = enumerate_pms(G)
    index = {M: i for i, M in enumerate(pms)}
    row = []
    for label, search in (("FR", fan_raspaud_search), ("C3", conjecture3_search), ("BF", berge_fulkerson_search)):
        w = search(G, pms)
        row.append(f"{label}={'-' if w is None else [index[M] for M in w]}")
    print(f"{g.name:<14}{len(pms):>4} pms  " + "  ".join(row))
