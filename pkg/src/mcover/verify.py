"""Per-instance checks of the coverage inequalities, Petersen structure and clone parity."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .corpus import k33, k4, petersen, prism, triple_edge
from .cover import mt_exact
from .errors import InconsistencyError
from .gadget import GlueRecipe, glue_all, lift_pms, restrict_pm
from .graph import CubicGraph
from .matchings import MatchingList, enumerate_pms, is_perfect_matching

F = Fraction


def inequality_checks(mt: dict[int, Fraction]) -> dict[str, bool]:
    """Evaluate every inequality between m_1..m_5 of a single graph.

    ``mt`` maps t to the exact m_t(G). Keys of the result name the
    inequality being tested.
    """
    m1, m2, m3, m4, m5 = (mt[t] for t in range(1, 6))
    out = {
        "m1 == 1/3": m1 == F(1, 3),
        "m2 >= 3/5": m2 >= F(3, 5),
        "m2 >= m3/2 + 1/6": m2 >= m3 / 2 + F(1, 6),
        "m3 >= 3/4 m4 + 1/12": m3 >= F(3, 4) * m4 + F(1, 12),
        "m4 >= 4/5 m5 + 1/15": m4 >= F(4, 5) * m5 + F(1, 15),
        "m2 >= 5/12 m4 + 7/36": m2 >= F(5, 12) * m4 + F(7, 36),
        "m4 == 1 implies m2 >= 11/18": m4 != 1 or m2 >= F(11, 18),
        "m4 == 1 implies m3 >= 5/6": m4 != 1 or m3 >= F(5, 6),
    }
    for t in range(1, 5):
        out[f"m{t} <= m{t + 1}"] = mt[t] <= mt[t + 1]
    for t in range(1, 6):
        out[f"m{t} <= min(1, {t}/3)"] = mt[t] <= min(F(1), F(t, 3))
    return out


def inequality_report(G: CubicGraph, pms: MatchingList | None = None, workers: int = 1) -> dict:
    if pms is None:
        pms = enumerate_pms(G)
    mt = {t: mt_exact(G, t, pms, workers=workers) for t in range(1, 6)}
    checks = inequality_checks({t: r.value for t, r in mt.items()})
    return {
        "values": {str(t): f"{r.value.numerator}/{r.value.denominator}" for t, r in mt.items()},
        "exact": all(r.exact for r in mt.values()),
        "checks": checks,
        "ok": all(checks.values()),
    }


def petersen_structure() -> dict:
    """Matching counts of the Petersen graph, computed from scratch."""
    G = petersen()
    pms = enumerate_pms(G)
    bits = pms.bits
    per_edge = [sum(b >> e & 1 for b in bits) for e in range(G.m)]

    def unions(k: int) -> set[int]:
        out = set()
        for combo in combinations(bits, k):
            u = 0
            for b in combo:
                u |= b
            out.add(u.bit_count())
        return out

    return {
        "pm_count": len(pms),
        "edge_multiplicities": sorted(set(per_edge)),
        "pair_intersections": sorted({(x & y).bit_count() for x, y in combinations(bits, 2)}),
        "union_sizes": {k: sorted(unions(k)) for k in range(2, 5)},
    }


def petersen_structure_ok(facts: dict) -> bool:
    return (
        facts["pm_count"] == 6
        and facts["edge_multiplicities"] == [2]
        and facts["pair_intersections"] == [1]
        and facts["union_sizes"] == {2: [9], 3: [12], 4: [14]}
    )


_SMALL_BASES = (k4, k33, prism, triple_edge)


def random_recipe(rng: random.Random, max_copies: int = 3) -> GlueRecipe:
    base = rng.choice(_SMALL_BASES)()
    per = [[0, 0] for _ in range(base.m)]
    for _ in range(rng.randint(1, max_copies)):
        e = rng.randrange(base.m)
        per[e][rng.random() < 0.5] += 1
    return GlueRecipe(base, tuple((a, b) for a, b in per))


def parity_fuzz(graphs: int = 10, samples: int = 1000, seed: int = 0) -> dict:
    """Restrict random perfect matchings of random glued graphs.

    Any clone-parity violation raises from :func:`restrict_pm`. Also checks
    that lifting a single base matching and restricting it gives it back.
    """
    rng = random.Random(seed)
    per_graph = samples // graphs
    restricted = 0
    roundtrips = 0
    for _ in range(graphs):
        recipe = random_recipe(rng)
        glued = glue_all(recipe)
        pms = enumerate_pms(glued.graph)
        for _ in range(per_graph):
            M = rng.choice(pms.matchings)
            restrict_pm(M, glued)
            restricted += 1
        for M in enumerate_pms(recipe.base):
            (lifted,) = lift_pms([M], glued)
            if not is_perfect_matching(glued.graph, lifted) or restrict_pm(lifted, glued)[0] != M:
                raise InconsistencyError(f"lift/restrict round trip failed for base matching {M.edges}")
            roundtrips += 1
    return {"graphs": graphs, "restricted": restricted, "roundtrips": roundtrips, "seed": seed}


__all__ = [
    "inequality_checks",
    "inequality_report",
    "parity_fuzz",
    "petersen_structure",
    "petersen_structure_ok",
    "random_recipe",
]
