"""Acceptance criteria, one test each, with their time limits.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints
one PASS/FAIL line per criterion. Set ``MCOVER_CATALOG`` to a graph6 file
of cubic graphs to run the inequality sweep on it instead of the corpus.
"""

import json
import os
import random
import time
from fractions import Fraction as F
from itertools import combinations

import pytest

from mcover.cli import main
from mcover.corpus import corpus, ingest, k4, petersen
from mcover.cover import (
    berge_fulkerson_search,
    conjecture3_search,
    depth_profile,
    fan_raspaud_search,
    mt_exact,
    mt_naive,
)
from mcover.gadget import GlueRecipe, decide_via_reduction, glue_all, mt_glued_exact
from mcover.graph import is_3_edge_colorable, validate
from mcover.matchings import enumerate_pms
from mcover.verify import inequality_checks, parity_fuzz

from conftest import random_cubic_graphs

crit = pytest.mark.criterion


class Clock:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


@crit(1, "Petersen matching structure")
def test_criterion_1_petersen_structure():
    with Clock(1.0):
        G = petersen()
        bits = enumerate_pms(G).bits
        assert len(bits) == 6
        assert all(sum(b >> e & 1 for b in bits) == 2 for e in range(G.m))
        for x, y in combinations(bits, 2):
            assert (x | y).bit_count() == 9
            assert (x & y).bit_count() == 1
        for k, size in ((3, 12), (4, 14)):
            for combo in combinations(bits, k):
                u = 0
                for b in combo:
                    u |= b
                assert u.bit_count() == size


@crit(2, "m_t values of Petersen and K4")
def test_criterion_2_mt_values():
    cases = [(petersen, t, v) for t, v in zip((2, 3, 4, 5), (F(3, 5), F(4, 5), F(14, 15), F(1)))]
    cases += [(k4, t, v) for t, v in zip((1, 2, 3), (F(1, 3), F(2, 3), F(1)))]
    for build, t, value in cases:
        with Clock(1.0):
            G = build()
            pms = enumerate_pms(G)
            r = mt_exact(G, t, pms)
        assert r.exact and r.value == value, (t, r.value)
        # independent all-subsets check
        assert mt_naive(G, t, pms) == value


@crit(3, "glue edge-count arithmetic")
def test_criterion_3_glue_arithmetic():
    rng = random.Random(2024)
    bases = [g.graph for g in corpus() if g.graph.m <= 30]
    for _ in range(20):
        G = rng.choice(bases)
        a, b = rng.randint(0, 4), rng.randint(0, 3)
        glued = glue_all(GlueRecipe.uniform(G, a, b))
        assert glued.graph.m == G.m * (6 * a + 15 * b + 1)
        assert validate(glued.graph).ok
    P = petersen()
    assert glue_all(GlueRecipe.uniform(P, 0, P.m)).graph.m == 3390


@crit(4, "compositional m_t equals m_t of the expanded graph")
def test_criterion_4_oracle_equivalence():
    with Clock(30.0):
        K = k4()
        base = enumerate_pms(K)
        for kind in ("k4", "petersen"):
            recipe = GlueRecipe.single(K, 0, kind)
            glued = glue_all(recipe)
            expanded = enumerate_pms(glued.graph)
            for t in (2, 3):
                comp = mt_glued_exact(recipe, t, base, glued=glued).value
                direct = mt_exact(glued.graph, t, expanded).value
                assert comp == direct, (kind, t, comp, direct)


@crit(5, "reduction end to end")
def test_criterion_5_reduction():
    with Clock(10.0):
        d = decide_via_reduction(k4(), 2, "5/8")
        assert d.value == F(104, 165) and d.verdict and d.agree
        d = decide_via_reduction(petersen(), 2, "5/8")
        assert d.value == F(287, 465) and not d.verdict and d.agree
        for build in (k4, petersen):
            G = build()
            pms = enumerate_pms(G)
            colourable = is_3_edge_colorable(G)
            d3 = decide_via_reduction(G, 3, "5/6", pms)
            assert d3.verdict == colourable and d3.agree
            d4 = decide_via_reduction(G, 4, "143/150", pms)
            assert d4.verdict == (mt_exact(G, 4, pms).value == 1) and d4.agree


def _sweep_graphs():
    catalog = os.environ.get("MCOVER_CATALOG")
    if catalog:
        stream = ingest(catalog, bridgeless_only=True)
        return list(stream), catalog
    graphs = [g.graph for g in corpus()]
    # extra coverage beyond the named corpus
    graphs += [G for G in random_cubic_graphs(60, sizes=(8, 10, 12, 14, 16), seed=9) if validate(G).is_bridgeless]
    return graphs, "built-in corpus"


@crit(6, "inequality sweep")
def test_criterion_6_inequality_sweep():
    with Clock(300.0):
        graphs, label = _sweep_graphs()
        assert graphs, label
        failures = []
        for i, G in enumerate(graphs):
            pms = enumerate_pms(G)
            assert pms.complete
            mt = {t: mt_exact(G, t, pms).value for t in range(1, 6)}
            checks = inequality_checks(mt)
            bad = [k for k, ok in checks.items() if not ok]
            if bad:
                failures.append((i, bad))
        assert not failures, f"{label}: {failures}"


@crit(7, "conjecture searches on the corpus")
def test_criterion_7_searches():
    with Clock(60.0):
        names = {"k4", "k33", "prism", "petersen", "dodecahedron", "j5", "j7"}
        for g in corpus():
            if g.name not in names:
                continue
            G, pms = g.graph, enumerate_pms(g.graph)
            fr = fan_raspaud_search(G, pms)
            assert fr is not None and fr[0].bits & fr[1].bits & fr[2].bits == 0, g.name
            c3 = conjecture3_search(G, pms)
            assert c3 is not None and depth_profile(G, c3).edge_depth <= 2, g.name
            bf = berge_fulkerson_search(G, pms)
            assert bf is not None and all(d == 2 for d in depth_profile(G, bf).depth), g.name


@crit(8, "clone-parity fuzz")
def test_criterion_8_parity_fuzz():
    with Clock(30.0):
        res = parity_fuzz(graphs=10, samples=1000, seed=0)
    assert res["restricted"] == 1000
    assert res["roundtrips"] > 0


@crit(9, "deterministic reports across thread counts")
def test_criterion_9_determinism(tmp_path, capsys):
    jobs = [
        ["analyze", "petersen"],
        ["analyze", "dodecahedron", "--t", "1,2,3,4"],
        ["analyze", "j5", "--t", "2,3,4"],
        ["reduce", "petersen", "--t", "3", "--tau", "5/6"],
    ]
    for job in jobs:
        texts = []
        for threads in (1, 4, 8):
            path = tmp_path / f"r{threads}.json"
            assert main(job + ["--threads", str(threads), "--json", str(path)]) == 0
            texts.append(path.read_bytes())
        assert texts[0] == texts[1] == texts[2], job
        json.loads(texts[0])
    capsys.readouterr()
