import logging
from fractions import Fraction as F

import networkx as nx
import pytest

from mcover.corpus import NAMES, bridged_example, corpus, flower_snark, ingest, named
from mcover.cover import mt_exact
from mcover.errors import DomainError
from mcover.graph import emit_edge_list, emit_graph6, is_3_edge_colorable, validate
from mcover.matchings import enumerate_pms

from conftest import random_cubic


def test_named_graphs_are_valid():
    for g in corpus():
        assert validate(g.graph).ok, g.name
    assert [g.name for g in corpus()] == list(NAMES)


def test_named_lookup():
    assert named("Petersen").graph.n == 10
    with pytest.raises(KeyError):
        named("heawood")


def test_claims_reverified(named_pms, named_graphs):
    for g in corpus():
        pms = named_pms[g.name]
        for key, claim in g.expected.items():
            if key == "pm_count":
                assert len(pms) == claim.value, g.name
            elif key == "three_edge_colorable":
                assert is_3_edge_colorable(g.graph) == claim.value
            else:
                t = int(key[1:])
                assert mt_exact(g.graph, t, pms).value == F(claim.value), (g.name, key)


def test_isomorphism_types():
    assert nx.is_isomorphic(nx.Graph(list(named("petersen").graph.edges)), nx.petersen_graph())
    assert nx.is_isomorphic(nx.Graph(list(named("dodecahedron").graph.edges)), nx.dodecahedral_graph())
    assert nx.is_isomorphic(nx.Graph(list(named("cube").graph.edges)), nx.hypercube_graph(3))
    assert nx.is_isomorphic(nx.Graph(list(named("k33").graph.edges)), nx.complete_bipartite_graph(3, 3))


def test_flower_snarks():
    for k in (5, 7, 9):
        J = flower_snark(k)
        assert (J.n, J.m) == (4 * k, 6 * k)
        assert validate(J).ok and J.is_simple
        assert not is_3_edge_colorable(J)
    assert flower_snark(5).girth() == 5
    for bad in (3, 4, 6):
        with pytest.raises(DomainError):
            flower_snark(bad)


def test_flower_snark_m2():
    J = flower_snark(5)
    pms = enumerate_pms(J)
    assert F(3, 5) <= mt_exact(J, 2, pms).value < F(2, 3)
    assert mt_exact(J, 3, pms).value < 1


def test_bridged_example_not_in_corpus():
    B = bridged_example()
    assert not validate(B).is_bridgeless
    assert all(g.graph != B for g in corpus())


def test_ingest_empty(tmp_path):
    p = tmp_path / "empty.g6"
    p.write_text("")
    s = ingest(p)
    assert list(s) == [] and s.skipped == 0


def test_ingest_skips_bad_lines(tmp_path, caplog):
    p = tmp_path / "mixed.g6"
    path4 = nx.to_graph6_bytes(nx.path_graph(4), header=False).decode()
    p.write_text("C~\n" + path4 + "\n" + emit_graph6(named("petersen").graph) + "\n\n")
    s = ingest(p)
    with caplog.at_level(logging.WARNING, logger="mcover.corpus"):
        graphs = list(s)
    assert [G.n for G in graphs] == [4, 10]
    assert s.skipped == 1 and s.read == 3
    assert "skipped" in caplog.text


def test_ingest_bridgeless_filter(tmp_path):
    p = tmp_path / "mixed.cbg"
    p.write_text(emit_edge_list(named("k4").graph) + emit_edge_list(bridged_example()))
    assert len(list(ingest(p))) == 2
    s = ingest(p, bridgeless_only=True)
    assert len(list(s)) == 1 and s.filtered == 1


def test_ingest_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        ingest(tmp_path / "nope.g6")


def test_ingest_sampled_ten_vertex_catalog(tmp_path):
    # a catalog of distinct cubic graphs on 10 vertices; Petersen is the only girth-5 one
    reps = [nx.petersen_graph()]
    for seed in range(120):
        H = nx.random_regular_graph(3, 10, seed=seed)
        if not any(nx.is_isomorphic(H, R) for R in reps):
            reps.append(H)
    lines = [nx.to_graph6_bytes(H, header=False).decode().strip() for H in reps]
    p = tmp_path / "cubic10.g6"
    p.write_text("\n".join(lines) + "\n")
    graphs = list(ingest(p, bridgeless_only=True))
    girth5 = [G for G in graphs if G.girth() == 5]
    assert len(girth5) == 1
    assert len(enumerate_pms(girth5[0])) == 6


def test_random_cubic_helper():
    G = random_cubic(12, 1)
    assert G.n == 12 and validate(G).is_cubic
