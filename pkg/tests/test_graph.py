import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from mcover.corpus import bridged_example, k4, petersen, triple_edge
from mcover.errors import GraphFormatError, NotCubicError, UnsupportedFormatError
from mcover.graph import (
    CubicGraph,
    connected_components,
    decode_graph6,
    disjoint_union,
    emit_edge_list,
    emit_graph6,
    find_bridges,
    is_3_edge_colorable,
    parse_edge_list,
    parse_graph6,
    validate,
)

from conftest import random_cubic, random_cubic_graphs


def test_k4_graph6_hand_decoded():
    # 'C' = 63 + 4 vertices; '~' = 63 + 0b111111, the six upper-triangle bits
    G = parse_graph6("C~")
    assert G.n == 4
    assert G.edges == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert emit_graph6(k4()) == "C~"


def test_graph6_crlf_and_header():
    assert parse_graph6(">>graph6<<C~\r\n") == k4()


def test_graph6_matches_networkx(named_graphs):
    for name, G in named_graphs.items():
        if not G.is_simple:
            continue
        H = nx.Graph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from(G.edges)
        ref = nx.to_graph6_bytes(H, header=False).decode().strip()
        assert emit_graph6(G) == ref, name
        assert parse_graph6(ref) == G


def test_petersen_from_reference_encoding():
    line = nx.to_graph6_bytes(nx.petersen_graph(), header=False).decode()
    G = parse_graph6(line)
    assert (G.n, G.m, G.girth()) == (10, 15, 5)


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x01"])
def test_graph6_malformed(bad):
    with pytest.raises(GraphFormatError):
        decode_graph6(bad)


def test_graph6_non_cubic_rejected():
    # path on 4 vertices: degrees 1,2,2,1
    line = nx.to_graph6_bytes(nx.path_graph(4), header=False).decode()
    with pytest.raises(NotCubicError):
        parse_graph6(line)


def test_graph6_large_n_header_roundtrip():
    G = random_cubic(70, seed=3)
    s = emit_graph6(G)
    assert s[0] == "~"
    assert parse_graph6(s) == G


def test_graph6_rejects_parallel_edges():
    with pytest.raises(UnsupportedFormatError):
        emit_graph6(triple_edge())


def test_edge_list_k4():
    G = parse_edge_list("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert G == k4()
    assert parse_edge_list(emit_edge_list(G)) == G


def test_edge_list_triple_edge_and_crlf():
    G = parse_edge_list("2 3\r\n0 1\r\n0 1\r\n1 0\r\n")
    assert G.n == 2 and G.m == 3 and not G.is_simple
    assert validate(G).is_bridgeless


@pytest.mark.parametrize(
    "text, err",
    [
        ("4 6\n0 0\n0 2\n0 3\n1 2\n1 3\n2 3\n", NotCubicError),
        ("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n", GraphFormatError),
        ("4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n", GraphFormatError),
        ("4 6\n0 1\n0 1\n0 3\n1 2\n1 3\n2 3\n", NotCubicError),
        ("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n2 3\n", GraphFormatError),
        ("x y\n", GraphFormatError),
    ],
)
def test_edge_list_errors(text, err):
    with pytest.raises(err):
        parse_edge_list(text)


def test_canonical_order_and_idempotence():
    G = CubicGraph(4, [(3, 2), (1, 0), (3, 0), (2, 1), (3, 1), (0, 2)])
    assert G == k4()
    assert CubicGraph(G.n, G.edges) == G
    assert list(G.edges) == sorted(G.edges)


def test_incidence_lists_are_ascending(named_graphs):
    for G in named_graphs.values():
        for v, inc in enumerate(G.incidence):
            assert list(inc) == sorted(inc)
            assert all(v in G.edges[e] for e in inc)


def test_validate_examples():
    rep = validate(k4())
    assert rep.ok and rep.components == 1
    rep = validate(disjoint_union(k4(), k4()))
    assert rep.is_bridgeless and rep.components == 2
    B = bridged_example()
    rep = validate(B)
    assert not rep.is_bridgeless and len(rep.bridges) == 1
    assert B.edges[rep.bridges[0]] == (0, 5)


def test_bridges_examples():
    assert find_bridges(petersen()) == []
    assert find_bridges(triple_edge()) == []


def _bridges_by_deletion(G):
    base = connected_components(G)
    return [e for e in range(G.m) if connected_components(G, skip_edge=e) > base]


def _bridged(seed):
    # two random cubic graphs, one edge removed from each, endpoints cross-linked by
    # a new edge and a degree fix-up produces a bridge
    A = random_cubic(8, seed)
    Bq = random_cubic(8, seed + 1)
    ea, eb = A.edges[0], Bq.edges[0]
    edges = [e for e in A.edges if e != ea] + [(u + 8, v + 8) for u, v in Bq.edges if (u, v) != eb]
    # ea endpoints x,y get a new vertex s; eb endpoints get t; s-t is the bridge
    s, t = 16, 17
    edges += [(ea[0], s), (ea[1], s), (eb[0] + 8, t), (eb[1] + 8, t), (s, t)]
    return CubicGraph(18, edges)


def test_bridges_against_deletion_oracle(named_graphs):
    graphs = list(named_graphs.values()) + [bridged_example(), disjoint_union(k4(), petersen())]
    graphs += random_cubic_graphs(20) + [_bridged(s) for s in range(5)]
    for G in graphs:
        assert find_bridges(G) == _bridges_by_deletion(G)
    assert all(len(find_bridges(_bridged(s))) == 1 for s in range(5))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 6, 8, 10, 12, 14]), st.integers(0, 10**6))
def test_cubic_counts(n, seed):
    G = random_cubic(n, seed)
    assert 2 * G.m == 3 * G.n and G.n % 2 == 0
    assert find_bridges(G) == _bridges_by_deletion(G)


def test_three_edge_colorability(named_graphs):
    expected = {"petersen": False, "j5": False, "j7": False}
    for name, G in named_graphs.items():
        assert is_3_edge_colorable(G) == expected.get(name, True), name
