import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from varmax.graphs import (
    Graph, GraphError, automorphisms, balls, canonical_form, distances, emit_graph6,
    enumerate_connected, enumerate_connected_bruteforce, named_graph, orbit_representatives,
    parse_graph6, parse_graph_spec,
)


@st.composite
def graphs(draw, max_n=20, connected=False):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, b in zip(pairs, mask) if b]
    if connected:
        # a random spanning path keeps the graph connected
        order = draw(st.permutations(range(n)))
        edges += [(min(a, b), max(a, b)) for a, b in zip(order, order[1:])]
        edges = sorted(set(edges))
    return Graph.from_edges(n, edges)


def test_named_families():
    assert len(named_graph("K", 4).edges) == 6
    assert named_graph("P", 4).edges == ((0, 1), (1, 2), (2, 3))
    d = named_graph("diamond")
    assert len(d.edges) == 5
    assert d.degree(1) == 3 and d.degree(3) == 3
    paw = named_graph("paw")
    assert sorted(paw.degree(v) for v in range(4)) == [1, 2, 2, 3]
    assert paw.degree(1) == 1
    assert named_graph("S", 4).degree(0) == 3


@pytest.mark.parametrize("bad", [("C", 2), ("Q", 3), ("K", 0), ("S", 1)])
def test_named_graph_errors(bad):
    with pytest.raises(GraphError):
        named_graph(*bad)


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_spec_parser():
    assert parse_graph_spec("K4") == named_graph("K", 4)
    assert parse_graph_spec("P10").n == 10
    assert parse_graph_spec("g6:Ch") == named_graph("P", 4)
    assert parse_graph_spec("construction:k=2,m=1").n == 16
    with pytest.raises(GraphError):
        parse_graph_spec("nonsense")


def test_distances_examples():
    k4 = distances(named_graph("K", 4))
    assert all(k4.d[i][j] == (i != j) for i in range(4) for j in range(4))
    assert distances(named_graph("P", 4)).d[0][3] == 3


def test_distance_root_to_leaf_in_construction():
    g = parse_graph_spec("construction:k=3,m=3")
    assert distances(g).ecc[0] == 23


def test_disconnected_distance_raises():
    with pytest.raises(GraphError):
        distances(Graph.from_edges(3, [(0, 1)]))


def test_ball_sizes():
    bt = balls(named_graph("C", 4))
    assert all(bt.sizes(v) == (1, 3, 4) for v in range(4))
    assert balls(named_graph("S", 4)).sizes(0) == (1, 4)
    for n in (2, 5, 7):
        bt = balls(named_graph("K", n))
        assert all(bt.sizes(v) == (1, n) for v in range(n))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9, connected=True))
def test_ball_nesting_and_distance_axioms(g):
    dt = distances(g)
    bt = balls(g, dt)
    for v in range(g.n):
        sizes = bt.sizes(v)
        assert bt.members[v][0] == (v,)
        assert sizes[-1] == g.n
        assert all(a < b for a, b in zip(sizes, sizes[1:]))
        for r in range(len(sizes) - 1):
            assert set(bt.members[v][r]) <= set(bt.members[v][r + 1])
    for u in range(g.n):
        for v in range(g.n):
            assert dt.d[u][v] == dt.d[v][u]
            assert (dt.d[u][v] == 1) == g.has_edge(u, v)
            for w in range(g.n):
                assert dt.d[u][w] <= dt.d[u][v] + dt.d[v][w]


# ---------------------------------------------------------------- graph6


def test_graph6_examples():
    assert parse_graph6("C~") == named_graph("K", 4)
    assert parse_graph6("Ch").edges == ((0, 1), (1, 2), (2, 3))
    assert emit_graph6(named_graph("K", 4)) == "C~"


def _nx_oracle(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.to_graph6_bytes(h, header=False).decode().strip()


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=20))
def test_graph6_matches_networkx_and_round_trips(g):
    s = emit_graph6(g)
    assert s == _nx_oracle(g)
    assert parse_graph6(s) == g


def test_all_length_two_strings_round_trip():
    valid = 0
    for a in range(63, 127):
        for b in range(63, 127):
            s = chr(a) + chr(b)
            try:
                g = parse_graph6(s)
            except GraphError:
                continue
            valid += 1
            assert emit_graph6(g) == s
    # n=2: 2 bodies, n=3: 8, n=4: 64
    assert valid == 2 + 8 + 64


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "D~", "A@"])
def test_graph6_malformed(bad):
    with pytest.raises(GraphError):
        parse_graph6(bad)


# ---------------------------------------------------------------- canonical forms


def test_canonical_form_examples():
    p4 = named_graph("P", 4)
    forms = {canonical_form(p4.relabel(perm)) for perm in itertools.permutations(range(4))}
    assert len(forms) == 1
    assert canonical_form(p4) != canonical_form(named_graph("S", 4))
    k3 = named_graph("K", 3)
    assert len({canonical_form(k3.relabel(p)) for p in itertools.permutations(range(3))}) == 1


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_form_decides_isomorphism(g, h):
    if g.n != h.n:
        return
    iso = nx.is_isomorphic(_to_nx(g), _to_nx(h))
    assert (canonical_form(g) == canonical_form(h)) == iso


def _to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_canonical_form_size_limit():
    with pytest.raises(GraphError):
        canonical_form(named_graph("P", 9))


# ---------------------------------------------------------------- enumeration


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_enumeration_counts(n, count):
    assert len(enumerate_connected(n)) == count


def test_enumeration_n7_matches_atlas():
    atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == 7 and nx.is_connected(h)]
    ours = enumerate_connected(7)
    assert len(ours) == len(atlas) == 853


@pytest.mark.parametrize("n", [3, 4, 5])
def test_augmentation_agrees_with_bruteforce(n):
    a = [canonical_form(g) for g in enumerate_connected(n)]
    b = [canonical_form(g) for g in enumerate_connected_bruteforce(n)]
    assert a == b


def test_enumeration_deterministic_order_and_connected():
    gs = enumerate_connected(5)
    keys = [(len(g.edges), canonical_form(g)) for g in gs]
    assert keys == sorted(keys)
    assert all(g.is_connected() for g in gs)
    assert [emit_graph6(g) for g in gs] == [emit_graph6(g) for g in enumerate_connected(5)]


def test_enumeration_range():
    with pytest.raises(GraphError):
        enumerate_connected(8)


# ---------------------------------------------------------------- automorphisms


def _brute_automorphisms(g):
    return sorted(p for p in itertools.permutations(range(g.n))
                  if all(g.has_edge(p[u], p[v]) for u, v in g.edges))


def test_automorphism_counts():
    assert len(automorphisms(named_graph("C", 4))) == 8
    assert len(automorphisms(named_graph("K", 5))) == 120
    assert len(automorphisms(named_graph("paw"))) == 2


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_automorphisms_match_bruteforce(g):
    assert sorted(automorphisms(g)) == _brute_automorphisms(g)


def test_orbit_representatives():
    assert orbit_representatives(named_graph("K", 5)) == [0]
    assert orbit_representatives(named_graph("P", 5)) == [0, 1, 2]
    assert len(orbit_representatives(named_graph("paw"))) == 3
