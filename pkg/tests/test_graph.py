import pytest
from hypothesis import given, strategies as st

from sparrange.graph import (Arrangement, DisconnectedInput, Graph, GraphError, arrangement_cost,
                             edge_length, format_edge_list, max_degree, parse_edge_list,
                             validate_arrangement)

from conftest import naive_cost


def test_single_edge_degree():
    assert max_degree(Graph.from_edges([("s", "t")], "s", "t")) == 1


def test_diamond_degree(diamond):
    assert max_degree(diamond) == 2


def test_multiplicity_counts_toward_degree(pendant_double):
    assert pendant_double.degree("w") == 3
    assert max_degree(pendant_double) == 3


def test_edge_length():
    arr = Arrangement({"u": 5, "v": 2, "w": 1})
    assert edge_length(arr, "u", "v") == 3
    assert edge_length(arr, "w", "v") == 1
    assert edge_length(arr, "u", "u") == 0
    with pytest.raises(KeyError):
        edge_length(arr, "u", "zz")


def test_path_cost():
    g = Graph.from_edges([("u", "v"), ("v", "w")])
    assert arrangement_cost(g, Arrangement.from_order(["u", "v", "w"])) == 2


def test_diamond_cost(diamond):
    assert arrangement_cost(diamond, Arrangement.from_order(["s", "t", "a", "b"])) == 8


def test_zigzag_path_cost():
    g = Graph.from_edges([(str(i), str(i + 1)) for i in range(1, 6)])
    assert arrangement_cost(g, Arrangement.from_order(list("162534"))) == 9


def test_cost_rejects_foreign_domain(diamond):
    with pytest.raises(GraphError):
        arrangement_cost(diamond, Arrangement.from_order(["s", "t", "a"]))


def test_validate_arrangement():
    g = Graph.from_edges([("a", "b"), ("b", "c")])
    assert validate_arrangement(g, Arrangement.from_order(["a", "b", "c"])) is None
    assert validate_arrangement(g, Arrangement({"a": 1, "b": 1, "c": 3})).startswith(
        "duplicate position")
    assert validate_arrangement(g, Arrangement({"a": 1, "b": 2})) == "domain mismatch"
    assert validate_arrangement(g, Arrangement({"a": 1, "b": 2, "c": 4})).startswith(
        "position out of range")


def test_graph_invariants():
    with pytest.raises(GraphError):
        Graph.from_edges([("a", "a")])
    with pytest.raises(GraphError):
        Graph(("a", "b"), (("a", "c"),))
    with pytest.raises(GraphError):
        Graph.from_edges([("a", "b")], "a", "a")
    with pytest.raises(GraphError):
        Graph.from_edges([("a", "b")], "a", "z")
    with pytest.raises(DisconnectedInput):
        Graph.from_edges([("a", "b"), ("c", "d")])


def test_parallel_edges_kept():
    g = Graph.from_edges([("a", "b"), ("a", "b")])
    assert len(g.edges) == 2 and len(g) == 2


def test_edge_list_round_trip(diamond):
    text = format_edge_list(diamond)
    assert text.startswith("# terminals s t")
    g = parse_edge_list(text)
    assert g.edges == diamond.edges and (g.source, g.sink) == ("s", "t")


def test_edge_list_errors():
    with pytest.raises(GraphError):
        parse_edge_list("a b c\n")
    with pytest.raises(GraphError):
        parse_edge_list("# just a comment\n")
    with pytest.raises(GraphError):
        parse_edge_list("# terminals a\na b\n")


def test_reversed_arrangement():
    arr = Arrangement.from_order(["x", "y", "z"])
    assert arr.reversed().order() == ["z", "y", "x"]


@st.composite
def connected_multigraphs(draw):
    n = draw(st.integers(2, 7))
    edges = [(str(draw(st.integers(0, i - 1))), str(i)) for i in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                          .filter(lambda p: p[0] != p[1]), max_size=6))
    edges += [(str(u), str(v)) for u, v in extra]
    return Graph.from_edges(edges)


@given(connected_multigraphs(), st.randoms(use_true_random=False))
def test_cost_matches_naive_and_is_reversal_invariant(g, rnd):
    order = list(g.nodes)
    rnd.shuffle(order)
    arr = Arrangement.from_order(order)
    assert validate_arrangement(g, arr) is None
    assert arrangement_cost(g, arr) == naive_cost(g.edges, order)
    assert arrangement_cost(g, arr.reversed()) == arrangement_cost(g, arr)
    assert arrangement_cost(g, arr) >= len(g.edges)
