import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from sparrange.sptree import (LEAF, PARALLEL, SERIES, NotMinimal, SPNode, TreeError,
                              TreeSyntaxError, component_census, expand, minimize, parse_tree,
                              serialize_tree, tree_edge_count, tree_node_count,
                              validate_minimal)


def as_nx(g):
    m = nx.MultiGraph()
    for v in g.nodes:
        m.add_node(v, role={g.source: "s", g.sink: "t"}.get(v, ""))
    m.add_edges_from(g.edges)
    return m


def same_graph(g1, g2) -> bool:
    return nx.is_isomorphic(as_nx(g1), as_nx(g2), node_match=lambda a, b: a["role"] == b["role"])


def sp_trees(max_leaves=5, kmax=3):
    leaf = st.integers(1, kmax).map(SPNode.leaf)
    return st.recursive(
        leaf,
        lambda kids: st.builds(lambda kind, cs: SPNode(kind, 0, cs),
                               st.sampled_from([SERIES, PARALLEL]),
                               st.lists(kids, min_size=2, max_size=3)),
        max_leaves=max_leaves)


def all_trees(leaves, ks=(1, 2)):
    """Every SP-tree with exactly ``leaves`` leaves (binary and ternary splits)."""
    if leaves == 1:
        return [SPNode.leaf(k) for k in ks]
    out = []
    for kind in (SERIES, PARALLEL):
        for cut in range(1, leaves):
            for a in all_trees(cut, ks):
                for b in all_trees(leaves - cut, ks):
                    out.append(SPNode(kind, 0, [a, b]))
        for c1, c2 in itertools.combinations(range(1, leaves), 2):
            if leaves >= 3:
                for a in all_trees(c1, ks):
                    for b in all_trees(c2 - c1, ks):
                        for c in all_trees(leaves - c2, ks):
                            out.append(SPNode(kind, 0, [a, b, c]))
    return out


def test_parse_examples():
    assert parse_tree("L(3)") == SPNode.leaf(3)
    t = parse_tree("P(L(2),L(2))")
    assert t.kind == PARALLEL and [c.k for c in t.children] == [2, 2]
    with pytest.raises(TreeError):
        parse_tree("S(L(1))")


@pytest.mark.parametrize("text", ["", "L(0)", "L()", "X(L(1))", "P(L(1),L(1)", "L(1) x",
                                  "P(L(1);L(1))", "S(L(1),)"])
def test_parse_errors(text):
    with pytest.raises(TreeSyntaxError):
        parse_tree(text)


def test_syntax_error_offset():
    with pytest.raises(TreeSyntaxError) as info:
        parse_tree("P(L(1),Q(1))")
    assert info.value.offset == 7


@pytest.mark.parametrize("text", ["P(L(2),L(2))", "S(P(L(1),L(1)),L(2))", "L(7)"])
def test_serialize_round_trip(text):
    assert serialize_tree(parse_tree(text)) == text


def test_whitespace_is_ignored():
    assert serialize_tree(parse_tree(" S( P(L(1), L(1)) ,\n L(2) ) ")) == "S(P(L(1),L(1)),L(2))"


def test_deep_tree_is_not_recursive():
    depth = 20000
    text = "S(P(" * depth + "L(1)" + ",L(1)),L(1))" * depth
    t = parse_tree(text)
    assert serialize_tree(t) == text
    assert tree_edge_count(t) == 2 * depth + 1
    assert validate_minimal(t) is None


@pytest.mark.parametrize("before,after", [
    ("S(L(1),L(1))", "L(2)"),
    ("P(P(L(1),L(1)),L(1))", "P(L(1),L(1),L(1))"),
    ("S(L(1),P(L(1),L(1)),L(1))", "S(L(1),P(L(1),L(1)),L(1))"),
    ("S(S(L(1),P(L(1),L(1))),L(2),L(3))", "S(L(1),P(L(1),L(1)),L(5))"),
])
def test_minimize_examples(before, after):
    assert serialize_tree(minimize(parse_tree(before))) == after


def test_validate_minimal_examples():
    assert validate_minimal(parse_tree("P(L(2),L(2))")) is None
    assert "P-child" in validate_minimal(parse_tree("S(L(1),L(2))"))
    assert "P-node under P-node" in validate_minimal(parse_tree("P(P(L(1),L(1)),L(1))"))


def test_expand_examples():
    g, _ = expand(parse_tree("L(1)"))
    assert len(g) == 2 and len(g.edges) == 1
    g, root = expand(parse_tree("P(L(2),L(2))"))
    assert len(g) == 4 and len(g.edges) == 4
    assert sorted(g.degree(v) for v in g.nodes) == [2, 2, 2, 2]
    g, _ = expand(parse_tree("P(L(1),L(1))"))
    assert len(g) == 2 and len(g.edges) == 2


def test_component_views_chain():
    g, root = expand(parse_tree("S(L(1),P(L(2),L(1)),L(2))"))
    kids = root.children
    assert kids[0].source == root.source and kids[-1].sink == root.sink
    for a, b in zip(kids, kids[1:]):
        assert a.sink == b.source
    p = kids[1]
    assert all((c.source, c.sink) == (p.source, p.sink) for c in p.children)
    assert root.size == len(g) == 6
    assert p.size_interior == 1 and p.size_minus_sink == 2


@pytest.mark.parametrize("text,counts", [
    ("P(L(2),L(2))", (2, 1, 0)),
    ("L(5)", (1, 0, 0)),
    ("S(L(1),P(L(1),L(1)),L(1))", (4, 1, 1)),
])
def test_census(text, counts):
    _, root = expand(parse_tree(text))
    c = component_census(root)
    assert (len(c.leaves), len(c.parallels), len(c.series)) == counts


def test_census_requires_minimal():
    _, root = expand(parse_tree("S(L(1),L(1))"))
    with pytest.raises(NotMinimal):
        component_census(root)


def test_leaf_paths_label_the_expansion():
    t = SPNode(PARALLEL, 0, [SPNode(LEAF, 2, path=("x", "m", "y")),
                             SPNode(LEAF, 1, path=("x", "y"))])
    g, root = expand(t)
    assert set(g.nodes) == {"x", "m", "y"} and (root.source, root.sink) == ("x", "y")
    with pytest.raises(TreeError):
        SPNode(LEAF, 2, path=("x", "y"))


@pytest.mark.slow
def test_minimize_exhaustive_small():
    count = 0
    for leaves in range(1, 5):
        for t in all_trees(leaves):
            m = minimize(t)
            assert validate_minimal(m) is None, serialize_tree(t)
            assert same_graph(expand(t)[0], expand(m)[0]), serialize_tree(t)
            assert minimize(m) == m
            count += 1
    assert count > 1000


@given(sp_trees())
def test_minimize_properties(t):
    m = minimize(t)
    assert validate_minimal(m) is None
    assert minimize(m) == m
    assert tree_edge_count(m) == tree_edge_count(t)
    assert tree_node_count(m) == tree_node_count(t) == len(expand(m)[0])


@settings(max_examples=60)
@given(sp_trees())
def test_minimize_preserves_graph(t):
    assert same_graph(expand(t)[0], expand(minimize(t))[0])


@given(sp_trees())
def test_text_round_trip(t):
    assert parse_tree(serialize_tree(t)) == t


@given(sp_trees())
def test_expansion_invariants(t):
    g, root = expand(t)
    assert len(g.edges) == tree_edge_count(t)
    for view in root.walk():
        assert view.source in view.nodes and view.sink in view.nodes
        assert view.size == len(view.nodes)
        if view.kind == SERIES:
            for a, b in zip(view.children, view.children[1:]):
                assert a.sink == b.source
        elif view.kind == PARALLEL:
            for c in view.children:
                assert (c.source, c.sink) == (view.source, view.sink)
        else:
            assert len(view.path) == view.tree.k + 1
