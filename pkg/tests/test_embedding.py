from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import contains_bruteforce, contains_through_bruteforce
from strategies import graphs
from support import all_trees, to_nx
from turanc.constructions import named_small
from turanc.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    join,
    path_graph,
    star_graph,
)
from turanc.trees import Tree, parse_tree, tree_name
from turanc.embedding import contains_tree, find_embedding, is_saturated, matcher

SMALL_TREES = all_trees(1, 6)


def test_containment_examples():
    assert not contains_tree(cycle_graph(6), parse_tree("S(2,1,1)"))
    assert not contains_tree(complete_bipartite_graph(2, 6), parse_tree("D(2,2)"))
    assert contains_tree(complete_graph(4), parse_tree("P4"))
    assert contains_tree(empty_graph(1), parse_tree("P1"))


def test_find_embedding_examples():
    assert find_embedding(join(complete_graph(2), empty_graph(4)), parse_tree("S(2,2,1)")) is None
    emb = find_embedding(path_graph(7), parse_tree("P7"))
    assert emb is not None and sorted(emb.values()) == list(range(7))
    emb = find_embedding(star_graph(8), parse_tree("S5"))
    assert emb is not None and len(set(emb.values())) == 6


def test_saturation_examples():
    assert is_saturated(named_small("k2_plus_empty", 7).graph, parse_tree("S(2,2,1)"))
    assert not is_saturated(cycle_graph(7), parse_tree("S(2,2,2)"))
    with pytest.raises(ValueError):
        is_saturated(complete_graph(6), parse_tree("S(2,2,1)"))


@given(graphs(max_n=7), st.sampled_from(all_trees(1, 7)))
def test_contains_matches_bruteforce(g, t):
    assert contains_tree(g, t) == contains_bruteforce(to_nx(g), to_nx(t.graph))


@given(graphs(max_n=7), st.sampled_from(SMALL_TREES), st.data())
def test_contains_through_matches_bruteforce(g, t, data):
    v = data.draw(st.integers(0, g.n - 1))
    got = matcher(t).contains_through(g.n, g.adj, v)
    assert got == contains_through_bruteforce(to_nx(g), to_nx(t.graph), v)


@given(graphs(max_n=9), st.sampled_from(all_trees(1, 7)))
def test_embedding_is_valid(g, t):
    emb = find_embedding(g, t)
    assert (emb is not None) == contains_tree(g, t)
    if emb is not None:
        assert len(set(emb.values())) == t.n
        assert all(g.has_edge(emb[u], emb[v]) for u, v in t.graph.edges())


@given(graphs(min_n=2, max_n=9), st.sampled_from(all_trees(2, 7)), st.data())
def test_monotone_in_host(g, t, data):
    missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    assume(missing)
    u, v = data.draw(st.sampled_from(missing))
    if contains_tree(g, t):
        assert contains_tree(g.add_edge(u, v), t)


def _leaf_deletions(t: Tree) -> list[Tree]:
    out = []
    for leaf, d in enumerate(t.degrees()):
        if d == 1:
            keep = [v for v in range(t.n) if v != leaf]
            out.append(Tree(t.graph.induced(keep)))
    return out


@given(graphs(max_n=9), st.sampled_from(all_trees(2, 8)))
def test_monotone_in_pattern(g, t):
    for sub in _leaf_deletions(t):
        if not contains_tree(g, sub):
            assert not contains_tree(g, t)


@pytest.mark.parametrize("t", all_trees(4, 6), ids=tree_name)
def test_saturation_matches_definition(t):
    g = named_small("cycle", 7).graph
    if contains_tree(g, t):
        return
    direct = all(contains_tree(g.add_edge(u, v), t)
                 for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v))
    assert is_saturated(g, t) == direct


def test_complete_graph_is_trivially_saturated():
    assert is_saturated(complete_graph(5), parse_tree("P6"))
    assert isinstance(complete_graph(5), Graph)
