from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import params_bruteforce, trees_upto
from support import all_trees, to_nx, tree_from_nx
from turanc.canon import are_isomorphic
from turanc.graph import GraphError
from turanc.trees import (
    TreeParseError,
    broom_shape,
    double_star_arms,
    dstar22_tree,
    is_path,
    is_star,
    parse_tree,
    sd22_tree,
    spider_legs,
    spider_tree,
    tree_name,
    tree_params,
)


def test_parse_examples():
    t = parse_tree("S(2,2,1)")
    assert t.n == 6 and sorted(t.degrees(), reverse=True) == [3, 2, 2, 1, 1, 1]
    t = parse_tree("D(2,2)")
    assert t.n == 6
    centres = [v for v, d in enumerate(t.degrees()) if d == 3]
    assert len(centres) == 2 and t.graph.has_edge(*centres)
    assert parse_tree("P1").n == 1
    assert parse_tree(" S ( 3 , 1 , 1 ) ").n == 6


@pytest.mark.parametrize("expr, pos", [
    ("S(1)", 1),
    ("Q5", 0),
    ("P0", 1),
    ("S(2,0,1)", 4),
    ("B(6,5)", 4),
    ("P5x", 2),
    ("edges:0-1,1-1", 12),
    ("P65", 1),
])
def test_parse_errors_report_positions(expr, pos):
    with pytest.raises(TreeParseError) as info:
        parse_tree(expr)
    assert info.value.position == pos


def test_edge_list_rejects_non_trees():
    with pytest.raises(TreeParseError):
        parse_tree("edges:0-1,1-2,2-0")
    with pytest.raises(TreeParseError):
        parse_tree("edges:0-1,2-3")
    with pytest.raises(TreeParseError):
        parse_tree("edges:0-1,0-1")


def test_named_seven_vertex_trees():
    assert parse_tree("Dstar22") == dstar22_tree()
    assert parse_tree("SD22") == sd22_tree()
    assert not are_isomorphic(dstar22_tree().graph, sd22_tree().graph)
    assert tree_name(dstar22_tree()) == "Dstar22"
    assert tree_name(sd22_tree()) == "SD22"


def test_path_and_star_predicates():
    assert is_path(parse_tree("P5")) and not is_star(parse_tree("P5"))
    assert is_star(parse_tree("S4"))
    assert is_path(parse_tree("P2")) and is_star(parse_tree("P2"))


def test_params_examples():
    q = tree_params(parse_tree("S(3,1,1)"))
    assert q.m == 3 and q.bipartition == (2, 4)
    q = tree_params(parse_tree("D(2,2)"))
    assert (q.w, q.ell, q.p) == (3, 4, 1)
    q = tree_params(spider_tree([2, 2, 2, 1, 1, 1, 1, 1]))
    assert (q.nu, q.max_deg, q.m2) == (4, 8, 4)


def test_params_d22_full_record():
    # m and the bipartition are recomputed by brute force, see the ledger
    q = tree_params(parse_tree("D(2,2)"))
    assert q.to_dict() == {"ell": 4, "p": 1, "max_deg": 3, "min_deg": 1, "nu": 2, "delta2": 3,
                           "m": 3, "m2": 4, "bipartition": [3, 3], "w": 3}


def test_delta2_follows_the_definition():
    assert tree_params(parse_tree("S5")).delta2 == 5
    assert tree_params(parse_tree("P2")).delta2 is None
    assert tree_params(parse_tree("S(2,2,1)")).delta2 == 2


def test_params_need_two_vertices():
    with pytest.raises(ValueError):
        tree_params(parse_tree("P1"))


@pytest.mark.parametrize("h", [t for t in trees_upto(9) if t.number_of_nodes() >= 2],
                         ids=lambda h: tree_name(tree_from_nx(h)))
def test_params_match_bruteforce(h):
    q = tree_params(tree_from_nx(h))
    ref = params_bruteforce(h)
    assert (q.ell, q.p, q.m, q.m2, q.nu, q.w, q.bipartition) == (
        ref["ell"], ref["p"], ref["m"], ref["m2"], ref["nu"], ref["w"], ref["bipartition"])


@pytest.mark.parametrize("t", all_trees(2, 10), ids=tree_name)
def test_ell_is_diameter_plus_one(t):
    h = to_nx(t.graph)
    diameter = max(max(nx.single_source_shortest_path_length(h, v).values()) for v in h)
    assert tree_params(t).ell == diameter + 1


@pytest.mark.parametrize("t_count, s_count",
                         [(t, s) for t in range(0, 9) for s in range(0, 9) if 2 <= t + s <= 8])
def test_spider_identities(t_count, s_count):
    tree = spider_tree([2] * t_count + [1] * s_count)
    q = tree_params(tree)
    assert q.max_deg == max(t_count + s_count, 2)
    if s_count > 0:
        assert q.nu == t_count + 1
    if t_count >= 2:
        assert q.m2 == 4


@given(st.integers(4, 20), st.data())
def test_broom_is_spider(k, data):
    a = data.draw(st.integers(2, k - 2))
    broom = parse_tree(f"B({k},{a})")
    spider = spider_tree([a - 1] + [1] * (k - a)) if a > 2 else parse_tree(f"S{k - 1}")
    assert broom.n == k
    assert are_isomorphic(broom.graph, spider.graph)
    assert broom_shape(broom) == (k, a)


@pytest.mark.parametrize("t", all_trees(2, 8), ids=tree_name)
def test_tree_name_round_trips(t):
    again = parse_tree(tree_name(t))
    assert again.form == t.form


def test_family_recognition():
    assert spider_legs(parse_tree("S(3,1,1)")) == [3, 1, 1]
    assert spider_legs(parse_tree("D(2,2)")) is None
    assert double_star_arms(parse_tree("D(3,2)")) == (2, 3)
    assert tree_name(parse_tree("S(3,1,1)")) == "B(6,4)"
    assert tree_name(parse_tree("S(1,1,1)")) == "S3"


def test_tree_rejects_non_trees():
    from turanc.graph import cycle_graph
    from turanc.trees import Tree

    with pytest.raises(GraphError):
        Tree(cycle_graph(4))
