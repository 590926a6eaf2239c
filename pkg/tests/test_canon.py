from __future__ import annotations

import networkx as nx
from hypothesis import given
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from oracles import class_representatives
from strategies import graphs
from support import from_nx, to_nx
from turanc.canon import (
    are_isomorphic,
    automorphism_generators,
    canonical_form,
    canonical_graph,
    canonical_labeling,
    orbits,
)
from turanc.graph import complete_bipartite_graph, cycle_graph, path_graph, star_graph


def test_c4_and_p4_differ():
    assert canonical_form(cycle_graph(4)) != canonical_form(path_graph(4))
    assert not are_isomorphic(cycle_graph(4), path_graph(4))


def test_forms_on_small_orders_match_class_counts():
    for n, expected in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)]:
        forms = {canonical_form(from_nx(g)) for g in class_representatives(n)}
        assert len(forms) == expected


def test_all_classes_on_six_vertices_are_distinguished():
    reps = class_representatives(6)
    assert len({canonical_form(from_nx(g)) for g in reps}) == 156


def test_star_orbits():
    assert orbits(star_graph(4)) == [0, 1, 1, 1, 1]
    assert len(set(orbits(complete_bipartite_graph(2, 3)))) == 2


@given(graphs(max_n=10), st.data())
def test_form_is_relabelling_invariant(g, data):
    order = data.draw(st.permutations(list(range(g.n))))
    h = g.relabel(order)
    assert canonical_form(h) == canonical_form(g)
    assert canonical_graph(h) == canonical_graph(g)


@given(graphs(max_n=8), graphs(max_n=8))
def test_isomorphism_matches_networkx(g, h):
    if g.n != h.n:
        return
    assert are_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


@given(graphs(max_n=9))
def test_generators_are_automorphisms(g):
    for perm in automorphism_generators(g):
        assert sorted(perm) == list(range(g.n))
        for u, v in g.edges():
            assert g.has_edge(perm[u], perm[v])


@given(graphs(max_n=8))
def test_orbits_match_networkx_automorphisms(g):
    h = to_nx(g)
    reach = {v: {v} for v in range(g.n)}
    for iso in GraphMatcher(h, h).isomorphisms_iter():
        for v, w in iso.items():
            reach[v].add(w)
    roots = orbits(g)
    for v in range(g.n):
        assert roots[v] == min(reach[v])


@given(graphs(max_n=10))
def test_labeling_is_a_permutation(g):
    order, _ = canonical_labeling(g.n, g.adj)
    assert sorted(order) == list(range(g.n))
    assert canonical_graph(g) == g.relabel(order)
