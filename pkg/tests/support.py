from __future__ import annotations

from functools import lru_cache

import networkx as nx

from turanc.enumeration import ExcRecord, exc_series
from turanc.graph import Graph
from turanc.trees import Tree, parse_tree

ORACLE_N = 9


@lru_cache(maxsize=None)
def series(expr: str, n_max: int = ORACLE_N) -> dict[int, ExcRecord]:
    return exc_series(parse_tree(expr), n_max)


@lru_cache(maxsize=None)
def series_for(tree: Tree, n_max: int = ORACLE_N) -> dict[int, ExcRecord]:
    return exc_series(tree, n_max)


def oracle(expr: str, n: int) -> int:
    return series(expr)[n].max_edges


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def tree_from_nx(h: nx.Graph) -> Tree:
    return Tree(from_nx(h))


def all_trees(k_min: int, k_max: int) -> list[Tree]:
    out = []
    for k in range(k_min, k_max + 1):
        if k == 1:
            out.append(parse_tree("P1"))
        else:
            out.extend(tree_from_nx(t) for t in nx.nonisomorphic_trees(k))
    return out


# acceptance lines collected for the terminal summary
CRITERIA: dict[int, str] = {}


def report(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}"
