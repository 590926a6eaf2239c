"""Exact and constructive tools for connected Turán numbers of trees."""

from .graph import Graph, GraphError, from_graph6, to_graph6
from .trees import Tree, TreeParseError, parse_tree, tree_name, tree_params

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphError",
    "Tree",
    "TreeParseError",
    "from_graph6",
    "parse_tree",
    "to_graph6",
    "tree_name",
    "tree_params",
]
