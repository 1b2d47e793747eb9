"""Spectral-threshold certification toolkit.

Builds the extremal graph families behind spectral sufficient conditions for
spanning trees with bounded degree and for bipartite perfect matchings,
computes certified largest eigenvalues, and couples both to exact
combinatorial certifiers so the underlying statements can be checked
empirically at desk scale.
"""

from .graphs import (
    BipartiteGraph,
    Graph,
    bipartite_join,
    build_graph,
    complete_bipartite,
    complete_graph,
    components_after_removal,
    cycle_graph,
    disjoint_union,
    empty_graph,
    from_graph6,
    is_connected,
    join,
    min_degree,
    path_graph,
    rotate_edges,
    star_graph,
    to_graph6,
)

__all__ = [
    "BipartiteGraph",
    "Graph",
    "bipartite_join",
    "build_graph",
    "complete_bipartite",
    "complete_graph",
    "components_after_removal",
    "cycle_graph",
    "disjoint_union",
    "empty_graph",
    "from_graph6",
    "is_connected",
    "join",
    "min_degree",
    "path_graph",
    "rotate_edges",
    "star_graph",
    "to_graph6",
]

__version__ = "0.1.0"
