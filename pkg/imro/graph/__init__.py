"""Social graph loading, generation and queries."""

from imro.graph.core import Graph, NodeId, degree, max_degree_node
from imro.graph.generators import edge_probability_for_degree, generate_synthetic
from imro.graph.io import (
    EdgeListReport,
    load_edge_list,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from imro.graph.mt64 import MersenneTwister64

__all__ = [
    "EdgeListReport",
    "Graph",
    "MersenneTwister64",
    "NodeId",
    "degree",
    "edge_probability_for_degree",
    "generate_synthetic",
    "load_edge_list",
    "max_degree_node",
    "parse_edge_list",
    "read_edge_list",
    "write_edge_list",
]
