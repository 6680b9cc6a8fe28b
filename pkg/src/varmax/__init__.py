"""Sharp variational constants of the graph Hardy-Littlewood maximal operator."""

from .graphs import Graph, balls, distances, enumerate_connected, named_graph, parse_graph6, emit_graph6
from .maximal import maximal_function, p_variation, variation_ratio
from .sharp import ConstantCertificate, exact_constant_p1
from .numeric import grid_oracle, numeric_lower_bound

__all__ = [
    "Graph", "balls", "distances", "enumerate_connected", "named_graph", "parse_graph6", "emit_graph6",
    "maximal_function", "p_variation", "variation_ratio",
    "ConstantCertificate", "exact_constant_p1", "grid_oracle", "numeric_lower_bound",
]
