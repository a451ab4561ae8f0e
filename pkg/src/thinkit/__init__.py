"""Thinness and proper thinness of graphs: exact searches, representations and
layered dynamic programs for optimisation problems over them."""

from .errors import InputError, RepresentationError, SizeCapExceeded, SolverInvariantError, SpecError, ThinkitError
from .graph import (
    Graph,
    Mode,
    Ordering,
    Partition,
    ThinRepresentation,
    build_graph,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    is_consistent,
    is_strongly_consistent,
    path_graph,
)
from .representations import (
    consistent_order_for_partition,
    incompatibility_graph,
    min_consistent_partition,
    min_partition_size,
    proper_thinness_exact,
    thinness_exact,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "InputError",
    "Mode",
    "Ordering",
    "Partition",
    "RepresentationError",
    "SizeCapExceeded",
    "SolverInvariantError",
    "SpecError",
    "ThinRepresentation",
    "ThinkitError",
    "build_graph",
    "complement",
    "complete_graph",
    "consistent_order_for_partition",
    "cycle_graph",
    "empty_graph",
    "incompatibility_graph",
    "is_consistent",
    "is_strongly_consistent",
    "min_consistent_partition",
    "min_partition_size",
    "path_graph",
    "proper_thinness_exact",
    "thinness_exact",
]
