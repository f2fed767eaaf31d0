"""Tropical recurrent sequences: dimensions of solution complexes, transition
graphs, and entropy, with an exhaustive oracle cross-validating the graph
pipeline."""

from .core import (
    INF,
    BudgetExceeded,
    CoefficientVector,
    VectorError,
    classify_connected,
    is_regular,
    newton_polygon,
    parse_sequence,
    parse_vector,
    satisfies,
    single_bounded_edge,
)

__version__ = "0.1.0"
