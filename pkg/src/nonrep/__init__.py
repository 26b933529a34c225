"""Toolkit for non-repetitive (square-free) colourings of graphs and planar maps."""

from nonrep.words import SquareOccurrence, find_square, has_square, thue_word
from nonrep.graph import (
    BudgetExhausted,
    Graph,
    GraphError,
    PathWitness,
    VertexColouring,
    build_graph,
    find_repetitive_path,
    is_nonrepetitive,
    tree_path_word,
    witness_is_valid,
)

__all__ = [
    "SquareOccurrence",
    "find_square",
    "has_square",
    "thue_word",
    "BudgetExhausted",
    "Graph",
    "GraphError",
    "PathWitness",
    "VertexColouring",
    "build_graph",
    "find_repetitive_path",
    "is_nonrepetitive",
    "tree_path_word",
    "witness_is_valid",
]
