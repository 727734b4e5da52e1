"""Exact tools for oriented graphs: pattern detection, holes, named
constructions, and certified partitions for colouring spread digraphs."""

from .core import Digraph, DigraphError, parse_digraph, serialize_digraph, to_dot
from .kernels import BACKEND
from .budget import BudgetExceeded

__all__ = ["BACKEND", "BudgetExceeded", "Digraph", "DigraphError", "parse_digraph", "serialize_digraph", "to_dot"]
__version__ = "0.1.0"
