"""Interval-based homotopy machinery on finite reflexive graphs."""

from .errors import (
    BudgetExceeded,
    DanglingEdge,
    DuplicateEdge,
    InvalidGraph,
    InvalidIntervalMap,
    InvalidMorphism,
    InvalidPath,
    MooreTribeError,
    NotAFibration,
    NotComposable,
    NotFiberwise,
    PreconditionError,
    SchemaError,
)
from .graph_core import Graph, GraphMorphism
from .interval_delta import IntervalMap
from .kernels import BACKEND
from .moore_paths import Homotopy, Path

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "DanglingEdge",
    "DuplicateEdge",
    "Graph",
    "GraphMorphism",
    "Homotopy",
    "IntervalMap",
    "InvalidGraph",
    "InvalidIntervalMap",
    "InvalidMorphism",
    "InvalidPath",
    "MooreTribeError",
    "NotAFibration",
    "NotComposable",
    "NotFiberwise",
    "Path",
    "PreconditionError",
    "SchemaError",
]
