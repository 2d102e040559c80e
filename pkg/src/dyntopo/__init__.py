"""Incremental cycle detection, topological ordering, and strong components.

Engines maintain their invariant online as arcs arrive:

- SparseEngine: topological order via one-way limited search or two-way
  soft-threshold search (O(m^{3/2}) total), with first-cycle detection.
- DenseEngine: explicit 1..n topological numbering via topological search
  (O(n^{5/2}) total).
- SccSparseEngine / SccDenseEngine: strong component partition plus a
  topological order of the condensation; cycles merge components instead
  of freezing the engine.
"""

from .base import (
    CYCLE,
    MERGED,
    NO_SEARCH,
    REORDERED,
    AddOutcome,
    DuplicateArcError,
    FrozenEngineError,
    Metrics,
    OrderUsageError,
    VertexRangeError,
)
from .dense_engine import DenseEngine
from .graph_store import ArcCell, CircularList, DenseMatrix, SparseGraph
from .order_list import OrderItem, OrderList
from .scc_engine import DisjointSets, SccDenseEngine, SccSparseEngine, identify_new_component
from .sparse_engine import LIMITED, MEDIAN, RANDOM, SOFT_THRESHOLD, SparseEngine

__all__ = [
    "AddOutcome",
    "ArcCell",
    "CircularList",
    "CYCLE",
    "DenseEngine",
    "DenseMatrix",
    "DisjointSets",
    "DuplicateArcError",
    "FrozenEngineError",
    "LIMITED",
    "MEDIAN",
    "MERGED",
    "Metrics",
    "NO_SEARCH",
    "OrderItem",
    "OrderList",
    "OrderUsageError",
    "RANDOM",
    "REORDERED",
    "SOFT_THRESHOLD",
    "SccDenseEngine",
    "SccSparseEngine",
    "SparseEngine",
    "SparseGraph",
    "VertexRangeError",
    "identify_new_component",
]
