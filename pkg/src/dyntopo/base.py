"""Shared result types, counters, and errors used by all engines."""

from dataclasses import asdict, dataclass


class VertexRangeError(IndexError):
    """A vertex id is outside [0, n)."""


class DuplicateArcError(ValueError):
    """The exact (tail, head) pair is already stored."""


class FrozenEngineError(RuntimeError):
    """An insertion was attempted after a cycle was reported."""


class OrderUsageError(ValueError):
    """An order-list handle was used after deletion or across lists."""


NO_SEARCH = "no_search"
REORDERED = "reordered"
CYCLE = "cycle"
MERGED = "merged"


@dataclass(frozen=True)
class AddOutcome:
    """Result of inserting one arc into an engine.

    kind is one of NO_SEARCH, REORDERED, CYCLE, MERGED.  `moved` lists the
    vertices the reordering displaced, `witness` is an arc on the new cycle
    (topological engines only), and `canonical`/`absorbed` describe a
    component merge (SCC engines only).
    """

    kind: str
    moved: tuple = ()
    witness: tuple | None = None
    canonical: int | None = None
    absorbed: tuple = ()

    @property
    def is_cycle(self):
        return self.kind == CYCLE


@dataclass
class Metrics:
    """Monotone work counters instrumenting the complexity bounds.

    total_move_distance is the summed |new - old| position change in the
    dense engines; the sparse engines count one unit per moved vertex since
    their order has no explicit positions.
    """

    arc_traversals: int = 0
    search_steps: int = 0
    loop_iterations: int = 0
    vertex_moves: int = 0
    total_move_distance: int = 0
    pivot_selections: int = 0

    def as_dict(self):
        return asdict(self)
