"""Incremental topological numbering for dense graphs.

Searches the order instead of the graph: on an inconsistent insertion
(v, w), cursors walk inward from position(w) and position(v), queueing
vertices reachable from w (forward) and reaching v (backward) and
blanking their slots, until the cursors meet.  A post-search F x B probe
of the adjacency matrix detects cycles; otherwise two independent loops
drop the queued vertices back into the blank slots, absorbing en route
any vertex that must move with them.

The search and reorder procedures are module-level so the strong
component engine can run them over its condensed matrix.
"""

from collections import deque

from .base import (
    CYCLE,
    NO_SEARCH,
    REORDERED,
    AddOutcome,
    DuplicateArcError,
    FrozenEngineError,
    Metrics,
)
from .graph_store import DenseMatrix

EMPTY = -1  # blank-slot marker in the vertex array


def topological_search(matrix, vertex, position, metrics, v, w):
    """Scan positions inward from w and v, alternating sides.

    Returns (f_queue, b_queue, k): queued vertices' slots are blanked but
    their position entries still hold the old values.  Every matrix probe
    counts one arc traversal.
    """
    has = matrix.has
    f_queue = deque([w])
    b_queue = deque([v])
    i = position[w]
    j = position[v]
    vertex[i] = EMPTY
    vertex[j] = EMPTY
    while True:
        metrics.loop_iterations += 1
        i += 1
        while i < j:
            vi = vertex[i]
            hit = False
            for u in f_queue:
                metrics.arc_traversals += 1
                if has(u, vi):
                    hit = True
                    break
            if hit:
                break
            i += 1
        if i == j:
            return f_queue, b_queue, i
        f_queue.append(vertex[i])
        vertex[i] = EMPTY
        j -= 1
        while i < j:
            vj = vertex[j]
            hit = False
            for z in b_queue:
                metrics.arc_traversals += 1
                if has(vj, z):
                    hit = True
                    break
            if hit:
                break
            j -= 1
        if i == j:
            return f_queue, b_queue, j
        b_queue.append(vertex[j])
        vertex[j] = EMPTY


def reorder_slots(matrix, vertex, position, metrics, f_queue, b_queue, k,
                  backward_first=False):
    """Refill blank slots: F upward from k, B downward from k-1.

    Consumes the queues.  A non-blank slot holding a vertex with an arc
    from a still-queued F member (into a still-queued B member) is
    absorbed into the queue and moved too.  The two loops are independent
    and may run in either order.  Returns the placement logs
    [(vertex, old_pos, new_pos), ...] for each direction.
    """
    has = matrix.has
    moves_f = []
    moves_b = []

    def forward():
        i = k
        while f_queue:
            vi = vertex[i]
            if vi != EMPTY:
                hit = False
                for u in f_queue:
                    metrics.arc_traversals += 1
                    if has(u, vi):
                        hit = True
                        break
                if hit:
                    f_queue.append(vi)
                    vertex[i] = EMPTY
                    vi = EMPTY
            if vi == EMPTY:
                x = f_queue.popleft()
                vertex[i] = x
                moves_f.append((x, position[x], i))
                position[x] = i
            i += 1

    def backward():
        j = k
        while b_queue:
            j -= 1
            vj = vertex[j]
            if vj != EMPTY:
                hit = False
                for z in b_queue:
                    metrics.arc_traversals += 1
                    if has(vj, z):
                        hit = True
                        break
                if hit:
                    b_queue.append(vj)
                    vertex[j] = EMPTY
                    vj = EMPTY
            if vj == EMPTY:
                y = b_queue.popleft()
                vertex[j] = y
                moves_b.append((y, position[y], j))
                position[y] = j

    if backward_first:
        backward()
        forward()
    else:
        forward()
        backward()
    distance = sum(abs(new - old) for _, old, new in moves_f)
    distance += sum(abs(new - old) for _, old, new in moves_b)
    metrics.vertex_moves += len(moves_f) + len(moves_b)
    metrics.total_move_distance += distance
    return moves_f, moves_b


class DenseEngine:
    """Maintains an explicit topological numbering under arc insertion.

    The initial numbering is vertex-id order.  After the first
    cycle-creating insertion the engine reports the crossing arc and
    freezes, restoring the pre-insertion numbering.
    """

    def __init__(self, n, hashed=False, strict=False):
        self.matrix = DenseMatrix(n, hashed=hashed)
        self.n = n
        self.position = list(range(n))
        self.vertex = list(range(n))
        self.metrics = Metrics()
        self.cycle_witness = None
        self._strict = strict
        # per-insertion placement logs [(vertex, old_pos, new_pos), ...]
        self.last_moves_forward = []
        self.last_moves_backward = []

    @property
    def status(self):
        return "active" if self.cycle_witness is None else "cycle-found"

    def before(self, x, y):
        return self.position[x] < self.position[y]

    def current_order(self):
        return list(self.vertex)

    def check_topological(self):
        position = self.position
        for i, x in enumerate(self.vertex):
            if x == EMPTY or position[x] != i:
                raise AssertionError(f"slot {i} inconsistent")
        for v in range(self.n):
            for w in range(self.n):
                if self.matrix.has(v, w) and position[v] >= position[w]:
                    raise AssertionError(f"arc ({v}, {w}) contradicts the numbering")

    def add_arc(self, v, w):
        if self.cycle_witness is not None:
            raise FrozenEngineError("engine is frozen after a cycle was found")
        matrix = self.matrix
        matrix.check_vertex(v)
        matrix.check_vertex(w)
        if v == w:
            self.cycle_witness = (v, v)
            return AddOutcome(CYCLE, witness=(v, v))
        if not matrix.insert(v, w):
            raise DuplicateArcError(f"arc ({v}, {w}) already present")
        if self.position[v] < self.position[w]:
            return AddOutcome(NO_SEARCH)
        f_queue, b_queue, k = topological_search(
            matrix, self.vertex, self.position, self.metrics, v, w
        )
        witness = self.cycle_test(f_queue, b_queue)
        if witness is not None:
            # restore the blanked slots; positions were never changed
            for x in f_queue:
                self.vertex[self.position[x]] = x
            for x in b_queue:
                self.vertex[self.position[x]] = x
            self.cycle_witness = witness
            return AddOutcome(CYCLE, witness=witness)
        moves_f, moves_b = reorder_slots(
            matrix, self.vertex, self.position, self.metrics, f_queue, b_queue, k
        )
        self.last_moves_forward = moves_f
        self.last_moves_backward = moves_b
        if self._strict:
            self.check_topological()
        moved = [x for x, _, _ in moves_b] + [x for x, _, _ in moves_f]
        return AddOutcome(REORDERED, moved=tuple(moved))

    def cycle_test(self, f_queue, b_queue):
        """Any arc from F to B closes a cycle with the new arc."""
        matrix = self.matrix
        metrics = self.metrics
        for u in f_queue:
            for z in b_queue:
                metrics.arc_traversals += 1
                if matrix.has(u, z):
                    return (u, z)
        return None
