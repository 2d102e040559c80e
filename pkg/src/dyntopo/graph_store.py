"""Mutable graph representations owned by the incremental engines.

Three stores live here: singly linked incidence lists for the sparse
engine, a square bit matrix for the dense engine, and circular doubly
linked arc lists for the strong-component engine (constant-time list
concatenation and cell deletion).
"""

from .base import VertexRangeError

NO_ARC = -1


class SparseGraph:
    """Directed graph as per-vertex singly linked incidence lists.

    Arcs are dense integer ids into parallel arrays.  Every arc sits on
    exactly one outgoing list (its tail's) and one incoming list (its
    head's); new arcs are prepended, so list heads are the most recently
    added arcs.  An exact (tail, head) membership set rejects duplicates,
    so the engines may assume a simple graph.
    """

    def __init__(self, n):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.first_out = [NO_ARC] * n
        self.first_in = [NO_ARC] * n
        self.arc_tail = []
        self.arc_head = []
        self.next_out = []
        self.next_in = []
        self._pairs = set()

    @property
    def m(self):
        return len(self.arc_tail)

    def add_vertex(self):
        self.first_out.append(NO_ARC)
        self.first_in.append(NO_ARC)
        self.n += 1
        return self.n - 1

    def check_vertex(self, v):
        if not 0 <= v < self.n:
            raise VertexRangeError(f"vertex {v} out of range [0, {self.n})")

    def has_arc(self, tail, head):
        return (tail, head) in self._pairs

    def insert_arc(self, tail, head):
        """Prepend (tail, head) to both incidence lists.

        Returns the new arc id, or None if the pair is already stored.
        """
        self.check_vertex(tail)
        self.check_vertex(head)
        if (tail, head) in self._pairs:
            return None
        a = len(self.arc_tail)
        self.arc_tail.append(tail)
        self.arc_head.append(head)
        self.next_out.append(self.first_out[tail])
        self.next_in.append(self.first_in[head])
        self.first_out[tail] = a
        self.first_in[head] = a
        self._pairs.add((tail, head))
        return a

    def out_arcs(self, v):
        a = self.first_out[v]
        while a != NO_ARC:
            yield a
            a = self.next_out[a]

    def in_arcs(self, v):
        a = self.first_in[v]
        while a != NO_ARC:
            yield a
            a = self.next_in[a]

    def arcs(self):
        return zip(self.arc_tail, self.arc_head)


class DenseMatrix:
    """Square bit matrix: bit (v, w) set iff arc (v, w) is present.

    The default backing is one Python int of n bits per row (contiguous
    bit rows, O(1) probe).  `hashed=True` switches to a pair set, trading
    determinism of memory layout for O(n + m) space; engines treat both
    identically.
    """

    def __init__(self, n, hashed=False):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.hashed = hashed
        self._rows = None if hashed else [0] * n
        self._pairs = set() if hashed else None

    def check_vertex(self, v):
        if not 0 <= v < self.n:
            raise VertexRangeError(f"vertex {v} out of range [0, {self.n})")

    def has(self, v, w):
        if self.hashed:
            return (v, w) in self._pairs
        return (self._rows[v] >> w) & 1 == 1

    def set(self, v, w):
        self.check_vertex(v)
        self.check_vertex(w)
        if self.hashed:
            self._pairs.add((v, w))
        else:
            self._rows[v] |= 1 << w

    def clear(self, v, w):
        if self.hashed:
            self._pairs.discard((v, w))
        else:
            self._rows[v] &= ~(1 << w)

    def insert(self, v, w):
        """Set bit (v, w); returns False if it was already set."""
        self.check_vertex(v)
        self.check_vertex(w)
        if self.has(v, w):
            return False
        self.set(v, w)
        return True

    def arc_count(self):
        if self.hashed:
            return len(self._pairs)
        return sum(row.bit_count() for row in self._rows)

    def row_or(self, dst, src):
        """OR row src into row dst (arcs out of src become arcs out of dst)."""
        if self.hashed:
            for v, w in [p for p in self._pairs if p[0] == src]:
                self._pairs.add((dst, w))
        else:
            self._rows[dst] |= self._rows[src]

    def clear_row(self, v):
        if self.hashed:
            self._pairs = {p for p in self._pairs if p[0] != v}
        else:
            self._rows[v] = 0


class ArcCell:
    """One membership of an arc in a circular incidence list."""

    __slots__ = ("arc", "prev", "next")

    def __init__(self, arc):
        self.arc = arc
        self.prev = self
        self.next = self


class CircularList:
    """Circular doubly linked list of arc cells.

    Push, deletion of a known cell, and concatenation are all O(1); a
    merged component's list is the concatenation of its parts, so loops
    (arcs within one component) stay in place until deleted lazily.
    """

    __slots__ = ("head",)

    def __init__(self):
        self.head = None

    def __bool__(self):
        return self.head is not None

    def push_front(self, cell):
        head = self.head
        if head is None:
            cell.prev = cell.next = cell
        else:
            tail = head.prev
            cell.next = head
            cell.prev = tail
            tail.next = cell
            head.prev = cell
        self.head = cell

    def delete(self, cell):
        """Unlink a cell known to belong to this list."""
        if cell.next is cell:
            self.head = None
        else:
            cell.prev.next = cell.next
            cell.next.prev = cell.prev
            if self.head is cell:
                self.head = cell.next
        cell.prev = cell.next = cell

    def concat(self, other):
        """Splice all cells of `other` onto this list; `other` becomes empty."""
        if other is self:
            raise ValueError("cannot concatenate a circular list with itself")
        if other.head is None:
            return self
        if self.head is None:
            self.head = other.head
            other.head = None
            return self
        a_head, b_head = self.head, other.head
        a_tail, b_tail = a_head.prev, b_head.prev
        a_tail.next = b_head
        b_head.prev = a_tail
        b_tail.next = a_head
        a_head.prev = b_tail
        other.head = None
        return self

    def __iter__(self):
        cell = self.head
        if cell is None:
            return
        while True:
            yield cell
            cell = cell.next
            if cell is self.head:
                return

    def arcs(self):
        return [cell.arc for cell in self]
