"""Dynamic ordered list with O(1) amortized order queries and updates.

Two-level list labeling: items live in buckets of at most BUCKET_CAP
entries, carrying integer tags that are locally renumbered on overflow;
buckets carry integer labels maintained by the standard amortized
range-relabeling scheme (find the smallest enclosing power-of-two label
range whose density is under threshold, respace it evenly).  An order
query compares (bucket label, item tag) pairs.
"""

from .base import OrderUsageError

LABEL_BITS = 62
LABEL_SPACE = 1 << LABEL_BITS
TAG_SPACE = 1 << 62
BUCKET_CAP = 64
# Density threshold ratio for the bucket-label ranges: a range of size 2^i
# may hold at most THRESHOLD**i buckets before it must grow.
THRESHOLD = 1.4


class OrderItem:
    """Opaque handle bound to one list; dead handles raise on use."""

    __slots__ = ("_bucket", "_tag", "value")

    def __init__(self, bucket, tag, value):
        self._bucket = bucket
        self._tag = tag
        self.value = value

    @property
    def alive(self):
        return self._bucket is not None

    def __repr__(self):
        state = "dead" if self._bucket is None else f"tag={self._tag}"
        return f"<OrderItem value={self.value!r} {state}>"


class _Bucket:
    __slots__ = ("label", "items", "prev", "next", "owner")

    def __init__(self, owner, label):
        self.owner = owner
        self.label = label
        self.items = []
        self.prev = None
        self.next = None


class OrderList:
    """Total order over opaque items; single writer per list."""

    def __init__(self):
        self._first = None
        self._last = None
        self._n_buckets = 0
        self._size = 0
        # Counts every bucket-label and item-tag reassignment; the
        # amortized scheme keeps this O(log n) per insertion.
        self.relabel_count = 0

    def __len__(self):
        return self._size

    def __iter__(self):
        b = self._first
        while b is not None:
            yield from b.items
            b = b.next

    def values(self):
        return [item.value for item in self]

    # -- queries ---------------------------------------------------------

    def before(self, x, y):
        """True iff x precedes y; False for x is y."""
        bx = x._bucket
        by = y._bucket
        if bx is None or by is None:
            raise OrderUsageError("order query on a deleted item")
        if bx is by:
            return x._tag < y._tag
        if bx.owner is not by.owner:
            raise OrderUsageError("order query across different lists")
        return bx.label < by.label

    def order(self, x, y):
        """'before' or 'after' for two distinct live items of this list."""
        if x is y:
            raise OrderUsageError("order query needs two distinct items")
        return "before" if self.before(x, y) else "after"

    # -- insertion -------------------------------------------------------

    def insert_first(self, value=None):
        b = self._first
        if b is None:
            return self._insert_into_empty(value)
        return self._insert_in_bucket(b, 0, value)

    def insert_last(self, value=None):
        b = self._last
        if b is None:
            return self._insert_into_empty(value)
        return self._insert_in_bucket(b, len(b.items), value)

    def insert_before(self, anchor, value=None):
        b = self._check_anchor(anchor)
        return self._insert_in_bucket(b, b.items.index(anchor), value)

    def insert_after(self, anchor, value=None):
        b = self._check_anchor(anchor)
        return self._insert_in_bucket(b, b.items.index(anchor) + 1, value)

    def delete(self, item):
        b = item._bucket
        if b is None:
            raise OrderUsageError("item already deleted")
        if b.owner is not self:
            raise OrderUsageError("item belongs to a different list")
        b.items.remove(item)
        item._bucket = None
        self._size -= 1
        if not b.items:
            self._unlink_bucket(b)

    # -- internals -------------------------------------------------------

    def _check_anchor(self, anchor):
        b = anchor._bucket
        if b is None:
            raise OrderUsageError("anchor item is deleted")
        if b.owner is not self:
            raise OrderUsageError("anchor belongs to a different list")
        return b

    def _insert_into_empty(self, value):
        b = _Bucket(self, LABEL_SPACE // 2)
        self._first = self._last = b
        self._n_buckets = 1
        item = OrderItem(b, TAG_SPACE // 2, value)
        b.items.append(item)
        self._size += 1
        return item

    def _insert_in_bucket(self, b, idx, value):
        items = b.items
        lo = items[idx - 1]._tag if idx > 0 else -1
        hi = items[idx]._tag if idx < len(items) else TAG_SPACE
        if hi - lo < 2:
            self._renumber_bucket(b)
            lo = items[idx - 1]._tag if idx > 0 else -1
            hi = items[idx]._tag if idx < len(items) else TAG_SPACE
        item = OrderItem(b, (lo + hi) // 2, value)
        items.insert(idx, item)
        self._size += 1
        if len(items) > BUCKET_CAP:
            self._split_bucket(b)
        return item

    def _renumber_bucket(self, b):
        stride = TAG_SPACE // (len(b.items) + 1)
        tag = stride
        for item in b.items:
            item._tag = tag
            tag += stride
        self.relabel_count += len(b.items)

    def _split_bucket(self, b):
        half = len(b.items) // 2
        nb = _Bucket(self, 0)
        nb.items = b.items[half:]
        del b.items[half:]
        for item in nb.items:
            item._bucket = nb
        self._link_bucket_after(b, nb)

    def _link_bucket_after(self, b, nb):
        lo = b.label
        hi = b.next.label if b.next is not None else LABEL_SPACE
        if hi - lo < 2:
            self._relabel_range(b)
            lo = b.label
            hi = b.next.label if b.next is not None else LABEL_SPACE
        nb.label = (lo + hi) // 2
        nb.prev = b
        nb.next = b.next
        if b.next is not None:
            b.next.prev = nb
        else:
            self._last = nb
        b.next = nb
        self._n_buckets += 1

    def _relabel_range(self, b):
        """Respace bucket labels around b so a new label fits after it.

        Walks enclosing aligned label ranges of doubling size until one is
        sparse enough (occupancy under THRESHOLD**i and stride at least 2),
        then distributes its buckets evenly.
        """
        i = 1
        while i <= LABEL_BITS:
            size = 1 << i
            base = b.label & ~(size - 1)
            top = base + size
            left = b
            count = 1
            while left.prev is not None and left.prev.label >= base:
                left = left.prev
                count += 1
            right = b
            while right.next is not None and right.next.label < top:
                right = right.next
                count += 1
            if count + 1 <= THRESHOLD**i and size >= 2 * (count + 1):
                stride = size // (count + 1)
                label = base + stride
                node = left
                while True:
                    node.label = label
                    label += stride
                    if node is right:
                        break
                    node = node.next
                self.relabel_count += count
                return
            i += 1
        raise AssertionError("bucket label space exhausted")

    def _unlink_bucket(self, b):
        if b.prev is not None:
            b.prev.next = b.next
        else:
            self._first = b.next
        if b.next is not None:
            b.next.prev = b.prev
        else:
            self._last = b.prev
        self._n_buckets -= 1
