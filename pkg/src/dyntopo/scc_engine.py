"""Strong component maintenance under arc insertion.

Both engines keep a disjoint-set partition with one canonical vertex per
component and a topological order of the condensation over canonical
vertices.  The sparse engine runs the soft-threshold search over circular
per-component incidence lists (constant-time merge, lazy loop deletion);
the dense engine runs the topological search over a condensed bit matrix
with explicit consecutive numbering.  Neither ever reports a cycle: a
cycle-closing insertion merges the components on the new cycle instead.
"""

import random
from functools import cmp_to_key

from .base import (
    MERGED,
    NO_SEARCH,
    REORDERED,
    AddOutcome,
    DuplicateArcError,
    Metrics,
)
from .dense_engine import reorder_slots, topological_search
from .graph_store import ArcCell, CircularList, DenseMatrix, VertexRangeError
from .order_list import OrderList
from .sparse_engine import MEDIAN, RANDOM

# live-vertex list tags (forward and backward sides are independent,
# since a component may be visited in both directions)
_NONE, _ACTIVE, _PASSIVE = 0, 1, 2


class DisjointSets:
    """Union-find with path compression and union by rank.

    unite(x, y) makes x the canonical vertex of the merged set regardless
    of which tree root the rank rule picks; find returns canonical
    vertices, not tree roots.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.label = list(range(n))  # tree root -> canonical vertex
        self.n_sets = n

    def _root(self, v):
        parent = self.parent
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            parent[v], v = r, parent[v]
        return r

    def find(self, v):
        return self.label[self._root(v)]

    def is_canonical(self, v):
        return self.find(v) == v

    def unite(self, x, y):
        rx = self._root(x)
        ry = self._root(y)
        if self.label[rx] != x or self.label[ry] != y:
            raise ValueError("unite requires canonical vertices")
        if rx == ry:
            raise ValueError(f"{x} and {y} are already in the same set")
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        self.label[rx] = x
        self.n_sets -= 1
        return x


def identify_new_component(members, arcs, fw, fv):
    """Canonical vertices lying on paths from fw to fv in a condensed DAG.

    `arcs` must not contain the just-added condensed arc (fv, fw), so the
    graph is acyclic and a single depth-first pass from fw suffices: fv is
    marked when reached, and a vertex is marked when retreating along an
    arc to a marked head.  Empty result means fv is unreachable (no
    component merge).
    """
    adj = {x: [] for x in members}
    for a, b in arcs:
        if a in adj and b in adj:
            adj[a].append(b)
    if fw not in adj:
        return set()
    marked = set()
    visited = {fw}
    stack = [(fw, iter(adj[fw]))]
    while stack:
        node, it = stack[-1]
        child = next(it, None)
        if child is None:
            stack.pop()
            if stack and node in marked:
                marked.add(stack[-1][0])
            continue
        if child == fv:
            marked.add(fv)
        if child not in visited:
            visited.add(child)
            stack.append((child, iter(adj[child])))
        elif child in marked:
            marked.add(node)
    return marked


class _VertexList:
    """Doubly linked list over a fixed vertex universe (intrusive arrays)."""

    __slots__ = ("nxt", "prv", "head", "tail")

    def __init__(self, n):
        self.nxt = [-1] * n
        self.prv = [-1] * n
        self.head = -1
        self.tail = -1

    def push(self, x):
        tail = self.tail
        self.prv[x] = tail
        self.nxt[x] = -1
        if tail == -1:
            self.head = x
        else:
            self.nxt[tail] = x
        self.tail = x

    def remove(self, x):
        p = self.prv[x]
        nx = self.nxt[x]
        if p == -1:
            self.head = nx
        else:
            self.nxt[p] = nx
        if nx == -1:
            self.tail = p
        else:
            self.prv[nx] = p

    def members(self):
        out = []
        x = self.head
        while x != -1:
            out.append(x)
            x = self.nxt[x]
        return out

    def drain(self):
        out = self.members()
        self.head = -1
        self.tail = -1
        return out


class SccSparseEngine:
    """Soft-threshold-search variant over circular incidence lists."""

    def __init__(self, n, pivot=MEDIAN, seed=0, strict=False, trace=False):
        if pivot not in (MEDIAN, RANDOM):
            raise ValueError(f"unknown pivot rule: {pivot}")
        self.n = n
        self.sets = DisjointSets(n)
        self.order = OrderList()
        self.items = [self.order.insert_last(v) for v in range(n)]
        self.out_lists = [CircularList() for _ in range(n)]
        self.in_lists = [CircularList() for _ in range(n)]
        self.arc_tail = []
        self.arc_head = []
        self.out_cells = []
        self.in_cells = []
        self._pairs = set()
        self.pivot_rule = pivot
        self.metrics = Metrics()
        self._rng = random.Random(seed)
        self._strict = strict
        self._tracing = trace
        self.last_trace = None
        self.last_pivots = None
        # per-search workspace over canonical vertices
        self._in_f = [False] * n
        self._in_b = [False] * n
        self._out_cur = [None] * n
        self._in_cur = [None] * n
        self._out_live = [False] * n
        self._in_live = [False] * n
        self._f_where = [_NONE] * n
        self._b_where = [_NONE] * n
        self._fa = _VertexList(n)
        self._fp = _VertexList(n)
        self._ba = _VertexList(n)
        self._bp = _VertexList(n)

    @property
    def m(self):
        return len(self.arc_tail)

    def find(self, v):
        return self.sets.find(v)

    def unite(self, x, y):
        return self.sets.unite(x, y)

    def canonical_order(self):
        return self.order.values()

    def partition(self):
        groups = {}
        for v in range(self.n):
            groups.setdefault(self.sets.find(v), []).append(v)
        return [frozenset(members) for members in groups.values()]

    def check_condensation_order(self):
        find = self.sets.find
        items = self.items
        before = self.order.before
        for t, h in zip(self.arc_tail, self.arc_head):
            ft, fh = find(t), find(h)
            if ft != fh and not before(items[ft], items[fh]):
                raise AssertionError(f"condensed arc ({ft}, {fh}) contradicts the order")

    def _check_vertex(self, v):
        if not 0 <= v < self.n:
            raise VertexRangeError(f"vertex {v} out of range [0, {self.n})")

    # -- insertion -----------------------------------------------------------

    def add_arc(self, v, w):
        self._check_vertex(v)
        self._check_vertex(w)
        if (v, w) in self._pairs:
            raise DuplicateArcError(f"arc ({v}, {w}) already present")
        self._pairs.add((v, w))
        fv = self.sets.find(v)
        fw = self.sets.find(w)
        arc = len(self.arc_tail)
        self.arc_tail.append(v)
        self.arc_head.append(w)
        ocell = ArcCell(arc)
        icell = ArcCell(arc)
        self.out_cells.append(ocell)
        self.in_cells.append(icell)
        self.out_lists[fv].push_front(ocell)
        self.in_lists[fw].push_front(icell)
        if fv == fw:
            # an in-component arc is a loop, deleted lazily if traversed
            return AddOutcome(NO_SEARCH)
        items = self.items
        if self.order.before(items[fv], items[fw]):
            return AddOutcome(NO_SEARCH)
        if self._tracing:
            self.last_trace = []
            self.last_pivots = []
        f_list, b_list = self._search(fv, fw)
        outcome = self._finish_insertion(arc, fv, fw, f_list, b_list)
        self._reset_workspace(f_list, b_list)
        if self._strict:
            self.check_condensation_order()
        return outcome

    # -- soft-threshold search over canonical vertices -------------------------

    def _search(self, fv, fw):
        items = self.items
        before = self.order.before
        metrics = self.metrics
        in_f, in_b = self._in_f, self._in_b
        fa, fp, ba, bp = self._fa, self._fp, self._ba, self._bp
        f_where, b_where = self._f_where, self._b_where

        f_list = [fw]
        b_list = [fv]
        in_f[fw] = True
        in_b[fv] = True
        self._activate_forward(fw)
        self._activate_backward(fv)
        s = fv
        while fa.head != -1 and ba.head != -1:
            metrics.loop_iterations += 1
            u = fa.head
            z = ba.head
            if u == z:
                # One component heads both active lists (possible here since
                # components may sit in F and B at once).  Prefer any other
                # active member; the threshold rules then guarantee progress.
                if fa.nxt[u] != -1:
                    u = fa.nxt[u]
                elif ba.nxt[z] != -1:
                    z = ba.nxt[z]
            if u == z:
                # Sole active component on both sides: drain its own cursors
                # so that at termination every arc out of F_< and into B_>
                # has been traversed (the closure the reorder and the merge
                # detection rely on).
                self._step(u, z, f_list, b_list)
            elif before(items[u], items[z]):
                self._step(u, z, f_list, b_list)
            else:
                # u > z and u != z: at least one side passivates
                si = items[s]
                if before(si, items[u]):
                    fa.remove(u)
                    fp.push(u)
                    f_where[u] = _PASSIVE
                if before(items[z], si):
                    ba.remove(z)
                    bp.push(z)
                    b_where[z] = _PASSIVE
            if fa.head == -1:
                for x in bp.drain():
                    b_where[x] = _NONE
                if b_where[s] == _ACTIVE:
                    ba.remove(s)
                    b_where[s] = _NONE
                if fp.head != -1:
                    cand = fp.members()
                    s = self._select_pivot(cand)
                    si = items[s]
                    for x in cand:
                        if not before(si, items[x]):  # x <= s
                            fp.remove(x)
                            fa.push(x)
                            f_where[x] = _ACTIVE
            if ba.head == -1:
                for x in fp.drain():
                    f_where[x] = _NONE
                if f_where[s] == _ACTIVE:
                    fa.remove(s)
                    f_where[s] = _NONE
                if bp.head != -1:
                    cand = bp.members()
                    s = self._select_pivot(cand)
                    si = items[s]
                    for x in cand:
                        if not before(items[x], si):  # x >= s
                            bp.remove(x)
                            ba.push(x)
                            b_where[x] = _ACTIVE
            if self._strict:
                self._assert_passivity(s)
        return f_list, b_list

    def _step(self, u, z, f_list, b_list):
        """One compatible traversal through the canonical mapping.

        Loops (arcs whose endpoints share a canonical vertex) are deleted
        in place instead of being followed; a component retires from an
        active list when its circular cursor wraps back to the list head.
        Never signals a cycle.
        """
        metrics = self.metrics
        find = self.sets.find
        a_cell = self._out_cur[u]
        b_cell = self._in_cur[z]
        arc_a = a_cell.arc
        arc_b = b_cell.arc
        na = a_cell.next
        if na is self.out_lists[u].head:
            self._out_live[u] = False
            self._out_cur[u] = None
            self._fa.remove(u)
            self._f_where[u] = _NONE
        else:
            self._out_cur[u] = na
        nb = b_cell.next
        if nb is self.in_lists[z].head:
            self._in_live[z] = False
            self._in_cur[z] = None
            self._ba.remove(z)
            self._b_where[z] = _NONE
        else:
            self._in_cur[z] = nb
        metrics.search_steps += 1
        metrics.arc_traversals += 2
        q, g = self.arc_tail[arc_a], self.arc_head[arc_a]
        h, r = self.arc_tail[arc_b], self.arc_head[arc_b]
        if self.last_trace is not None and self._tracing:
            self.last_trace.append(((q, g), (h, r)))
        x = find(g)
        y = find(h)
        if u == x:
            self._delete_arc(arc_a)
        if y == z and arc_b != arc_a:
            # arc_a == arc_b happens only in a self-step on a loop, which
            # the forward branch already deleted
            self._delete_arc(arc_b)
        if not self._in_f[x]:
            self._in_f[x] = True
            f_list.append(x)
            self._activate_forward(x)
        if not self._in_b[y]:
            self._in_b[y] = True
            b_list.append(y)
            self._activate_backward(y)

    def _activate_forward(self, x):
        cell = self.out_lists[x].head
        self._out_cur[x] = cell
        self._out_live[x] = cell is not None
        if cell is not None:
            self._fa.push(x)
            self._f_where[x] = _ACTIVE

    def _activate_backward(self, y):
        cell = self.in_lists[y].head
        self._in_cur[y] = cell
        self._in_live[y] = cell is not None
        if cell is not None:
            self._ba.push(y)
            self._b_where[y] = _ACTIVE

    def _delete_arc(self, arc):
        """Unlink both cells of a loop arc, stepping past any live cursor."""
        ct = self.sets.find(self.arc_tail[arc])
        ch = self.sets.find(self.arc_head[arc])
        ocell = self.out_cells[arc]
        icell = self.in_cells[arc]
        if self._out_live[ct] and self._out_cur[ct] is ocell:
            nxt = ocell.next
            if nxt is ocell or nxt is self.out_lists[ct].head:
                self._out_live[ct] = False
                self._out_cur[ct] = None
                self._retire_forward(ct)
            else:
                self._out_cur[ct] = nxt
        if self._in_live[ch] and self._in_cur[ch] is icell:
            nxt = icell.next
            if nxt is icell or nxt is self.in_lists[ch].head:
                self._in_live[ch] = False
                self._in_cur[ch] = None
                self._retire_backward(ch)
            else:
                self._in_cur[ch] = nxt
        self.out_lists[ct].delete(ocell)
        self.in_lists[ch].delete(icell)

    def _retire_forward(self, x):
        tag = self._f_where[x]
        if tag == _ACTIVE:
            self._fa.remove(x)
        elif tag == _PASSIVE:
            self._fp.remove(x)
        self._f_where[x] = _NONE

    def _retire_backward(self, x):
        tag = self._b_where[x]
        if tag == _ACTIVE:
            self._ba.remove(x)
        elif tag == _PASSIVE:
            self._bp.remove(x)
        self._b_where[x] = _NONE

    # -- post-search: pivot, partition, reorder, merge --------------------------

    def _finish_insertion(self, new_arc, fv, fw, f_list, b_list):
        items = self.items
        order = self.order
        before = order.before
        out_live = self._out_live

        t = fv
        ti = items[fv]
        for x in f_list:
            if out_live[x]:
                xi = items[x]
                if before(xi, ti):
                    t = x
                    ti = xi
        f_less = [x for x in f_list if before(items[x], ti)]
        b_greater = [y for y in b_list if before(ti, items[y])]

        members = set(f_less)
        members.add(t)
        members.update(b_greater)
        y_arcs = self._condensed_arcs(f_less, b_greater, members, new_arc)
        marked = identify_new_component(members, y_arcs, fw, fv)

        moved = self._reorder(t, fv, f_less, b_greater)

        if not marked:
            return AddOutcome(REORDERED, moved=tuple(moved))
        absorbed = sorted(marked - {fv})
        for c in absorbed:
            self.sets.unite(fv, c)
            self.out_lists[fv].concat(self.out_lists[c])
            self.in_lists[fv].concat(self.in_lists[c])
            order.delete(items[c])
            items[c] = None
        return AddOutcome(
            MERGED, moved=tuple(moved), canonical=fv, absorbed=tuple(absorbed)
        )

    def _condensed_arcs(self, f_less, b_greater, members, new_arc):
        """Condensed arcs within the affected set, from the traversed lists.

        All arcs out of F_< and into B_> were traversed by the search, so
        this walk is charged to it.  The just-added arc is skipped so the
        result stays acyclic for the marking pass.
        """
        find = self.sets.find
        arcs = []
        for x in f_less:
            for cell in self.out_lists[x]:
                if cell.arc == new_arc:
                    continue
                fh = find(self.arc_head[cell.arc])
                if fh != x and fh in members:
                    arcs.append((x, fh))
        for y in b_greater:
            for cell in self.in_lists[y]:
                if cell.arc == new_arc:
                    continue
                ft = find(self.arc_tail[cell.arc])
                if ft != y and ft in members:
                    arcs.append((ft, y))
        return arcs

    def _reorder(self, t, fv, f_less, b_greater):
        items = self.items
        order = self.order
        order_f = self._induced_topo(f_less, forward=True)
        order_b = self._induced_topo(b_greater, forward=False)
        ti = items[t]
        if t == fv:
            # B_> is empty; the F_< block lands just after t
            anchor = ti
            for x in reversed(order_f):
                order.delete(items[x])
                items[x] = order.insert_after(anchor, x)
        else:
            for x in order_f:
                order.delete(items[x])
                items[x] = order.insert_before(ti, x)
            anchor = items[order_f[0]] if order_f else ti
            for y in order_b:
                order.delete(items[y])
                items[y] = order.insert_before(anchor, y)
        moved = order_b + order_f
        self.metrics.vertex_moves += len(moved)
        self.metrics.total_move_distance += len(moved)
        return moved

    def _induced_topo(self, group, forward):
        if not group:
            return []
        find = self.sets.find
        member_set = set(group)
        adj = {x: [] for x in group}
        if forward:
            for x in group:
                for cell in self.out_lists[x]:
                    fh = find(self.arc_head[cell.arc])
                    if fh != x and fh in member_set:
                        adj[x].append(fh)
        else:
            for y in group:
                for cell in self.in_lists[y]:
                    ft = find(self.arc_tail[cell.arc])
                    if ft != y and ft in member_set:
                        adj[ft].append(y)
        post = []
        visited = set()
        for root in group:
            if root in visited:
                continue
            visited.add(root)
            stack = [(root, iter(adj[root]))]
            while stack:
                x, it = stack[-1]
                advanced = False
                for y in it:
                    if y not in visited:
                        visited.add(y)
                        stack.append((y, iter(adj[y])))
                        advanced = True
                        break
                if not advanced:
                    post.append(x)
                    stack.pop()
        post.reverse()
        return post

    def _select_pivot(self, candidates):
        self.metrics.pivot_selections += 1
        if self.pivot_rule == RANDOM:
            s = candidates[self._rng.randrange(len(candidates))]
        else:
            s = self._lower_median(candidates)
        if self._tracing and self.last_pivots is not None:
            self.last_pivots.append(s)
        return s

    def _lower_median(self, candidates):
        items = self.items
        before = self.order.before
        k = (len(candidates) - 1) // 2
        lst = candidates
        while len(lst) > 32:
            pivot = lst[self._rng.randrange(len(lst))]
            pi = items[pivot]
            less = [x for x in lst if before(items[x], pi)]
            if k < len(less):
                lst = less
                continue
            if k == len(less):
                return pivot
            k -= len(less) + 1
            lst = [x for x in lst if before(pi, items[x])]
        ranked = sorted(
            lst, key=cmp_to_key(lambda a, b: -1 if before(items[a], items[b]) else 1)
        )
        return ranked[k]

    def _assert_passivity(self, s):
        items = self.items
        before = self.order.before
        si = items[s]
        for x in self._fp.members():
            if not before(si, items[x]):
                raise AssertionError(f"passive forward component {x} not after threshold {s}")
        for x in self._bp.members():
            if not before(items[x], si):
                raise AssertionError(f"passive backward component {x} not before threshold {s}")

    def _reset_workspace(self, f_list, b_list):
        for x in self._fa.drain():
            self._f_where[x] = _NONE
        for x in self._fp.drain():
            self._f_where[x] = _NONE
        for x in self._ba.drain():
            self._b_where[x] = _NONE
        for x in self._bp.drain():
            self._b_where[x] = _NONE
        for x in f_list:
            self._in_f[x] = False
            self._out_cur[x] = None
            self._out_live[x] = False
        for y in b_list:
            self._in_b[y] = False
            self._in_cur[y] = None
            self._in_live[y] = False


class SccDenseEngine:
    """Topological-search variant over a condensed adjacency matrix.

    The matrix is indexed by canonical vertex (ids are stable); the
    numbering covers only live canonical vertices and is rebuilt
    consecutively after every merge.
    """

    def __init__(self, n, strict=False):
        self.n = n
        self.sets = DisjointSets(n)
        self.matrix = DenseMatrix(n)
        self.position = list(range(n))
        self.vertex = list(range(n))
        self.metrics = Metrics()
        self._pairs = set()
        self._strict = strict

    @property
    def m(self):
        return len(self._pairs)

    def find(self, v):
        return self.sets.find(v)

    def canonical_order(self):
        return list(self.vertex)

    def partition(self):
        groups = {}
        for v in range(self.n):
            groups.setdefault(self.sets.find(v), []).append(v)
        return [frozenset(members) for members in groups.values()]

    def check_condensation_order(self):
        position = self.position
        for x in self.vertex:
            for y in self.vertex:
                if x != y and self.matrix.has(x, y) and position[x] >= position[y]:
                    raise AssertionError(f"condensed arc ({x}, {y}) contradicts the numbering")

    def add_arc(self, v, w):
        self.matrix.check_vertex(v)
        self.matrix.check_vertex(w)
        if (v, w) in self._pairs:
            raise DuplicateArcError(f"arc ({v}, {w}) already present")
        self._pairs.add((v, w))
        fv = self.sets.find(v)
        fw = self.sets.find(w)
        if fv == fw:
            return AddOutcome(NO_SEARCH)
        self.matrix.set(fv, fw)
        if self.position[fv] < self.position[fw]:
            return AddOutcome(NO_SEARCH)
        f_queue, b_queue, k = topological_search(
            self.matrix, self.vertex, self.position, self.metrics, fv, fw
        )
        affected = list(f_queue) + list(b_queue)
        marked = self._identify(affected, fw, fv)
        moves_f, moves_b = reorder_slots(
            self.matrix, self.vertex, self.position, self.metrics, f_queue, b_queue, k
        )
        moved = [x for x, _, _ in moves_b] + [x for x, _, _ in moves_f]
        if not marked:
            if self._strict:
                self.check_condensation_order()
            return AddOutcome(REORDERED, moved=tuple(moved))
        canonical = self.vertex[k]
        if canonical != fw:
            raise AssertionError("reordering must place the search root at the meet position")
        absorbed = sorted(marked - {canonical})
        for c in absorbed:
            self.sets.unite(canonical, c)
        self._merge_matrix(canonical, absorbed)
        dead = set(absorbed)
        self.vertex = [x for x in self.vertex if x not in dead]
        for i, x in enumerate(self.vertex):
            self.position[x] = i
        if self._strict:
            self.check_condensation_order()
        return AddOutcome(
            MERGED, moved=tuple(moved), canonical=canonical, absorbed=tuple(absorbed)
        )

    def _identify(self, affected, fw, fv):
        """Condensed arcs among the affected set feed the marking pass."""
        matrix = self.matrix
        metrics = self.metrics
        arcs = []
        for a in affected:
            for b in affected:
                if a == b or (a == fv and b == fw):
                    continue
                metrics.arc_traversals += 1
                if matrix.has(a, b):
                    arcs.append((a, b))
        return identify_new_component(affected, arcs, fw, fv)

    def _merge_matrix(self, canonical, absorbed):
        matrix = self.matrix
        for c in absorbed:
            matrix.row_or(canonical, c)
        dead = set(absorbed)
        for u in self.vertex:
            if u in dead:
                continue
            for c in absorbed:
                if matrix.has(u, c):
                    matrix.set(u, canonical)
                    matrix.clear(u, c)
        for c in absorbed:
            matrix.clear_row(c)
        # merged rows may carry bits into the dead columns and the diagonal
        for c in absorbed:
            matrix.clear(canonical, c)
        matrix.clear(canonical, canonical)
