"""Incremental topological order with first-cycle detection, sparse strategy.

Two search modes restore the order after an inconsistent insertion:

- "limited": one-way depth-first search from the new head, bounded above
  by the new tail; visited vertices are re-placed just after the tail in
  reverse postorder.  O(nm) total; kept as a benchmarking baseline.
- "soft-threshold": two-way vertex-guided search whose active/passive
  frontier split around a threshold vertex replaces the heaps of ordered
  search; O(m^{3/2}) total arc traversals.

The topological order itself lives in an OrderList, so every comparison,
move, and deletion is constant amortized time.
"""

import random
from functools import cmp_to_key

from .base import (
    CYCLE,
    NO_SEARCH,
    REORDERED,
    AddOutcome,
    DuplicateArcError,
    FrozenEngineError,
    Metrics,
)
from .graph_store import NO_ARC, SparseGraph
from .order_list import OrderList

LIMITED = "limited"
SOFT_THRESHOLD = "soft-threshold"
MEDIAN = "median"
RANDOM = "random"

# Live-vertex list tags: forward/backward, active/passive.
_NONE, _FA, _FP, _BA, _BP = 0, 1, 2, 3, 4


class SparseEngine:
    """Maintains a topological order of n fixed vertices under arc insertion.

    The initial order is vertex-id order.  After the first cycle-creating
    insertion the engine reports the witness arc and freezes.
    """

    def __init__(self, n, mode=SOFT_THRESHOLD, pivot=MEDIAN, seed=0,
                 strict=False, trace=False):
        if mode not in (LIMITED, SOFT_THRESHOLD):
            raise ValueError(f"unknown mode: {mode}")
        if pivot not in (MEDIAN, RANDOM):
            raise ValueError(f"unknown pivot rule: {pivot}")
        self.graph = SparseGraph(n)
        self.order = OrderList()
        self.items = [self.order.insert_last(v) for v in range(n)]
        self.mode = mode
        self.pivot_rule = pivot
        self.metrics = Metrics()
        self.cycle_witness = None
        self._rng = random.Random(seed)
        self._strict = strict
        self._tracing = trace
        self.last_trace = None
        self.last_pivots = None
        # reusable per-search workspace
        self._in_f = [False] * n
        self._in_b = [False] * n
        self._out_cur = [NO_ARC] * n
        self._in_cur = [NO_ARC] * n
        self._where = [_NONE] * n
        self._nxt = [-1] * n
        self._prv = [-1] * n
        self._head = [-1] * 5
        self._tail = [-1] * 5

    @property
    def n(self):
        return self.graph.n

    @property
    def status(self):
        return "active" if self.cycle_witness is None else "cycle-found"

    def before(self, x, y):
        return self.order.before(self.items[x], self.items[y])

    def current_order(self):
        return self.order.values()

    def check_topological(self):
        """Raise if any stored arc contradicts the maintained order."""
        before = self.order.before
        items = self.items
        for t, h in self.graph.arcs():
            if not before(items[t], items[h]):
                raise AssertionError(f"arc ({t}, {h}) contradicts the order")

    # -- insertion ---------------------------------------------------------

    def add_arc(self, v, w):
        if self.cycle_witness is not None:
            raise FrozenEngineError("engine is frozen after a cycle was found")
        g = self.graph
        g.check_vertex(v)
        g.check_vertex(w)
        if v == w:
            # a self-loop is an immediate cycle; not stored
            self.cycle_witness = (v, v)
            return AddOutcome(CYCLE, witness=(v, v))
        if g.has_arc(v, w):
            raise DuplicateArcError(f"arc ({v}, {w}) already present")
        g.insert_arc(v, w)
        items = self.items
        if self.order.before(items[v], items[w]):
            return AddOutcome(NO_SEARCH)
        if self._tracing:
            self.last_trace = []
            self.last_pivots = []
        if self.mode == LIMITED:
            witness, visited, postorder = self._limited_search(v, w)
            if witness is not None:
                self.cycle_witness = witness
                return AddOutcome(CYCLE, witness=witness)
            moved = self._reorder_after_limited(v, postorder)
        else:
            witness, f_list, b_list = self._soft_search(v, w)
            if witness is not None:
                self._reset_workspace(f_list, b_list)
                self.cycle_witness = witness
                return AddOutcome(CYCLE, witness=witness)
            moved = self._reorder_two_way(v, w, f_list, b_list)
            self._reset_workspace(f_list, b_list)
        if self._strict:
            self.check_topological()
        return AddOutcome(REORDERED, moved=tuple(moved))

    # -- limited (one-way) search ------------------------------------------

    def _limited_search(self, v, w):
        """Depth-first search from w over vertices ordered before v.

        Returns (witness, visited, postorder): witness is an arc (x, v)
        closing a cycle, or None with `visited` equal to every vertex
        before v reachable from w through vertices before v.
        """
        g = self.graph
        items = self.items
        before = self.order.before
        metrics = self.metrics
        next_out = g.next_out
        arc_head = g.arc_head
        in_f = self._in_f
        vi = items[v]
        visited = [w]
        in_f[w] = True
        post = []
        stack_v = [w]
        stack_a = [g.first_out[w]]
        witness = None
        while stack_v:
            a = stack_a[-1]
            if a == NO_ARC:
                post.append(stack_v.pop())
                stack_a.pop()
                continue
            stack_a[-1] = next_out[a]
            metrics.arc_traversals += 1
            metrics.loop_iterations += 1
            y = arc_head[a]
            if y == v:
                witness = (stack_v[-1], y)
                break
            if not in_f[y] and before(items[y], vi):
                in_f[y] = True
                visited.append(y)
                stack_v.append(y)
                stack_a.append(g.first_out[y])
        for x in visited:
            in_f[x] = False
        return witness, visited, post

    def _reorder_after_limited(self, v, postorder):
        # Re-inserting in postorder leaves the block after v in reverse
        # postorder, a topological order of the visited subgraph.
        order = self.order
        items = self.items
        anchor = items[v]
        for x in postorder:
            order.delete(items[x])
            items[x] = order.insert_after(anchor, x)
        self.metrics.vertex_moves += len(postorder)
        self.metrics.total_move_distance += len(postorder)
        return list(reversed(postorder))

    # -- soft-threshold (two-way) search -------------------------------------

    def _soft_search(self, v, w):
        """Two-way search balancing arc traversals, soft threshold s.

        Returns (witness, f_list, b_list); on None witness the cursors and
        visit flags are left in place for the reordering step.
        """
        g = self.graph
        items = self.items
        before = self.order.before
        metrics = self.metrics
        first_out, first_in = g.first_out, g.first_in
        next_out, next_in = g.next_out, g.next_in
        arc_tail, arc_head = g.arc_tail, g.arc_head
        in_f, in_b = self._in_f, self._in_b
        out_cur, in_cur = self._out_cur, self._in_cur
        head = self._head
        trace = self.last_trace if self._tracing else None

        f_list = [w]
        b_list = [v]
        in_f[w] = True
        in_b[v] = True
        out_cur[w] = first_out[w]
        in_cur[v] = first_in[v]
        s = v
        if out_cur[w] != NO_ARC:
            self._push(_FA, w)
        if in_cur[v] != NO_ARC:
            self._push(_BA, v)
        witness = None

        while head[_FA] != -1 and head[_BA] != -1:
            metrics.loop_iterations += 1
            u = head[_FA]
            z = head[_BA]
            if before(items[u], items[z]):
                a = out_cur[u]
                b = in_cur[z]
                out_cur[u] = next_out[a]
                in_cur[z] = next_in[b]
                metrics.search_steps += 1
                metrics.arc_traversals += 2
                if out_cur[u] == NO_ARC:
                    self._remove(_FA, u)
                if in_cur[z] == NO_ARC:
                    self._remove(_BA, z)
                x = arc_head[a]
                y = arc_tail[b]
                if trace is not None:
                    trace.append(((u, x), (y, z)))
                if in_b[x]:
                    witness = (u, x)
                    break
                if in_f[y]:
                    witness = (y, z)
                    break
                if x == y:
                    # the two traversals met at one unvisited vertex: the
                    # path w..u, (u,x), (y,z), z..v plus (v,w) is a cycle
                    witness = (u, x)
                    break
                if not in_f[x]:
                    in_f[x] = True
                    f_list.append(x)
                    c = first_out[x]
                    out_cur[x] = c
                    if c != NO_ARC:
                        self._push(_FA, x)
                if not in_b[y]:
                    in_b[y] = True
                    b_list.append(y)
                    c = first_in[y]
                    in_cur[y] = c
                    if c != NO_ARC:
                        self._push(_BA, y)
            else:
                si = items[s]
                if before(si, items[u]):
                    self._remove(_FA, u)
                    self._push(_FP, u)
                if before(items[z], si):
                    self._remove(_BA, z)
                    self._push(_BP, z)
            if head[_FA] == -1:
                self._clear(_BP)
                if self._where[s] == _BA:
                    self._remove(_BA, s)
                if head[_FP] != -1:
                    cand = self._members(_FP)
                    s = self._select_pivot(cand)
                    si = items[s]
                    for x in cand:
                        if not before(si, items[x]):  # x <= s
                            self._remove(_FP, x)
                            self._push(_FA, x)
            if head[_BA] == -1:
                self._clear(_FP)
                if self._where[s] == _FA:
                    self._remove(_FA, s)
                if head[_BP] != -1:
                    cand = self._members(_BP)
                    s = self._select_pivot(cand)
                    si = items[s]
                    for x in cand:
                        if not before(items[x], si):  # x >= s
                            self._remove(_BP, x)
                            self._push(_BA, x)
            if self._strict:
                self._assert_passivity(s)
        return witness, f_list, b_list

    def _pivot_and_partition(self, v, f_list, b_list):
        """Reorder pivot t (order-minimum of v and the forward vertices
        with untraversed arcs) plus the vertex sets the reordering moves:
        forward vertices before t and backward vertices after it."""
        items = self.items
        before = self.order.before
        out_cur = self._out_cur
        t = v
        ti = items[v]
        for x in f_list:
            if out_cur[x] != NO_ARC:
                xi = items[x]
                if before(xi, ti):
                    t = x
                    ti = xi
        f_less = [x for x in f_list if before(items[x], ti)]
        b_greater = [y for y in b_list if before(ti, items[y])]
        return t, f_less, b_greater

    def _reorder_two_way(self, v, w, f_list, b_list):
        """Move F_< just before the pivot t and B_> just before F_<."""
        items = self.items
        order = self.order
        t, f_less, b_greater = self._pivot_and_partition(v, f_list, b_list)
        if self._strict:
            before = order.before
            wi, vi = items[w], items[v]
            for x in f_less + b_greater:
                xi = items[x]
                if before(xi, wi) or before(vi, xi):
                    raise AssertionError(f"vertex {x} moved from outside [w, v]")

        order_f = self._induced_topo(f_less, forward=True)
        order_b = self._induced_topo(b_greater, forward=False)
        if t == v:
            # same rule as limited search: the block lands just after v
            anchor = items[v]
            for x in reversed(order_f):
                order.delete(items[x])
                items[x] = order.insert_after(anchor, x)
        else:
            ti = items[t]
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

    def _induced_topo(self, members, forward):
        """Topological order of the subgraph induced by `members`.

        DFS reverse postorder; `forward` walks out-lists, otherwise
        in-lists (whose arcs were all traversed by the search).
        """
        if not members:
            return []
        g = self.graph
        member_set = set(members)
        adj = {x: [] for x in members}
        if forward:
            for x in members:
                for a in g.out_arcs(x):
                    y = g.arc_head[a]
                    if y in member_set:
                        adj[x].append(y)
        else:
            for y in members:
                for a in g.in_arcs(y):
                    x = g.arc_tail[a]
                    if x in member_set:
                        adj[x].append(y)
        post = []
        visited = set()
        for root in members:
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

    # -- threshold selection -------------------------------------------------

    def _select_pivot(self, candidates):
        self.metrics.pivot_selections += 1
        if self.pivot_rule == RANDOM:
            s = candidates[self._rng.randrange(len(candidates))]
        else:
            s = self._lower_median(candidates)
        if self._tracing:
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

    # -- intrusive live-vertex lists ------------------------------------------

    def _push(self, tag, x):
        tail = self._tail[tag]
        self._prv[x] = tail
        self._nxt[x] = -1
        if tail == -1:
            self._head[tag] = x
        else:
            self._nxt[tail] = x
        self._tail[tag] = x
        self._where[x] = tag

    def _remove(self, tag, x):
        p = self._prv[x]
        nx = self._nxt[x]
        if p == -1:
            self._head[tag] = nx
        else:
            self._nxt[p] = nx
        if nx == -1:
            self._tail[tag] = p
        else:
            self._prv[nx] = p
        self._where[x] = _NONE

    def _clear(self, tag):
        x = self._head[tag]
        where = self._where
        nxt = self._nxt
        while x != -1:
            where[x] = _NONE
            x = nxt[x]
        self._head[tag] = -1
        self._tail[tag] = -1

    def _members(self, tag):
        out = []
        x = self._head[tag]
        nxt = self._nxt
        while x != -1:
            out.append(x)
            x = nxt[x]
        return out

    def _reset_workspace(self, f_list, b_list):
        for tag in (_FA, _FP, _BA, _BP):
            self._clear(tag)
        in_f, in_b = self._in_f, self._in_b
        out_cur, in_cur = self._out_cur, self._in_cur
        for x in f_list:
            in_f[x] = False
            out_cur[x] = NO_ARC
        for y in b_list:
            in_b[y] = False
            in_cur[y] = NO_ARC

    def _assert_passivity(self, s):
        items = self.items
        before = self.order.before
        si = items[s]
        for x in self._members(_FP):
            if not before(si, items[x]):
                raise AssertionError(f"passive forward vertex {x} not after threshold {s}")
        for x in self._members(_BP):
            if not before(items[x], si):
                raise AssertionError(f"passive backward vertex {x} not before threshold {s}")
