"""Static reference algorithms the property tests check the engines against."""


def _adjacency(n, arcs):
    adj = [[] for _ in range(n)]
    for t, h in arcs:
        adj[t].append(h)
    return adj


def reachable(n, arcs, source, target):
    """True iff a directed path (possibly empty) leads from source to target."""
    if source == target:
        return True
    adj = _adjacency(n, arcs)
    seen = [False] * n
    seen[source] = True
    stack = [source]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v == target:
                return True
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return False


def static_toposort(n, arcs, method="dfs"):
    """Return (order, cycle): one is None.

    `order` is a topological order of all n vertices; `cycle` is a vertex
    list v0, v1, ..., vk with arcs v0->v1->...->vk->v0.  `method` chooses
    between repeated deletion of sources ("sources") and depth-first
    search ("dfs"); both agree on acyclicity.
    """
    if method == "sources":
        return _toposort_sources(n, arcs)
    if method == "dfs":
        return _toposort_dfs(n, arcs)
    raise ValueError(f"unknown toposort method: {method}")


def _toposort_sources(n, arcs):
    adj = _adjacency(n, arcs)
    indeg = [0] * n
    for _, h in arcs:
        indeg[h] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    order = []
    while queue:
        u = queue.pop()
        order.append(u)
        for v in adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if len(order) == n:
        return order, None
    return None, _extract_cycle(n, adj, indeg)


def _extract_cycle(n, adj, indeg):
    # Every vertex the source-deletion pass could not remove keeps at least
    # one in-arc from another such vertex, so walking backward inside the
    # residual set must revisit a vertex and close a cycle.
    residual = {v for v in range(n) if indeg[v] > 0}
    radj = {v: [] for v in residual}
    for u in residual:
        for v in adj[u]:
            if v in residual:
                radj[v].append(u)
    seen = {}
    path = []
    u = next(iter(residual))
    while u not in seen:
        seen[u] = len(path)
        path.append(u)
        u = radj[u][0]
    cycle = path[seen[u]:]
    cycle.reverse()
    return cycle


def _toposort_dfs(n, arcs):
    adj = _adjacency(n, arcs)
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    order = []
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, 0)]
        state[root] = 1
        while stack:
            u, i = stack[-1]
            if i < len(adj[u]):
                stack[-1] = (u, i + 1)
                v = adj[u][i]
                if state[v] == 0:
                    state[v] = 1
                    stack.append((v, 0))
                elif state[v] == 1:
                    # back arc: the stack from v to u closes a cycle
                    tail = [x for x, _ in stack]
                    return None, tail[tail.index(v):]
            else:
                state[u] = 2
                order.append(u)
                stack.pop()
    order.reverse()
    return order, None


def static_scc(n, arcs):
    """Strong components by iterative Tarjan.

    Returns (comp_of, components): comp_of[v] indexes into components,
    which lists the components in a topological order of the condensation
    (arc tails' components first).
    """
    adj = _adjacency(n, arcs)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp_of = [-1] * n
    scc_stack = []
    components = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                scc_stack.append(v)
                on_stack[v] = True
            advanced = False
            while i < len(adj[v]):
                w = adj[v][i]
                i += 1
                if index[w] == -1:
                    work[-1] = (v, i)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = scc_stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(components)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    # Tarjan emits components in reverse topological order.
    components.reverse()
    k = len(components)
    for v in range(n):
        comp_of[v] = k - 1 - comp_of[v]
    return comp_of, components


class TransitiveClosure:
    """Incremental reachability over a fixed vertex set, as bit rows.

    reach[u] holds a bitmask of vertices reachable from u (including u);
    reached_by[v] is the reverse.  Adding an arc is O(n) big-int ORs,
    which makes per-insertion cycle and partition oracles cheap in bulk
    test runs.  Equivalent to `reachable` (checked in the test suite).
    """

    def __init__(self, n):
        self.n = n
        self.reach = [1 << v for v in range(n)]
        self.reached_by = [1 << v for v in range(n)]

    def creates_cycle(self, v, w):
        """Would adding arc (v, w) close a directed cycle?"""
        return (self.reach[w] >> v) & 1 == 1

    def add_arc(self, v, w):
        targets = self.reach[w]
        sources = self.reached_by[v]
        if (self.reach[v] | targets) == self.reach[v]:
            return
        reach = self.reach
        reached_by = self.reached_by
        mask = sources
        while mask:
            low = mask & -mask
            reach[low.bit_length() - 1] |= targets
            mask ^= low
        mask = targets
        while mask:
            low = mask & -mask
            reached_by[low.bit_length() - 1] |= sources
            mask ^= low

    def is_reachable(self, u, v):
        return (self.reach[u] >> v) & 1 == 1

    def partition(self):
        """Strong components as frozensets (mutual reachability classes)."""
        seen = [False] * self.n
        comps = []
        for v in range(self.n):
            if seen[v]:
                continue
            members = self.reach[v] & self.reached_by[v]
            comp = []
            mask = members
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                seen[u] = True
                comp.append(u)
                mask ^= low
            comps.append(frozenset(comp))
        return comps
