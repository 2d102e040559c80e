"""Shared fixtures: the worked 12-vertex example used across engine tests.

Vertex ids equal initial positions: a=0, b=1, w=2, c=3, d=4, e=5, f=6,
g=7, h=8, i=9, v=10, j=11.  The arc insertion order pins the incidence
list heads (lists are prepend-ordered) so the two-way search traverses
arcs in the documented order.  The final insertion (v, w) = (10, 2)
triggers a search; it does not create a cycle.
"""

import pytest

A, B, W, C, D, E, F, G, H, I, V, J = range(12)

FIXTURE_N = 12

# insertion order matters: first-out(w)=(w,h), first-in(v)=(d,v),
# first-out(f)=(f,h), first-in(d)=(a,d)
FIXTURE_ARCS = [
    (W, C),
    (G, V),
    (F, I),
    (B, D),
    (E, G),
    (A, D),
    (C, F),
    (F, H),
    (W, H),
    (H, J),
    (D, V),
]

FIXTURE_TRIGGER = (V, W)

# two-way search: compatible pairs in traversal order
FIXTURE_TRACE = [
    ((W, H), (D, V)),
    ((W, C), (G, V)),
    ((C, F), (A, D)),
    ((F, H), (E, G)),
]
FIXTURE_PIVOTS = [D, F]  # threshold sequence after the initial s = v

# reordering: t=f, F_< = {w,c}, B_> = {v,g}
FIXTURE_SOFT_MOVED = (G, V, W, C)
FIXTURE_SOFT_FINAL = [A, B, D, E, G, V, W, C, F, H, I, J]

# one-way limited search: visited set and reverse postorder placement
FIXTURE_LIMITED_VISITED = {W, C, F, H, I}
FIXTURE_LIMITED_MOVED = (W, C, F, I, H)
FIXTURE_LIMITED_FINAL = [A, B, D, E, G, V, W, C, F, I, H, J]

# dense topological search: F=[w,c,f], B=[v,g], meet at slot 6 (0-based)
FIXTURE_DENSE_F = [W, C, F]
FIXTURE_DENSE_B = [V, G]
FIXTURE_DENSE_K = 6
FIXTURE_DENSE_FINAL = [A, B, E, G, D, V, W, C, F, I, H, J]


@pytest.fixture
def paper_fixture():
    return FIXTURE_N, list(FIXTURE_ARCS), FIXTURE_TRIGGER


def swap_decomposition(moves_f, moves_b):
    """Decompose one dense reordering into pairwise swaps.

    Repeatedly swaps an up-mover and a down-mover in out-of-order slots
    with no other moved vertex between them; each swap's distance is twice
    the slot gap.  Returns (swapped pairs, total swap distance) and checks
    the decomposition lands every vertex on its recorded new position.
    """
    state = [(old, v, "F") for v, old, new in moves_f]
    state += [(old, v, "B") for v, old, new in moves_b]
    state.sort()
    swaps = []
    total = 0
    changed = True
    while changed:
        changed = False
        for a in range(len(state) - 1):
            pa, va, ka = state[a]
            pb, vb, kb = state[a + 1]
            if ka == "F" and kb == "B":
                swaps.append(frozenset((va, vb)))
                total += 2 * (pb - pa)
                state[a], state[a + 1] = (pa, vb, "B"), (pb, va, "F")
                changed = True
    final = {v: p for p, v, _ in state}
    want = {v: new for v, old, new in moves_f}
    want.update({v: new for v, old, new in moves_b})
    assert final == want, "swap decomposition does not reach the recorded placement"
    return swaps, total
