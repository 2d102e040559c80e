"""Instance generators: adversarial constructions and random workloads.

Also owns the edge-stream wire format shared with the CLI: UTF-8 text,
first non-comment line is the vertex count, each following non-empty line
is `tail SP head` (0-based decimals), lines starting with `#` ignored,
arcs processed in file order.
"""

import random
from dataclasses import dataclass, field


@dataclass
class ArcSequence:
    """An ordered arc-insertion workload over n fixed vertices."""

    n: int
    arcs: list
    annotations: dict = field(default_factory=dict)

    @property
    def m(self):
        return len(self.arcs)

    def to_stream(self):
        lines = [str(self.n)]
        lines.extend(f"{t} {h}" for t, h in self.arcs)
        return "\n".join(lines) + "\n"


class StreamFormatError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_stream(text):
    """Parse edge-stream text into an ArcSequence; errors carry line numbers."""
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise StreamFormatError(lineno, f"expected vertex count, got {line!r}")
            if n < 0:
                raise StreamFormatError(lineno, "vertex count must be non-negative")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise StreamFormatError(lineno, f"expected 'tail head', got {line!r}")
        try:
            t, h = int(parts[0]), int(parts[1])
        except ValueError:
            raise StreamFormatError(lineno, f"non-integer vertex id in {line!r}")
        if not (0 <= t < n and 0 <= h < n):
            raise StreamFormatError(lineno, f"vertex id out of range [0, {n}) in {line!r}")
        arcs.append((t, h))
    if n is None:
        raise StreamFormatError(1, "empty stream: vertex count line missing")
    return ArcSequence(n, arcs)


def gen_local_lower_bound(p, k):
    """Path-swapping adversary: k+1 paths of p vertices each.

    The first n-k-1 arcs lay down the paths along the initial order; the
    k(k+1)/2 forcing arcs then run from the last vertex of a later path to
    the first vertex of an earlier one, each compelling any local
    reordering algorithm to move at least p vertices, for at least
    p*k*(k+1)/2 = n*k/2 moves overall.
    """
    if not 1 <= p <= k:
        raise ValueError("need 1 <= p <= k")
    n = p * (k + 1)
    arcs = []
    for block in range(k + 1):
        base = block * p
        arcs.extend((base + i, base + i + 1) for i in range(p - 1))
    for i in range(1, k + 1):
        first_of_pi = (i - 1) * p
        arcs.extend((j * p - 1, first_of_pi) for j in range(i + 1, k + 2))
    return ArcSequence(n, arcs, {"min_vertex_moves": p * k * (k + 1) // 2})


def gen_path(n):
    """Hamiltonian path whose vertex sequence alternates between the ends
    of the initial order (0, n-1, 1, n-2, ...), so nearly every arc lands
    against the maintained order and forces long-distance reordering.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    seq = []
    lo, hi = 0, n - 1
    while lo <= hi:
        seq.append(lo)
        if hi != lo:
            seq.append(hi)
        lo += 1
        hi -= 1
    arcs = [(seq[i], seq[i + 1]) for i in range(n - 1)]
    return ArcSequence(n, arcs, {"hamiltonian_path": True})


def gen_random(n, m, seed, mode="acyclic"):
    """Seeded random workload of m distinct-pair arcs.

    Both modes sample m distinct unordered pairs; "acyclic" orients each
    along a hidden random total order (the stream never creates a cycle),
    "arbitrary" orients each by a coin flip (m = n*(n-1)/2 yields a random
    complete orientation).
    """
    if mode not in ("acyclic", "arbitrary"):
        raise ValueError(f"unknown mode: {mode}")
    max_pairs = n * (n - 1) // 2
    if m > max_pairs:
        raise ValueError(f"m={m} exceeds the {max_pairs} distinct pairs on {n} vertices")
    rng = random.Random(seed)
    rank = list(range(n))
    rng.shuffle(rank)
    if m * 3 >= max_pairs:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        pairs = pairs[:m]
    else:
        chosen = set()
        pairs = []
        while len(pairs) < m:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key in chosen:
                continue
            chosen.add(key)
            pairs.append(key)
    arcs = []
    for u, v in pairs:
        if mode == "acyclic":
            arc = (u, v) if rank[u] < rank[v] else (v, u)
        else:
            arc = (u, v) if rng.random() < 0.5 else (v, u)
        arcs.append(arc)
    rng.shuffle(arcs)
    return ArcSequence(n, arcs, {"acyclic": mode == "acyclic"})
