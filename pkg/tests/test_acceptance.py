"""Acceptance suite: one test per criterion, each printing a PASS line.

Run `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
Every tolerance is pinned here; the oracles are independent of the
engines they judge (incremental bitset closure for reachability, static
strong components for partitions, brute-force swap decomposition for the
dense distance accounting).
"""

import math
import random
import time

import numpy as np

from dyntopo import DenseEngine, SccDenseEngine, SccSparseEngine, SparseEngine
from dyntopo.cli import run_stream
from dyntopo.generators import gen_local_lower_bound, gen_random
from dyntopo.oracles import TransitiveClosure, static_scc

from conftest import swap_decomposition


def _report(num, text):
    print(f"\nACCEPTANCE {num} PASS: {text}")


def topo_sequences():
    """1000 seeded sequences, n <= 50, m <= 600, alternating acyclic/arbitrary."""
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randint(5, 50)
        cap = n * (n - 1) // 2
        m = rng.randint(n, min(600, cap))
        mode = "acyclic" if seed % 2 == 0 else "arbitrary"
        yield seed, gen_random(n, m, seed=seed, mode=mode)


def scc_sequences():
    """300 seeded sequences, n <= 40, coin-flip orientations (cycles common)."""
    for seed in range(300):
        rng = random.Random(10_000 + seed)
        n = rng.randint(4, 40)
        cap = n * (n - 1) // 2
        m = rng.randint(n, min(4 * n, cap))
        yield seed, gen_random(n, m, seed=seed, mode="arbitrary")


def test_criterion_1_cycle_agreement_and_order_maintenance():
    t0 = time.perf_counter()
    sequences = 0
    insertions = 0
    cycles = 0
    for seed, seq in topo_sequences():
        sequences += 1
        n = seq.n
        sparse = SparseEngine(n, seed=seed)
        dense = DenseEngine(n)
        tc = TransitiveClosure(n)
        tails = np.empty(seq.m, dtype=np.int64)
        heads = np.empty(seq.m, dtype=np.int64)
        count = 0
        arange = np.arange(n)
        pos = np.empty(n, dtype=np.int64)
        for idx, (v, w) in enumerate(seq.arcs, start=1):
            expect = tc.creates_cycle(v, w)
            out_s = sparse.add_arc(v, w)
            out_d = dense.add_arc(v, w)
            insertions += 1
            assert (out_s.kind == "cycle") == expect, (seed, idx, "sparse")
            assert (out_d.kind == "cycle") == expect, (seed, idx, "dense")
            if expect:
                cycles += 1
                break
            tc.add_arc(v, w)
            tails[count] = v
            heads[count] = w
            count += 1
            pos[np.asarray(sparse.current_order())] = arange
            assert np.all(pos[tails[:count]] < pos[heads[:count]]), (seed, idx, "sparse")
            dpos = np.asarray(dense.position)
            assert np.all(dpos[tails[:count]] < dpos[heads[:count]]), (seed, idx, "dense")
    elapsed = time.perf_counter() - t0
    assert elapsed < 60, f"criterion 1 took {elapsed:.1f}s"
    _report(
        1,
        f"{sequences} sequences, {insertions} insertions, {cycles} cycles at the "
        f"oracle index, order fully topological throughout ({elapsed:.1f}s)",
    )


def test_criterion_2_scc_equivalence():
    t0 = time.perf_counter()
    sequences = 0
    insertions = 0
    for seed, seq in scc_sequences():
        sequences += 1
        n = seq.n
        engines = [SccSparseEngine(n, seed=seed), SccDenseEngine(n)]
        arcs = []
        tails = np.empty(seq.m, dtype=np.int64)
        heads = np.empty(seq.m, dtype=np.int64)
        count = 0
        for idx, (v, w) in enumerate(seq.arcs, start=1):
            for eng in engines:
                eng.add_arc(v, w)
            insertions += 1
            arcs.append((v, w))
            tails[count] = v
            heads[count] = w
            count += 1
            comp_of, comps = static_scc(n, arcs)
            want = {frozenset(c) for c in comps}
            for eng in engines:
                assert set(eng.partition()) == want, (seed, idx, type(eng).__name__)
            for eng in engines:
                labels = np.fromiter((eng.find(x) for x in range(n)), np.int64, n)
                posc = np.full(n, -1, dtype=np.int64)
                if isinstance(eng, SccSparseEngine):
                    for i, c in enumerate(eng.canonical_order()):
                        posc[c] = i
                else:
                    posc[np.asarray(eng.vertex)] = np.arange(len(eng.vertex))
                ft = labels[tails[:count]]
                fh = labels[heads[:count]]
                cross = ft != fh
                assert np.all(posc[ft[cross]] < posc[fh[cross]]), (
                    seed, idx, type(eng).__name__, "condensation order",
                )
    elapsed = time.perf_counter() - t0
    assert elapsed < 60, f"criterion 2 took {elapsed:.1f}s"
    _report(
        2,
        f"{sequences} sequences, {insertions} insertions, both engines match the "
        f"static partition and keep the condensation order topological ({elapsed:.1f}s)",
    )


def test_criterion_3_sparse_traversal_bound():
    worst = 0.0
    runs = 0
    for pivot in ("median", "random"):
        for seed, seq in topo_sequences():
            if not seq.annotations.get("acyclic"):
                continue
            eng = SparseEngine(seq.n, pivot=pivot, seed=seed)
            for v, w in seq.arcs:
                eng.add_arc(v, w)
            bound = 4 * seq.m**1.5 + seq.m + 1
            assert eng.metrics.arc_traversals <= bound, (seed, pivot)
            worst = max(worst, eng.metrics.arc_traversals / bound)
            runs += 1
        for n in (32, 64, 100):
            seq = gen_random(n, n * (n - 1) // 2, seed=n, mode="acyclic")
            eng = SparseEngine(n, pivot=pivot, seed=n)
            for v, w in seq.arcs:
                eng.add_arc(v, w)
            bound = 4 * seq.m**1.5 + seq.m + 1
            assert eng.metrics.arc_traversals <= bound, ("complete", n, pivot)
            worst = max(worst, eng.metrics.arc_traversals / bound)
            runs += 1
    _report(
        3,
        f"{runs} acyclic runs (both pivot rules, complete DAGs to n=100): "
        f"arc traversals within 4*m^1.5+m+1, worst ratio {worst:.4f}",
    )


def test_criterion_4_iteration_bound_per_search():
    worst = 0.0
    searches = 0
    streams = list(topo_sequences())
    streams.append(("complete", gen_random(100, 4950, seed=100, mode="acyclic")))
    for seed, seq in streams:
        n = seq.n
        eng = SparseEngine(n, seed=0)
        m = 0
        for v, w in seq.arcs:
            before = eng.metrics.loop_iterations
            out = eng.add_arc(v, w)
            m += 1
            delta = eng.metrics.loop_iterations - before
            bound = n * n + m + n
            assert delta <= bound, (seed, m)
            if delta:
                searches += 1
                worst = max(worst, delta / bound)
            if out.kind == "cycle":
                break
    _report(
        4,
        f"{searches} searches all within n^2+m+n while-loop iterations, "
        f"worst ratio {worst:.4f}",
    )


def test_criterion_5_local_lower_bound_moves():
    results = []
    for (p, k), need in [((3, 3), 18), ((10, 10), 550)]:
        seq = gen_local_lower_bound(p, k)
        for pivot in ("median", "random"):
            eng = SparseEngine(seq.n, pivot=pivot, seed=1)
            for v, w in seq.arcs:
                assert not eng.add_arc(v, w).is_cycle
            assert eng.metrics.vertex_moves >= need, (p, k, pivot)
            results.append(f"(p={p},k={k},{pivot}): {eng.metrics.vertex_moves}>={need}")
    _report(5, "forced vertex moves " + "; ".join(results))


def test_criterion_6_dense_distance_scaling_and_proper_swaps():
    t0 = time.perf_counter()
    sizes = (64, 128, 256)
    dists = []
    for n in sizes:
        seq = gen_random(n, n * (n - 1) // 2, seed=1000 + n, mode="acyclic")
        eng = DenseEngine(n)
        for v, w in seq.arcs:
            assert not eng.add_arc(v, w).is_cycle
        dists.append(eng.metrics.total_move_distance)
    xs = [math.log(n) for n in sizes]
    ys = [math.log(d) for d in dists]
    xm = sum(xs) / len(xs)
    ym = sum(ys) / len(ys)
    slope = sum((x - xm) * (y - ym) for x, y in zip(xs, ys)) / sum(
        (x - xm) ** 2 for x in xs
    )
    assert slope <= 2.6, f"fitted exponent {slope:.3f}"

    # proper-swap property, exact, at n = 200
    n = 200
    seq = gen_random(n, n * (n - 1) // 2, seed=4242, mode="acyclic")
    eng = DenseEngine(n)
    swapped = set()
    swap_count = 0
    for v, w in seq.arcs:
        before = eng.metrics.total_move_distance
        out = eng.add_arc(v, w)
        assert not out.is_cycle
        if out.kind != "reordered":
            continue
        swaps, total = swap_decomposition(
            eng.last_moves_forward, eng.last_moves_backward
        )
        assert total == eng.metrics.total_move_distance - before
        for pair in swaps:
            assert pair not in swapped, "vertex pair swapped twice"
            swapped.add(pair)
        swap_count += len(swaps)
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"criterion 6 took {elapsed:.1f}s"
    _report(
        6,
        f"distances {dict(zip(sizes, dists))}, fitted exponent {slope:.3f} <= 2.6; "
        f"{swap_count} swaps at n=200 all distinct pairs, move distance equals "
        f"swap distance per insertion ({elapsed:.1f}s)",
    )


def test_criterion_7_scc_traversal_bound():
    worst = 0.0
    runs = 0
    for pivot in ("median", "random"):
        for seed, seq in scc_sequences():
            eng = SccSparseEngine(seq.n, pivot=pivot, seed=seed)
            m = 0
            for v, w in seq.arcs:
                eng.add_arc(v, w)
                m += 1
                bound = 4 * m**1.5 + 2 * m + 1
                assert eng.metrics.arc_traversals <= bound, (seed, pivot, m)
            worst = max(worst, eng.metrics.arc_traversals / bound)
            runs += 1
    _report(
        7,
        f"{runs} runs (both pivot rules): SCC traversals within 4*m^1.5+2m+1, "
        f"worst final ratio {worst:.4f}",
    )


def test_criterion_8_engineering_smoke():
    seq = gen_random(10**5, 2 * 10**5, seed=8, mode="acyclic")
    engine = SparseEngine(seq.n)
    report, failure = run_stream(engine, "sparse", seq, "none")
    assert failure is None
    assert report.accepted == seq.m
    assert report.cycle_at is None
    assert report.wall_time_s < 10, f"took {report.wall_time_s:.2f}s"
    _report(
        8,
        f"n=10^5, m=2*10^5 acyclic stream processed in {report.wall_time_s:.2f}s "
        f"(< 10s), {report.metrics['arc_traversals']} traversals",
    )
