"""Command-line front end: drive engines over arc streams and verify them.

`run` processes one edge stream with one engine and prints a JSON report;
`compare` runs two engines over the same stream and reports divergences.
Exit code 0 means every requested check passed.
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from .base import CYCLE, DuplicateArcError
from .dense_engine import DenseEngine
from .generators import (
    StreamFormatError,
    gen_local_lower_bound,
    gen_path,
    gen_random,
    parse_stream,
)
from .oracles import TransitiveClosure, static_scc
from .scc_engine import SccDenseEngine, SccSparseEngine
from .sparse_engine import LIMITED, SOFT_THRESHOLD, SparseEngine

TOPO_ALGOS = ("sparse", "sparse-limited", "dense")
SCC_ALGOS = ("scc-sparse", "scc-dense")
ALGOS = TOPO_ALGOS + SCC_ALGOS


@dataclass
class RunReport:
    """One engine run over one stream, as a flat JSON-friendly record."""

    algo: str
    n: int
    attempted: int
    accepted: int
    cycle_at: int | None
    witness: list | None
    metrics: dict
    final_order: list | None
    partition: list | None
    wall_time_s: float

    def to_json(self):
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(**data)


class CheckFailure(Exception):
    def __init__(self, index, arc, message):
        super().__init__(f"insertion {index} of arc {arc}: {message}")
        self.index = index
        self.arc = arc


def make_engine(algo, n, pivot, seed):
    if algo == "sparse":
        return SparseEngine(n, mode=SOFT_THRESHOLD, pivot=pivot, seed=seed)
    if algo == "sparse-limited":
        return SparseEngine(n, mode=LIMITED, pivot=pivot, seed=seed)
    if algo == "dense":
        return DenseEngine(n)
    if algo == "scc-sparse":
        return SccSparseEngine(n, pivot=pivot, seed=seed)
    if algo == "scc-dense":
        return SccDenseEngine(n)
    raise ValueError(f"unknown algorithm: {algo}")


class _OrderChecker:
    def __init__(self, engine, algo, n):
        self.engine = engine
        self.is_scc = algo in SCC_ALGOS

    def after_insert(self, index, arc, outcome):
        try:
            if self.is_scc:
                self.engine.check_condensation_order()
            elif outcome.kind != CYCLE:
                self.engine.check_topological()
        except AssertionError as exc:
            raise CheckFailure(index, arc, str(exc))


class _OracleChecker(_OrderChecker):
    """Validates every insertion against the static oracles."""

    def __init__(self, engine, algo, n):
        super().__init__(engine, algo, n)
        self.n = n
        self.closure = TransitiveClosure(n)
        self.arcs = []

    def after_insert(self, index, arc, outcome):
        v, w = arc
        if self.is_scc:
            self.arcs.append(arc)
            comp_of, _ = static_scc(self.n, self.arcs)
            expected = {}
            for x in range(self.n):
                expected.setdefault(comp_of[x], set()).add(x)
            got = {frozenset(c) for c in self.engine.partition()}
            want = {frozenset(c) for c in expected.values()}
            if got != want:
                raise CheckFailure(index, arc, f"partition {got} != oracle {want}")
        else:
            expected_cycle = v == w or self.closure.creates_cycle(v, w)
            if expected_cycle != (outcome.kind == CYCLE):
                raise CheckFailure(
                    index,
                    arc,
                    f"engine said {outcome.kind}, oracle said "
                    f"{'cycle' if expected_cycle else 'no cycle'}",
                )
            if not expected_cycle:
                self.closure.add_arc(v, w)
        super().after_insert(index, arc, outcome)


def run_stream(engine, algo, seq, check):
    """Feed a stream into an engine; returns (report, failure_or_None)."""
    checker = None
    if check == "order":
        checker = _OrderChecker(engine, algo, seq.n)
    elif check == "oracle":
        checker = _OracleChecker(engine, algo, seq.n)
    attempted = 0
    accepted = 0
    cycle_at = None
    witness = None
    failure = None
    t0 = time.perf_counter()
    for index, (v, w) in enumerate(seq.arcs, start=1):
        attempted += 1
        try:
            outcome = engine.add_arc(v, w)
        except DuplicateArcError:
            continue
        accepted += 1
        if checker is not None:
            try:
                checker.after_insert(index, (v, w), outcome)
            except CheckFailure as exc:
                failure = exc
                if outcome.kind == CYCLE:
                    cycle_at = index
                    witness = list(outcome.witness)
                break
        if outcome.kind == CYCLE:
            cycle_at = index
            witness = list(outcome.witness)
            break
    wall = time.perf_counter() - t0
    if algo in SCC_ALGOS:
        final_order = None
        partition = sorted(sorted(c) for c in engine.partition())
    else:
        final_order = engine.current_order()
        partition = None
    report = RunReport(
        algo=algo,
        n=seq.n,
        attempted=attempted,
        accepted=accepted,
        cycle_at=cycle_at,
        witness=witness,
        metrics=engine.metrics.as_dict(),
        final_order=final_order,
        partition=partition,
        wall_time_s=wall,
    )
    return report, failure


def _load_sequence(args):
    if args.gen:
        return _build_generator(args.gen)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_stream(text)


def _build_generator(spec):
    name, _, argstr = spec.partition(":")
    kwargs = {}
    if argstr:
        for part in argstr.split(","):
            key, _, value = part.partition("=")
            if not key or not value:
                raise ValueError(f"malformed generator argument {part!r}")
            kwargs[key] = value if key == "mode" else int(value)
    if name == "lower-bound":
        return gen_local_lower_bound(kwargs["p"], kwargs["k"])
    if name == "path":
        return gen_path(kwargs["n"])
    if name == "random":
        return gen_random(
            kwargs["n"], kwargs["m"], kwargs.get("seed", 0), kwargs.get("mode", "acyclic")
        )
    raise ValueError(f"unknown generator {name!r}")


def cmd_run(args):
    try:
        seq = _load_sequence(args)
    except (StreamFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    engine = make_engine(args.algo, seq.n, args.pivot, args.seed)
    report, failure = run_stream(engine, args.algo, seq, args.check)
    print(report.to_json())
    if failure is not None:
        print(f"check failed: {failure}", file=sys.stderr)
        return 1
    return 0


def cmd_compare(args):
    try:
        seq = _load_sequence(args)
    except (StreamFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    a, b = args.algo_a, args.algo_b
    both_scc = a in SCC_ALGOS and b in SCC_ALGOS
    both_topo = a in TOPO_ALGOS and b in TOPO_ALGOS
    if not (both_scc or both_topo):
        print("error: compared algorithms must be both topological or both SCC", file=sys.stderr)
        return 2
    engine_a = make_engine(a, seq.n, args.pivot, args.seed)
    engine_b = make_engine(b, seq.n, args.pivot, args.seed)
    divergences = []
    if both_scc:
        for index, (v, w) in enumerate(seq.arcs, start=1):
            for engine in (engine_a, engine_b):
                try:
                    engine.add_arc(v, w)
                except DuplicateArcError:
                    pass
            pa = {frozenset(c) for c in engine_a.partition()}
            pb = {frozenset(c) for c in engine_b.partition()}
            if pa != pb:
                divergences.append(
                    {"index": index, "arc": [v, w], "kind": "partition mismatch"}
                )
                break
    else:
        report_a, _ = run_stream(engine_a, a, seq, "none")
        report_b, _ = run_stream(engine_b, b, seq, "none")
        if report_a.cycle_at != report_b.cycle_at:
            divergences.append(
                {
                    "index": report_a.cycle_at or report_b.cycle_at,
                    "kind": "cycle_at mismatch",
                    "cycle_at_a": report_a.cycle_at,
                    "cycle_at_b": report_b.cycle_at,
                }
            )
    result = {
        "algo_a": a,
        "algo_b": b,
        "n": seq.n,
        "arcs": len(seq.arcs),
        "equal": not divergences,
        "divergences": divergences,
    }
    print(json.dumps(result))
    return 0 if not divergences else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dyntopo",
        description="Incremental topological ordering, cycle detection, and "
        "strong component maintenance over arc streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--pivot", choices=("median", "random"), default="median")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--input", default="-", help="edge-stream path, or - for stdin")
        p.add_argument(
            "--gen",
            default=None,
            metavar="NAME:ARGS",
            help="generate the stream instead of reading it, e.g. "
            "lower-bound:p=3,k=3 | path:n=16 | random:n=50,m=200,seed=1,mode=acyclic",
        )

    p_run = sub.add_parser("run", help="run one engine over a stream")
    p_run.add_argument("--algo", choices=ALGOS, required=True)
    p_run.add_argument("--check", choices=("none", "order", "oracle"), default="none")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="run two engines over one stream")
    p_cmp.add_argument("--algo-a", choices=ALGOS, required=True)
    p_cmp.add_argument("--algo-b", choices=ALGOS, required=True)
    common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
