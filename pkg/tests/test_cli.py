import json

import pytest

from dyntopo.cli import RunReport, main
from dyntopo.generators import gen_random


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRun:
    def test_single_arc_stream(self, capsys, tmp_path):
        stream = tmp_path / "g.txt"
        stream.write_text("2\n0 1\n")
        code, out, _ = run_cli(
            capsys, ["run", "--algo", "sparse", "--input", str(stream)]
        )
        assert code == 0
        report = json.loads(out)
        assert report["accepted"] == 1
        assert report["cycle_at"] is None
        order = report["final_order"]
        assert order.index(0) < order.index(1)

    def test_triangle_cycle_at_third_insertion_dense(self, capsys, tmp_path):
        stream = tmp_path / "g.txt"
        stream.write_text("3\n0 1\n1 2\n2 0\n")
        code, out, _ = run_cli(
            capsys, ["run", "--algo", "dense", "--input", str(stream), "--check", "oracle"]
        )
        assert code == 0
        report = json.loads(out)
        assert report["cycle_at"] == 3
        assert report["witness"] is not None

    def test_lower_bound_generator_forces_moves(self, capsys):
        code, out, _ = run_cli(
            capsys, ["run", "--algo", "sparse", "--gen", "lower-bound:p=3,k=3"]
        )
        assert code == 0
        report = json.loads(out)
        assert report["metrics"]["vertex_moves"] >= 18

    @pytest.mark.parametrize("algo", ["sparse", "sparse-limited", "dense"])
    def test_oracle_check_passes_on_random_streams(self, capsys, tmp_path, algo):
        seq = gen_random(20, 80, seed=3, mode="arbitrary")
        stream = tmp_path / "g.txt"
        stream.write_text(seq.to_stream())
        code, out, _ = run_cli(
            capsys,
            ["run", "--algo", algo, "--input", str(stream), "--check", "oracle"],
        )
        assert code == 0

    @pytest.mark.parametrize("algo", ["scc-sparse", "scc-dense"])
    def test_scc_runs_report_partition(self, capsys, tmp_path, algo):
        stream = tmp_path / "g.txt"
        stream.write_text("3\n0 1\n1 0\n1 2\n")
        code, out, _ = run_cli(
            capsys, ["run", "--algo", algo, "--input", str(stream), "--check", "oracle"]
        )
        assert code == 0
        report = json.loads(out)
        assert report["partition"] == [[0, 1], [2]]
        assert report["final_order"] is None

    def test_duplicates_attempted_but_not_accepted(self, capsys, tmp_path):
        stream = tmp_path / "g.txt"
        stream.write_text("2\n0 1\n0 1\n")
        code, out, _ = run_cli(capsys, ["run", "--algo", "sparse", "--input", str(stream)])
        assert code == 0
        report = json.loads(out)
        assert report["attempted"] == 2
        assert report["accepted"] == 1

    def test_parse_error_exits_nonzero_with_line_number(self, capsys, tmp_path):
        stream = tmp_path / "bad.txt"
        stream.write_text("2\n0 junk\n")
        code, out, err = run_cli(capsys, ["run", "--algo", "sparse", "--input", str(stream)])
        assert code == 2
        assert "line 2" in err

    def test_stdin_input(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("2\n1 0\n"))
        code, out, _ = run_cli(capsys, ["run", "--algo", "sparse"])
        assert code == 0
        assert json.loads(out)["final_order"] == [1, 0]


class TestReportSerialization:
    def test_round_trip(self):
        report = RunReport(
            algo="sparse",
            n=4,
            attempted=5,
            accepted=4,
            cycle_at=3,
            witness=[1, 2],
            metrics={"arc_traversals": 7},
            final_order=[0, 1, 2, 3],
            partition=None,
            wall_time_s=0.125,
        )
        assert RunReport.from_json(report.to_json()) == report


class TestCheckFailurePlumbing:
    def test_order_check_failure_exits_nonzero(self, capsys, tmp_path, monkeypatch):
        from dyntopo import SparseEngine

        def broken(self):
            raise AssertionError("forced order violation")

        monkeypatch.setattr(SparseEngine, "check_topological", broken)
        stream = tmp_path / "g.txt"
        stream.write_text("3\n0 1\n1 2\n")
        code, out, err = run_cli(
            capsys, ["run", "--algo", "sparse", "--input", str(stream), "--check", "order"]
        )
        assert code == 1
        assert "check failed" in err
        assert json.loads(out)["accepted"] == 1  # aborted at the first failure


class TestCompare:
    def test_sparse_vs_dense_no_divergence_on_random_streams(self, capsys, tmp_path):
        for seed in range(100):
            seq = gen_random(15, 60, seed=seed, mode="arbitrary")
            stream = tmp_path / f"s{seed}.txt"
            stream.write_text(seq.to_stream())
            code, out, _ = run_cli(
                capsys,
                [
                    "compare",
                    "--algo-a", "sparse",
                    "--algo-b", "dense",
                    "--input", str(stream),
                ],
            )
            assert code == 0
            assert json.loads(out)["equal"] is True

    def test_scc_pair_no_divergence(self, capsys, tmp_path):
        for seed in range(10):
            seq = gen_random(12, 60, seed=seed, mode="arbitrary")
            stream = tmp_path / f"s{seed}.txt"
            stream.write_text(seq.to_stream())
            code, out, _ = run_cli(
                capsys,
                [
                    "compare",
                    "--algo-a", "scc-sparse",
                    "--algo-b", "scc-dense",
                    "--input", str(stream),
                ],
            )
            assert code == 0
            assert json.loads(out)["equal"] is True

    def test_same_engine_twice_trivially_equal(self, capsys, tmp_path):
        stream = tmp_path / "g.txt"
        stream.write_text(gen_random(10, 30, seed=1, mode="arbitrary").to_stream())
        code, out, _ = run_cli(
            capsys,
            ["compare", "--algo-a", "sparse", "--algo-b", "sparse", "--input", str(stream)],
        )
        assert code == 0
        assert json.loads(out)["divergences"] == []

    def test_mixed_classes_rejected(self, capsys, tmp_path):
        stream = tmp_path / "g.txt"
        stream.write_text("2\n0 1\n")
        code, _, err = run_cli(
            capsys,
            ["compare", "--algo-a", "sparse", "--algo-b", "scc-dense", "--input", str(stream)],
        )
        assert code == 2
        assert "both" in err
