import json

import pytest
from click.testing import CliRunner

from qaoa_maxcut.bench import (
    BENCH_CSV_COLUMNS,
    parse_generator_spec,
    run_compare,
    run_sweep_p,
)
from qaoa_maxcut.cli import main
from qaoa_maxcut.graph import parse_edge_list, random_regular_graph


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("0 1\n1 2\n0 2\n")
    return str(path)


class TestGen:
    def test_u3r(self, runner):
        result = runner.invoke(main, ["gen", "u3r:n=8,seed=1"])
        assert result.exit_code == 0
        assert len(result.output.strip().splitlines()) == 12  # n*d/2 edges

    def test_complete(self, runner):
        result = runner.invoke(main, ["gen", "complete:n=4"])
        assert result.exit_code == 0
        assert len(result.output.strip().splitlines()) == 6

    def test_odd_u3r_fails(self, runner):
        result = runner.invoke(main, ["gen", "u3r:n=5"])
        assert result.exit_code != 0
        assert "odd" in result.output

    def test_deterministic_file(self, runner, tmp_path):
        out = tmp_path / "g.txt"
        for _ in range(2):
            assert runner.invoke(main, ["gen", "w3r:n=8,seed=2", "--out", str(out)]).exit_code == 0
        g = parse_edge_list(out.read_text())
        assert g == random_regular_graph(8, 3, weighted=True, seed=2)


class TestSimulate:
    def test_json_record(self, runner, triangle_file):
        result = runner.invoke(
            main, ["simulate", "--graph", triangle_file, "--p", "5", "--backend", "compressed"]
        )
        assert result.exit_code == 0
        records = [json.loads(line) for line in result.output.strip().splitlines()]
        assert len(records) == 1
        assert set(records[0]) == set(BENCH_CSV_COLUMNS)
        assert records[0]["expectation"] is not None
        assert records[0]["p"] == 5

    def test_gen_bitwise_ok(self, runner):
        result = runner.invoke(main, ["simulate", "--gen", "u3r:n=10,seed=3", "--backend", "bitwise"])
        assert result.exit_code == 0

    def test_gen_w3r_bitwise_usage_error(self, runner):
        result = runner.invoke(main, ["simulate", "--gen", "w3r:n=10,seed=3", "--backend", "bitwise"])
        assert result.exit_code != 0
        assert "unweighted" in result.output

    def test_csv_header_order(self, runner, triangle_file):
        result = runner.invoke(main, ["simulate", "--graph", triangle_file, "--format", "csv"])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == ",".join(BENCH_CSV_COLUMNS)

    def test_reps(self, runner, triangle_file):
        result = runner.invoke(main, ["simulate", "--graph", triangle_file, "--reps", "3"])
        assert len(result.output.strip().splitlines()) == 3

    def test_needs_exactly_one_source(self, runner, triangle_file):
        assert runner.invoke(main, ["simulate"]).exit_code != 0
        both = runner.invoke(main, ["simulate", "--graph", triangle_file, "--gen", "complete:n=4"])
        assert both.exit_code != 0


class TestCompare:
    def test_speedups_reported(self, runner):
        result = runner.invoke(
            main,
            ["compare", "--gen", "u3r:seed=3,n=0", "--qubits", "8,10",
             "--backends", "baseline,compressed,bitwise", "--p", "2", "--reps", "1"],
        )
        assert result.exit_code == 0
        rows = [json.loads(line) for line in result.output.strip().splitlines()]
        assert len(rows) == 6
        baseline_rows = [r for r in rows if r["backend"] == "baseline"]
        assert all(r["cost_speedup"] == 1.0 for r in baseline_rows)
        assert all(r["max_abs_diff"] <= 1e-10 for r in rows)

    def test_single_graph_file(self, runner, triangle_file):
        result = runner.invoke(
            main, ["compare", "--graph", triangle_file, "--qubits", "3", "--reps", "1"]
        )
        assert result.exit_code == 0


class TestSweepP:
    def test_records_and_normalization(self, runner):
        result = runner.invoke(
            main,
            ["sweep-p", "--gen", "u3r:n=8,seed=1", "--p", "1,3", "--reps", "1"],
        )
        assert result.exit_code == 0
        rows = [json.loads(line) for line in result.output.strip().splitlines()]
        assert len(rows) == 2
        assert rows[0]["normalized_time"] == 1.0

    def test_single_p(self, runner):
        result = runner.invoke(main, ["sweep-p", "--gen", "u3r:n=8,seed=1", "--p", "2", "--reps", "1"])
        rows = [json.loads(line) for line in result.output.strip().splitlines()]
        assert len(rows) == 1


class TestOptimizeCmd:
    def test_single_edge(self, runner, tmp_path):
        path = tmp_path / "edge.txt"
        path.write_text("0 1\n")
        result = runner.invoke(
            main, ["optimize", "--graph", str(path), "--p", "1", "--budget", "300"]
        )
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["best_expectation"] == pytest.approx(1.0, abs=1e-6)
        assert report["approx_ratio"] == pytest.approx(1.0, abs=1e-6)

    def test_budget_one_history(self, runner, triangle_file):
        result = runner.invoke(main, ["optimize", "--graph", triangle_file, "--budget", "1"])
        assert result.exit_code == 0
        assert len(json.loads(result.output)["history"]) == 1

    def test_ratio_guard(self, runner, tmp_path):
        path = tmp_path / "big.txt"
        path.write_text("\n".join(f"{i} {i + 1}" for i in range(29)) + "\n")
        result = runner.invoke(
            main,
            ["optimize", "--graph", str(path), "--p", "1", "--budget", "2", "--ratio", "on"],
        )
        assert result.exit_code != 0
        assert "ratio" in result.output


class TestGeneratorSpec:
    def test_cycle(self):
        g = parse_generator_spec("cycle:n=5")
        assert g.tot_edge == 5

    def test_override_n(self):
        g = parse_generator_spec("u3r:n=4,seed=1", n_override=8)
        assert g.n == 8

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown generator"):
            parse_generator_spec("torus:n=4")

    def test_missing_n(self):
        with pytest.raises(ValueError, match="needs n="):
            parse_generator_spec("complete")


class TestBenchInvariants:
    def test_compare_refuses_without_equivalence(self, monkeypatch):
        import qaoa_maxcut.bench as bench_mod

        original = bench_mod.circuit.simulate

        def broken_simulate(g, params, backend, *args, **kwargs):
            s = original(g, params, backend, *args, **kwargs)
            if backend == "compressed":
                s.amps[0] += 1e-6
            return s

        monkeypatch.setattr(bench_mod.circuit, "simulate", broken_simulate)
        with pytest.raises(bench_mod.EquivalenceError):
            run_compare([4], ["baseline", "compressed"],
                        lambda n: random_regular_graph(n, 3, seed=0), p=1, reps=1)

    def test_record_time_fields_consistent(self):
        records = run_sweep_p(random_regular_graph(8, 3, seed=1), [1, 2], ["baseline"], reps=1)
        for r in records:
            assert r.init_time_ns >= 0
            assert r.cost_time_ns >= 0
            assert r.mixer_time_ns >= 0
            assert r.total_time_ns >= r.init_time_ns + r.cost_time_ns + r.mixer_time_ns - 10**6
