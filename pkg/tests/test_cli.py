import json
import math

import pytest

from specwalk import cli, graphs


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_cycle_summary(self, capsys, tmp_path):
        out = tmp_path / "c5.csv"
        code, _, err = run(["generate", "cycle:n=5", "--out", str(out)],
                           capsys)
        assert code == 0
        assert "non-bipartite" in err and "2-regular" in err
        assert "diameter=2" in err
        g = graphs.from_csv(out.read_text())
        assert g.n == 5

    def test_hypercube_flagged_bipartite(self, capsys, tmp_path):
        out = tmp_path / "q3.csv"
        code, _, err = run(["generate", "hypercube:k=3", "--out", str(out)],
                           capsys)
        assert code == 0 and "bipartite" in err

    def test_bad_spec_exit_two(self, capsys, tmp_path):
        code, _, err = run(["generate", "cycle:n=0"], capsys)
        assert code == 2 and "error" in err

    def test_round_trip_byte_identical(self, capsys, tmp_path):
        first = tmp_path / "a.csv"
        run(["generate", "circulant:n=9,offsets=1-2", "--out", str(first)],
            capsys)
        text = first.read_text()
        again = graphs.to_csv(graphs.from_csv(text))
        assert again == text

    def test_seed_determinism(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["generate", "random_regular:n=10,d=3", "--seed", "1",
             "--out", str(a)], capsys)
        run(["generate", "random_regular:n=10,d=3", "--seed", "1",
             "--out", str(b)], capsys)
        assert a.read_text() == b.read_text()


@pytest.fixture
def triangle_csv(tmp_path):
    g = graphs.generate("cycle", {"n": 3}, 0)
    path = tmp_path / "triangle.csv"
    path.write_text(graphs.to_csv(g))
    return path


@pytest.fixture
def c4_csv(tmp_path):
    g = graphs.generate("cycle", {"n": 4}, 0)
    path = tmp_path / "c4.csv"
    path.write_text(graphs.to_csv(g))
    return path


class TestAnalyze:
    def test_triangle_fields(self, capsys, triangle_csv):
        code, out, _ = run(["analyze", str(triangle_csv)], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == 1
        assert data["t_rel"] == pytest.approx(2.0)
        assert data["t_unif"] == 3
        assert data["efficiency_lower"] == pytest.approx(0.5)
        assert data["efficiency_upper"] == pytest.approx(4 / 3, abs=1e-8)
        assert len(data["spectrum_P"]) == 3

    def test_bipartite_nulls(self, capsys, c4_csv):
        code, out, _ = run(["analyze", str(c4_csv)], capsys)
        data = json.loads(out)
        assert data["t_rel"] is None
        assert data["reason"] == "bipartite"

    def test_byte_identical_across_runs(self, capsys, triangle_csv):
        _, out1, _ = run(["analyze", str(triangle_csv)], capsys)
        _, out2, _ = run(["analyze", str(triangle_csv)], capsys)
        assert out1 == out2

    def test_measure_csvs_written(self, capsys, triangle_csv, tmp_path):
        outdir = tmp_path / "analysis"
        code, _, _ = run(["analyze", str(triangle_csv), "--out",
                          str(outdir)], capsys)
        assert code == 0
        assert (outdir / "analysis.json").exists()
        assert (outdir / "measure_Q_v0.csv").exists()
        assert (outdir / "measure_L_v2.csv").exists()


class TestVerify:
    def test_single_graph_report(self, capsys, triangle_csv):
        code, out, err = run(["verify", str(triangle_csv)], capsys)
        assert code == 0
        records = json.loads(out)
        assert records and all(
            set(r) == {"name", "paper_anchor", "lhs", "rhs", "relation",
                       "holds", "margin", "context"} for r in records)
        assert all(r["holds"] for r in records if
                   r["context"].get("asserted", True))

    def test_bipartite_skips_reported(self, capsys, c4_csv):
        code, out, err = run(["verify", str(c4_csv),
                              "--checkers", "regular_measure"], capsys)
        assert code == 0
        assert json.loads(out) == []
        assert "skips: 1" in err

    def test_unknown_checker_rejected(self, capsys, triangle_csv):
        code, _, err = run(["verify", str(triangle_csv),
                            "--checkers", "bogus"], capsys)
        assert code == 2 and "unknown checkers" in err

    def test_malformed_csv_exit_two(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("this,is,not\na graph\n")
        code, _, err = run(["verify", str(bad)], capsys)
        assert code == 2

    def test_missing_file_exit_two(self, capsys):
        code, _, _ = run(["verify", "/nonexistent/g.csv"], capsys)
        assert code == 2

    def test_grid_overrides(self, capsys, triangle_csv):
        code, out, _ = run(["verify", str(triangle_csv),
                            "--checkers", "regular_return",
                            "--t-grid", "2,3,4"], capsys)
        assert code == 0
        records = json.loads(out)
        ts = {r["context"]["t"] for r in records}
        assert ts <= {2, 3, 4}

    def test_outdir_files(self, capsys, triangle_csv, tmp_path):
        outdir = tmp_path / "report"
        code, _, _ = run(["verify", str(triangle_csv), "--out",
                          str(outdir)], capsys)
        assert code == 0
        assert (outdir / "report.json").exists()
        summary = (outdir / "summary.csv").read_text()
        assert summary.startswith("checker,records,failures,worst_margin")

    def test_failed_check_exit_one(self, capsys, triangle_csv, monkeypatch):
        from specwalk import bounds as bounds_mod
        from specwalk.report import BoundCheck

        broken = BoundCheck.make("forced", "forced-anchor", 2.0, 1.0, "le",
                                 {"graph": "triangle"})
        monkeypatch.setattr(bounds_mod, "run_checkers",
                            lambda *a, **k: ([broken], []))
        code, _, err = run(["verify", str(triangle_csv),
                            "--checkers", "diameter"], capsys)
        assert code == 1
        assert "FAILED forced" in err

    def test_standard_suite_green(self, capsys, tmp_path):
        outdir = tmp_path / "suite"
        code, _, err = run(["verify", "--suite", "standard", "--out",
                            str(outdir)], capsys)
        assert code == 0
        assert "failures: 0" in err
        records = json.loads((outdir / "report.json").read_text())
        assert all(r["holds"] for r in records
                   if r["context"].get("asserted", True))
        # demonstration trend is narrated, never scored
        assert "demonstration, no pass/fail" in err


class TestWalk:
    def test_rows_match_spectral(self, capsys, triangle_csv):
        code, out, _ = run(["walk", str(triangle_csv), "--x", "0",
                            "--t-max", "8"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,p_exact,p_mc,ci,bound_18_over_sqrt_t"
        assert len(lines) == 10
        row2 = lines[3].split(",")
        assert float(row2[1]) == pytest.approx(0.5)
        assert row2[2] == "" and row2[3] == ""

    def test_samples_column(self, capsys, triangle_csv):
        code, out, _ = run(["walk", str(triangle_csv), "--x", "0",
                            "--t-max", "2", "--samples", "20000",
                            "--seed", "5"], capsys)
        lines = out.strip().splitlines()
        t2 = lines[3].split(",")
        assert abs(float(t2[2]) - 0.5) <= 4 * float(t2[3])

    def test_no_bound_column_for_bipartite(self, capsys, c4_csv):
        _, out, _ = run(["walk", str(c4_csv), "--t-max", "2"], capsys)
        assert out.splitlines()[0] == "t,p_exact,p_mc,ci"

    def test_bad_vertex(self, capsys, triangle_csv):
        code, _, _ = run(["walk", str(triangle_csv), "--x", "7"], capsys)
        assert code == 2

    def test_jump1d(self, capsys):
        code, out, _ = run(["walk", "--jump1d", "--t-max", "64"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,p,sqrt_t_p,asymptote"
        assert len(lines) == 66
        t, p, sp, asym = lines[-1].split(",")
        assert float(asym) == pytest.approx(1 / math.sqrt(5 * math.pi))
        assert float(sp) == pytest.approx(math.sqrt(64) * float(p))


class TestEnergyCmd:
    def test_triangle(self, capsys, triangle_csv):
        code, out, _ = run(["energy", str(triangle_csv)], capsys)
        assert code == 0
        head, _, witness = out.partition("vertex,value")
        data = json.loads(head)
        assert data["efficiency_lower"] == pytest.approx(0.5)
        assert data["efficiency_upper"] == pytest.approx(4 / 3, abs=1e-8)
        assert data["selection"]["m"] >= 1
        assert witness.strip()

    def test_bipartite(self, capsys, c4_csv):
        code, out, _ = run(["energy", str(c4_csv)], capsys)
        data = json.loads(out.partition("vertex,value")[0])
        assert data["efficiency_upper"] == 0.0
        assert data["witness_objective"] == pytest.approx(0.0)


class TestMixCmd:
    def test_triangle(self, capsys, triangle_csv):
        code, out, _ = run(["mix", str(triangle_csv)], capsys)
        assert code == 0
        head, _, csv = out.partition("t,deviation")
        data = json.loads(head)
        assert data["t_rel"] == pytest.approx(2.0)
        assert data["t_unif"] == 3
        assert len(csv.strip().splitlines()) == 3

    def test_bipartite(self, capsys, c4_csv):
        code, out, _ = run(["mix", str(c4_csv)], capsys)
        data = json.loads(out.partition("t,deviation")[0])
        assert data["reason"] == "bipartite"
