"""End-to-end runs of the console entry point, in process."""

import csv
import json
import math
import subprocess
import sys

import pytest

import zonalab as zl
from zonalab.cli import default_r, fit_slope, main


def _run(tmp_path, name, *args):
    out = tmp_path / f"{name}.csv"
    code = main(list(args) + ["--out", str(out)])
    return code, out, out.with_suffix(".json")


def _read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


class TestFitSlope:
    def test_exact_power_law(self):
        rows = [(x, 3.0 * x ** 1.7) for x in (2.0, 4.0, 8.0, 32.0)]
        slope, intercept, rms = fit_slope(rows)
        assert slope == pytest.approx(1.7, abs=1e-12)
        assert intercept == pytest.approx(math.log(3.0), abs=1e-12)
        assert rms == pytest.approx(0.0, abs=1e-12)

    def test_constant_data(self):
        slope, _, _ = fit_slope([(2.0, 5.0), (4.0, 5.0), (8.0, 5.0)])
        assert slope == pytest.approx(0.0, abs=1e-12)

    def test_square_root_sequence(self):
        rows = [(4.0, 2.0), (8.0, 2.0 * math.sqrt(2.0)), (16.0, 4.0)]
        assert fit_slope(rows)[0] == pytest.approx(0.5, abs=1e-12)

    def test_needs_three_rows(self):
        with pytest.raises(ValueError):
            fit_slope([(1.0, 1.0), (2.0, 2.0)])

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            fit_slope([(1.0, 1.0), (2.0, -2.0), (3.0, 3.0)])

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            fit_slope([(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)])


def test_default_r_midpoint():
    assert default_r(3, 2 / 3) == pytest.approx(1.2, abs=1e-12)
    for sigma in (0.5, 0.6, 2 / 3):
        r = default_r(3, sigma)
        s = 1.0 / (1.0 / r - sigma)
        ok, reason = zl.admissible(3, r, s)
        assert ok, reason


class TestExponentMap:
    def test_rows_and_values(self, tmp_path):
        code, out, js = _run(tmp_path, "map", "exponent-map", "--sigma", "3/5")
        assert code == 0
        header, rows = _read_csv(out)
        assert header == ["name", "x", "y"]
        table = {r[0]: (float(r[1]), float(r[2])) for r in rows}
        assert set(table) == {"A", "B", "C", "D", "P", "Q", "E", "E*"}
        assert table["Q"] == (pytest.approx(0.6), 0.0)
        assert table["P"][0] == pytest.approx(11 / 15)
        assert table["E"][1] == pytest.approx(1 / 15)

    def test_fraction_and_decimal_sigma_agree(self, tmp_path):
        _, out1, _ = _run(tmp_path, "m1", "exponent-map", "--sigma", "3/5")
        _, out2, _ = _run(tmp_path, "m2", "exponent-map", "--sigma", "0.6")
        assert out1.read_bytes() == out2.read_bytes()

    def test_json_summary(self, tmp_path):
        code, _, js = _run(tmp_path, "map", "exponent-map", "--sigma", "1/2")
        summary = json.loads(js.read_text())
        assert summary["config"]["sigma"] == pytest.approx(0.5)
        assert summary["config"]["n"] == 3
        assert summary["slope"] is None
        assert summary["version"] == zl.__version__
        assert summary["wall_seconds"] >= 0
        assert len(summary["rows"]) == 8


class TestEnvelopeCommand:
    def test_values_match_library(self, tmp_path, sphere3):
        code, out, _ = _run(tmp_path, "env", "envelope", "--k", "8,16")
        assert code == 0
        header, rows = _read_csv(out)
        assert header == ["k", "c_flat", "c_osc", "c_antipodal"]
        for row in rows:
            env = zl.envelope_check(sphere3, int(row[0]))
            assert float(row[1]) == pytest.approx(env.c_flat, rel=1e-12)
            assert float(row[2]) == pytest.approx(env.c_osc, rel=1e-12)


class TestMultiplierCommand:
    def test_small_sweep(self, tmp_path):
        code, out, js = _run(tmp_path, "mult", "multiplier-check",
                             "--lambda", "2", "--mu", "1")
        assert code == 0
        header, rows = _read_csv(out)
        assert header == ["lambda", "mu", "tau", "abs_closed",
                          "abs_integral", "rel_err"]
        # tau draws collapse duplicates: 1,2,3,4
        assert [float(r[2]) for r in rows] == [1.0, 2.0, 3.0, 4.0]
        assert all(float(r[5]) < 1e-6 for r in rows)


class TestProjScaling:
    def test_two_degree_sweep(self, tmp_path):
        code, out, js = _run(tmp_path, "proj", "proj-scaling",
                             "--sigma", "2/3", "--k", "2,4",
                             "--grid-points", "40", "--restarts", "2")
        assert code == 0
        header, rows = _read_csv(out)
        assert header == ["k", "r", "s", "lower", "upper", "predicted"]
        assert [int(r[0]) for r in rows] == [2, 4]
        for row in rows:
            assert float(row[3]) <= float(row[4]) * (1 + 1e-6)
        summary = json.loads(js.read_text())
        # defaulted exponent pair echoed back
        assert summary["config"]["r"] == pytest.approx(1.2)
        assert summary["config"]["grid_points"] == 40
        assert summary["slope"] is None

    def test_deterministic_output(self, tmp_path):
        args = ("proj-scaling", "--sigma", "2/3", "--k", "2,4",
                "--grid-points", "40", "--restarts", "2", "--seed", "7")
        _, out1, _ = _run(tmp_path, "d1", *args)
        _, out2, _ = _run(tmp_path, "d2", *args)
        assert out1.read_bytes() == out2.read_bytes()

    def test_grid_cache_roundtrip(self, tmp_path):
        cache = tmp_path / "cache"
        args = ("proj-scaling", "--sigma", "2/3", "--k", "2,4",
                "--grid-points", "40", "--restarts", "2",
                "--cache-dir", str(cache))
        _, out1, _ = _run(tmp_path, "c1", *args)
        files = list(cache.glob("grid_*.csv"))
        assert len(files) == 1
        # second run loads the cached grid and must reproduce the bytes
        _, out2, _ = _run(tmp_path, "c2", *args)
        assert out1.read_bytes() == out2.read_bytes()

    def test_slope_reported_for_three_rows(self, tmp_path):
        code, out, js = _run(tmp_path, "p3", "proj-scaling",
                             "--sigma", "2/3", "--k", "2,4,8",
                             "--grid-points", "48", "--restarts", "2")
        assert code == 0
        summary = json.loads(js.read_text())
        assert summary["slope"] is not None
        assert summary["residual"] >= 0


class TestFailureModes:
    def test_inadmissible_sigma(self, tmp_path, capsys):
        code, _, _ = _run(tmp_path, "bad", "proj-scaling",
                          "--sigma", "1/3", "--k", "2,4")
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_explicit_r_out_of_range(self, tmp_path):
        code, _, _ = _run(tmp_path, "badr", "proj-scaling",
                          "--sigma", "3/5", "--r", "1.5", "--k", "2,4")
        assert code == 2

    def test_missing_required_flags(self, tmp_path):
        assert _run(tmp_path, "nok", "proj-scaling", "--sigma", "3/5")[0] == 2
        assert _run(tmp_path, "nos", "dyadic-certify", "--k", "8")[0] == 2
        assert _run(tmp_path, "nol", "multiplier-check")[0] == 2

    def test_numerical_failure_keeps_partial_csv(self, tmp_path, capsys):
        # degree 4 has no middle dyadic range to fit
        code, out, js = _run(tmp_path, "num", "dyadic-certify",
                             "--sigma", "3/5", "--k", "4",
                             "--grid-points", "40")
        assert code == 3
        assert "numerical failure" in capsys.readouterr().err
        header, rows = _read_csv(out)
        assert header[0] == "k" and rows == []
        assert not js.exists()


def test_console_script_smoke(tmp_path):
    out = tmp_path / "smoke.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "zonalab.cli", "exponent-map",
         "--sigma", "1/2", "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.exists() and out.with_suffix(".json").exists()
