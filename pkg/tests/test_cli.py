import csv
import json

import numpy as np
import pytest

from weylkit import cli, selftest


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUsageErrors:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 2

    def test_negative_alpha_named_in_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["decay", "--alpha", "-1", "--out", "x.csv"])
        assert exc.value.code == 2
        assert "--alpha" in capsys.readouterr().err

    def test_nonpositive_eps_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["transform", "--symbol", "e:0,0", "--eps", "0",
                      "--out", "x.json"])
        assert exc.value.code == 2
        assert "--eps" in capsys.readouterr().err

    def test_small_size_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["transform", "--symbol", "e:0,0", "-N", "1",
                      "--out", "x.json"])
        assert exc.value.code == 2

    def test_bad_symbol_exits_2(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "transform", "--symbol", "nope:1",
                               "--out", str(tmp_path / "x.json"))
        assert code == 2
        assert "nope" in err

    def test_valid_decay_spec_parses(self):
        args = cli.build_parser().parse_args(
            ["decay", "--alpha", "0", "--tmax", "5", "--steps", "21",
             "--out", "d.csv"])
        assert args.alpha == 0.0
        assert args.steps == 21


class TestSymbolLanguage:
    def test_mode_symbol(self):
        f = cli.parse_symbol("e:1,0", 1.0)
        from weylkit import lg_mode_eval
        assert f(0.3, 0.2) == pytest.approx(
            lg_mode_eval(1, 0, 0.3, 0.2, 1.0), abs=1e-15)

    def test_combination_with_scalars(self):
        f = cli.parse_symbol("0.5*e:1,0+2*gauss:1", 1.0)
        from weylkit import gaussian, lg_mode_eval
        expected = 0.5 * lg_mode_eval(1, 0, 0.4, -0.1, 1.0) \
            + 2.0 * gaussian(1.0)(0.4, -0.1)
        assert f(0.4, -0.1) == pytest.approx(complex(expected), abs=1e-15)

    def test_omega_symbol_damped(self):
        f = cli.parse_symbol("omega:2.0,1,5", 1.0)
        val = f(1.0, 0.0)
        assert np.isfinite(val.real) and np.isfinite(val.imag)

    def test_bad_inputs(self):
        for text in ("e:1", "gauss:-2", "omega:1", "2**gauss:1", ""):
            with pytest.raises(cli.SymbolError):
                cli.parse_symbol(text, 1.0)


class TestTransformInverse:
    def test_transform_unit_mode(self, capsys, tmp_path):
        out = tmp_path / "mat.json"
        code, stdout, _ = run_cli(capsys, "transform", "--symbol", "e:0,0",
                                  "-N", "6", "--out", str(out))
        assert code == 0
        assert "wrote" in stdout
        data = json.loads(out.read_text())
        assert data["N"] == 6
        mat = np.asarray(data["re"]) + 1j * np.asarray(data["im"])
        expected = np.zeros((6, 6))
        expected[0, 0] = 1.0
        assert np.abs(mat - expected).max() < 1e-9

    def test_inverse_round_trip_at_sample_point(self, capsys, tmp_path):
        mat_path = tmp_path / "mat.json"
        csv_path = tmp_path / "inv.csv"
        run_cli(capsys, "transform", "--symbol", "e:0,0", "-N", "4",
                "--out", str(mat_path))
        code, stdout, _ = run_cli(capsys, "inverse", "--matrix", str(mat_path),
                                  "--out", str(csv_path),
                                  "--extent", "1", "--points", "3")
        assert code == 0
        with open(csv_path, newline="") as fh:
            rows = {(row["x"], row["y"]): complex(float(row["re"]),
                                                  float(row["im"]))
                    for row in csv.DictReader(fh)}
        from weylkit import lg_mode_eval
        center = rows[("0", "0")]
        assert center == pytest.approx(lg_mode_eval(0, 0, 0.0, 0.0, 1.0),
                                       abs=1e-9)

    def test_missing_matrix_file_exits_3(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "inverse", "--matrix",
                               str(tmp_path / "absent.json"),
                               "--out", str(tmp_path / "o.csv"))
        assert code == 3
        assert "absent.json" in err


class TestBasisTable:
    def test_table_values(self, capsys, tmp_path):
        out = tmp_path / "table.csv"
        code, stdout, _ = run_cli(capsys, "basis-table", "--m", "1", "--n", "0",
                                  "--ximax", "2", "--points", "5",
                                  "--out", str(out))
        assert code == 0
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 25
        from weylkit import weyl_element
        row = rows[7]
        expected = weyl_element(1, 0, float(row["xi_x"]), float(row["xi_y"]), 1.0)
        assert complex(float(row["re"]), float(row["im"])) == pytest.approx(
            expected, abs=1e-15)


class TestSpectralCommand:
    def test_residual_table(self, capsys, tmp_path):
        out = tmp_path / "resid.csv"
        code, stdout, _ = run_cli(capsys, "spectral", "--kind", "laplacian",
                                  "--lam", "2.0", "--j", "1",
                                  "--sizes", "32,64", "--out", str(out))
        assert code == 0
        with open(out, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["N", "residual"]
        assert len(rows) == 3

    def test_tolerance_failure_exits_1(self, capsys, tmp_path):
        out = tmp_path / "resid.csv"
        code, _, err = run_cli(capsys, "spectral", "--kind", "laplacian",
                               "--lam", "2.0", "--j", "0",
                               "--sizes", "64", "--tol", "1e-30",
                               "--out", str(out))
        assert code == 1
        assert "tolerance" in err


class TestDecayCommand:
    def test_curve_row_and_byte_stability(self, capsys, tmp_path):
        out1 = tmp_path / "d1.csv"
        out2 = tmp_path / "d2.csv"
        code, stdout, _ = run_cli(capsys, "decay", "--alpha", "0",
                                  "--tmax", "5", "--steps", "6",
                                  "--out", str(out1))
        assert code == 0
        assert "wrote 6 rows" in stdout
        run_cli(capsys, "decay", "--alpha", "0", "--tmax", "5",
                "--steps", "6", "--out", str(out2))
        assert out1.read_bytes() == out2.read_bytes()
        with open(out1, newline="") as fh:
            rows = list(csv.DictReader(fh))
        t1 = [r for r in rows if float(r["t"]) == 1.0][0]
        assert float(t1["measured"]) == pytest.approx(0.7071068, abs=1e-6)
        assert float(t1["reference"]) == pytest.approx(0.7071068, abs=1e-7)


class TestSelftestPlumbing:
    def test_failures_flip_exit_code(self, monkeypatch, capsys):
        fake = selftest.CheckResult("fake", False, "forced failure", 0.0)
        monkeypatch.setattr(selftest, "ALL_CHECKS", (lambda: fake,))
        assert selftest.run_selftest() == 1
        out = capsys.readouterr().out
        assert "[FAIL] fake" in out

    def test_passes_exit_zero(self, monkeypatch, capsys):
        fake = selftest.CheckResult("fake", True, "ok", 0.0)
        monkeypatch.setattr(selftest, "ALL_CHECKS", (lambda: fake,))
        assert selftest.run_selftest() == 0
