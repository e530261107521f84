"""Command-line front end: exit codes, output contracts, determinism."""

import csv
import io
import json
import subprocess
import sys

import pytest

from poisson_maxima.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDist:
    def test_csv_matches_poisson_pmf_at_n1(self, capsys):
        code, out, err = run_cli(
            capsys, "dist", "--lambda", "1", "--n", "1", "--k-max", "3"
        )
        assert code == 0 and err == ""
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["k"] for r in rows] == ["0", "1", "2", "3"]
        assert float(rows[0]["pmf"]) == pytest.approx(0.36787944117144233, rel=1e-15)
        assert float(rows[1]["pmf"]) == pytest.approx(0.36787944117144233, rel=1e-12)
        assert float(rows[3]["pmf"]) == pytest.approx(0.061313240195240391, rel=1e-12)

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "dist", "--lambda", "1", "--n", "1", "--k-max", "2", "--format", "json"
        )
        assert code == 0
        parsed = json.loads(out)
        assert isinstance(parsed, list) and len(parsed) == 3
        assert parsed[0]["k"] == 0

    def test_multiple_log10_n_blocks(self, capsys):
        code, out, _ = run_cli(
            capsys, "dist", "--lambda", "1", "--log10-n", "0,2", "--k-max", "1"
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [(r["log10_n"], r["k"]) for r in rows] == [
            ("0", "0"),
            ("0", "1"),
            ("2", "0"),
            ("2", "1"),
        ]


class TestProb:
    def test_range_sweep(self, capsys):
        code, out, err = run_cli(
            capsys, "prob", "--lambda", "1", "--log10-n-range", "0:4:2"
        )
        assert code == 0 and err == ""
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["log10_n"] for r in rows] == ["0", "2", "4"]
        assert rows[0]["i_best"] == "0"
        assert rows[2]["i_best"] == "6"

    def test_deterministic_bytes(self, capsys):
        a = run_cli(capsys, "prob", "--lambda", "2", "--log10-n-range", "0:10:1")
        b = run_cli(capsys, "prob", "--lambda", "2", "--log10-n-range", "0:10:1")
        assert a == b and a[0] == 0


class TestModes:
    def test_small_n_row_has_null_asymptotics(self, capsys):
        code, out, _ = run_cli(capsys, "modes", "--lambda", "1", "--n", "1")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows[0]["i_n"] == "0"
        assert rows[0]["x0"] == "" and rows[0]["x1"] == "" and rows[0]["kimber"] == ""

    def test_json_nulls(self, capsys):
        code, out, _ = run_cli(
            capsys, "modes", "--lambda", "1", "--n", "1", "--format", "json"
        )
        assert code == 0
        row = json.loads(out)[0]
        assert row["i_n"] == 0 and row["x0"] is None


class TestPoint:
    def test_default_json_object(self, capsys):
        code, out, err = run_cli(capsys, "point", "--lambda", "2", "--log10-n", "10")
        assert code == 0 and err == ""
        body = json.loads(out)
        assert isinstance(body, dict)
        assert body["i_n"] == 16
        assert isinstance(body["x_newton"], list) and len(body["x_newton"]) == 2
        assert body["err_x1"] == pytest.approx(body["x1"] - 16, rel=1e-9)

    def test_csv_single_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "point", "--lambda", "2", "--log10-n", "10", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("lambda,log10_n,i_n,p_two_point,i_mode")
        assert ";" in lines[1]  # the two Newton iterates, semicolon-joined

    def test_integer_n(self, capsys):
        code, out, _ = run_cli(capsys, "point", "--lambda", "1", "--n", "10000")
        assert code == 0
        body = json.loads(out)
        assert body["i_n"] == 6  # leader of the best pair {6, 7}
        assert body["i_mode"] == 7  # single-point argmax


class TestOutFile:
    def test_out_equals_stdout_bytes(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "modes", "--lambda", "1", "--log10-n", "0,10")
        assert code == 0
        path = tmp_path / "t.csv"
        code2 = main(["modes", "--lambda", "1", "--log10-n", "0,10", "--out", str(path)])
        captured = capsys.readouterr()
        assert code2 == 0 and captured.out == ""
        assert path.read_text(encoding="utf-8") == out


class TestUsageErrors:
    def test_nonpositive_lambda(self, capsys):
        code, out, err = run_cli(capsys, "prob", "--lambda", "0", "--n", "10")
        assert code == 2 and out == ""
        assert "poisson-maxima: error:" in err
        assert "usage:" in err

    def test_n_over_cap(self, capsys):
        code, _, err = run_cli(capsys, "prob", "--lambda", "1", "--n", str(10**15 + 1))
        assert code == 2 and "error" in err

    def test_range_cap_40(self, capsys):
        code, _, err = run_cli(
            capsys, "modes", "--lambda", "1", "--log10-n-range", "0:45:1"
        )
        assert code == 2 and "40" in err

    def test_negative_k_max(self, capsys):
        code, _, _ = run_cli(
            capsys, "dist", "--lambda", "1", "--n", "10", "--k-max", "-3"
        )
        assert code == 2

    def test_missing_lambda_argparse_exit(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["prob", "--n", "10"])
        assert exc.value.code == 2

    def test_both_n_specs_argparse_exit(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["prob", "--lambda", "1", "--n", "10", "--log10-n", "1"])
        assert exc.value.code == 2

    def test_malformed_range_argparse_exit(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["prob", "--lambda", "1", "--log10-n-range", "0:40"])
        assert exc.value.code == 2

    def test_descending_range(self, capsys):
        code, _, err = run_cli(
            capsys, "prob", "--lambda", "1", "--log10-n-range", "4:2:1"
        )
        assert code == 2 and "error" in err


class TestWarnings:
    def test_warnings_on_stderr_not_stdout(self, capsys):
        # unrecoverable scan at lambda=1e6, n=10: null cells + stderr warning
        code, out, err = run_cli(capsys, "prob", "--lambda", "1e6", "--n", "10")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows[0]["i_best"] == "" and rows[0]["p_two_point"] == ""
        assert "poisson-maxima: warning:" in err
        assert "warning" not in out


class TestSubprocess:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "poisson_maxima.cli", "point", "--lambda", "1", "--n", "100"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0, proc.stderr
        assert json.loads(proc.stdout)["i_n"] == 4

    def test_console_script_version(self):
        proc = subprocess.run(
            ["poisson-maxima", "--version"], capture_output=True, text=True, timeout=60
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("poisson-maxima ")

    def test_cross_process_byte_identity(self):
        argv = ["modes", "--lambda", "5", "--log10-n-range", "0:6:0.5", "--format", "json"]
        runs = [
            subprocess.run(
                [sys.executable, "-m", "poisson_maxima.cli", *argv],
                capture_output=True,
                timeout=120,
            )
            for _ in range(2)
        ]
        assert runs[0].returncode == 0
        assert runs[0].stdout == runs[1].stdout
