"""Command line behavior: formats, exit codes, deterministic reports."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from polygenocchi.cli import (
    EXIT_OK,
    EXIT_OUTPUT,
    EXIT_SINGULAR,
    EXIT_USAGE,
    EXIT_VERIFY_FAIL,
    main,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTable:
    def test_csv_classical_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--family", "classical-genocchi", "--n-max", "3"
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "0,0,0"
        assert lines[1] == "1,0,1"
        assert lines[2] == "2,1,-1,2"
        assert lines[3] == "3,2,0,-3,3"

    def test_type1_weight_one_matches_classical(self, capsys):
        code_a, out_a, _ = run_cli(
            capsys, "table", "--family", "classical-genocchi", "--n-max", "6"
        )
        code_b, out_b, _ = run_cli(
            capsys,
            "table",
            "--family",
            "type1",
            "--k",
            "1",
            "--n-max",
            "6",
        )
        assert code_a == code_b == EXIT_OK
        assert out_a == out_b

    def test_formats_carry_identical_values(self, capsys):
        args = [
            "table", "--family", "type1", "--k", "2", "--alpha", "1",
            "--lambda", "1", "--n-max", "4",
        ]
        _, csv_text, _ = run_cli(capsys, *args, "--format", "csv")
        _, json_text, _ = run_cli(capsys, *args, "--format", "json")
        _, latex_text, _ = run_cli(capsys, *args, "--format", "latex")

        payload = json.loads(json_text)
        for n, line in enumerate(csv_text.strip().splitlines()):
            cells = line.split(",")
            assert int(cells[0]) == n
            deg = int(cells[1])
            coeffs = [Fraction(c) for c in cells[2:]]
            assert len(coeffs) == deg + 1
            from_json = [Fraction(c) for c in payload["polynomials"][n]]
            # json stores the exact coefficient list, csv pads the zero poly
            if from_json:
                assert coeffs == from_json
            else:
                assert coeffs == [Fraction(0)]

        # latex lines parse back to the same polynomials
        import re

        for n, line in enumerate(latex_text.strip().splitlines()):
            body = line.split("&=")[1].replace("\\\\", "").strip()
            got = [Fraction(0)] * 5
            if body != "0":
                for term in re.finditer(
                    r"(?P<sign>[+-]?)\s*(?P<coef>\\frac\{\d+\}\{\d+\}|\d+)?"
                    r"\s*(?P<var>x(\^\{(?P<pow>\d+)\})?)?",
                    body,
                ):
                    if not term.group(0).strip():
                        continue
                    sign = -1 if term.group("sign") == "-" else 1
                    coef_text = term.group("coef")
                    if coef_text is None:
                        coef = Fraction(1)
                    elif coef_text.startswith("\\frac"):
                        nums = re.findall(r"\d+", coef_text)
                        coef = Fraction(int(nums[0]), int(nums[1]))
                    else:
                        coef = Fraction(coef_text)
                    if term.group("var") is None:
                        power = 0
                    elif term.group("pow") is None:
                        power = 1
                    else:
                        power = int(term.group("pow"))
                    got[power] += sign * coef
            expected = [Fraction(c) for c in payload["polynomials"][n]]
            expected += [Fraction(0)] * (5 - len(expected))
            assert got == expected, f"latex row {n}: {body!r}"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "table.csv"
        code, out, _ = run_cli(
            capsys,
            "table", "--family", "classical-genocchi", "--n-max", "2",
            "--out", str(target),
        )
        assert code == EXIT_OK
        assert out == ""
        assert target.read_text().splitlines()[2] == "2,1,-1,2"


class TestNumbers:
    def test_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "numbers", "--family", "classical-genocchi", "--n-max", "6"
        )
        assert code == EXIT_OK
        assert out.strip().splitlines() == [
            "0,0", "1,1", "2,-1", "3,0", "4,1", "5,0", "6,-3",
        ]

    def test_json_shape(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "numbers", "--family", "apostol-bernoulli-higher",
            "--n-max", "4", "--format", "json",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["numbers"] == ["1", "-1/2", "1/6", "0", "-1/30"]
        assert "polynomials" not in payload


class TestExitCodes:
    def test_zero_denominator_is_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys,
            "table", "--family", "type1", "--k", "1",
            "--lambda", "1/0", "--n-max", "2",
        )
        assert code == EXIT_USAGE

    def test_singular_point(self, capsys):
        code, _, err = run_cli(
            capsys,
            "table", "--family", "apostol-genocchi",
            "--lambda", "-1", "--n-max", "2",
        )
        assert code == EXIT_SINGULAR
        assert "singular" in err

    def test_missing_weight(self, capsys):
        code, _, err = run_cli(
            capsys, "table", "--family", "type1", "--n-max", "2"
        )
        assert code == EXIT_USAGE

    def test_weight_on_fixed_family(self, capsys):
        code, _, _ = run_cli(
            capsys,
            "table", "--family", "classical-genocchi", "--k", "2",
            "--n-max", "2",
        )
        assert code == EXIT_USAGE

    def test_verify_order_zero(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--order", "0")
        assert code == EXIT_USAGE

    def test_unwritable_out(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "numbers", "--family", "classical-genocchi", "--n-max", "2",
            "--out", str(tmp_path / "missing-dir" / "x.csv"),
        )
        assert code == EXIT_OUTPUT

    def test_bad_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"unknown-key": 1}')
        code, _, err = run_cli(capsys, "verify", "--config", str(cfg))
        assert code == EXIT_USAGE


class TestVerify:
    def test_summary_lines_and_exit(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "order": 4,
            "samples": [["1", "0", "1", "1"], ["2", "1/2", "1/3", "1/5"]],
            "k_range": [1, 2],
            "alpha_range": [1, 2],
        }))
        out_path = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys,
            "verify", "--suite", "stirling", "--config", str(cfg),
            "--out", str(out_path),
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[-1] == "overall: pass"
        assert any(line.startswith("stirling-type1: ") for line in lines)
        assert any(line.startswith("stirling-type2: ") for line in lines)

        payload = json.loads(out_path.read_text())
        assert payload["suite-version"] == "1.0"
        assert payload["overall"] == "pass"
        assert payload["config"]["order"] == 4
        assert len(payload["results"]) == 2
        for entry in payload["results"]:
            assert set(entry) == {
                "check-id", "statement", "status", "variant-note",
                "first-mismatch", "elapsed-ms",
            }

    def test_variant_note_in_summary(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "order": 4,
            "samples": [["2", "1/2", "1/3", "1/5"]],
            "k_range": [2],
            "alpha_range": [1],
        }))
        code, out, _ = run_cli(
            capsys, "verify", "--suite", "stirling", "--config", str(cfg)
        )
        assert code == EXIT_OK
        assert "definition orientation" in out

    def test_reports_are_byte_identical(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1600000000")
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "order": 3,
            "samples": [["1", "0", "1", "1"]],
            "k_range": [1],
            "alpha_range": [1],
        }))
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            code = main([
                "verify", "--suite", "bernoulli", "--config", str(cfg),
                "--out", str(path),
            ])
            assert code == EXIT_OK
        assert paths[0].read_bytes() == paths[1].read_bytes()
        payload = json.loads(paths[0].read_text())
        assert all(r["elapsed-ms"] == 0 for r in payload["results"])

    def test_console_script_installed(self):
        proc = subprocess.run(
            [sys.executable, "-m", "polygenocchi", "numbers",
             "--family", "classical-genocchi", "--n-max", "2"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip().splitlines() == ["0,0", "1,1", "2,-1"]
