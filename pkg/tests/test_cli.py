import csv
import io
import json

import pytest

from colorperm.cli import main


def test_stats_subcommand_fixture(capsys):
    code = main(
        ["stats", "--signature", "3,2", "-n", "3", "--element", "3^(0,0) 1^(2,1) 2^(0,1)"]
    )
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert out == '{"exc":13,"exc_A":1,"csum":7,"csum_per_palette":[2,1],"fix":0,"cyc":1}'


def test_stats_rejects_wrong_rank(capsys):
    code = main(
        ["stats", "--signature", "3,2", "-n", "2", "--element", "3^(0,0) 1^(2,1) 2^(0,1)"]
    )
    assert code == 3


def test_stats_rejects_bad_element(capsys):
    code = main(["stats", "--signature", "3,2", "-n", "1", "--element", "1^(9,9)"])
    assert code == 3


def test_poly_subcommand_fixture(capsys):
    code = main(
        ["poly", "--signature", "1", "-n", "3", "--kind", "derangement", "--subst", "s=-1"]
    )
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert out == "-q - q^2"


def test_poly_unknown_subst_variable(capsys):
    code = main(["poly", "--signature", "1", "-n", "2", "--kind", "full", "--subst", "x=1"])
    assert code == 3


def test_enumerate_csv_two_rows(capsys):
    code = main(["enumerate", "--signature", "2", "-n", "1", "--class", "all", "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:4] == ["n", "signature", "sigma", "colors"]
    assert len(rows) == 3  # header + 2 elements
    assert rows[1][1] == "2"


def test_enumerate_jsonl_with_limit(capsys):
    code = main(
        [
            "enumerate",
            "--signature",
            "3,2",
            "-n",
            "2",
            "--class",
            "involutions",
            "--format",
            "jsonl",
            "--limit",
            "3",
        ]
    )
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert len(out) == 3
    first = json.loads(out[0])
    assert first["signature"] == "3,2"
    assert "exc" in first and "class_thm1" in first


def test_enumerate_budget_refusal(capsys):
    import math

    code = main(["enumerate", "--signature", "2", "-n", "12", "--budget", "1000"])
    captured = capsys.readouterr()
    assert code == 4
    assert "budget" in captured.err
    assert str(2 ** 12 * math.factorial(12)) in captured.err


def test_usage_error_exit_code(capsys):
    assert main(["enumerate", "--signature", "2"]) == 3  # missing -n
    assert main(["frobnicate"]) == 3  # unknown subcommand


def test_verify_writes_json_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = main(
        [
            "verify",
            "--signature-list",
            "1;2",
            "--max-n",
            "2",
            "--claims",
            "THM1_CLOSED,THM2_REC",
            "--json",
            str(path),
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(path.read_text())
    assert obj["schema"] == 1
    assert obj["summary"]["hard_mismatch"] == 0
    assert "THM1_CLOSED" in out
    assert "claims=" in out


def test_verify_reports_audit_mismatch_lines(capsys):
    code = main(
        ["verify", "--signature-list", "2", "--max-n", "1", "--claims", "INV_REC"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "audit: mismatch" in out


def test_verify_unknown_claim(capsys):
    code = main(["verify", "--signature-list", "1", "--claims", "BOGUS"])
    assert code == 3


def test_verify_csv_and_figures(tmp_path, capsys):
    csv_path = tmp_path / "claims.csv"
    fig_dir = tmp_path / "figs"
    code = main(
        [
            "verify",
            "--signature-list",
            "1;2",
            "--max-n",
            "2",
            "--claims",
            "THM1_CLOSED,INV_REC",
            "--csv",
            str(csv_path),
            "--figures",
            str(fig_dir),
        ]
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(csv_path.read_text())))
    assert rows[0][0] == "formula_id"
    assert len(rows) > 1
    assert (fig_dir / "claims_status.png").exists()
    assert (fig_dir / "claims_summary.png").exists()


def test_verify_default_grid_smoke_small_budget(capsys):
    # With a tiny budget every cell is skipped, which is not a failure.
    code = main(["verify", "--budget", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "skipped" in out
