"""Command line behaviour: outputs, formats, exit codes."""

import json
import subprocess
import sys

import pytest

from apnsurf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_apn_test_true(capsys):
    code, out, _ = run(capsys, "apn-test", "--m", "5", "--poly", "x^7")
    assert code == 0
    assert "delta = 2" in out


def test_apn_test_false(capsys):
    code, out, _ = run(capsys, "apn-test", "--m", "3", "--poly", "x^6+x^5")
    assert code == 1
    assert "not uniformity two" in out


def test_apn_test_parse_error(capsys):
    code, _, err = run(capsys, "apn-test", "--m", "3", "--poly", "x^^")
    assert code == 2
    assert "error:" in err


def test_apn_test_json_and_bind(capsys):
    code, out, _ = run(capsys, "--format", "json", "apn-test", "--m", "3",
                       "--poly", "x^5+A*x^3", "--bind", "A=0")
    assert code == 0
    rec = json.loads(out)
    assert rec["apn"] is True and rec["delta"] == 2
    assert sum(rec["counts"].values()) == 7 * 8


def test_bad_binding(capsys):
    code, _, err = run(capsys, "apn-test", "--m", "3", "--poly", "x^5",
                       "--bind", "A")
    assert code == 2 and "bindings" in err
    code, _, err = run(capsys, "apn-test", "--m", "3", "--poly", "x^5",
                       "--bind", "A=zz")
    assert code == 2


def test_sigma_build_cube(capsys):
    code, out, _ = run(capsys, "sigma", "build", "--m", "3",
                       "--poly", "x^3")
    assert code == 0
    assert out.strip() == "0x1"


def test_sigma_build_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "sigma", "build",
                       "--m", "3", "--poly", "x^5")
    rec = json.loads(out)
    assert code == 0 and rec["degree"] == 2
    assert "x0" in rec["surface"]


def test_sigma_count_off_locus(capsys):
    code, out, _ = run(capsys, "--format", "json", "sigma", "count",
                       "--m", "3", "--poly", "x^6+x^5")
    rec = json.loads(out)
    assert code == 0
    assert rec["affine_off_locus"] >= 6
    assert rec["projective"] == rec["affine"] + rec["infinity"]


def test_sigma_check_derivative(capsys):
    code, out, _ = run(capsys, "sigma", "check-derivative", "--m", "5",
                       "--poly", "x^7")
    assert code == 0
    assert "holds" in out


def test_sigma_check_singular(capsys):
    code, out, _ = run(capsys, "sigma", "check-singular", "--m", "3",
                       "--poly", "x^5")
    assert code == 0
    assert "singular" in out


def test_sigma_check_singular_nonconstant_diagonal(capsys):
    code, out, _ = run(capsys, "--format", "json", "sigma",
                       "check-singular", "--m", "4", "--poly", "x^7")
    assert code == 1
    rec = json.loads(out)
    assert rec["singular"] is None
    assert [0, 0, 0] in rec["diagonal_roots"]


def test_sigma_rejects_additive_input(capsys):
    code, _, err = run(capsys, "sigma", "build", "--m", "3", "--poly", "x^2")
    assert code == 2 and "error:" in err


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "bounds", "mmax")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "d_max,m_max,form"
    assert "36,25,none" in lines
    assert len(lines) == 16


def test_bounds_json_isolated(capsys):
    code, out, _ = run(capsys, "--format", "json", "bounds", "mmax",
                       "--kind", "isolated")
    rec = json.loads(out)
    assert code == 0
    assert rec["claim_id"] == "published-mmax-isolated"
    assert rec["discrepancies"] == []
    assert len(rec["rows"]) == 15


def test_bounds_text_flags_discrepancy(capsys):
    code, out, _ = run(capsys, "bounds", "mmax")
    assert code == 0
    assert "DISCREPANCY" in out


def test_criteria_exit_codes(capsys):
    code, out, _ = run(capsys, "criteria", "--d", "7")
    assert code == 0
    assert out.count("established") == 2
    code, _, _ = run(capsys, "criteria", "--d", "13")
    assert code == 1
    code, out, _ = run(capsys, "--format", "json", "criteria", "--d", "13",
                       "--r", "7")
    assert code == 0
    rec = json.loads(out)
    assert len(rec["verdicts"]) == 2
    assert rec["verdicts"][0]["status"] == "established"


def test_search_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "search", "--m", "4",
                       "--family", "x^6 + A*x^5 + B*x^3")
    assert code == 0
    lines = out.strip().split("\n")
    hit = json.loads(lines[0])
    assert hit["coeffs"] == ["0x0", "0x0"]
    summary = json.loads(lines[-1])
    assert summary["complete"] is True and summary["hits"] == 1
    assert summary["scanned"] == 256


def test_search_bind_shrinks_family(capsys):
    code, out, _ = run(capsys, "--format", "json", "search", "--m", "4",
                       "--family", "x^6 + A*x^5 + B*x^3", "--bind", "A=0")
    summary = json.loads(out.strip().split("\n")[-1])
    assert code == 0 and summary["candidates"] == 16


def test_search_budget_and_resume(capsys, tmp_path):
    ck = str(tmp_path / "ck")
    code, out, _ = run(capsys, "--format", "json", "search", "--m", "4",
                       "--family", "x^6 + A*x^5 + B*x^3",
                       "--budget", str(100 * 256), "--checkpoint", ck)
    assert code == 3
    summary = json.loads(out.strip().split("\n")[-1])
    assert summary["complete"] is False and summary["cursor"] == 100
    code, out, _ = run(capsys, "--format", "json", "search", "--m", "4",
                       "--family", "x^6 + A*x^5 + B*x^3",
                       "--checkpoint", ck, "--resume")
    assert code == 0
    summary = json.loads(out.strip().split("\n")[-1])
    assert summary["cursor"] == 256 and summary["scanned"] == 156


def test_classify_cli(capsys):
    code, out, _ = run(capsys, "--format", "json", "classify",
                       "--degree", "6", "--m", "4")
    assert code == 0
    rec = json.loads(out)
    assert rec["claim_id"] == "degree6-classification"
    assert rec["scans"][0]["hits"][0]["coeffs"] == {"a3": 0, "a5": 0}


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as e:
        main(["apn-test", "--poly", "x^3"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "apnsurf.cli", "--format", "csv",
         "bounds", "mmax", "--kind", "isolated"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("d_max,m_max,form")
