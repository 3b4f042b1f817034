"""CLI harness: exit codes, report formats, determinism."""

import json

import pytest

from ellhyp.cli import main, reports_to_json, VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_error_low_digits(capsys):
    code, _, err = run(capsys, "verify-identity", "--digits", "20")
    assert code == 2
    assert "digits" in err


def test_usage_error_unknown_command(capsys):
    assert main(["no-such-command"]) == 2


def test_usage_error_bad_hyp_params(capsys):
    code, _, err = run(capsys, "hyp", "--params", "1/2,1/3")
    assert code == 2


def test_rosset_tate_text(capsys):
    code, out, _ = run(capsys, "rosset-tate")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert lines and all(l.startswith("[PASS]") for l in lines)


def test_verify_bloch_json_schema(capsys):
    code, out, _ = run(capsys, "verify-bloch", "--report", "json",
                       "--deterministic")
    assert code == 0
    data = json.loads(out)
    assert "reports" in data
    required = {"claim_id", "kind", "lhs", "rhs", "status"}
    for rep in data["reports"]:
        assert required <= set(rep)
        assert rep["status"] == "pass"
        assert rep["kind"] in ("exact", "numeric")
        assert rep["timing"] is None  # deterministic mode strips timings
        # snake_case keys only
        assert all(k == k.lower() for k in rep)
    # order fixed by claim_id
    ids = [r["claim_id"] for r in data["reports"]]
    assert ids == sorted(ids)


def test_deterministic_byte_identical(capsys):
    code1, out1, _ = run(capsys, "verify-bloch", "--report", "json",
                         "--deterministic")
    code2, out2, _ = run(capsys, "verify-bloch", "--report", "json",
                         "--deterministic")
    assert code1 == code2 == 0
    assert out1 == out2


def test_json_round_trip():
    rep = VerificationReport(claim_id="x", kind="numeric", lhs="1.0",
                             rhs="1.0", status="pass", abs_err="0.0",
                             digits_agreed=30, tolerance="1e-20",
                             notes="n", timing=0.5)
    text = reports_to_json([rep], deterministic=False)
    back = json.loads(text)["reports"][0]
    assert back["claim_id"] == "x" and back["timing"] == 0.5
    assert VerificationReport(**back) == rep


def test_coeffs_output(capsys):
    code, out, _ = run(capsys, "coeffs", "--curve", "64", "--n-max", "10")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["1", "1"]
    assert rows[4] == ["5", "2"]
    assert len(rows) == 10


def test_coeffs_file_source_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "coeffs", "--curve", "36", "--n-max", "50")
    assert code == 0
    path = tmp_path / "a36.csv"
    path.write_text(out)
    code2, out2, _ = run(capsys, "coeffs", "--curve", "36", "--n-max", "50",
                         "--source", "file", "--an-file", str(path))
    assert code2 == 0 and out2 == out


def test_hyp_command(capsys):
    code, out, _ = run(capsys, "hyp", "--params", "1/2,1/3,-1/6,5/6,5/6")
    assert code == 0
    assert out.strip().startswith("0.9344328584844524")


def test_tame_command(capsys):
    code, out, _ = run(capsys, "tame", "--curve", "36", "--f", "1-v",
                       "--g", "1+u", "--place", "(0,1)")
    assert code == 0
    assert "tame symbol = 1" in out


def test_failure_exit_code(capsys):
    # a coefficient file that fails consistency checks is a runtime failure
    code, _, err = run(capsys, "coeffs", "--curve", "36", "--n-max", "0")
    assert code == 2


def test_verify_torsion_labels_curve36(capsys):
    code, out, _ = run(capsys, "verify-torsion-labels", "--curve", "36")
    assert code == 0
    assert "label_P_E36" in out
