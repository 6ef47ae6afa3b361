#!/usr/bin/env python3
"""
Tests for the command line interface and report formats
"""

import io
import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout

from main import main
from report_formats import round_real, to_csv, to_json, to_table


def run_cli(*argv):
    """Run the CLI in-process; returns (exit code, stdout, stderr)"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_classify_worked_example():
    code, out, _ = run_cli("classify", "100100010010010010001001000100")
    assert code == 0
    report = json.loads(out)
    assert report["analytic"] is True
    assert report["tangent"] is True
    assert report["balanced"] is False
    assert report["final"] == "01100"
    assert report["derivation"][0]["rule"] == "removed_zeros"
    print("✅ classify worked example")


def test_classify_tangent_not_analytic():
    code, out, _ = run_cli("classify", "0110100110")
    report = json.loads(out)
    assert code == 0
    assert report["tangent"] is True and report["analytic"] is False
    assert report["split"] == 6
    print("✅ classify 0110100110")


def test_classify_empty_word():
    code, out, _ = run_cli("classify", "")
    report = json.loads(out)
    assert code == 0
    assert report["balanced"] and report["analytic"] and report["tangent"] and report["two_balanced"]
    assert report["final"] == ""
    assert report["derivation"] == []
    print("✅ classify empty word")


def test_invalid_word_exit_code():
    code, out, err = run_cli("classify", "01x")
    assert code == 1
    assert out == ""
    assert "InvalidCharacter" in err
    print("✅ invalid word exits 1")


def test_usage_errors_exit_1():
    assert run_cli("complexity", "--lang", "nonsense", "--max", "3")[0] == 1
    assert run_cli("complexity", "--lang", "2balanced", "--max", "3", "--method", "paper")[0] == 1
    assert run_cli("frobnicate")[0] == 1
    print("✅ usage errors exit 1")


def test_derive_accelerated():
    code, out, _ = run_cli("derive", "100100010010010010001001000100", "--accelerated")
    report = json.loads(out)
    assert code == 0
    assert [step["output"] for step in report["steps"]] == ["110111101101", "01100"]
    assert report["final"] == "01100"
    print("✅ derive --accelerated")


def test_complexity_balanced_all():
    code, out, _ = run_cli("complexity", "--lang", "balanced", "--max", "10", "--method", "all")
    rows = json.loads(out)["rows"]
    assert code == 0
    assert all(row["enum"] == row["lipatov"] for row in rows)
    assert rows[-1]["enum"] == 136
    print("✅ complexity balanced")


def test_complexity_tangent_all():
    code, out, _ = run_cli("complexity", "--lang", "tangent", "--max", "4", "--method", "all")
    row = json.loads(out)["rows"][4]
    assert code == 0
    assert (row["enum"], row["paper"], row["candidate"]) == (16, 18, 16)
    print("✅ complexity tangent")


def test_complexity_csv_row_count():
    code, out, _ = run_cli("complexity", "--lang", "analytic", "--max", "5", "--format", "csv")
    lines = out.strip().split("\n")
    assert code == 0
    assert lines[0] == "n,enum"
    assert len(lines) == 7
    code, out, _ = run_cli("complexity", "--lang", "analytic", "--max", "0", "--method", "enum")
    assert json.loads(out)["rows"] == [{"n": 0, "enum": 1}]
    print("✅ complexity csv")


def test_complexity_two_balanced():
    code, out, _ = run_cli("complexity", "--lang", "2balanced", "--max", "5", "--method", "all")
    rows = json.loads(out)["rows"]
    assert code == 0
    assert rows[4] == {"n": 4, "enum": 16}
    assert len(rows) == 6 and all(set(row) == {"n", "enum"} for row in rows)
    assert run_cli("complexity", "--lang", "2balanced", "--max", "3", "--method", "candidate")[0] == 1
    print("✅ complexity 2balanced")


def test_reconcile_writes_report():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "reconcile.json")
        code, out, _ = run_cli("reconcile", "--max", "4", "--out", path)
        assert code == 0
        with open(path) as f:
            rows = json.load(f)
        assert isinstance(rows, list)
        assert [row["n"] for row in rows] == [0, 1, 2, 3, 4]
        assert rows[2]["enum_analytic"] == 4 and rows[2]["paper_analytic"] == 5
        assert rows[2]["flags"]["paper_analytic"] is False
        assert rows[4]["flags"]["cand_tangent"] is True
        assert "mismatch n=2 paper_analytic: 5 != 4" in out
    print("✅ reconcile --out")


def test_reconcile_prints_json_rows():
    code, out, err = run_cli("reconcile", "--max", "0")
    rows = json.loads(out)
    assert code == 0
    assert len(rows) == 1 and rows[0]["enum_tangent"] == 1
    assert "mismatch n=0 paper_sb_analytic: 3 != 1" in err
    assert err.count("paper_sb_analytic") == 1
    print("✅ reconcile --max 0")


def test_reconcile_cap_exceeded():
    code, _, err = run_cli("reconcile", "--max", "999")
    assert code == 2
    assert "CapExceeded" in err
    print("✅ reconcile beyond the cap exits 2")


def test_enumeration_cap_from_environment():
    previous = os.environ.get("TW_ENUM_CAP")
    os.environ["TW_ENUM_CAP"] = "4"
    try:
        assert run_cli("enumerate", "--lang", "balanced", "--len", "5")[0] == 2
        code, out, _ = run_cli("enumerate", "--lang", "balanced", "--len", "4")
        assert code == 0 and json.loads(out)["count"] == 14
    finally:
        if previous is None:
            del os.environ["TW_ENUM_CAP"]
        else:
            os.environ["TW_ENUM_CAP"] = previous
    print("✅ TW_ENUM_CAP")


def test_bispecial_and_audit():
    code, out, _ = run_cli("bispecial", "--lang", "tangent", "--len", "4")
    report = json.loads(out)
    assert code == 0 and report["sb"] == 10
    assert report["thin_diagonal"] == {"strong": 2, "ordinary": 0, "weak": 0}
    code, out, _ = run_cli("audit", "--max", "6")
    assert code == 0
    assert json.loads(out)["witnesses"]["tangent_not_analytic"] == "001100"
    print("✅ bispecial / audit")


def test_code_segment():
    assert run_cli("code-segment", "3", "2") == (0, "010\n", "")
    code, out, _ = run_cli("code-segment", "5", "5", "--slalom", "all")
    assert code == 0 and len(out.split()) == 16
    assert run_cli("code-segment", "4", "2", "--slalom", "mask", "1")[1] == "0100\n"
    assert run_cli("code-segment", "4", "2", "--slalom", "below")[1] == "0010\n"
    assert run_cli("code-segment", "4", "2", "--slalom", "mask", "11")[0] == 1
    code, _, err = run_cli("code-segment", "4", "2")
    assert code == 2 and "NotPrimitive" in err
    print("✅ code-segment")


def test_code_curve():
    code, out, _ = run_cli("code-curve", "--kind", "parabola", "--params", "1,0,0", "--domain", "0.2,3.0",
                           "--mesh", "1", "--offset", "0.5,0.5")
    assert (code, out) == (0, "011011110111\n")
    code, _, err = run_cli("code-curve", "--kind", "line", "--params", "1,0", "--mesh", "1",
                           "--offset", "0,0", "--domain", "0.5,2.5")
    assert code == 2 and "CornerHit" in err
    print("✅ code-curve")


def test_scan_command():
    args = ("scan", "--kind", "line", "--params", "0.41421356,0", "--domain", "0,40",
            "--meshes", "1", "--offsets", "1", "--max-factor-len", "8")
    code, out, _ = run_cli(*args)
    report = json.loads(out)
    assert code == 0
    assert report["label"] == "empirical approximation"
    assert len(report["entries"]) == 1
    code, out, _ = run_cli(*args, "--format", "csv")
    assert code == 0
    assert out.split("\n")[0] == "mesh,offset,word,factors,tangent,analytic"
    print("✅ scan")


def test_json_output_is_deterministic():
    first = run_cli("complexity", "--lang", "tangent", "--max", "6", "--method", "all")
    second = run_cli("complexity", "--lang", "tangent", "--max", "6", "--method", "all")
    assert first == second
    print("✅ identical invocations, identical bytes")


def test_report_formats():
    assert round_real(1 / 3) == 0.333333333333
    assert json.loads(to_json({"x": 0.1 + 0.2, "s": {"b", "a"}})) == {"x": 0.3, "s": ["a", "b"]}
    assert to_csv([{"n": 0, "flags": {"a": True}}, {"n": 1, "flags": {}}]).split("\n")[0] == "n,flags"
    assert to_csv([]) == ""
    assert to_table([{"n": 0, "enum": 1}]).split("\n") == ["n  enum", "0     1"]
    print("✅ report formats")


if __name__ == "__main__":
    print("🧪 CLI")
    print("=" * 40)
    test_classify_worked_example()
    test_classify_tangent_not_analytic()
    test_classify_empty_word()
    test_invalid_word_exit_code()
    test_usage_errors_exit_1()
    test_derive_accelerated()
    test_complexity_balanced_all()
    test_complexity_tangent_all()
    test_complexity_csv_row_count()
    test_complexity_two_balanced()
    test_reconcile_writes_report()
    test_reconcile_prints_json_rows()
    test_reconcile_cap_exceeded()
    test_enumeration_cap_from_environment()
    test_bispecial_and_audit()
    test_code_segment()
    test_code_curve()
    test_scan_command()
    test_json_output_is_deterministic()
    test_report_formats()
    print("\n🎉 All CLI tests passed")
