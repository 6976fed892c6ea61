import csv
import json
import subprocess
import sys

import pytest

from bornjordan.cli import main
from bornjordan.dynamics import CSV_COLUMNS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def diagnostics(err):
    return [json.loads(line) for line in err.splitlines()]


def test_quantize_bj(capsys):
    assert run(capsys, "quantize", "--rule", "bj", "--expr", "p^2*q") == (
        0, "q*p^2 - i*hbar*p\n", "")


def test_quantize_unreduced(capsys):
    code, out, _ = run(capsys, "quantize", "--rule", "weyl", "--expr", "p*q", "--unreduced")
    assert code == 0 and out == "1/2*p*q + 1/2*q*p\n"


def test_normal_form(capsys):
    assert run(capsys, "normal-form", "--expr", "p*q")[1] == "q*p - i*hbar\n"


def test_equal(capsys):
    code, out, err = run(capsys, "equal", "--lhs", "p*q", "--rhs", "q*p")
    assert code == 1 and out == "-i*hbar\n"
    assert diagnostics(err)[0]["status"] == "fail"
    assert run(capsys, "equal", "--lhs", "p*q", "--rhs", "q*p - i*hbar")[:2] == (0, "equal\n")


def test_check_eq7(capsys):
    code, out, _ = run(capsys, "check-eq7", "--max-m", "6", "--max-n", "6")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 36 and all(x.startswith("PASS") for x in lines)


def test_check_eq11(capsys):
    code, out, _ = run(capsys, "check-eq11", "--rule", "bj", "--expr", "p^2*q^3")
    assert code == 0 and out.count("PASS") == 2
    code, out, err = run(capsys, "check-eq11", "--rule", "weyl", "--expr", "p^2*q^3")
    assert code == 1 and "FAIL" in out
    assert diagnostics(err)[0]["check"] == "eq11"


def test_solve_orderings(capsys):
    code, out, _ = run(capsys, "solve-orderings", "--s", "2", "--r", "2")
    assert code == 0
    assert "dimension: 4" in out and "bj: member" in out and "weyl: member" in out
    assert "resubstitution: exact" in out


def test_bj_weyl_diff(capsys):
    assert run(capsys, "bj-weyl-diff", "--expr", "p^2*q^2")[1] == "-1/6*hbar^2\ncentral: yes\n"
    assert run(capsys, "bj-weyl-diff", "--expr", "p^2*q^3")[1] == "-1/2*hbar^2*q\ncentral: no\n"


def test_find_noncentral(capsys):
    assert run(capsys, "find-noncentral", "--bound", "4")[1] == "none\n"
    assert run(capsys, "find-noncentral", "--bound", "6")[1] == "p^2*q^3  difference=-1/2*hbar^2*q\n"
    code, _, err = run(capsys, "find-noncentral", "--bound", "40")
    assert code == 2 and diagnostics(err)[0]["kind"] == "usage"


@pytest.mark.parametrize("argv,kind", [
    (["quantize", "--rule", "bj", "--expr", "p^2*"], "parse"),
    (["quantize", "--rule", "bj", "--expr", "hbar*p"], "mode"),
    (["quantize", "--rule", "nope", "--expr", "p"], "usage"),
    (["frobnicate"], "usage"),
    (["quantize", "--rule", "average", "--expr", "p^7*q^6"], "usage"),
    (["simulate", "--expr", "p*q", "--N", "0"], "usage"),
])
def test_usage_and_parse_errors(capsys, argv, kind):
    code, _, err = run(capsys, *argv)
    assert code == 2
    records = diagnostics(err)
    assert len(records) == 1 and records[0]["kind"] == kind and records[0]["status"] == "error"


def test_parse_error_position(capsys):
    _, _, err = run(capsys, "normal-form", "--expr", "p q")
    assert diagnostics(err)[0]["position"] == 2


def test_simulate_outputs_are_deterministic(capsys, tmp_path):
    paths = []
    for k in range(2):
        out, js = tmp_path / f"r{k}.csv", tmp_path / f"r{k}.json"
        code, stdout, _ = run(capsys, "simulate", "--expr", "p^2*q^2", "--N", "24",
                              "--t-max", "0.01", "--steps", "10", "--out", str(out),
                              "--json", str(js))
        assert code == 0 and "max_divergence" in stdout
        paths.append((out, js))
    for a, b in zip(*paths):
        assert a.read_bytes() == b.read_bytes()
    with open(paths[0][0], newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 12


def test_simulate_truncation_warning_is_a_diagnostic(capsys, tmp_path):
    code, _, err = run(capsys, "simulate", "--expr", "p*q", "--N", "12", "--steps", "4",
                       "--out", str(tmp_path / "r.csv"))
    assert code == 0
    assert any(d["kind"] == "truncation" for d in diagnostics(err))


def test_simulate_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "simulate", "--expr", "p*q", "--N", "8", "--steps", "2",
                       "--out", str(tmp_path / "missing" / "r.csv"))
    assert code == 2 and diagnostics(err)[-1]["kind"] == "io"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bornjordan", "normal-form", "--expr", "p^2*q"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "q*p^2 - 2*i*hbar*p\n"
