import csv
import json

import pytest

from rtmzv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_apply(capsys):
    assert run(capsys, "apply", "()", "xy")[:2] == (0, "-xxy + xyy\n")
    assert run(capsys, "apply", "", "xy")[:2] == (0, "xy\n")
    assert run(capsys, "apply", "()", "1")[:2] == (0, "0\n")
    assert run(capsys, "apply", "(()", "xy")[0] == 2
    assert run(capsys, "apply", "()", "xq")[0] == 2


def test_apply_json(capsys):
    from rtmzv.hpoly import Poly
    code, out, _ = run(capsys, "--json", "apply", "()", "xy")
    assert code == 0
    assert Poly.from_json(json.loads(out)) == Poly({"xxy": -1, "xyy": 1})


def test_coproduct_and_harmonic(capsys):
    code, out, _ = run(capsys, "coproduct", "(()())")
    assert code == 0 and out.count("⊗") == 4
    assert run(capsys, "harmonic", "y", "y")[1] == "xy + 2 yy\n"
    assert run(capsys, "harmonic", "x", "y")[0] == 2


def test_theta_inv_and_decompose(capsys):
    assert run(capsys, "theta-inv", "xxy + 2 xyy")[1] == "1·(())\n"
    code, out, _ = run(capsys, "decompose", "y", "y")
    assert code == 0
    assert "f = 1·()" in out and "u = -xy" in out


def test_verify_lemmas(capsys):
    assert run(capsys, "verify-lemmas", "--max-degree", "2")[0] == 0
    assert run(capsys, "verify-lemmas", "--max-degree", "6")[0] == 0
    assert run(capsys, "verify-lemmas", "--max-degree", "1")[0] == 2


def test_rk_table(capsys, tmp_path):
    out_csv = tmp_path / "rk.csv"
    code, _, _ = run(capsys, "rk-table", "--max-weight", "8", "--output", str(out_csv))
    assert code == 0
    rows = list(csv.DictReader(out_csv.open()))
    assert list(rows[0]) == ["k", "r_rtm", "r_kaw", "r_joint", "R_ref", "C_ref"]
    assert rows[-1]["k"] == "8" and rows[-1]["r_rtm"] == "46"
    code, out, _ = run(capsys, "--json", "rk-table", "--max-weight", "2")
    report = json.loads(out)
    assert code == 0 and report["outcome"] == "pass"
    assert [r["r_rtm"] for r in report["details"]["rows"]] == [0]
    assert run(capsys, "rk-table", "--max-weight", "1")[0] == 2


def test_rk_table_threads_deterministic(capsys):
    _, a, _ = run(capsys, "--json", "--threads", "1", "rk-table", "--max-weight", "6")
    _, b, _ = run(capsys, "--json", "--threads", "2", "rk-table", "--max-weight", "6")
    assert json.loads(a)["details"] == json.loads(b)["details"]


def test_other_verifications(capsys):
    assert run(capsys, "span-equality", "--weight", "6")[0] == 0
    assert run(capsys, "intertwine", "(())")[0] == 0
    assert run(capsys, "intertwine", "(())(())")[0] == 2
    code, out, _ = run(capsys, "--json", "find-map-relations", "--degree", "4")
    assert code == 0 and json.loads(out)["details"]["dimension"] == 1
    assert run(capsys, "numeric-check", "--weight", "5", "--samples", "10", "--tol", "1e-8")[0] == 0


def test_bad_usage(capsys):
    assert main([]) == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
