import json
import os
import subprocess
import sys

import pytest

import artifact
from artifact import cli

FIX = os.path.join(os.path.dirname(artifact.__file__), "fixtures")


def run(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, out


def test_crit(capsys):
    code, out = run(["crit", "--a", "2", "--omega-parity", "even"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["result"]["minus"] == [-2, 0]
    # the plus side is the reflection s -> 1 - s of the minus side
    assert d["result"]["plus"] == [1, 3]
    assert d["schema"].startswith("artifact-report/")


def test_zeta_closed_form_from_fixture(capsys):
    code, out = run(["zeta", os.path.join(FIX, "zeta_sample.json"), "--form", "closed", "--j", "0"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["Y_value"]


def test_zeta_from_stdin(monkeypatch, capsys):
    import io
    with open(os.path.join(FIX, "zeta_sample.json")) as fh:
        monkeypatch.setattr(sys, "stdin", io.StringIO(fh.read()))
    code, out = run(["zeta", "--form", "bruteforce", "--check"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["matches_closed_form"] is True


def test_deterministic_output(capsys):
    argv = ["zeta", os.path.join(FIX, "zeta_sample.json"), "--form", "closed"]
    _, a = run(argv, capsys)
    _, b = run(argv, capsys)
    assert a == b


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out = run(["--out", str(target), "branch", "--a", "2"], capsys)
    assert code == 0 and out == ""
    d = json.loads(target.read_text())
    assert d["result"]["all_ones"] is True
    assert set(d["result"]["hom_dimensions"].values()) == {1}


def test_domain_error_exit_one(capsys):
    code, out = run(["einf", "--a", "3", "--j", "5"], capsys)
    assert code == 1
    assert json.loads(out)["status"] == "error"


def test_malformed_json_points_at_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"refined": {"p": 5,,}}')
    code, out = run(["zeta", str(bad)], capsys)
    assert code == 1
    assert "line 1 column" in json.loads(out)["error"]


def test_missing_field_is_named(tmp_path, capsys):
    bad = tmp_path / "phi.json"
    bad.write_text('{"support": [[0, 1]]}')
    code, out = run(["eis", "qexp", str(bad)], capsys)
    assert code == 1
    assert "modulus" in json.loads(out)["error"]


def test_verification_failure_exit_two(monkeypatch, capsys):
    import artifact.symsq
    monkeypatch.setattr(artifact.symsq, "e_infty_ratio_holds", lambda a, j: False)
    code, out = run(["einf", "--a", "3", "--j", "1"], capsys)
    assert code == 2
    assert json.loads(out)["status"] == "verification_failure"


def test_eis_distribution(capsys):
    code, out = run(["eis", "check-distribution", "--p", "2", "--t", "2"], capsys)
    assert code == 0 and json.loads(out)["result"]["distribution"] is True


def test_refine(tmp_path, capsys):
    from fractions import Fraction
    from artifact.gl3_local import LocalChar, LocalRepGL3
    rep =LocalRepGL3("steinberg_twist", [LocalChar(Fraction(1), 5)], 5, 0).to_json()
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(rep))
    code, out = run(["refine", str(path)], capsys)
    assert code == 0
    r = json.loads(out)["result"]
    assert r["P1_ordinary"] and r["P2_ordinary"]


def test_symsq_without_numerics(capsys):
    code, out = run(["symsq", "--p", "11", "--j", "2", "--no-numeric"], capsys)
    assert code == 0
    r = json.loads(out)["result"]
    assert sorted(r["critical_points"]) == [0, 2, 4, 6, 8, 10]
    code, _ = run(["symsq", "--p", "11", "--j", "3", "--no-numeric"], capsys)
    assert code == 1


def test_selftest(capsys):
    code, out = run(["selftest"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["failed"] == 0


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "artifact", "crit", "--a", "1", "--omega-parity", "odd"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["minus"] == [-1]


def test_measure(tmp_path, capsys):
    tower = {"p": 3, "eigenvalue": "1",
             "levels": [{"n": 1, "coeffs": {"1": "1", "2": "2"}}, {"n": 2, "coeffs": {"1": "1", "2": "2"}}]}
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(tower))
    code, out = run(["measure", str(path)], capsys)
    assert code == 0 and json.loads(out)["result"]["compatible"] is True
    tower["levels"][0]["coeffs"]["2"] = "5"
    path.write_text(json.dumps(tower))
    code, out = run(["measure", str(path)], capsys)
    assert code == 1 and "IncompatibleTower" in json.loads(out)["error"]
