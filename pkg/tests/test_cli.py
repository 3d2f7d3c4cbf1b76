import io
import json
import os
import subprocess
import sys

import pytest

from cellkit.cli import main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
ACA = os.path.join(ROOT, "aca")
GOLDEN = os.path.join(ROOT, "tests", "golden")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_tl_matches_golden():
    code, out = run("analyze", os.path.join(ACA, "tl_q1.aca"), "--json")
    assert code == 0
    with open(os.path.join(GOLDEN, "tl_q1.json")) as fh:
        assert json.loads(out) == json.load(fh)


@pytest.mark.parametrize(
    "name,code",
    [("tl_q1.aca", 0), ("psi_e11.aca", 1), ("nonfg.aca", 2), ("xy_embedding.aca", 0), ("kx_chain.aca", 0)],
)
def test_analyze_exit_codes(name, code):
    assert run("analyze", os.path.join(ACA, name))[0] == code


def test_exit_code_independent_of_seed():
    codes = {run("analyze", os.path.join(ACA, "nonfg.aca"), "--seed", str(s))[0] for s in (0, 1, 7)}
    assert codes == {2}


def test_pi_test():
    code, out = run("pi-test", "--n", "2", "--trials", "100", "--seed", "7")
    assert code == 0 and "256 unit tuples" in out
    code, out = run("pi-test", "--n", "2", "--trials", "3", "--psi", "[[x, 1], [1, 0]]", "--json")
    assert code == 0 and json.loads(out)["swich"]["passed"] is True


def test_gb_orders():
    path = os.path.join(ROOT, "tests", "_gb.aca")
    with open(path, "w") as fh:
        fh.write("field QQ;\nring B = poly(x, y) / ideal(x^2 - y, x*y - 1);\n")
    try:
        code, out = run("gb", path, "--order", "lex")
        assert code == 0 and out.split("\n")[:2] == ["x - y^2", "y^3 - 1"]
        code, out = run("gb", path)
        assert code == 0 and len(out.split()) >= 2
    finally:
        os.remove(path)


def test_construct_and_center_check():
    code, out = run("construct", "tl", "--q", "1", "--field", "QQ", "--json")
    assert code == 0 and json.loads(out)["chain"]["m"] == 1
    code, out = run("construct", "tl", "--q", "0", "--aca")
    assert code == 0 and "psi = [[0, x], [x, 0]]" in out
    assert run("center-check", os.path.join(ACA, "tl_q1.aca"), "--element", "(0, psi_adj)")[0] == 0
    assert run("center-check", os.path.join(ACA, "tl_q1.aca"), "--element", "E11")[0] == 1


def test_parse_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.aca"
    bad.write_text("field QQ;\nring B = poly(q, x);\nlayer J { n = 2; base = B; psi = [[q, x], [x]]; }\n")
    assert run("analyze", str(bad))[0] == 3
    assert "3:43: error: ragged matrix row" in capsys.readouterr().err


def test_budget_flag_and_environment(tmp_path, monkeypatch):
    doc = tmp_path / "hard.aca"
    doc.write_text(
        "field QQ;\nring B = poly(x, y, z) / ideal(x^3 - y*z^2 + 1, y^3 - x*z + 2, z^3 - x^2*y);\n"
        "layer J { n = 1; base = B; psi = [[x]]; }\n"
    )
    assert run("gb", str(doc), "--budget", "5")[0] == 3
    monkeypatch.setenv("CELLKIT_BUDGET", "5")
    assert run("gb", str(doc))[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cellkit", "pi-test", "--n", "1", "--trials", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
