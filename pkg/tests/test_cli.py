import json
import subprocess
import sys

import pytest

from padicfeas.cli import main

SIX_TERM = "243*x^6; -3646*x^5; 18240*x^4; -35310*x^3; 29305*x^2; -8868*x; 36"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_feas_binomial(capsys):
    code, doc, _ = run(capsys, "feas", "-17*x^0; 1*x^2", "-p", "2")
    assert code == 0 and doc["feasible"] is True and doc["method"] == "binomial"
    assert doc["input"] == {"poly": "-17*x^0; 1*x^2", "p": "2"}
    assert set(doc["details"]) >= {"d", "ord_alpha", "branch"}
    assert isinstance(doc["certificate"]["zeta0"], str)


def test_feas_trinomial_and_general(capsys):
    code, doc, _ = run(capsys, "feas", "3*x^0; 1*x^1; 1*x^2", "-p", "3")
    assert code == 0 and doc["root_count"] == "2" and doc["method"] == "trinomial-newton"
    code, doc, _ = run(capsys, "feas", SIX_TERM, "-p", "3")
    assert code == 0 and doc["method"] == "general"


def test_feas_infeasible_and_unknown(capsys):
    code, doc, _ = run(capsys, "feas", "x^2; 1", "-p", "7")
    assert code == 1 and doc["feasible"] is False
    code, doc, _ = run(capsys, "feas", "x^4; 3*x^3; -17; x", "-p", "2", "--max-nodes", "0")
    assert code == 2 and doc["status"] == "unknown" and doc["feasible"] is None


def test_input_errors(capsys):
    code, _, err = run(capsys, "feas", "1*x^(", "-p", "3")
    assert code == 3 and "position 0" in err
    code, _, err = run(capsys, "feas", "x^2; 1", "-p", "9")
    assert code == 3 and "composite" in err
    code, _, _ = run(capsys, "feas", "x^2")
    assert code == 3


def test_env_budget_override(capsys, monkeypatch):
    monkeypatch.setenv("PADICFEAS_MAX_NODES", "0")
    code, doc, _ = run(capsys, "certify", "x^4; 3*x^3; -17; x", "-p", "2")
    assert code == 2 and doc["status"] == "unknown"
    monkeypatch.setenv("PADICFEAS_MAX_NODES", "lots")
    code, _, err = run(capsys, "certify", "x^2; -17", "-p", "2")
    assert code == 3 and "PADICFEAS_MAX_NODES" in err


def test_certify_then_verify(capsys, tmp_path):
    code, doc, _ = run(capsys, "certify", SIX_TERM, "-p", "3")
    assert code == 0
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(doc))
    code, doc, _ = run(capsys, "verify", SIX_TERM, "--cert", str(path))
    assert code == 0 and doc["valid"] is True
    bad = dict(doc["certificate"], zeta0="5")
    code, doc, _ = run(capsys, "verify", SIX_TERM, "--cert", json.dumps(bad))
    assert code == 1 and doc["valid"] is False
    code, _, _ = run(capsys, "verify", SIX_TERM, "--cert", "{not json")
    assert code == 3


def test_polygon(capsys, tmp_path):
    svg = tmp_path / "hull.svg"
    code, doc, _ = run(capsys, "polygon", SIX_TERM, "-p", "3", "--svg", str(svg))
    assert code == 0
    assert [e["horizontal_length"] for e in doc["edges"]] == [2, 3, 1]
    assert doc["census"] == [["1/1", 2], ["0/1", 3], ["-5/1", 1]]
    assert svg.read_text().startswith("<svg")


@pytest.fixture
def cnfs(tmp_path):
    sat = tmp_path / "sat.cnf"
    sat.write_text("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    unsat = tmp_path / "unsat.cnf"
    unsat.write_text("p cnf 1 2\n1 0\n-1 0\n")
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n1 2 0\n")
    return sat, unsat, bad


def test_reduce_and_oracle(capsys, cnfs):
    sat, unsat, bad = cnfs
    code, doc, _ = run(capsys, "reduce", str(sat))
    assert code == 0 and doc["D_P"] == "6" and doc["gadget"]["p"] == "7"
    code, doc, _ = run(capsys, "oracle-sat", str(sat))
    assert code == 0 and doc["satisfiable"] and doc["brute_force_sat"]
    code, doc, _ = run(capsys, "oracle-sat", str(unsat))
    assert code == 1 and not doc["satisfiable"]
    code, _, err = run(capsys, "oracle-sat", str(sat), "-p", "11")
    assert code == 3
    code, _, err = run(capsys, "reduce", str(bad))
    assert code == 3 and "line 2" in err


def test_pipeline(capsys, cnfs):
    sat, unsat, _ = cnfs
    code, doc, _ = run(capsys, "pipeline", str(sat), "--seed", "1")
    assert code == 0 and doc["agree"] is True and doc["certificate_verified"] is True
    code, doc, _ = run(capsys, "pipeline", str(unsat), "--seed", "1")
    assert code == 1 and doc["status"] == "infeasible"
    code, doc, _ = run(capsys, "pipeline", str(sat), "--unity-cap", "3")
    assert code == 2 and "unity cap exceeded" in doc["error"]


def test_primegen(capsys):
    code, doc, err = run(capsys, "primegen", "--n", "3", "--seed", "1")
    assert code == 0 and doc["status"] == "success"
    p, c = int(doc["p"]), int(doc["c"])
    assert p == 1 + c * int(doc["M_i"]) and doc["size_bound_holds"] is True
    assert err.strip() == doc["message"]
    code, doc, err = run(capsys, "primegen", "--n", "3", "--seed", "0", "--draws", "0")
    assert code == 1 and "Please forgive me." in err
    code, _, _ = run(capsys, "primegen", "--n", "3", "--epsilon", "1/2")
    assert code == 3


def test_density(capsys):
    code, doc, _ = run(capsys, "density", "--support", "0,1", "--H", "10", "--samples", "200")
    assert code == 0 and doc["passes"]
    code, doc, _ = run(capsys, "density", "--support", "0,1,3", "--H", "2", "--samples", "20")
    assert doc["note"] == "vacuous bound"
    code, _, _ = run(capsys, "density", "--support", "a,b", "--H", "10")
    assert code == 3


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "padicfeas", "feas", "x^2; -3", "-p", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 1 and json.loads(out.stdout)["feasible"] is False
