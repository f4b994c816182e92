import json
import subprocess
import sys

import pytest

from arrhomotopy.cli import main
from arrhomotopy.pipeline import Options, Report, Session, analyze
from arrhomotopy.registry import parse_input


def run(*args):
    p = subprocess.run([sys.executable, "-m", "arrhomotopy", *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def test_examples_lists_keys(capsys):
    assert main(["examples"]) == 0
    out = capsys.readouterr().out
    assert "nandi_d3" in out and "boolean:<n>" in out


def test_poincare_text(capsys):
    assert main(["poincare", "ex_pres_A", "--decone", "z"]) == 0
    assert capsys.readouterr().out.strip() == "1 + 8*t + 24*t^2"


def test_global_flags_before_or_after_command(capsys):
    assert main(["--json", "poincare", "boolean:2"]) == 0
    a = json.loads(capsys.readouterr().out)
    assert main(["poincare", "boolean:2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == a == {"coefficients": [1, 2, 1], "polynomial": "1 + 2*t + 1*t^2"}


def test_hypersolvable_json_keys(capsys):
    assert main(["hypersolvable", "ex_pres_A", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert {"chain", "exponents", "singular_range", "verdict"} <= set(d)
    assert d["singular_range"] == [3, 3]


def test_gate_refusal_exit_code():
    code, out, _ = run("useries", "ex_lived2", "--pmax", "0")
    assert code == 2
    assert json.loads(out)["refused"] == "U"


def test_error_exit_code(tmp_path):
    f = tmp_path / "bad.arr"
    f.write_text("arr 1 2\n1/0 1\n")
    code, _, err = run("poincare", str(f))
    assert code == 1 and ":2:" in err


def test_unknown_input_exit_code():
    code, _, err = run("poincare", "not_a_key")
    assert code == 1 and "available keys" in err


def test_udims(capsys):
    assert main(["udims", "boolean:3", "--pmax", "3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"R_dims": [1, 3, 6, 10]}


def test_lattice(capsys):
    assert main(["lattice", "boolean:3", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)["flats"]
    assert [len(d[str(k)]) for k in range(4)] == [1, 3, 3, 1]


def test_seed_and_exact_do_not_change_values(capsys):
    outs = []
    for extra in ([], ["--seed", "5"], ["--exact"]):
        assert main(["homotopy-module", "ex_pres_A", "--pmax", "1", "--json", *extra]) == 0
        outs.append(json.loads(capsys.readouterr().out)["M"])
    assert outs[0] == outs[1] == outs[2] == {"3": [32, 240]}


def test_analyze_boolean():
    rep = analyze(Session(parse_input("boolean:5"), "boolean:5", Options(p_max=2)))
    assert rep.hypersolvable["verdict"] == "Koszul"
    assert rep.M["M"] == {}
    assert rep.U["U"] == {str(p): [v] for p, v in enumerate([1, 5, 15, 35, 70])}


def test_report_json_round_trip():
    rep = analyze(Session(parse_input("ex_pres_A"), "ex_pres_A", Options(p_max=1)))
    text = json.dumps(rep.to_json())
    again = Report.from_json(json.loads(text))
    assert again.to_json() == json.loads(text)
    assert json.dumps(again.to_json()) == text
