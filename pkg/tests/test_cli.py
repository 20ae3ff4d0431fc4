from __future__ import annotations

import json
from importlib import resources

import jsonschema
import pytest

from rankcrank import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("rankcrank").joinpath("report_schema.json").read_text())


def test_verify_pde_passes(capsys):
    code, out, _ = run(capsys, "verify", "pde", "--m", "1", "--order", "30")
    assert code == 0 and out.startswith("PASS pde m=1")


def test_verify_lambert_chan(capsys):
    code, out, _ = run(
        capsys, "verify", "lambert", "--which", "chan", "--m", "3", "--order", "20", "--trials", "3", "--seed", "7"
    )
    assert code == 0 and out.startswith("PASS chan")


def test_emit_latex_contains_coefficients(capsys):
    code, out, _ = run(capsys, "emit", "pde", "--m", "2", "--format", "latex", "--order", "10")
    assert code == 0
    assert "(10 + 60\\,\\Phi_1)" in out
    assert "(24 + 350\\,\\Phi_1 + 10\\,\\Phi_3 + 300\\,\\Phi_1^2)" in out


def test_emit_to_file(tmp_path, capsys):
    path = tmp_path / "pde4.json"
    code, _, _ = run(capsys, "emit", "pde", "--m", "4", "--format", "json", "--out", str(path), "--order", "8")
    assert code == 0
    doc = json.loads(path.read_text())
    f1 = {(m["a"], m["b"], m["c"], m["d"]): m["coeff"] for m in doc["f"][3]["monomials"]}
    assert f1 == {(0, 0, 0, 0): 60, (1, 0, 0, 0): 504}


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "pde", "--m", "9"],
        ["verify", "thm41", "--k", "4"],
        ["verify", "thm41", "--k", "5", "--l", "5"],
        ["verify", "lambert", "--which", "chan"],
        ["verify", "pde", "--m", "1", "--order", "0"],
        ["expand", "table"],
        ["expand", "table", "--stat", "rank", "--order", "60"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_mismatch_exits_1(capsys, monkeypatch):
    from rankcrank import genfun
    from rankcrank.checks import Check

    monkeypatch.setattr(genfun, "verify_theorem11", lambda k, N: Check("theorem11", False, N, {}, "q^3"))
    code, out, _ = run(capsys, "verify", "thm11", "--k", "2", "--order", "5")
    assert code == 1 and out.startswith("FAIL") and "first divergence: q^3" in out


def test_expand_outputs_tsv(capsys):
    code, out, _ = run(capsys, "expand", "crank", "--order", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n\tcoefficient" and len(lines) == 5
    code, out, _ = run(capsys, "expand", "table", "--stat", "rank", "--order", "2")
    assert out.splitlines() == ["m\tn\tcount", "0\t0\t1", "0\t1\t1", "-1\t2\t1", "1\t2\t1"]


def test_env_order_override(monkeypatch, capsys):
    monkeypatch.setenv("RANKCRANK_ORDER", "4")
    code, out, _ = run(capsys, "expand", "g5")
    assert code == 0 and len(out.splitlines()) == 6


def test_verify_json_report_validates(capsys, schema):
    code, out, _ = run(capsys, "verify", "thm11", "--k", "3", "--order", "10", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert code == 0 and doc["ok"] and doc["items"][0]["order"] == 10


def _strip_times(doc):
    for item in doc["items"]:
        item["wall_time"] = 0
    return json.dumps(doc, sort_keys=True)


@pytest.mark.slow
def test_run_all_quick_profile(tmp_path, capsys, schema):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "run-all", "--profile", "quick", "--out", str(a))[0] == 0
    assert run(capsys, "run-all", "--profile", "quick", "--out", str(b))[0] == 0
    doc = json.loads(a.read_text())
    jsonschema.validate(doc, schema)
    assert doc["ok"] and len(doc["items"]) == 11
    assert [i["name"] for i in doc["items"]] == sorted(i["name"] for i in doc["items"])
    assert _strip_times(doc) == _strip_times(json.loads(b.read_text()))
