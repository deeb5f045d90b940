from __future__ import annotations

import json
from pathlib import Path

import pytest

from conjfields import fields, suites
from conjfields.cli import apply_expression, main

GOLDEN = Path(__file__).parent / "golden"


def _normalized(path: Path) -> dict:
    data = json.loads(path.read_text())
    for c in data["checks"]:
        c["millis"] = 0
    return data


@pytest.mark.parametrize("op,fn,want", [
    ("Psi(1)", "I(2)", "2*I(3) - 2*I(1)"),
    ("D", "beta^2", "0"),
    ("Psi(1)", "1", "0"),
    ("Psi(1)", "J(3)", "3*I(4) - 6"),
    ("Delta", "beta^3", "15*beta^3"),
    ("Psi(1)^2", "beta*J(1)", "beta*(6*J(3) - 20*J(1))"),
    ("J(1)*Psi(1)", "I(2)", "2*I(4) - 4"),
])
def test_apply_examples(op, fn, want):
    assert apply_expression(op, fn) == want


def test_apply_other_basis(capsys):
    assert main(["apply", "Psi(1)", "J(3)", "--basis", "J"]) == 0
    assert capsys.readouterr().out.strip() == "3*J(4) - 12*J(2)"


def test_apply_degree_overflow_suggests_bound(capsys):
    assert main(["apply", "Psi(3)", "I(9)", "--max-degree", "4"]) == 1
    assert "--max-degree 8" in capsys.readouterr().err


def test_apply_parse_error_reports_position(capsys):
    assert main(["apply", "Psi(1)", "I(2"]) == 2
    err = capsys.readouterr().err
    assert "position 3" in err and "')'" in err


def test_apply_rejects_swapped_arguments(capsys):
    assert main(["apply", "I(2)", "Psi(1)"]) == 2


def test_usage_errors_exit_2(capsys):
    assert main(["verify", "nonsense"]) == 2
    assert main(["verify", "circle", "--samples", "0"]) == 2
    assert main([]) == 2


def test_verify_small_suites_and_golden_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "weyl-torus", "--json", str(out)]) == 0
    text = capsys.readouterr().out
    assert "weyl-torus/sign-resolution" in text and "reported" in text
    data = _normalized(out)
    assert data == json.loads((GOLDEN / "weyl-torus.json").read_text())
    assert main(["verify", "circle", "--json", str(out)]) == 0
    assert _normalized(out) == json.loads((GOLDEN / "circle.json").read_text())


def test_report_schema(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "sl2-witt", "--max-k", "3", "--samples", "3", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert set(data) == {"version", "seed", "checks"}
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names)
    for c in data["checks"]:
        assert set(c) == {"name", "paper_anchor", "params", "status", "witness", "millis"}
        assert c["status"] in ("pass", "fail", "reported")


def test_sl2_witt_example_exits_zero():
    assert main(["verify", "sl2-witt", "--max-k", "8", "--samples", "10", "--seed", "42"]) == 0


def test_jobs_do_not_change_the_report(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "circle", "--json", str(a)]) == 0
    assert main(["verify", "circle", "--jobs", "2", "--json", str(b)]) == 0
    assert _normalized(a) == _normalized(b)


def test_internal_error_exits_3_and_names_check(monkeypatch, capsys):
    def broken(ctx, **params):
        raise ZeroDivisionError("boom")
    monkeypatch.setitem(suites.REGISTRY, "weyl_constant", (broken, "x"))
    assert main(["verify", "weyl-torus"]) == 3
    assert "weyl-torus/constant" in capsys.readouterr().err


def test_fault_injection_mis_signed_psi3(monkeypatch, tmp_path, capsys):
    original = fields.make_psi

    def faulty(k):
        spec = original(k)
        return -spec if k == 3 else spec

    monkeypatch.setattr(fields, "make_psi", faulty)
    out = tmp_path / "fault.json"
    assert main(["verify", "all", "--json", str(out)]) == 1
    failed = [c for c in json.loads(out.read_text())["checks"] if c["status"] == "fail"]
    assert failed
    bracket = next(c for c in failed if c["name"] == "sl2-witt/bracket[k=1,l=2]")
    assert bracket["witness"]["sample"] and bracket["witness"]["lhs"] != bracket["witness"]["rhs"]
    assert "witness" in capsys.readouterr().out
