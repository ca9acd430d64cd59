import json

import pytest

from artinlab import cli
from artinlab.gorenstein import AuditReport, ConditionResult

from conftest import corpus_path


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _results(out):
    return {r.get("label"): r for r in json.loads(out)["results"]}


def test_inspect_one_vertex(capsys):
    code, out, _ = _run(capsys, "inspect", corpus_path("one_vertex"), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    algebra = doc["results"][0]
    assert algebra["dim"] == 1
    assert [r["operation"] for r in doc["results"]].count("standard_modules") == 1


def test_inspect_text_output(capsys):
    code, out, _ = _run(capsys, "inspect", corpus_path("a2"))
    assert code == 0
    assert out.startswith("artinlab ")
    assert "seed=0" in out and "cap=8" in out


def test_invariants_on_aba(capsys):
    code, out, _ = _run(capsys, "invariants", corpus_path("aba_gf2"), "--cap", "4", "--format", "json")
    assert code == 0
    res = _results(out)
    assert res["l.fd(I_0)"]["value"]["kind"] == "exact" and res["l.fd(I_0)"]["value"]["n"] == 1
    assert res["r.fd(I'_0)"]["value"]["text"] == ">=4"


def test_audit_five_vertex_profile(capsys):
    code, out, _ = _run(capsys, "audit", corpus_path("five_vertex"), "--theorem", "2", "--k", "2", "--cap", "4", "--format", "json")
    assert code == 0
    audit = json.loads(out)["audits"][0]
    conds = {c["label"]: c for c in audit["conditions"]}
    assert conds["flat_dimension_left"]["evidence"]["profile"] == ["1", "1"]
    assert conds["flat_dimension_right"]["evidence"]["profile"] == ["1", "1"]
    assert audit["consistency"] == "consistent"


def test_resolve_records_terms(capsys):
    code, out, _ = _run(capsys, "resolve", corpus_path("a2"), "--module", "U", "--kind", "injective", "--format", "json")
    assert code == 0
    rec = json.loads(out)["results"][0]
    assert rec["terminated"] is True
    assert [t["dimension_vector"] for t in rec["terms"]] == [[2, 2], [1, 0]]


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.ws"
    bad.write_text("field: GF(2)\nvertices: 1 2\narrows:\n  a: 1 ->\nrelations:\nU: regular\n")
    code, _out, err = _run(capsys, "inspect", str(bad))
    assert code == 2
    assert "line 4" in err


def test_unknown_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["inspect", corpus_path("a2"), "--bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_certification_exit_code(tmp_path, capsys):
    ws = tmp_path / "simple_u.ws"
    ws.write_text(
        "field: GF(2)\nvertices: 1 2\narrows:\n  a: 1 -> 2\nrelations:\n"
        "module S:\n  dim: 1 0\n  arrow a: \nU: module S\n"
    )
    code, _out, err = _run(capsys, "audit", str(ws), "--theorem", "1")
    assert code == 3
    assert "not certified" in err
    code, out, _ = _run(capsys, "audit", str(ws), "--theorem", "1", "--override-hypotheses", "--cap", "3", "--format", "json")
    assert code in (0, 4)
    assert json.loads(out)["audits"][0]["hypothesis"] == "out of hypothesis"


def test_refutation_exit_code(monkeypatch, capsys):
    def refuted(ctx, k, family, **kw):
        rep = AuditReport("ctx", "dominant_dimension", {"k": k}, "certified")
        rep.add(ConditionResult("x", "holds", "x", True))
        rep.add(ConditionResult("y", "fails", "y", True, witness={"term": 0}))
        rep.equivalences.append(["x", "y"])
        return rep.finalize()

    monkeypatch.setattr(cli, "audit_dominant_dimension", refuted)
    code, out, err = _run(capsys, "audit", corpus_path("a2"), "--theorem", "1", "--format", "json")
    assert code == 4
    assert "REFUTATION" in err
    assert json.loads(out)["audits"][0]["conflicts"][0]["fails"] == "y"


@pytest.mark.parametrize("command", ["inspect", "invariants", "audit"])
def test_json_is_byte_identical(command, capsys):
    argv = [command, corpus_path("ga_ba"), "--cap", "3", "--seed", "5", "--format", "json"]
    if command == "audit":
        argv += ["--theorem", "2", "--k", "1"]
    code1, out1, _ = _run(capsys, *argv)
    code2, out2, _ = _run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "timing" not in json.loads(out1)


def test_timing_is_opt_in(capsys):
    code, out, _ = _run(capsys, "inspect", corpus_path("a2"), "--format", "json", "--timing")
    assert code == 0
    assert "timing" in json.loads(out)
