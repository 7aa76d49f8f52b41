import json

import pytest

from modalkit.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_parse_ok(capsys):
    code, body = _run(capsys, "parse", "--lang", "modal", "[]p -> p")
    assert code == 0
    assert body["rendered"] == "[] p -> p"


def test_parse_error_is_usage(capsys):
    code, body = _run(capsys, "parse", "--lang", "prop", "J p")
    assert code == 2
    assert "error" in body


def test_countermodel_found_exits_one(capsys):
    code, body = _run(
        capsys, "countermodel", "--logic", "K", "--max-worlds", "3", "[]p => [][]p"
    )
    assert code == 1
    assert body["found"] is True
    assert body["model"]["worlds"] <= 3


def test_countermodel_valid_exits_zero(capsys):
    code, body = _run(
        capsys, "countermodel", "--logic", "T", "--max-worlds", "4", "[]p => p"
    )
    assert code == 0
    assert body["valid_up_to_bound"] == 4


def test_check_proof_file(tmp_path, capsys):
    proof = {
        "system": "K",
        "lines": [
            {"formula": "p -> p", "just": "Taut"},
            {"formula": "[] (p -> p)", "just": "Nec 1"},
        ],
    }
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof))
    code, body = _run(capsys, "check", str(path))
    assert code == 0 and body["ok"] is True

    bad = dict(proof, system="XYZ")
    path.write_text(json.dumps(bad))
    code2, body2 = _run(capsys, "check", str(path))
    assert code2 == 2


def test_check_rejected_exits_one(tmp_path, capsys):
    proof = {"system": "K", "lines": [{"formula": "[] p -> p", "just": "AxT"}]}
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof))
    code, body = _run(capsys, "check", str(path))
    assert code == 1
    assert body["errors"]


def test_check_system_override(tmp_path, capsys):
    proof = {"system": "K", "lines": [{"formula": "[] p -> p", "just": "AxT"}]}
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof))
    code, body = _run(capsys, "check", "--system", "T", str(path))
    assert code == 0 and body["ok"] is True


def test_eval_sequent(tmp_path, capsys):
    space = {"worlds": 2, "opens": "powerset", "J": {"relation": [[0, 1]]}}
    val = {"p": [0]}
    spath = tmp_path / "space.json"
    vpath = tmp_path / "val.json"
    spath.write_text(json.dumps(space))
    vpath.write_text(json.dumps(val))
    code, body = _run(
        capsys,
        "eval",
        "--space",
        str(spath),
        "--valuation",
        str(vpath),
        "--sequent",
        "p => T -> p",
    )
    assert code == 1
    assert body["holds"] is False

    code2, body2 = _run(
        capsys,
        "eval",
        "--space",
        str(spath),
        "--valuation",
        str(vpath),
        "--formula",
        "T -> p",
    )
    assert code2 == 0
    assert body2["value"] == [1]


def test_countermodel_matches_library(capsys):
    from modalkit import semantics
    from modalkit.syntax import parse_sequent

    code, body = _run(
        capsys, "countermodel", "--logic", "KPC", "--max-worlds", "2", "p => T -> p"
    )
    assert code == 1
    direct = semantics.countermodel(parse_sequent("p => T -> p", "prop"), "KPC", 2)
    assert body["model"] == semantics.model_to_json(direct.model)
    assert body["witness"] == direct.witness


def test_translate_matches_library(tmp_path, capsys):
    from modalkit import corpus, embedding, proofs

    tree = corpus._remark_weak_k()
    doc = proofs.proof_to_json(tree, "BPC")
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(doc))
    code, body = _run(capsys, "translate", str(path))
    assert code == 0
    direct = proofs.proof_to_json(embedding.embed_proof(tree, "BPC"), "J")
    assert body["proof"] == direct


def test_classify_and_laws(tmp_path, capsys):
    space = {
        "worlds": 2,
        "opens": "powerset",
        "J": {"table": {"0": 0, "1": 1, "2": 0, "3": 1}},
    }
    path = tmp_path / "space.json"
    path.write_text(json.dumps(space))
    code, body = _run(capsys, "classify", str(path))
    assert code == 0
    assert body["flags"]["temporal"] is True
    code2, body2 = _run(capsys, "laws", str(path))
    assert code2 == 0
    assert body2["strong"] is True

    # thin-adapter goldens: identical to the library calls
    from modalkit import spaces

    loaded = spaces.space_from_json(space)
    cls = spaces.classify(loaded)
    assert body["flags"] == {name: getattr(cls, name) for name in spaces.CLASS_FLAGS}
    report = spaces.check_category_laws(loaded)
    assert body2["weakly_closed"] == report.weakly_closed
    assert body2["curry"] == report.curry
    assert body2["violations"] == list(report.violations)


def test_lambda_commands(tmp_path, capsys):
    term = {
        "con": "p0",
        "children": [
            {"con": "pair", "children": [{"con": "star"}, {"con": "star"}]}
        ],
    }
    path = tmp_path / "term.json"
    path.write_text(json.dumps(term))
    code, body = _run(capsys, "typecheck", str(path))
    assert code == 0 and body["rendered"] == "1"
    code2, body2 = _run(capsys, "normalize", str(path))
    assert code2 == 0 and body2["rendered"] == "*"

    eq = {"term": term, "other": {"con": "star"}, "context": []}
    epath = tmp_path / "eq.json"
    epath.write_text(json.dumps(eq))
    code3, body3 = _run(capsys, "equal", str(epath))
    assert code3 == 0 and body3["result"] == "equal"


def test_fuel_env_override(tmp_path, capsys, monkeypatch):
    deep = {"con": "star"}
    for _ in range(5):
        deep = {"con": "p0", "children": [{"con": "pair", "children": [deep, {"con": "star"}]}]}
    path = tmp_path / "term.json"
    path.write_text(json.dumps(deep))
    monkeypatch.setenv("MODALKIT_FUEL", "1")
    code, body = _run(capsys, "normalize", str(path))
    assert code == 2
    assert "error" in body
    monkeypatch.delenv("MODALKIT_FUEL")
    code2, _ = _run(capsys, "normalize", str(path))
    assert code2 == 0


def test_enumerate_cli(capsys):
    code, body = _run(capsys, "enumerate", "--max-worlds", "1")
    assert code == 0
    assert body["count"] == 2


def test_output_stable_under_reserialization(capsys):
    code, body = _run(capsys, "parse", "p /\\ q")
    out1 = json.dumps(body, indent=2, sort_keys=True)
    code2, body2 = _run(capsys, "parse", "p /\\ q")
    assert out1 == json.dumps(body2, indent=2, sort_keys=True)


def test_usage_error(capsys):
    assert run(["nope"]) == 2
