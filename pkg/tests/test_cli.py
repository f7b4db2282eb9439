from __future__ import annotations

import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from hyposign.cli import main

SCHEMAS = {
    p.name: json.loads(p.read_text())
    for p in resources.files("hyposign").joinpath("schemas").iterdir()
    if p.name.endswith(".json")
}
REGISTRY = Registry().with_resources(
    (s["$id"], Resource.from_contents(s)) for s in SCHEMAS.values()
)


def validate(name: str, payload) -> None:
    Draft202012Validator(SCHEMAS[name], registry=REGISTRY).validate(payload)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def catalog(tmp_path):
    return str(tmp_path / "cat.jsonl")


def test_schemas_are_valid():
    for schema in SCHEMAS.values():
        Draft202012Validator.check_schema(schema)


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "S{1,3,1,1,1}", "--json")
    assert code == 0
    data = json.loads(out)
    validate("classify.json", data)
    assert data["first"] == "+---+-+" and data["third"] == "S{[1],3,[3]}"
    assert data["type1"] and data["verdict"]["status"] == "CertifiedCanonical"


def test_classify_text_and_flag_order(capsys):
    code, out, _ = run(capsys, "--json", "classify", "S{3,1,1,3}")
    assert code == 0 and json.loads(out)["verdict"]["status"] == "Inconclusive"
    code, out, _ = run(capsys, "classify", "+--+")
    assert code == 0 and "CertifiedNonCanonical" in out and "PNP" in out


def test_classify_decide(capsys):
    code, out, _ = run(capsys, "classify", "S{1,2,1}", "--decide", "--json")
    data = json.loads(out)
    validate("classify.json", data)
    assert code == 0 and len(data["decision"]["witnesses"]) == 2


@pytest.mark.parametrize("argv", [
    ("classify", "-+"),
    ("classify", "S{1,0}"),
    ("construct", "+", "--no-store"),
    ("construct", "S{1,3,1}", "--mode", "pair", "--no-store"),
    ("verify", "lemma1", "--lmax", "1"),
    ("verify", "involutions", "--maxlen", "40"),
    ("verify", "theorem3", "--r", "2", "--delta", "9"),
    ("bogus",),
    ("explore",),
])
def test_usage_errors_exit_1(capsys, argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse failures
        code = exc.code
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_construct_canonical_stores(capsys, catalog):
    code, out, _ = run(capsys, "construct", "S{1,2,1}", "--json", "--catalog", catalog)
    data = json.loads(out)
    validate("construct.json", data)
    assert code == 0 and data["witnesses"][0]["word"] == "PNP"
    with open(catalog) as fh:
        for line in fh:
            validate("catalog_record.json", json.loads(line))


def test_construct_pair(capsys):
    code, out, _ = run(capsys, "construct", "S{1,2,1,1}", "--mode", "pair", "--no-store", "--json")
    data = json.loads(out)
    validate("construct.json", data)
    assert code == 0 and len({w["word"] for w in data["witnesses"]}) == 2


def test_construct_text_truncates(capsys):
    code, out, _ = run(capsys, "construct", "S{1,1,1,1,1,1,1,1}", "--no-store")
    assert code == 0
    assert all(len(tok.strip(", ")) <= 40 for line in out.splitlines() if "coeffs" in line
               for tok in line.split(":", 1)[1].split(", "))


def test_explore_json(capsys, catalog):
    code, out, _ = run(capsys, "explore", "S{1,2,1}", "--budget", "50", "--seed", "7", "--json",
                       "--catalog", catalog)
    data = json.loads(out)
    validate("report.json", data)
    assert code == 0 and [w["status"] for w in data["words"]] == ["found"] * 3
    code, out, _ = run(capsys, "explore", "S{1,2,1}", "--budget", "50", "--seed", "7", "--no-store")
    assert "3/3 order words found" in out


def test_explore_search_only(capsys):
    code, out, _ = run(capsys, "explore", "S{2,2,2}", "--budget", "5", "--search-only", "--no-store", "--json")
    data = json.loads(out)
    assert code == 0 and "theorem3" not in {w["method"] for w in data["words"]}


@pytest.mark.parametrize("argv", [
    ("verify", "lemma1", "--lmax", "40"),
    ("verify", "theorem3", "--r", "2", "--delta", "5", "--tau1", "1"),
    ("verify", "theorem3", "--r", "2", "--delta", "4", "--side", "right"),
    ("verify", "involutions", "--maxlen", "8"),
    ("verify", "canonical-builder", "--maxdeg", "5"),
])
def test_verify_suites(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    validate("verify.json", data)
    assert code == 0 and data["ok"] and data["passed"] == data["total"] > 0


def test_verify_failure_exit_2(capsys, monkeypatch):
    from hyposign import cli
    from hyposign.suites import Check

    monkeypatch.setattr(cli, "run_suite", lambda name, **kw: [Check("x", False, "broken")])
    code, out, _ = run(capsys, "verify", "lemma1")
    assert code == 2 and "FAIL x: broken" in out
