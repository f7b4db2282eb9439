from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from hyposign.catalog import ENV_VAR, Catalog, CatalogError
from hyposign.construct import build_canonical, example1_cubics
from hyposign.exactpoly import DistinctModuliViolation, RationalPoly
from hyposign.realize import explore
from hyposign.signpattern import OrderWord, SignPattern, parse
from hyposign.witness import Witness, ZeroCoefficient, make_witness, verify_witness

S = SignPattern.from_components


# --- witnesses -------------------------------------------------------------

def test_make_witness_rejects():
    with pytest.raises(ZeroCoefficient):
        make_witness([1, -1])  # x^2 - 1
    with pytest.raises(DistinctModuliViolation):
        make_witness([2, -2, 1])


def test_witness_json_roundtrip():
    w = example1_cubics()[0]
    data = json.loads(json.dumps(w.to_json()))
    assert data["roots"] == ["-1/1", "3/2", "8/5"]
    assert data["pattern"] == "+--+" and data["word"] == "NPP"
    back = Witness.from_json(data)
    assert back == w and verify_witness(back).ok


def tampered(w: Witness, **changes) -> Witness:
    fields = dict(roots=w.roots, poly=w.poly, pattern=w.pattern, word=w.word, meta=w.meta)
    fields.update(changes)
    return Witness(**fields)


def test_verify_reports_specific_violations():
    w = example1_cubics()[1]
    coeffs = list(w.poly.coeffs)
    coeffs[1] += 1
    rep = verify_witness(tampered(w, poly=RationalPoly(tuple(coeffs))))
    assert not rep.ok and rep.violations == ["coefficient mismatch at exponent 1"]
    rep = verify_witness(tampered(w, pattern=parse("+-++")))
    assert rep.violations == ["pattern mismatch at index 2"]
    rep = verify_witness(tampered(w, pattern=parse("+--+-")))
    assert "pattern length" in rep.violations[0]
    rep = verify_witness(tampered(w, word=OrderWord("NPP")))
    assert rep.violations == ["word mismatch at index 0"]
    rep = verify_witness(tampered(w, roots=(F(-1), F(1), F(3, 5))))
    assert any("tied moduli" in v for v in rep.violations)
    assert not verify_witness(tampered(w, roots=(F(0), F(1), F(2))))


# --- catalog ---------------------------------------------------------------

def test_put_get_and_duplicates(tmp_path):
    path = tmp_path / "cat.jsonl"
    cat = Catalog(path)
    ws = example1_cubics()
    assert cat.get(S((1, 2, 1)), "NPP") is None
    assert all(cat.put(w) for w in ws)
    assert not cat.put(ws[0])
    assert len(cat) == 3 and len(path.read_text().splitlines()) == 3
    assert cat.get(S((1, 2, 1)), "NPP") == ws[0]
    assert (S((1, 2, 1)), OrderWord("PPN")) in cat
    assert [w.word.letters for w in cat.scan(S((1, 2, 1)))] == ["NPP", "PNP", "PPN"]


def test_reopen_reverifies(tmp_path):
    path = tmp_path / "cat.jsonl"
    Catalog(path).put(build_canonical(S((2, 3, 1))), created_by={"method": "test"})
    cat = Catalog(path)
    assert len(cat) == 1 and not cat.quarantined
    rec = json.loads(path.read_text())
    assert rec["schema"] == 1 and rec["created_by"] == {"method": "test"}
    assert rec["key"] == {"pattern": "++---+", "word": cat.scan(S((2, 3, 1)))[0].word.letters}


def test_refuses_unverified(tmp_path):
    w = example1_cubics()[0]
    bad = Witness(w.roots, w.poly, w.pattern, OrderWord("PNP"), {})
    with pytest.raises(CatalogError):
        Catalog(tmp_path / "c.jsonl").put(bad)


def test_quarantine_corrupted_records(tmp_path):
    path = tmp_path / "cat.jsonl"
    cat = Catalog(path)
    for w in example1_cubics():
        cat.put(w)
    lines = path.read_text().splitlines()
    rec = json.loads(lines[1])
    rec["witness"]["coeffs"][0] = "99/1"
    lines[1] = json.dumps(rec)
    lines.append("{not json")
    path.write_text("\n".join(lines) + "\n")
    with pytest.warns(UserWarning, match="quarantined"):
        cat = Catalog(path)
    assert len(cat) == 2
    assert [q["line"] for q in cat.quarantined] == [2, 4]
    assert cat.get(S((1, 2, 1)), "PNP") is None
    # the slot is free again
    assert cat.put(example1_cubics()[1])


def test_env_var_default(tmp_path, monkeypatch):
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv(ENV_VAR, str(path))
    Catalog().put(build_canonical(S((1, 1))))
    assert path.exists()


def test_explore_results_cached(tmp_path):
    cat = Catalog(tmp_path / "cat.jsonl")
    rep = explore(S((3, 2, 3)), budget=0)
    for w in rep.found.values():
        cat.put(w)
    assert len(Catalog(tmp_path / "cat.jsonl").scan(S((3, 2, 3)))) == 21
