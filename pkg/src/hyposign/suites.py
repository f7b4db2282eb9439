"""Batch verification suites behind ``hyposign verify``."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import isqrt

from .construct import Theorem3Params, build_canonical, theorem3_realize
from .exactpoly import PatternWithZeros, lemma1_pattern, p_ell, p_ell_closed_form, sign_pattern_of
from .realize import enumerate_order_words
from .signpattern import (
    all_patterns,
    canonical_order,
    classify_static,
    cpp_of,
    is_type1,
    is_type2,
    iota_m,
    iota_m_by_elements,
    iota_mr,
    iota_r,
    orbit,
    parse,
    pattern_from_cpp,
)
from .witness import verify_witness

__all__ = ["Check", "SUITES", "run_suite", "lemma1_suite", "theorem3_suite", "involutions_suite",
           "canonical_builder_suite"]


@dataclass
class Check:
    check: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def lemma1_suite(lmax: int = 300) -> list[Check]:
    if not 2 <= lmax <= 2000:
        raise ValueError("lmax must be in [2, 2000]")
    out = []
    for ell in range(2, lmax + 1):
        conv = p_ell(ell)
        problems = []
        if conv != p_ell_closed_form(ell):
            problems.append("convolution != closed form")
        got, want = sign_pattern_of(conv), lemma1_pattern(ell)
        if got != want:
            problems.append(f"pattern {got} != closed form {want}")
        r = isqrt(ell + 2)
        if r * r == ell + 2:
            zeros = tuple(sorted(((ell + 2 - r) // 2, (ell + 2 + r) // 2)))
            if not isinstance(got, PatternWithZeros) or got.zero_exponents != zeros:
                problems.append(f"zeros expected at exponents {zeros}")
        elif isinstance(got, PatternWithZeros):
            problems.append("unexpected zero coefficient")
        out.append(Check(f"lemma1[l={ell}]", not problems, "; ".join(problems) or str(got)))
    return out


def theorem3_suite(r: int, delta: int, tau1: int = 0, tau2: int = 0, side: str | None = None) -> list[Check]:
    if side is None:
        side = "left" if delta == r * r else "none"
    params = Theorem3Params(r, delta, tau1, tau2, side)
    out = []
    for target in enumerate_order_words(params.pattern):
        if not params.admits(target):
            continue
        name = f"theorem3[{params.pattern.render('second')},{target}]"
        try:
            w = theorem3_realize(params, target)
        except Exception as exc:  # reported as a failed check
            out.append(Check(name, False, repr(exc)))
            continue
        rep = verify_witness(w)
        ok = rep.ok and w.word == target and w.pattern == params.pattern
        out.append(Check(name, ok, "; ".join(rep.violations)))
    if len(out) != params.n_admissible():
        out.append(Check("theorem3[count]", False, f"{len(out)} targets, expected {params.n_admissible()}"))
    return out


def involutions_suite(maxlen: int = 12) -> list[Check]:
    failures: dict[str, list[str]] = {k: [] for k in (
        "roundtrip", "cpp-bijection", "involution", "commute", "canonical-order-r",
        "canonical-order-m", "T1-subset-T2", "type2-invariance", "element-rules",
        "orbit-size", "static-orbit-constant")}
    total = 0
    for d in range(1, maxlen):
        for sp in all_patterns(d):
            total += 1
            tag = sp.render("first")
            if any(parse(sp.render(rep)) != sp for rep in ("first", "second", "third")):
                failures["roundtrip"].append(tag)
            if pattern_from_cpp(cpp_of(sp)) != sp:
                failures["cpp-bijection"].append(tag)
            m, r = iota_m(sp), iota_r(sp)
            if iota_m(m) != sp or iota_r(r) != sp:
                failures["involution"].append(tag)
            if iota_m(r) != iota_r(m) or iota_mr(sp) != iota_m(r):
                failures["commute"].append(tag)
            if canonical_order(r) != canonical_order(sp).reversed():
                failures["canonical-order-r"].append(tag)
            if canonical_order(m) != canonical_order(sp).swapped():
                failures["canonical-order-m"].append(tag)
            if is_type1(sp) and not is_type2(sp):
                failures["T1-subset-T2"].append(tag)
            if not is_type2(m) == is_type2(sp) == is_type2(r):
                failures["type2-invariance"].append(tag)
            if is_type2(sp) and iota_m_by_elements(sp) != m:
                failures["element-rules"].append(tag)
            if len(orbit(sp)) not in (2, 4):
                failures["orbit-size"].append(tag)
            status = classify_static(sp).status
            if any(classify_static(o).status != status for o in orbit(sp)):
                failures["static-orbit-constant"].append(tag)
    return [Check(f"involutions[{k}]", not v, f"{len(v)} failures of {total}: {v[:5]}" if v else f"{total} patterns")
            for k, v in failures.items()]


def canonical_builder_suite(maxdeg: int = 8) -> list[Check]:
    out = []
    for d in range(1, maxdeg + 1):
        bad = []
        n = 0
        for sp in all_patterns(d):
            n += 1
            w = build_canonical(sp)
            if not verify_witness(w).ok or w.pattern != sp or w.word != canonical_order(sp):
                bad.append(sp.render("first"))
        out.append(Check(f"canonical-builder[d={d}]", not bad, f"{n} patterns" + (f", failures {bad[:5]}" if bad else "")))
    return out


SUITES = {
    "lemma1": lemma1_suite,
    "theorem3": theorem3_suite,
    "involutions": involutions_suite,
    "canonical-builder": canonical_builder_suite,
}


def run_suite(name: str, **kwargs) -> list[Check]:
    return SUITES[name](**kwargs)
