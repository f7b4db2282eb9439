"""Certified realizations of a sign pattern with a given order of moduli."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .exactpoly import (
    DistinctModuliViolation,
    PatternWithZeros,
    RationalPoly,
    frac_from_str,
    frac_to_str,
    order_word_of,
    poly_from_roots,
    sign_pattern_of,
)
from .signpattern import OrderWord, SignPattern, parse

__all__ = ["Witness", "VerificationReport", "ZeroCoefficient", "make_witness", "verify_witness"]


class ZeroCoefficient(ValueError):
    """The polynomial has a vanishing coefficient, so it defines no sign pattern."""


@dataclass(frozen=True)
class Witness:
    roots: tuple[Fraction, ...]
    poly: RationalPoly
    pattern: SignPattern
    word: OrderWord
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def degree(self) -> int:
        return len(self.roots)

    def to_json(self) -> dict[str, Any]:
        return {
            "roots": [frac_to_str(r) for r in self.roots],
            "coeffs": [frac_to_str(c) for c in self.poly.coeffs],
            "pattern": self.pattern.render("first"),
            "word": self.word.letters,
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Witness:
        """Rebuild the claimed witness as stored; call :func:`verify_witness` to check it."""
        return cls(
            roots=tuple(frac_from_str(r) for r in data["roots"]),
            poly=RationalPoly(tuple(frac_from_str(c) for c in data["coeffs"])),
            pattern=parse(data["pattern"], "first"),
            word=OrderWord(data["word"]),
            meta=dict(data.get("meta", {})),
        )


def make_witness(roots: Iterable, meta: dict | None = None) -> Witness:
    """Expand ``roots`` and read off pattern and order word, all exactly.

    Raises :class:`ZeroCoefficient` or :class:`DistinctModuliViolation` when
    the roots do not define a witness.
    """
    roots = tuple(Fraction(r) for r in roots)
    poly = poly_from_roots(roots)
    pattern = sign_pattern_of(poly)
    if isinstance(pattern, PatternWithZeros):
        raise ZeroCoefficient(f"zero coefficient at exponents {pattern.zero_exponents}")
    word = order_word_of(roots)
    return Witness(roots, poly, pattern, word, dict(meta or {}))


@dataclass
class VerificationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_witness(w: Witness) -> VerificationReport:
    """Recompute everything from the roots and compare with the claims."""
    problems: list[str] = []
    if any(r == 0 for r in w.roots):
        problems.append("zero root")
        return VerificationReport(False, problems)
    poly = poly_from_roots(w.roots)
    if poly.coeffs != w.poly.coeffs:
        idx = next(
            (j for j in range(max(len(poly.coeffs), len(w.poly.coeffs)))
             if j >= len(poly.coeffs) or j >= len(w.poly.coeffs) or poly.coeffs[j] != w.poly.coeffs[j]),
        )
        problems.append(f"coefficient mismatch at exponent {idx}")
    pattern = sign_pattern_of(poly)
    if isinstance(pattern, PatternWithZeros):
        problems.append(f"zero coefficient at exponents {pattern.zero_exponents}")
    elif pattern != w.pattern:
        if len(pattern) != len(w.pattern):
            problems.append(f"pattern length {len(w.pattern)} != degree + 1 = {len(pattern)}")
        else:
            k = next(k for k, (a, b) in enumerate(zip(pattern.signs, w.pattern.signs)) if a != b)
            problems.append(f"pattern mismatch at index {k}")
    try:
        word = order_word_of(w.roots)
    except DistinctModuliViolation as exc:
        problems.append(f"tied moduli: {exc}")
    else:
        if word != w.word:
            if len(word) != len(w.word):
                problems.append(f"word length {len(w.word)} != {len(word)}")
            else:
                k = next(k for k, (a, b) in enumerate(zip(word.letters, w.word.letters)) if a != b)
                problems.append(f"word mismatch at index {k}")
    return VerificationReport(not problems, problems)
