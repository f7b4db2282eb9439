"""Exact rational polynomials, built from their roots.

Coefficient vectors are indexed by exponent.  Everything is exact
(:class:`fractions.Fraction` over Python ints); there is no root finding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from .signpattern import OrderWord, SignPattern

__all__ = [
    "RationalPoly",
    "PatternWithZeros",
    "DistinctModuliViolation",
    "poly_from_roots",
    "sign_pattern_of",
    "order_word_of",
    "reverse_poly",
    "negate_var",
    "derivative",
    "binomial_row",
    "p_ell",
    "p_ell_closed_form",
    "lemma1_pattern",
    "frac_to_str",
    "frac_from_str",
]

Rational = Union[int, Fraction]


class DistinctModuliViolation(ValueError):
    """Two roots share a modulus, so no order word is defined."""


@dataclass(frozen=True)
class RationalPoly:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j]

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: RationalPoly) -> RationalPoly:
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(tuple(out))

    def monic(self) -> RationalPoly:
        lead = self.coeffs[-1]
        return RationalPoly(tuple(c / lead for c in self.coeffs))

    def __str__(self) -> str:
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True)
class PatternWithZeros:
    """Signs in {+1, -1, 0} for exponents d..0, used when some coefficient vanishes."""

    entries: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.entries) - 1

    @property
    def zero_exponents(self) -> tuple[int, ...]:
        d = self.degree
        return tuple(sorted(d - k for k, s in enumerate(self.entries) if s == 0))

    def __str__(self) -> str:
        return "".join({1: "+", -1: "-", 0: "0"}[s] for s in self.entries)


def _sign(x: Rational) -> int:
    return (x > 0) - (x < 0)


def _times_linear(coeffs: list, root) -> list:
    """Multiply ``sum coeffs[j] x^j`` by ``(x - root)``."""
    out = [0] * (len(coeffs) + 1)
    for j, c in enumerate(coeffs):
        out[j + 1] += c
        out[j] -= root * c
    return out


def poly_from_roots(roots: Iterable[Rational]) -> RationalPoly:
    roots = [Fraction(r) for r in roots]
    if not roots:
        raise ValueError("cannot expand an empty root multiset")
    coeffs: list = [Fraction(1)]
    for r in roots:
        coeffs = _times_linear(coeffs, r)
    return RationalPoly(tuple(coeffs))


def sign_pattern_of(poly: RationalPoly) -> SignPattern | PatternWithZeros:
    if poly.degree < 1:
        raise ValueError("sign patterns need degree >= 1")
    lead = _sign(poly.coeffs[-1])
    entries = tuple(_sign(c) * lead for c in reversed(poly.coeffs))
    if 0 in entries:
        return PatternWithZeros(entries)
    return SignPattern(entries)


def order_word_of(roots: Sequence[Rational]) -> OrderWord:
    roots = [Fraction(r) for r in roots]
    if any(r == 0 for r in roots):
        raise ValueError("roots must be nonzero")
    ranked = sorted(roots, key=abs)
    for a, b in zip(ranked, ranked[1:]):
        if abs(a) == abs(b):
            raise DistinctModuliViolation(f"roots {a} and {b} have equal modulus")
    return OrderWord("".join("P" if r > 0 else "N" for r in ranked))


def reverse_poly(poly: RationalPoly) -> RationalPoly:
    """``x**d P(1/x) / P(0)``, made monic; its roots are the reciprocals."""
    if poly.coeffs[0] == 0:
        raise ValueError("cannot revert a polynomial with zero constant term")
    return RationalPoly(poly.coeffs[::-1]).monic()


def negate_var(poly: RationalPoly) -> RationalPoly:
    """``(-1)**d P(-x)``; its roots are the opposites."""
    d = poly.degree
    return RationalPoly(tuple(c if (d - j) % 2 == 0 else -c for j, c in enumerate(poly.coeffs)))


def derivative(poly: RationalPoly) -> RationalPoly:
    if poly.degree == 0:
        raise ValueError("derivative of a constant has no leading coefficient")
    return RationalPoly(tuple(j * c for j, c in enumerate(poly.coeffs) if j > 0))


# ---------------------------------------------------------------------------
# the family (x - 1)^2 (x + 1)^l


def binomial_row(n: int) -> list[int]:
    """``[C(n,0), ..., C(n,n)]`` by the multiplicative recurrence."""
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def _p_ell_ints(ell: int) -> list[int]:
    coeffs = [1]
    for _ in range(ell):
        coeffs = _times_linear(coeffs, -1)
    for _ in range(2):
        coeffs = _times_linear(coeffs, 1)
    return coeffs


def p_ell(ell: int) -> RationalPoly:
    """``(x - 1)**2 (x + 1)**ell`` expanded by convolution of its linear factors."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    return RationalPoly(tuple(Fraction(c) for c in _p_ell_ints(ell)))


def p_ell_closed_form(ell: int) -> RationalPoly:
    """Same polynomial via ``c_j = C(l,j) - 2 C(l,j-1) + C(l,j-2)``."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    row = binomial_row(ell)

    def b(j: int) -> int:
        return row[j] if 0 <= j <= ell else 0

    return RationalPoly(tuple(Fraction(b(j) - 2 * b(j - 1) + b(j - 2)) for j in range(ell + 3)))


def lemma1_pattern(ell: int) -> SignPattern | PatternWithZeros:
    """Closed-form sign pattern of ``(x - 1)**2 (x + 1)**ell``.

    With ``r = isqrt(ell + 2)``: if ``ell + 2 == r*r`` the coefficients of
    ``x**(r(r-1)/2)`` and ``x**(r(r+1)/2)`` vanish and the pattern is
    ``(r(r-1)/2 pluses, 0, r-1 minuses, 0, r(r-1)/2 pluses)``.  Otherwise the
    pattern is ``S{v, n, v}`` with ``n = r, v = (ell-r+3)/2`` when ``ell - r``
    is odd and ``n = r+1, v = (ell-r+2)/2`` when it is even.
    """
    if ell < 2:
        raise ValueError("ell must be >= 2")
    r = isqrt(ell + 2)
    if r * r == ell + 2:
        v = r * (r - 1) // 2
        return PatternWithZeros((1,) * v + (0,) + (-1,) * (r - 1) + (0,) + (1,) * v)
    if (ell - r) % 2 == 1:
        v, n = (ell - r + 3) // 2, r
    else:
        v, n = (ell - r + 2) // 2, r + 1
    return SignPattern.from_components((v, n, v))


# ---------------------------------------------------------------------------
# serialization


def frac_to_str(x: Rational) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def frac_from_str(text: str) -> Fraction:
    return Fraction(text.strip())
