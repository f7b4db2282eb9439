"""Sign patterns of monic polynomials and their combinatorics.

A sign pattern of length ``d + 1`` lists the signs of the coefficients of a
degree ``d`` monic polynomial, leading coefficient first.  Entry ``k`` belongs
to the monomial ``x**(d - k)``.  Three textual forms are supported::

    first   +--+-+---          one character per coefficient
    second  S{1,2,1,1,1,3}     lengths of the maximal constant-sign runs
    third   S{[1],2,[3],3}     as second, maximal runs of unit lengths as [k]

Parity for type 1 is taken over monomial exponents, not vector indices: the
pattern ``(+,-,-,-,+,-,+)`` is of type 1 because the exponents 5, 3, 1 all
carry ``-``.  For even ``d`` the two conventions agree; for odd ``d`` they
swap the roles of "odd" and "even", which is harmless for the predicate but
matters for documentation and for :func:`iota_m`.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from itertools import groupby, product
from typing import Iterable, Iterator, Sequence

__all__ = [
    "SignPattern",
    "ChangePreservationPattern",
    "OrderWord",
    "Status",
    "CanonicityVerdict",
    "parse",
    "cpp_of",
    "pattern_from_cpp",
    "canonical_order",
    "iota_m",
    "iota_r",
    "iota_mr",
    "iota_m_by_elements",
    "orbit",
    "counts",
    "is_type1",
    "is_type2",
    "classify_static",
    "all_patterns",
]


class PatternParseError(ValueError):
    pass


@dataclass(frozen=True)
class SignPattern:
    """Strict signs (+1/-1) of a monic polynomial's coefficients, leading first."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        signs = tuple(int(s) for s in self.signs)
        object.__setattr__(self, "signs", signs)
        if len(signs) < 2:
            raise ValueError("a sign pattern needs length >= 2 (degree >= 1)")
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"signs must be +1 or -1, got {signs}")
        if signs[0] != 1:
            raise ValueError("a sign pattern must start with +")

    @classmethod
    def from_components(cls, components: Sequence[int]) -> SignPattern:
        if not components or any(int(m) < 1 for m in components):
            raise ValueError(f"components must be positive integers, got {components}")
        signs: list[int] = []
        sign = 1
        for m in components:
            signs.extend([sign] * int(m))
            sign = -sign
        return cls(tuple(signs))

    @classmethod
    def normalized(cls, signs: Iterable[int]) -> SignPattern:
        """Build from arbitrary strict signs, flipping globally if the first is -."""
        signs = tuple(signs)
        if signs and signs[0] < 0:
            signs = tuple(-s for s in signs)
        return cls(signs)

    @property
    def degree(self) -> int:
        return len(self.signs) - 1

    def exponent(self, k: int) -> int:
        return self.degree - k

    @property
    def components(self) -> tuple[int, ...]:
        return tuple(len(list(g)) for _, g in groupby(self.signs))

    @property
    def elements(self) -> tuple[int | tuple[int], ...]:
        """Third representation: ints for components > 1, ``(k,)`` for runs of k units."""
        out: list[int | tuple[int]] = []
        for is_unit, grp in groupby(self.components, key=lambda m: m == 1):
            vals = list(grp)
            if is_unit:
                out.append((len(vals),))
            else:
                out.extend(vals)
        return tuple(out)

    def render(self, representation: str = "first") -> str:
        if representation == "first":
            return "".join("+" if s > 0 else "-" for s in self.signs)
        if representation == "second":
            return "S{" + ",".join(str(m) for m in self.components) + "}"
        if representation == "third":
            parts = [f"[{e[0]}]" if isinstance(e, tuple) else str(e) for e in self.elements]
            return "S{" + ",".join(parts) + "}"
        raise ValueError(f"unknown representation {representation!r}")

    def __str__(self) -> str:
        return self.render("first")

    def __len__(self) -> int:
        return len(self.signs)


@dataclass(frozen=True)
class ChangePreservationPattern:
    word: str

    def __post_init__(self) -> None:
        if not self.word or set(self.word) - {"p", "c"}:
            raise ValueError(f"CPP must be a non-empty word over {{p, c}}, got {self.word!r}")

    def __str__(self) -> str:
        return self.word

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class OrderWord:
    """Signs of the roots listed by increasing modulus: ``P`` positive, ``N`` negative."""

    letters: str

    def __post_init__(self) -> None:
        letters = self.letters
        if not isinstance(letters, str):
            letters = "".join(letters)
        letters = letters.replace(",", "").replace("(", "").replace(")", "").replace(" ", "")
        object.__setattr__(self, "letters", letters)
        if not letters or set(letters) - {"P", "N"}:
            raise ValueError(f"order word must be a non-empty word over {{P, N}}, got {self.letters!r}")

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def n_positive(self) -> int:
        return self.letters.count("P")

    @property
    def n_negative(self) -> int:
        return self.letters.count("N")

    def reversed(self) -> OrderWord:
        return OrderWord(self.letters[::-1])

    def swapped(self) -> OrderWord:
        return OrderWord(self.letters.translate(str.maketrans("PN", "NP")))

    def _two_positions(self) -> tuple[int, int]:
        pos = [i for i, ch in enumerate(self.letters) if ch == "P"]
        if len(pos) != 2:
            raise ValueError("m*, n*, q* are defined only for words with exactly two P's")
        return pos[0], pos[1]

    @property
    def mstar(self) -> int:
        """Negative roots with modulus above both positive roots."""
        _, hi = self._two_positions()
        return len(self.letters) - 1 - hi

    @property
    def nstar(self) -> int:
        lo, hi = self._two_positions()
        return hi - lo - 1

    @property
    def qstar(self) -> int:
        lo, _ = self._two_positions()
        return lo


class Status(str, enum.Enum):
    CANONICAL = "CertifiedCanonical"
    NON_CANONICAL = "CertifiedNonCanonical"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CanonicityVerdict:
    """Outcome of a canonicity decision.

    ``witnesses`` is empty for verdicts from :func:`classify_static`; the
    non-canonical pair is materialized by ``realize.decide_canonicity``.
    """

    status: Status
    justification: str
    witnesses: tuple = ()
    budget: dict = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------------------
# parsing

_FIRST_CHARS = {"+": 1, "-": -1, "−": -1}
_RUN_RE = re.compile(r"^\s*(?:Σ|S)?\s*_?\s*\{(.*)\}\s*$")


def _parse_first(text: str) -> SignPattern:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    body = body.replace(",", "").replace(" ", "")
    if not body:
        raise PatternParseError("empty sign pattern")
    try:
        signs = tuple(_FIRST_CHARS[ch] for ch in body)
    except KeyError as exc:
        raise PatternParseError(f"unexpected character {exc.args[0]!r} in {text!r}") from None
    if signs[0] != 1:
        raise PatternParseError(f"sign pattern must start with +: {text!r}")
    if len(signs) < 2:
        raise PatternParseError(f"sign pattern too short (need length >= 2): {text!r}")
    return SignPattern(signs)


def _parse_runs(text: str, allow_brackets: bool) -> SignPattern:
    m = _RUN_RE.match(text)
    if not m:
        raise PatternParseError(f"expected S{{m1,m2,...}}, got {text!r}")
    components: list[int] = []
    for raw in m.group(1).split(","):
        tok = raw.strip()
        unit_run = tok.startswith("[") and tok.endswith("]")
        if unit_run:
            if not allow_brackets:
                raise PatternParseError(f"bracketed element {tok!r} in second representation")
            tok = tok[1:-1].strip()
        if not tok.isdigit():
            raise PatternParseError(f"malformed element {raw!r} in {text!r}")
        k = int(tok)
        if k < 1:
            raise PatternParseError(f"zero-length element in {text!r}")
        components.extend([1] * k if unit_run else [k])
    if sum(components) < 2:
        raise PatternParseError(f"sign pattern too short (need length >= 2): {text!r}")
    return SignPattern.from_components(components)


def parse(text: str, representation: str | None = None) -> SignPattern:
    """Parse a sign pattern; ``representation=None`` detects it from the text."""
    text = text.strip()
    if representation is None:
        if not text:
            raise PatternParseError("empty sign pattern")
        head = text[0]
        if head in "+-−(":
            representation = "first"
        elif head in "SΣ":
            representation = "third" if "[" in text else "second"
        else:
            raise PatternParseError(f"cannot detect representation of {text!r}")
    if representation == "first":
        return _parse_first(text)
    if representation == "second":
        return _parse_runs(text, allow_brackets=False)
    if representation == "third":
        return _parse_runs(text, allow_brackets=True)
    raise ValueError(f"unknown representation {representation!r}")


# ---------------------------------------------------------------------------
# CPP, canonical order, involutions


def cpp_of(sp: SignPattern) -> ChangePreservationPattern:
    s = sp.signs
    return ChangePreservationPattern("".join("p" if a == b else "c" for a, b in zip(s, s[1:])))


def pattern_from_cpp(cpp: ChangePreservationPattern | str) -> SignPattern:
    word = cpp.word if isinstance(cpp, ChangePreservationPattern) else cpp
    signs = [1]
    for ch in ChangePreservationPattern(word).word:
        signs.append(signs[-1] if ch == "p" else -signs[-1])
    return SignPattern(tuple(signs))


def canonical_order(sp: SignPattern) -> OrderWord:
    return OrderWord(cpp_of(sp).word[::-1].translate(str.maketrans("pc", "NP")))


def iota_r(sp: SignPattern) -> SignPattern:
    """Pattern of the reverted polynomial (reciprocal roots)."""
    return SignPattern.normalized(sp.signs[::-1])


def iota_m(sp: SignPattern) -> SignPattern:
    """Pattern of ``(-1)**d P(-x)``: flip the odd-exponent signs, renormalize."""
    d = sp.degree
    return SignPattern.normalized(s if (d - k) % 2 == 0 else -s for k, s in enumerate(sp.signs))


def iota_mr(sp: SignPattern) -> SignPattern:
    return iota_m(iota_r(sp))


def iota_m_by_elements(sp: SignPattern) -> SignPattern:
    """``iota_m`` computed on the third representation; valid for type 2 patterns.

    An element A > 1 becomes the unit run [A-2] in the interior and [A-1] at an
    end; a unit run [B] becomes B+2 in the interior and B+1 at an end.  A
    pattern consisting of a single element is at both ends, so A -> [A] and
    [B] -> B.
    """
    if not is_type2(sp):
        raise ValueError("element rules apply to type 2 patterns only")
    elems = sp.elements
    last = len(elems) - 1
    components: list[int] = []
    for i, e in enumerate(elems):
        ends = (i == 0) + (i == last)
        if isinstance(e, tuple):
            components.append(e[0] + 2 - ends)
        else:
            components.extend([1] * (e - 2 + ends))
    return SignPattern.from_components(components)


def orbit(sp: SignPattern) -> frozenset[SignPattern]:
    return frozenset({sp, iota_m(sp), iota_r(sp), iota_mr(sp)})


def counts(sp: SignPattern) -> tuple[int, int]:
    """(sign changes, sign preservations) = (#positive, #negative) roots of a HP."""
    c = len(sp.components) - 1
    return c, sp.degree - c


# ---------------------------------------------------------------------------
# types and static classification


def is_type1(sp: SignPattern) -> bool:
    d = sp.degree
    odd = {s for k, s in enumerate(sp.signs) if (d - k) % 2 == 1}
    even = {s for k, s in enumerate(sp.signs) if (d - k) % 2 == 0}
    return len(odd) <= 1 or len(even) <= 1


def is_type2(sp: SignPattern) -> bool:
    return _type2_obstruction(sp) is None


def _type2_obstruction(sp: SignPattern) -> tuple[str, int] | None:
    """First violation of type 2 as (kind, component index), or None."""
    comps = sp.components
    for i in range(len(comps) - 1):
        if comps[i] > 1 and comps[i + 1] > 1:
            return "consecutive", i
    for i in range(1, len(comps) - 1):
        if comps[i] == 2:
            return "interior-2", i
    return None


def _canonical_family(sp: SignPattern) -> str | None:
    if is_type1(sp):
        return "type1"
    comps = sp.components
    s, d = len(comps), sp.degree
    if s == 2 and comps[1] == 1:
        return "S{m1,1}"
    if s == 2 and comps[0] == 1:
        return "S{1,m2}"
    if s == 3 and comps[1] == 1:
        return "S{m1,1,m3}"
    if s == 3 and comps[0] == 1 and comps[2] == 1 and comps[1] >= 3:
        return "S{1,m2,1},m2>=3"
    if d >= 5 and comps == (1, d - 2, 1, 1):
        return "S{[1],d-2,[2]},d>=5"
    return None


_ORBIT_MAPS = (("", lambda x: x), ("iota_m", iota_m), ("iota_r", iota_r), ("iota_mr", iota_mr))


def classify_static(sp: SignPattern) -> CanonicityVerdict:
    """Table-driven canonicity status; never consults a search."""
    for name, fn in _ORBIT_MAPS:
        rule = _canonical_family(fn(sp))
        if rule is not None:
            via = f" via {name}" if name else ""
            return CanonicityVerdict(Status.CANONICAL, rule + via)
    obstruction = _type2_obstruction(sp)
    if obstruction is not None:
        kind, i = obstruction
        return CanonicityVerdict(Status.NON_CANONICAL, f"not-type2:{kind}@component{i + 1}")
    return CanonicityVerdict(Status.INCONCLUSIVE, "type2, no proved family matches")


def all_patterns(degree: int) -> Iterator[SignPattern]:
    """All 2**degree sign patterns of the given degree."""
    for tail in product((1, -1), repeat=degree):
        yield SignPattern((1,) + tail)
