"""Constructive realizations: concatenation, canonical builds, deformations.

Every construction returns a :class:`~hyposign.witness.Witness` whose roots
are exact rationals; sign conditions are checked exactly at every step and
the small parameters are found by halving until the check passes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactpoly import PatternWithZeros, poly_from_roots, sign_pattern_of
from .signpattern import (
    OrderWord,
    SignPattern,
    _type2_obstruction,
    canonical_order,
    cpp_of,
    pattern_from_cpp,
)
from .witness import Witness, ZeroCoefficient, make_witness

log = logging.getLogger(__name__)

__all__ = [
    "EpsilonChain",
    "Theorem3Params",
    "EpsilonSelectionError",
    "NotApplicable",
    "SeedUnavailable",
    "HypothesisViolation",
    "DeformationBudgetExhausted",
    "concat_back",
    "concat_front",
    "build_canonical",
    "example1_cubics",
    "build_noncanonical_pair",
    "theorem3_options",
    "theorem3_realize",
]

MAX_HALVINGS = 64


class EpsilonSelectionError(RuntimeError):
    """The halving loop hit its cap; sufficiently small values always work, so this is a bug."""


class NotApplicable(ValueError):
    pass


class SeedUnavailable(RuntimeError):
    pass


class HypothesisViolation(ValueError):
    pass


class DeformationBudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class EpsilonChain:
    """Accepted small parameters of successive concatenations, strictly decreasing."""

    values: tuple[Fraction, ...]
    shrink: Fraction = Fraction(1, 2)
    initial_scale: Fraction = Fraction(1, 4)

    def __post_init__(self) -> None:
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v <= 0 for v in vals):
            raise ValueError("chain values must be positive")
        if any(b >= a for a, b in zip(vals, vals[1:])):
            raise ValueError("chain values must be strictly decreasing")

    def to_json(self) -> list[str]:
        return [f"{v.numerator}/{v.denominator}" for v in self.values]


def _step_meta(w: Witness, op: str, kind: str, eps: Fraction) -> dict:
    steps = list(w.meta.get("steps", []))
    steps.append({"op": op, "kind": kind, "eps": f"{eps.numerator}/{eps.denominator}"})
    meta = dict(w.meta)
    meta["steps"] = steps
    return meta


def concat_back(w: Witness, kind: str, eps: Fraction | None = None,
                shrink: Fraction = Fraction(1, 2)) -> Witness:
    """Append a root of modulus below all others: ``-eps`` for kind p, ``+eps`` for c.

    The first ``d + 1`` signs must survive; ``eps`` starts at
    ``min(1, min modulus) / 4`` unless given and is halved until they do.
    """
    if kind not in ("p", "c"):
        raise ValueError("kind must be 'p' or 'c'")
    min_mod = min(abs(r) for r in w.roots)
    eps = Fraction(min(Fraction(1), min_mod)) / 4 if eps is None else Fraction(eps)
    last = w.pattern.signs[-1]
    target = SignPattern(w.pattern.signs + (last if kind == "p" else -last,))
    new_sign = -1 if kind == "p" else 1
    for _ in range(MAX_HALVINGS + 1):
        if 0 < eps < min_mod:
            try:
                cand = make_witness(w.roots + (new_sign * eps,), _step_meta(w, "back", kind, eps))
            except ZeroCoefficient:
                cand = None
            if cand is not None and cand.pattern == target:
                return cand
        eps *= shrink
    raise EpsilonSelectionError(f"concat_back({kind}) failed on {w.pattern}")


def concat_front(w: Witness, kind: str, eps: Fraction | None = None,
                 shrink: Fraction = Fraction(1, 2)) -> Witness:
    """Prepend to the CPP by adding the root ``-1/eps`` (kind p) or ``+1/eps`` (kind c).

    For kind c the product ``(1 - eps x) P`` has a negative leading
    coefficient, so after making it monic every old sign is flipped; at the
    CPP level the rule is simply "prepend c".
    """
    if kind not in ("p", "c"):
        raise ValueError("kind must be 'p' or 'c'")
    max_mod = max(abs(r) for r in w.roots)
    eps = min(Fraction(1), 1 / max_mod) / 4 if eps is None else Fraction(eps)
    target = pattern_from_cpp(kind + cpp_of(w.pattern).word)
    new_sign = -1 if kind == "p" else 1
    for _ in range(MAX_HALVINGS + 1):
        if eps > 0 and 1 / eps > max_mod:
            try:
                cand = make_witness((new_sign / eps,) + w.roots, _step_meta(w, "front", kind, eps))
            except ZeroCoefficient:
                cand = None
            if cand is not None and cand.pattern == target:
                return cand
        eps *= shrink
    raise EpsilonSelectionError(f"concat_front({kind}) failed on {w.pattern}")


def build_canonical(sp: SignPattern) -> Witness:
    """Realize ``sp`` with the canonical order by back-concatenation from ``x -+ 1``."""
    cpp = cpp_of(sp).word
    first = Fraction(-1) if cpp[0] == "p" else Fraction(1)
    w = make_witness((first,), {"method": "build_canonical", "steps": []})
    for kind in cpp[1:]:
        w = concat_back(w, kind)
    eps = [abs(r) for r in w.roots[1:]]
    meta = dict(w.meta)
    meta["eps_chain"] = EpsilonChain(tuple(eps)).to_json()
    w = Witness(w.roots, w.poly, w.pattern, w.word, meta)
    assert w.pattern == sp and w.word == canonical_order(sp)
    return w


# ---------------------------------------------------------------------------
# non-canonical pairs

SIGMA_121 = SignPattern.from_components((1, 2, 1))


def example1_cubics() -> tuple[Witness, Witness, Witness]:
    """The three known realizations of S{1,2,1}, with pairwise different orders."""
    roots = (
        (-1, Fraction(3, 2), Fraction(8, 5)),
        (-1, Fraction(3, 2), Fraction(3, 5)),
        (-1, Fraction(1, 2), Fraction(3, 5)),
    )
    return tuple(make_witness(r, {"method": "example1"}) for r in roots)  # type: ignore[return-value]


_SEED_CACHE: dict[tuple[int, int], tuple[Witness, Witness]] = {}


def _sigma_ab_seeds(a: int, b: int, budget: int, seed: int, catalog=None) -> tuple[Witness, Witness]:
    """Canonical and one non-canonical realization of S{a,b}."""
    if (a, b) in _SEED_CACHE:
        return _SEED_CACHE[(a, b)]
    from .realize import NotFound, enumerate_order_words, search_realization

    sp = SignPattern.from_components((a, b))
    canon = canonical_order(sp)
    other: Witness | None = None
    if catalog is not None:
        for w in catalog.scan(sp):
            if w.word != canon:
                other = w
                break
    if other is None:
        # try words with the positive root displaced least first
        home = canon.letters.index("P")
        words = [w for w in enumerate_order_words(sp) if w != canon]
        words.sort(key=lambda w: (abs(w.letters.index("P") - home), w.letters))
        for word in words:
            try:
                other = search_realization(sp, word, budget=budget, seed=seed)
                break
            except NotFound:
                continue
    if other is None:
        raise SeedUnavailable(f"no non-canonical realization of {sp.render('second')} within budget")
    if catalog is not None:
        catalog.put(other)
    pair = (build_canonical(sp), other)
    _SEED_CACHE[(a, b)] = pair
    return pair


def _extend(seed: Witness, prefix: str, suffix: str) -> Witness:
    w = seed
    for kind in reversed(prefix):
        w = concat_front(w, kind)
    for kind in suffix:
        w = concat_back(w, kind)
    return w


def build_noncanonical_pair(sp: SignPattern, budget: int = 200, seed: int = 0,
                            catalog=None) -> tuple[Witness, Witness]:
    """Two realizations of a non-type-2 pattern with different orders of moduli.

    A seed pair for the offending sub-pattern (S{A,B} or S{1,2,1}) is grown
    to ``sp`` by front and back concatenation; new roots always land above or
    below all existing moduli, so the seeds' relative orders survive.
    """
    obstruction = _type2_obstruction(sp)
    if obstruction is None:
        raise NotApplicable(f"{sp.render('second')} is of type 2")
    kind, i = obstruction
    comps = sp.components
    if kind == "consecutive":
        start = sum(comps[:i])
        sub = SignPattern.from_components((comps[i], comps[i + 1]))
        seeds = _sigma_ab_seeds(comps[i], comps[i + 1], budget, seed, catalog)
    else:
        start = sum(comps[: i - 1])
        sub = SIGMA_121
        cubics = example1_cubics()
        seeds = (cubics[0], cubics[1])
    cpp = cpp_of(sp).word
    end = start + len(sub) - 1
    assert cpp[start:end] == cpp_of(sub).word
    p, q = (_extend(s, cpp[:start], cpp[end:]) for s in seeds)
    meta = {"method": "noncanonical_pair", "seed_pattern": sub.render("second")}
    p = Witness(p.roots, p.poly, p.pattern, p.word, {**p.meta, **meta})
    q = Witness(q.roots, q.poly, q.pattern, q.word, {**q.meta, **meta})
    assert p.pattern == q.pattern == sp and p.word != q.word
    return p, q


# ---------------------------------------------------------------------------
# two sign changes: deformations of (x-1)^2 (x+1)^l


@dataclass(frozen=True)
class Theorem3Params:
    """Parameters selecting a pattern S{m,n,q} with two sign changes.

    ``r**2 < delta < (r+1)**2`` selects part 1 (``delta - r`` odd, n = r) or
    part 2 (``delta - r`` even, n = r + 1); ``delta == r**2`` selects part 3,
    which needs ``side`` "left" (extra root just beyond -1) or "right" (just
    inside -1).
    """

    r: int
    delta: int
    tau1: int = 0
    tau2: int = 0
    side: str = "none"

    def __post_init__(self) -> None:
        r, delta = self.r, self.delta
        if r < 2:
            raise HypothesisViolation("r must be >= 2")
        if not r * r <= delta < (r + 1) ** 2:
            raise HypothesisViolation(f"need r^2 <= delta < (r+1)^2, got r={r}, delta={delta}")
        if self.tau1 < 0 or self.tau2 < 0:
            raise HypothesisViolation("tau1, tau2 must be >= 0")
        if delta == r * r and self.side not in ("left", "right"):
            raise HypothesisViolation("delta = r^2 needs side 'left' or 'right'")
        if delta > r * r and self.side != "none":
            raise HypothesisViolation("side applies only when delta = r^2")

    @property
    def part(self) -> int:
        if self.delta == self.r ** 2:
            return 3
        return 1 if (self.delta - self.r) % 2 == 1 else 2

    @property
    def d(self) -> int:
        return self.delta + self.tau1 + self.tau2

    @property
    def mnq(self) -> tuple[int, int, int]:
        r, delta, t1, t2 = self.r, self.delta, self.tau1, self.tau2
        if self.part == 1:
            v = (delta - r + 1) // 2
            return t1 + v, r, t2 + v
        if self.part == 2:
            v = (delta - r) // 2
            return t1 + v, r + 1, t2 + v
        v = r * (r - 1) // 2
        if self.side == "left":
            return t1 + v + 1, r, t2 + v
        return t1 + v, r, t2 + v + 1

    @property
    def pattern(self) -> SignPattern:
        return SignPattern.from_components(self.mnq)

    @property
    def core_pattern(self) -> SignPattern:
        m, n, q = self.mnq
        return SignPattern.from_components((m - self.tau1, n, q - self.tau2))

    def admits(self, target: OrderWord) -> bool:
        if len(target) != self.d or target.n_positive != 2:
            return False
        return (target.mstar >= self.tau1 + (self.side == "left")
                and target.qstar >= self.tau2 + (self.side == "right"))

    def n_admissible(self) -> int:
        """Number of admissible targets (all of them when tau1 = tau2 = 0 and no side)."""
        low_m = self.tau1 + (self.side == "left")
        low_q = self.tau2 + (self.side == "right")
        free = self.d - 2 - low_m - low_q
        return comb(free + 2, 2) if free >= 0 else 0

    def to_json(self) -> dict:
        return {"r": self.r, "delta": self.delta, "tau1": self.tau1, "tau2": self.tau2, "side": self.side}


def theorem3_options(sp: SignPattern) -> list[Theorem3Params]:
    """All parameter records whose pattern is ``sp``."""
    comps = sp.components
    if len(comps) != 3:
        return []
    m, n, q = comps
    out: list[Theorem3Params] = []
    for r, n_shift in ((n, 0), (n - 1, 1)):
        if r < 2:
            continue
        for delta in range(r * r + 1, (r + 1) ** 2):
            if (delta - r) % 2 == n_shift:
                continue
            v = (delta - r + 1 - n_shift) // 2
            if m >= v and q >= v:
                out.append(Theorem3Params(r, delta, m - v, q - v))
    r = n
    if r >= 2:
        v = r * (r - 1) // 2
        if m >= v + 1 and q >= v:
            out.append(Theorem3Params(r, r * r, m - v - 1, q - v, "left"))
        if m >= v and q >= v + 1:
            out.append(Theorem3Params(r, r * r, m - v, q - v - 1, "right"))
    return out


def _cluster_roots(letters: str, h: Fraction) -> list[Fraction]:
    return [(1 + k * h) * (1 if ch == "P" else -1) for k, ch in enumerate(letters)]


def _select_side_eps(params: Theorem3Params) -> Fraction:
    r = params.r
    sign = 1 if params.side == "left" else -1
    base = [Fraction(1), Fraction(1)] + [Fraction(-1)] * (r * r - 3)
    eps = Fraction(1, 4)
    for _ in range(MAX_HALVINGS + 1):
        got = sign_pattern_of(poly_from_roots(base + [-(1 + sign * eps)]))
        if not isinstance(got, PatternWithZeros) and got == params.core_pattern:
            return eps
        eps /= 2
    raise EpsilonSelectionError(f"no eps realizes {params.core_pattern.render('second')}")


def theorem3_realize(params: Theorem3Params, target: OrderWord | str,
                     max_halvings: int = 200) -> Witness:
    """Realize ``params.pattern`` with the prescribed order ``target``.

    The core polynomial is ``(x-1)^2 (x+1)^(delta-2)`` (parts 1, 2) or
    ``(x+1+-eps)(x-1)^2(x+1)^(r^2-3)`` (part 3).  Its clustered roots are
    spread to moduli ``1 + k*h`` carrying the signs of the target's core
    letters, and ``h`` is halved until the exact pattern is right.  Then
    ``tau1`` front and ``tau2`` back p-concatenations add the outer roots.
    """
    if isinstance(target, str):
        target = OrderWord(target)
    if not params.admits(target):
        raise HypothesisViolation(f"target {target} is not admissible for {params}")
    d, t1, t2 = params.d, params.tau1, params.tau2
    core = target.letters[t2: d - t1]
    special: list[Fraction] = []
    eps = None
    h_cap = None
    if params.part == 3:
        eps = _select_side_eps(params)
        if params.side == "left":
            special, cluster = [-(1 + eps)], core[:-1]
            h_cap = eps / (2 * max(1, len(cluster) - 1))
        else:
            special, cluster = [-(1 - eps)], core[1:]
    else:
        cluster = core
    h = Fraction(1, 4 * len(cluster))
    if h_cap is not None:
        h = min(h, h_cap)
    want = params.core_pattern
    for _ in range(max_halvings):
        try:
            w = make_witness(special + _cluster_roots(cluster, h))
        except ZeroCoefficient:
            w = None
        if w is not None and w.pattern == want:
            break
        h /= 2
    else:
        raise DeformationBudgetExhausted(f"h underflow for {params} / {target}")
    assert w.word.letters == core, (w.word, core)
    meta = {"method": "theorem3", "params": params.to_json(), "h": f"{h.numerator}/{h.denominator}", "steps": []}
    if eps is not None:
        meta["eps"] = f"{eps.numerator}/{eps.denominator}"
    w = Witness(w.roots, w.poly, w.pattern, w.word, meta)
    for _ in range(t1):
        w = concat_front(w, "p")
    for _ in range(t2):
        w = concat_back(w, "p")
    meta = dict(w.meta)
    for op in ("front", "back"):
        chain = [Fraction(s["eps"]) for s in meta["steps"] if s["op"] == op]
        meta[f"{op}_chain"] = EpsilonChain(tuple(chain)).to_json()
    w = Witness(w.roots, w.poly, w.pattern, w.word, meta)
    assert w.pattern == params.pattern and w.word == target
    return w
