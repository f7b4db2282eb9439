"""Order-word enumeration, witness search, and canonicity decisions.

A search that comes back empty proves nothing: such words are reported as
"inconclusive", never as impossible.  Canonicity is only ever certified from
the table in :func:`hyposign.signpattern.classify_static`.
"""
from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .construct import build_canonical, build_noncanonical_pair, theorem3_options, theorem3_realize
from .search import SearchConfig, run_search
from .signpattern import (
    CanonicityVerdict,
    OrderWord,
    SignPattern,
    Status,
    canonical_order,
    classify_static,
    counts,
)
from .witness import Witness, make_witness, verify_witness

log = logging.getLogger(__name__)

__all__ = [
    "NotFound",
    "InvalidWord",
    "Attempt",
    "RealizabilityReport",
    "enumerate_order_words",
    "derive_seed",
    "search_realization",
    "transform_witness",
    "decide_canonicity",
    "explore",
    "verify_witness",
]

DEFAULT_BUDGET = 200


class NotFound(Exception):
    """Search budget exhausted; the word may or may not be realizable."""

    def __init__(self, sp: SignPattern, word: OrderWord, restarts_used: int):
        super().__init__(f"no witness for {sp} / {word} after {restarts_used} restarts (inconclusive)")
        self.restarts_used = restarts_used


class InvalidWord(ValueError):
    pass


def enumerate_order_words(sp: SignPattern) -> list[OrderWord]:
    """All words with ``c`` P's and ``p`` N's, lexicographic with N < P."""
    c, _ = counts(sp)
    d = sp.degree
    words = []
    for pos in combinations(range(d), c):
        letters = ["N"] * d
        for i in pos:
            letters[i] = "P"
        words.append("".join(letters))
    return [OrderWord(w) for w in sorted(words)]


def derive_seed(seed: int, sp: SignPattern, word: OrderWord) -> int:
    """Per-word seed, stable across processes and runs."""
    digest = hashlib.sha256(f"{seed}|{sp}|{word}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _check_word(sp: SignPattern, word: OrderWord) -> None:
    c, p = counts(sp)
    if len(word) != sp.degree or word.n_positive != c:
        raise InvalidWord(f"{word} is not an order word for {sp} (need {c} P and {p} N)")


def search_realization(sp: SignPattern, word: OrderWord | str, budget: int = DEFAULT_BUDGET,
                       seed: int = 0, config: SearchConfig | None = None) -> Witness:
    """Return an exactly verified witness or raise :class:`NotFound`."""
    word = OrderWord(word) if isinstance(word, str) else word
    _check_word(sp, word)
    if word == canonical_order(sp):
        return build_canonical(sp)
    cfg = config or SearchConfig()
    if cfg.restarts != budget:
        cfg = SearchConfig(**{**cfg.to_json(), "restarts": budget})
    result = run_search(sp, word, cfg, seed)
    if result.witness is None:
        raise NotFound(sp, word, result.restarts_used)
    w = result.witness
    meta = dict(w.meta, seed=seed, restarts_used=result.restarts_used)
    return Witness(w.roots, w.poly, w.pattern, w.word, meta)


def transform_witness(w: Witness, which: str) -> Witness:
    """Apply x -> 1/x ("r"), x -> -x ("m") or both ("mr") to the roots.

    Raises :class:`~hyposign.witness.ZeroCoefficient` if the image has a
    vanishing coefficient.
    """
    if which == "r":
        roots = [1 / r for r in w.roots]
    elif which == "m":
        roots = [-r for r in w.roots]
    elif which in ("mr", "rm"):
        roots = [-1 / r for r in w.roots]
    else:
        raise ValueError(f"unknown transform {which!r}")
    meta = dict(w.meta, transform=which)
    return make_witness(roots, meta)


# ---------------------------------------------------------------------------
# exploration


@dataclass
class Attempt:
    word: OrderWord
    method: str
    restarts_used: int
    outcome: str  # "found" | "inconclusive"


@dataclass
class RealizabilityReport:
    sp: SignPattern
    found: dict[OrderWord, Witness]
    attempted: list[Attempt]
    config: dict[str, Any] = field(default_factory=dict)

    @property
    def non_canonical_found(self) -> list[OrderWord]:
        canon = canonical_order(self.sp)
        return [w for w in self.found if w != canon]

    def to_json(self, include_witnesses: bool = True) -> dict[str, Any]:
        rows = []
        for a in self.attempted:
            row: dict[str, Any] = {
                "word": a.word.letters,
                "status": a.outcome,
                "method": a.method,
                "restartsUsed": a.restarts_used,
            }
            if include_witnesses and a.word in self.found:
                row["witness"] = self.found[a.word].to_json()
            rows.append(row)
        return {"sp": self.sp.render("first"), "config": self.config, "words": rows}


def _search_job(args: tuple) -> tuple[Witness | None, int]:
    sp, word, cfg, seed = args
    res = run_search(sp, word, cfg, seed)
    return res.witness, res.restarts_used


def explore(sp: SignPattern, budget: int = DEFAULT_BUDGET, seed: int = 0, jobs: int = 1,
            use_constructions: bool = True, config: SearchConfig | None = None) -> RealizabilityReport:
    """Try every order word of ``sp``; deterministic in (sp, budget, seed)."""
    cfg = config or SearchConfig()
    cfg = SearchConfig(**{**cfg.to_json(), "restarts": budget})
    words = enumerate_order_words(sp)
    canon = canonical_order(sp)
    options = theorem3_options(sp) if use_constructions else []
    results: dict[OrderWord, tuple[Witness | None, str, int]] = {}
    pending: list[OrderWord] = []
    for word in words:
        if word == canon:
            results[word] = (build_canonical(sp), "build_canonical", 0)
            continue
        opt = next((o for o in options if o.admits(word)), None)
        if opt is not None:
            results[word] = (theorem3_realize(opt, word), "theorem3", 0)
            continue
        pending.append(word)
    jobs_args = [(sp, w, cfg, derive_seed(seed, sp, w)) for w in pending]
    if jobs > 1 and len(jobs_args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(_search_job, jobs_args))
    else:
        outs = [_search_job(a) for a in jobs_args]
    for word, (a, (w, used)) in zip(pending, zip(jobs_args, outs)):
        if w is not None:
            w = Witness(w.roots, w.poly, w.pattern, w.word, dict(w.meta, seed=a[3], restarts_used=used))
        results[word] = (w, "search", used)
    found: dict[OrderWord, Witness] = {}
    attempted: list[Attempt] = []
    for word in words:
        w, method, used = results[word]
        if w is not None:
            report = verify_witness(w)
            if not report.ok or w.pattern != sp or w.word != word:
                raise AssertionError(f"unsound witness for {sp}/{word}: {report.violations}")
            found[word] = w
        attempted.append(Attempt(word, method, used, "found" if w is not None else "inconclusive"))
    config_json = {
        "budget": budget,
        "seed": seed,
        "margins": {"hinge": cfg.hinge_margin, "accept": cfg.accept_margin, "min_log_gap": cfg.min_log_gap},
        "max_iters": cfg.max_iters,
        "constructions": use_constructions,
    }
    return RealizabilityReport(sp, found, attempted, config_json)


# ---------------------------------------------------------------------------
# canonicity


def decide_canonicity(sp: SignPattern, budget: int = DEFAULT_BUDGET, seed: int = 0,
                      catalog=None) -> CanonicityVerdict:
    """Static table first; then witness pairs or a refutation search."""
    static = classify_static(sp)
    if static.status is Status.CANONICAL:
        return static
    if static.status is Status.NON_CANONICAL:
        pair = build_noncanonical_pair(sp, budget=budget, seed=seed, catalog=catalog)
        return CanonicityVerdict(Status.NON_CANONICAL, static.justification, pair)
    canon = canonical_order(sp)
    records = []
    for word in enumerate_order_words(sp):
        if word == canon:
            continue
        s = derive_seed(seed, sp, word)
        try:
            w = search_realization(sp, word, budget=budget, seed=s)
        except NotFound as exc:
            records.append({"word": word.letters, "restartsUsed": exc.restarts_used, "outcome": "inconclusive"})
            continue
        records.append({"word": word.letters, "restartsUsed": w.meta.get("restarts_used", 0), "outcome": "found"})
        if catalog is not None:
            catalog.put(w)
        return CanonicityVerdict(
            Status.NON_CANONICAL, f"search found non-canonical word {word}",
            (build_canonical(sp), w), {"budget": budget, "seed": seed, "attempts": records},
        )
    return CanonicityVerdict(Status.INCONCLUSIVE, static.justification, (),
                             {"budget": budget, "seed": seed, "attempts": records})

