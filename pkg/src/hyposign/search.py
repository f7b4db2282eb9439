"""Randomized numeric search for roots realizing a (pattern, order word) pair.

The moduli are ``rho_0 = 1`` and ``log rho_{k+1} = log rho_k + g + exp(theta_k)``
with a fixed minimum log-gap ``g``, so they are distinct by construction.  The
signs of the roots come from the word.  The objective is a sum of squared
hinges on the coefficient signs, each coefficient normalized by the matching
elementary symmetric function of the moduli (an upper bound on its size).

Minimization is a batched coordinate search with per-coordinate geometric
step control, vectorized over restarts.  A numeric hit is only a candidate:
the moduli are rationalized with bounded denominators and the whole
realization is checked in exact arithmetic before anything is returned.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .signpattern import OrderWord, SignPattern
from .witness import Witness, ZeroCoefficient, make_witness
from .exactpoly import DistinctModuliViolation

__all__ = ["SearchConfig", "SearchResult", "run_search"]

THETA_MIN, THETA_MAX = -24.0, 2.0
_STEP_FACTORS = np.array([1.0, -1.0, 2.0, -2.0, 0.25, -0.25])


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 200
    max_iters: int = 400
    batch_size: int = 50
    min_log_gap: float = 2.0 ** -20
    hinge_margin: float = 2.0 ** -20
    accept_margin: float = 2.0 ** -30
    denom_start_bits: int = 16
    denom_max_bits: int = 64
    stall_step: float = 1e-7

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class SearchResult:
    witness: Witness | None
    restarts_used: int
    iterations: int


def _moduli(theta: np.ndarray, min_gap: float) -> np.ndarray:
    gaps = min_gap + np.exp(theta)
    zeros = np.zeros(theta.shape[:-1] + (1,))
    return np.exp(np.concatenate([zeros, np.cumsum(gaps, axis=-1)], axis=-1))


def _esf(values: np.ndarray) -> np.ndarray:
    """Elementary symmetric functions e_0..e_n along the last axis."""
    n = values.shape[-1]
    e = np.zeros(values.shape[:-1] + (n + 1,))
    e[..., 0] = 1.0
    for i in range(n):
        e[..., 1:] = e[..., 1:] + values[..., i: i + 1] * e[..., :-1]
    return e


def _scores(theta: np.ndarray, root_signs: np.ndarray, min_gap: float) -> np.ndarray:
    """Normalized descending coefficients ``a_k / e_k(moduli)`` for k = 1..d.

    For ``prod (x - root_i)`` the coefficient of ``x**(d-k)`` is
    ``(-1)**k e_k(roots)``.
    """
    rho = _moduli(theta, min_gap)
    e_roots = _esf(rho * root_signs)
    e_mod = _esf(rho)
    k = np.arange(e_roots.shape[-1])
    a = np.where(k % 2 == 0, 1.0, -1.0) * e_roots
    return (a / e_mod)[..., 1:]


class _Objective:
    def __init__(self, sp: SignPattern, word: OrderWord, cfg: SearchConfig):
        self.root_signs = np.array([1.0 if ch == "P" else -1.0 for ch in word.letters])
        self.target = np.array(sp.signs[1:], dtype=float)
        self.cfg = cfg

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        s = _scores(theta, self.root_signs, self.cfg.min_log_gap) * self.target
        return np.square(np.maximum(self.cfg.hinge_margin - s, 0.0)).sum(axis=-1)

    def accepted(self, theta: np.ndarray) -> bool:
        s = _scores(theta, self.root_signs, self.cfg.min_log_gap) * self.target
        return bool(np.all(s >= self.cfg.accept_margin))


def _certify(theta: np.ndarray, sp: SignPattern, word: OrderWord, cfg: SearchConfig) -> Witness | None:
    rho = _moduli(theta, cfg.min_log_gap)
    signs = [1 if ch == "P" else -1 for ch in word.letters]
    for bits in range(cfg.denom_start_bits, cfg.denom_max_bits + 1):
        bound = 1 << bits
        moduli = [Fraction(1)] + [Fraction(float(x)).limit_denominator(bound) for x in rho[1:]]
        if any(b <= a for a, b in zip(moduli, moduli[1:])):
            continue
        try:
            w = make_witness([s * m for s, m in zip(signs, moduli)])
        except (ZeroCoefficient, DistinctModuliViolation):
            continue
        if w.pattern == sp and w.word == word:
            return Witness(w.roots, w.poly, w.pattern, w.word,
                           {"method": "search", "denominator_bits": bits})
    return None


def _initial_theta(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    # mix of tightly clustered and widely spread configurations
    scale = np.exp(rng.uniform(np.log(1e-3), np.log(3.0), size=(n, 1)))
    gaps = scale * np.exp(rng.normal(0.0, 0.7, size=(n, dim)))
    return np.clip(np.log(gaps), THETA_MIN, THETA_MAX)


def run_search(sp: SignPattern, word: OrderWord, cfg: SearchConfig, seed: int) -> SearchResult:
    """Search for an exact witness; ``witness is None`` means budget exhausted."""
    d = sp.degree
    if len(word) != d:
        raise ValueError("word length must equal the degree")
    obj = _Objective(sp, word, cfg)
    rng = np.random.default_rng(seed)
    dim = d - 1
    started = 0
    total_iters = 0
    if dim == 0:
        theta = np.zeros((1, 0))
        w = _certify(theta[0], sp, word, cfg) if cfg.restarts > 0 else None
        return SearchResult(w, min(cfg.restarts, 1), 0)
    while started < cfg.restarts:
        n = min(cfg.batch_size, cfg.restarts - started)
        started += n
        theta = _initial_theta(rng, n, dim)
        step = np.full((n, dim), 0.5)
        f = obj(theta)
        active = np.ones(n, dtype=bool)
        for it in range(cfg.max_iters):
            total_iters += 1
            for i in range(dim):
                idx = np.flatnonzero(active)
                if idx.size == 0:
                    break
                offsets = step[idx, i: i + 1] * _STEP_FACTORS  # (m, C)
                cand = np.repeat(theta[idx, None, :], offsets.shape[1], axis=1)
                cand[:, :, i] = np.clip(cand[:, :, i] + offsets, THETA_MIN, THETA_MAX)
                fc = obj(cand)
                best = np.argmin(fc, axis=1)
                fbest = fc[np.arange(idx.size), best]
                improved = fbest < f[idx]
                win = idx[improved]
                theta[win] = cand[improved, best[improved]]
                f[win] = fbest[improved]
                step[win, i] = np.minimum(np.abs(offsets[improved, best[improved]]) * 2.0, 8.0)
                lose = idx[~improved]
                step[lose, i] *= 0.5
            hits = np.flatnonzero(active & (f == 0.0))
            for b in hits:
                if obj.accepted(theta[b]):
                    w = _certify(theta[b], sp, word, cfg)
                    if w is not None:
                        meta = dict(w.meta, restart=int(started - n + b), iteration=it)
                        return SearchResult(Witness(w.roots, w.poly, w.pattern, w.word, meta),
                                            started, total_iters)
                active[b] = False
            active &= step.max(axis=1) > cfg.stall_step
            if not active.any():
                break
    return SearchResult(None, started, total_iters)
