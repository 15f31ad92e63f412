"""Rényi entropies and divergences, in bits.

Every measure accepts a :class:`Distribution` or any sequence of
probabilities (validated on the way in).  Sums run over the support, with
the conventions ``0 * log 0 = 0`` and ``0 ** lam = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Sequence, Union

TOL = 1e-9
LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class Distribution:
    probs: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if not probs:
            raise ValueError("distribution must have at least one entry")
        if any(not math.isfinite(p) or p < 0 for p in probs):
            raise ValueError(f"distribution entries must be finite and >= 0: {probs}")
        if abs(math.fsum(probs) - 1.0) > TOL:
            raise ValueError(f"distribution must sum to 1, got {math.fsum(probs)!r}")
        object.__setattr__(self, "probs", probs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p > 0)

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, i):
        return self.probs[i]


DistLike = Union[Distribution, Sequence[float]]


def as_distribution(d: DistLike) -> Distribution:
    return d if isinstance(d, Distribution) else Distribution(tuple(d))


def check_order(lam: Real) -> float:
    """Validate a Rényi order; returns it as a float."""
    lam = float(lam)
    if not (lam > 0) or not math.isfinite(lam):
        raise ValueError(f"order lambda must be a finite real > 0, got {lam!r}")
    return lam


def normalize(weights: Sequence[Real]) -> Distribution:
    """Scale a nonnegative vector to sum to one.

    Integer and Fraction inputs are divided exactly before rounding to
    float, so ``normalize((3, 4, 5))`` is correctly rounded entrywise.
    """
    ws = list(weights)
    if not ws:
        raise ValueError("cannot normalize an empty vector")
    if any(w < 0 for w in ws):
        raise ValueError(f"cannot normalize a vector with negative entries: {ws}")
    if all(isinstance(w, (int, Fraction)) for w in ws):
        total = sum(ws)
        if total == 0:
            raise ValueError("cannot normalize an all-zero vector")
        if isinstance(total, int):
            # int / int true division is correctly rounded
            return Distribution(tuple(w / total for w in ws))
        return Distribution(tuple(float(Fraction(w) / total) for w in ws))
    total = math.fsum(float(w) for w in ws)
    if total <= 0:
        raise ValueError("cannot normalize an all-zero vector")
    return Distribution(tuple(float(w) / total for w in ws))


def _log2_power_sum(terms: list[tuple[float, float]], exponent: float) -> float:
    """log2(sum_i p_i * exp(exponent * x_i)) for (p_i, x_i) with sum p_i = 1.

    Computed as log1p(sum p_i * expm1(exponent * x_i)) so that orders close
    to 1 do not lose the small deviation from 1 to cancellation.  Far from 1
    (any |exponent * x_i| > 1) falls back to log-sum-exp, which cannot
    overflow.
    """
    if any(abs(exponent * x) > 1.0 for _, x in terms):
        logs = [math.log(p) + exponent * x for p, x in terms]
        m = max(logs)
        return (m + math.log(math.fsum(math.exp(a - m) for a in logs))) / math.log(2)
    shifted = math.fsum(p * math.expm1(exponent * x) for p, x in terms)
    shifted += math.fsum(p for p, _ in terms) - 1.0
    return math.log1p(shifted) / math.log(2)


def renyi_entropy(d: DistLike, lam: Real) -> float:
    """Rényi entropy of order ``lam``; Shannon entropy at ``lam == 1``."""
    d = as_distribution(d)
    lam = check_order(lam)
    support = [p for p in d.probs if p > 0]
    if lam == 1.0:
        return max(0.0, -math.fsum(p * math.log2(p) for p in support))
    # sum p^lam = sum p * p^(lam-1)
    terms = [(p, math.log(p)) for p in support]
    h = _log2_power_sum(terms, lam - 1.0) / (1.0 - lam)
    return max(0.0, h)


def renyi_divergence(p: DistLike, q: DistLike, lam: Real) -> float:
    """Rényi divergence D_lam(p || q) in bits; KL divergence at ``lam == 1``.

    Entries with p_i = 0 contribute nothing.  An entry with p_i > 0 and
    q_i = 0 makes the result ``math.inf`` for lam >= 1 and contributes
    nothing for lam < 1.
    """
    p = as_distribution(p)
    q = as_distribution(q)
    lam = check_order(lam)
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    pairs = [(pi, qi) for pi, qi in zip(p.probs, q.probs) if pi > 0]
    if any(qi == 0 for _, qi in pairs):
        if lam >= 1.0:
            return math.inf
        pairs_pos = [(pi, qi) for pi, qi in pairs if qi > 0]
        if not pairs_pos:
            return math.inf
    else:
        pairs_pos = pairs
    if lam == 1.0:
        return max(0.0, math.fsum(pi * (math.log2(pi) - math.log2(qi)) for pi, qi in pairs_pos))
    # sum p^lam q^(1-lam) = sum p * (p/q)^(lam-1); entries with q_i = 0 drop out
    terms = [(pi, math.log(pi) - math.log(qi)) for pi, qi in pairs_pos]
    return max(0.0, _log2_power_sum(terms, lam - 1.0) / (lam - 1.0))


def relative_entropy_gibbs(p: DistLike, q: DistLike, lam: Real) -> float:
    """Discrete Rényi relative entropy h_lam[p, q] (three-term form), lam != 1.

    Nonnegative for every pair of distributions; requires q_i > 0 wherever
    p_i > 0.
    """
    p = as_distribution(p)
    q = as_distribution(q)
    lam = check_order(lam)
    if lam == 1.0:
        raise ValueError("relative_entropy_gibbs is undefined at lambda = 1")
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    if any(pi > 0 and qi == 0 for pi, qi in zip(p.probs, q.probs)):
        raise ValueError("q must be positive wherever p is positive")
    e = lam - 1.0
    # each power sum as log2(sum w_i * exp(e * x_i)), stable for tiny masses
    log_cross = _log2_power_sum([(pi, math.log(qi)) for pi, qi in zip(p.probs, q.probs) if pi > 0], e)
    log_q_pow = _log2_power_sum([(qi, math.log(qi)) for qi in q.probs if qi > 0], e)
    log_p_pow = _log2_power_sum([(pi, math.log(pi)) for pi in p.probs if pi > 0], e)
    return log_cross / (1.0 - lam) + log_q_pow / lam - log_p_pow / (lam * (1.0 - lam))


def nonuniformity(r: DistLike) -> float:
    """log2(r_max / r_min) over the support of ``r``."""
    r = as_distribution(r)
    support = [x for x in r.probs if x > 0]
    return math.log2(max(support)) - math.log2(min(support))


def uniform(n: int) -> Distribution:
    if n < 1:
        raise ValueError("uniform distribution needs n >= 1")
    return Distribution((1.0 / n,) * n)
