"""Brute-force oracles for desk-sized games.

Everything here enumerates: integer core allocations, edge orientations, or
candidate packing constants.  Sizes are capped; exceeding a cap raises
:class:`CapsExceeded`.
"""

from __future__ import annotations

import functools
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .algorithms import GreedyTrace, Orientation, ZDecomposition, cover_of_orientation, impact_matrix
from .flow import feasible_flow
from .games import Cover, ExplicitGame, Game, ISGame, coalition_sums, to_explicit, utopia_payoff
from .infomeasures import DistLike, as_distribution, check_order, normalize, renyi_divergence, renyi_entropy

MAX_PLAYERS = 8
MAX_TOTAL = 30
MAX_EDGES = 20
TIE_TOL = 1e-9


class CapsExceeded(ValueError):
    """An oracle was asked to enumerate an instance above its size caps."""


@dataclass(frozen=True)
class FairnessResult:
    value: float
    argmax_covers: tuple[Cover, ...]
    lam: float
    baseline: tuple[float, ...]


@dataclass(frozen=True)
class PackingConstants:
    alpha: Fraction
    beta: Fraction
    alpha_witness: ZDecomposition
    beta_witness: ZDecomposition


def _check_caps(g: ExplicitGame, max_players: int, max_total: int):
    if g.n > max_players:
        raise CapsExceeded(f"{g.n} players exceeds the enumeration cap of {max_players} (raise --max-players)")
    total = g.values[g.grand]
    if total > max_total:
        raise CapsExceeded(f"v(N) = {total} exceeds the enumeration cap of {max_total} (raise --max-total)")


def _covers_with_prefix(g: ExplicitGame, first: int | None) -> list[Cover]:
    n = g.n
    v = g.values
    total = v[g.grand]
    upper = [utopia_payoff(g, j) for j in range(n)]
    # tail[k]: largest amount players k.. can still absorb
    tail = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        tail[k] = tail[k + 1] + upper[k]
    sums = [0] * (1 << n)
    x = [0] * n
    out: list[Cover] = []

    def place(k: int, remaining: int):
        if k == n:
            if remaining == 0:
                out.append(tuple(x))
            return
        lo = max(0, remaining - tail[k + 1])
        hi = min(upper[k], remaining)
        if k == 0 and first is not None:
            lo, hi = max(lo, first), min(hi, first)
        bit = 1 << k
        for xk in range(lo, hi + 1):
            x[k] = xk
            ok = True
            # coalitions whose highest member is k are now fully allocated
            for m in range(bit, bit << 1):
                s = sums[m ^ bit] + xk
                sums[m] = s
                if s < v[m]:
                    ok = False
                    break
            if ok:
                place(k + 1, remaining - xk)

    if n:
        place(0, total)
    return out


def enumerate_covers(
    g: Game,
    max_players: int = MAX_PLAYERS,
    max_total: int = MAX_TOTAL,
    threads: int = 1,
) -> list[Cover]:
    """All integer core allocations, in lexicographic order.

    Depth-first over players; player j ranges over [0, v(N) - v(N - j)], and a
    branch is cut as soon as a fully allocated coalition falls short of its
    value.  With ``threads > 1`` the first player's range is split across
    worker processes; the merged result is identical to the sequential one.
    """
    g = to_explicit(g)
    _check_caps(g, max_players, max_total)
    if threads <= 1:
        return _covers_with_prefix(g, None)
    firsts = range(0, min(utopia_payoff(g, 0), g.values[g.grand]) + 1)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(_covers_with_prefix, itertools.repeat(g), firsts)
        return [c for part in parts for c in part]


def iter_covers(g: Game, **caps) -> Iterator[Cover]:
    yield from enumerate_covers(g, **caps)


def _rank(rows: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss-style) elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                rows[i] = [p[col] * a - f * b for a, b in zip(rows[i], p)]
                gcd = math.gcd(*rows[i])
                if gcd > 1:
                    rows[i] = [a // gcd for a in rows[i]]
        rank += 1
        if rank == len(rows):
            break
    return rank


def tight_coalitions(g: Game, c: Sequence[int]) -> list[int]:
    g = to_explicit(g)
    sums = coalition_sums(c)
    return [m for m in range(1, 1 << g.n) if sums[m] == g.values[m]]


def is_extremal(g: Game, c: Sequence[int]) -> bool:
    """True when the coalition constraints tight at ``c`` pin it down uniquely."""
    g = to_explicit(g)
    rows = [[m >> i & 1 for i in range(g.n)] for m in tight_coalitions(g, c)]
    return _rank(rows) == g.n


def extremal_covers(g: Game, covers: Sequence[Cover]) -> list[Cover]:
    g = to_explicit(g)
    return [c for c in covers if is_extremal(g, c)]


@functools.lru_cache(maxsize=1 << 16)
def _cover_dist(cover: Cover):
    return normalize(cover)


def _argbest(items, key, best_is_max: bool, tol: float = TIE_TOL):
    scored = [(key(it), it) for it in items]
    if not scored:
        raise ValueError("nothing to optimize over")
    pick = max if best_is_max else min
    best = pick(s for s, _ in scored)
    if math.isinf(best):
        return best, [it for s, it in scored if s == best]
    return best, [it for s, it in scored if abs(s - best) <= tol]


def min_entropy_cover(g: Game, lam: float, covers: Sequence[Cover] | None = None, **caps) -> tuple[list[Cover], float]:
    """Covers of least Rényi entropy and that entropy."""
    lam = check_order(lam)
    if covers is None:
        covers = enumerate_covers(g, **caps)
    value, best = _argbest(covers, lambda c: renyi_entropy(_cover_dist(c), lam), best_is_max=False)
    return best, value


def min_entropy_orientation(g: ISGame, lam: float, max_edges: int = MAX_EDGES) -> tuple[list[Orientation], float]:
    """Exhaust all 2**|E| orientations; return the minimizers of the induced
    cover's Rényi entropy and the minimum."""
    lam = check_order(lam)
    m = len(g.edges)
    if m > max_edges:
        raise CapsExceeded(f"{m} edges exceeds the orientation cap of {max_edges}")
    cache: dict[Cover, float] = {}
    scored = []
    for choice in itertools.product((0, 1), repeat=m):
        o = Orientation(tuple(e[c] for e, c in zip(g.edges, choice)))
        cover = cover_of_orientation(g, o)
        if cover not in cache:
            cache[cover] = renyi_entropy(_cover_dist(cover), lam)
        scored.append((cache[cover], o))
    best = min(s for s, _ in scored)
    return [o for s, o in scored if abs(s - best) <= TIE_TOL], best


def worst_case_fairness(
    g: Game, q: DistLike, lam: float, covers: Sequence[Cover] | None = None, **caps
) -> FairnessResult:
    """Largest Rényi divergence from the baseline ``q`` over all integer covers."""
    lam = check_order(lam)
    q = as_distribution(q)
    ge = to_explicit(g)
    if len(q) != ge.n:
        raise ValueError(f"baseline has {len(q)} entries for {ge.n} players")
    if covers is None:
        covers = enumerate_covers(ge, **caps)
    value, best = _argbest(covers, lambda c: renyi_divergence(_cover_dist(c), q, lam), best_is_max=True)
    return FairnessResult(value, tuple(best), lam, q.probs)


def decide_fairness(g: Game, q: DistLike, lam: float, eta: float, **kw) -> bool:
    """Is there an integer cover at Rényi divergence >= eta from ``q``?"""
    return worst_case_fairness(g, q, lam, **kw).value >= eta - TIE_TOL


# -- packing constants --------------------------------------------------------


def _stage_flow(a, cover, deltas, lo_of, hi_of) -> ZDecomposition | None:
    """Integer Z with column sums = cover, 0 <= Z <= a and stage totals in
    [lo_of(r), hi_of(r)], as a transportation problem, or None."""
    n, stages = len(cover), len(deltas)
    s, t = 0, 1 + n + stages
    arcs, slots = [], []
    for j in range(n):
        arcs.append((s, 1 + j, cover[j], cover[j]))
    for r in range(stages):
        for j in range(n):
            if a[r][j] > 0:
                slots.append((r, j, len(arcs)))
                arcs.append((1 + j, 1 + n + r, 0, a[r][j]))
    for r in range(stages):
        arcs.append((1 + n + r, t, lo_of(r), hi_of(r)))
    flows = feasible_flow(t + 1, arcs, s, t)
    if flows is None:
        return None
    z = [[0] * n for _ in range(stages)]
    for r, j, k in slots:
        z[r][j] = flows[k]
    return ZDecomposition(tuple(tuple(row) for row in z), tuple(cover))


def _floor(fr: Fraction) -> int:
    return fr.numerator // fr.denominator


def _ceil(fr: Fraction) -> int:
    return -((-fr.numerator) // fr.denominator)


def packing_constants(g: Game, x: Sequence[int], t: GreedyTrace) -> PackingConstants:
    """Tightest alpha and beta for the cover ``x`` against the greedy trace.

    alpha is the least value with an integer Z (column sums ``x``,
    0 <= Z <= impact) whose stage totals stay <= alpha * Delta_r; beta is the
    largest value with stage totals >= beta * Delta_r.  Both are found by
    binary search over the candidates k / Delta_r, each step one flow
    feasibility test.
    """
    ge = to_explicit(g)
    x = tuple(x)
    if len(x) != ge.n or sum(x) != ge.values[ge.grand]:
        raise ValueError("x must be a cover of the game")
    a = impact_matrix(ge, t)
    deltas = t.deltas
    if not deltas:
        raise ValueError("trace has no stages")
    total = ge.values[ge.grand]
    cands = sorted({Fraction(k, d) for d in deltas for k in range(total + 1)})
    row_cap = [sum(row) for row in a]

    def alpha_test(c):
        return _stage_flow(a, x, deltas, lambda r: 0, lambda r: min(row_cap[r], _floor(c * deltas[r])))

    def beta_test(c):
        return _stage_flow(a, x, deltas, lambda r: _ceil(c * deltas[r]), lambda r: row_cap[r])

    # alpha: smallest feasible candidate
    lo, hi = 0, len(cands) - 1
    if alpha_test(cands[hi]) is None:
        raise AssertionError("no Z-decomposition exists even without stage caps; is x a core allocation?")
    while lo < hi:
        mid = (lo + hi) // 2
        if alpha_test(cands[mid]) is not None:
            hi = mid
        else:
            lo = mid + 1
    alpha = cands[lo]
    alpha_z = alpha_test(alpha)
    # beta: largest feasible candidate; cands[0] == 0 is always feasible
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if beta_test(cands[mid]) is not None:
            lo = mid
        else:
            hi = mid - 1
    beta = cands[lo]
    beta_z = beta_test(beta)
    return PackingConstants(alpha, beta, alpha_z, beta_z)


def best_packing_constants(g: Game, covers: Sequence[Cover], t: GreedyTrace) -> tuple[Fraction, Fraction, list[PackingConstants]]:
    """Least alpha and largest beta over several optimal covers, plus the
    per-cover results."""
    per = [packing_constants(g, c, t) for c in covers]
    return min(p.alpha for p in per), max(p.beta for p in per), per
