"""ReverseGreedy, greedy and biased edge orientations, impact coefficients
and the stage-by-stage Z-decomposition of an orientation cover.

Ties are always broken towards the lowest player index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .games import Cover, ExplicitGame, Game, ISGame, dual_game, to_explicit


@dataclass(frozen=True)
class Orientation:
    """``heads[k]`` is the endpoint edge ``k`` of the game is oriented towards."""

    heads: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(self.heads))


@dataclass(frozen=True)
class GreedyTrace:
    """Stages of a ReverseGreedy run.

    ``order[r]`` was removed at stage ``r + 1`` with increment ``deltas[r]``;
    ``sets[r]`` is the coalition still present after ``r`` removals, so
    ``sets[0]`` is N and ``len(sets) == len(order) + 1``.
    """

    order: tuple[int, ...]
    deltas: tuple[int, ...]
    sets: tuple[int, ...]

    @property
    def stages(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class ZDecomposition:
    """``z[r][j]``: the share of ``cover[j]`` charged to greedy stage ``r``."""

    z: tuple[tuple[int, ...], ...]
    cover: Cover

    def stage_totals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.z)


def reverse_greedy(g: Game) -> tuple[Cover, GreedyTrace]:
    """Grant the player of largest marginal contribution to the remaining
    coalition that marginal, remove it, and repeat while some marginal is
    positive.  Players never selected receive 0.
    """
    g = to_explicit(g)
    v = g.values
    alloc = [0] * g.n
    a = g.grand
    order, deltas, sets = [], [], [a]
    while True:
        best, best_gain = -1, 0
        for i in range(g.n):
            if a >> i & 1:
                gain = v[a] - v[a & ~(1 << i)]
                if gain > best_gain:
                    best, best_gain = i, gain
        if best < 0:
            break
        alloc[best] = best_gain
        a &= ~(1 << best)
        order.append(best)
        deltas.append(best_gain)
        sets.append(a)
    return tuple(alloc), GreedyTrace(tuple(order), tuple(deltas), tuple(sets))


def dual_greedy(g: Game) -> tuple[Cover, tuple[int, ...]]:
    """Standard greedy on the dual game: grow A by the element maximizing
    v*(A + e) - v*(A) while that gain is positive.

    Returns the allocation (each chosen element gets its gain) and the
    selection order.
    """
    d = dual_game(to_explicit(g))
    v = d.values
    alloc = [0] * d.n
    a = 0
    order = []
    while True:
        best, best_gain = -1, 0
        for i in range(d.n):
            if not a >> i & 1:
                gain = v[a | 1 << i] - v[a]
                if gain > best_gain:
                    best, best_gain = i, gain
        if best < 0:
            break
        alloc[best] = best_gain
        a |= 1 << best
        order.append(best)
    return tuple(alloc), tuple(order)


def greedy_orientation(g: ISGame) -> tuple[Orientation, GreedyTrace]:
    """Repeatedly pick the vertex with the largest weight of still-unoriented
    adjacent edges, orient those edges towards it and delete it."""
    n = g.n
    heads = [-1] * len(g.edges)
    incident = [[] for _ in range(n)]
    for k, (i, j, _) in enumerate(g.edges):
        incident[i].append(k)
        incident[j].append(k)
    remaining = [g.vertex_weight(i) for i in range(n)]
    present = (1 << n) - 1
    order, deltas, sets = [], [], [present]
    while True:
        best, best_w = -1, 0
        for i in range(n):
            if present >> i & 1 and remaining[i] > best_w:
                best, best_w = i, remaining[i]
        if best < 0:
            break
        for k in incident[best]:
            if heads[k] < 0:
                i, j, w = g.edges[k]
                heads[k] = best
                other = j if i == best else i
                remaining[other] -= w
        remaining[best] = 0
        present &= ~(1 << best)
        order.append(best)
        deltas.append(best_w)
        sets.append(present)
    # zero-weight edges left over go to their lower endpoint
    for k, (i, _, _) in enumerate(g.edges):
        if heads[k] < 0:
            heads[k] = i
    return Orientation(tuple(heads)), GreedyTrace(tuple(order), tuple(deltas), tuple(sets))


def biased_orientation(g: ISGame) -> Orientation:
    """Orient every edge towards the endpoint with the larger adjacent weight
    sum; equal sums go to the lower index."""
    heads = []
    for i, j, _ in g.edges:
        heads.append(j if g.vertex_weight(j) > g.vertex_weight(i) else i)
    return Orientation(tuple(heads))


def cover_of_orientation(g: ISGame, o: Orientation) -> Cover:
    if len(o.heads) != len(g.edges):
        raise ValueError(f"orientation assigns {len(o.heads)} edges, game has {len(g.edges)}")
    alloc = [0] * g.n
    for (i, j, w), h in zip(g.edges, o.heads):
        if h != i and h != j:
            raise ValueError(f"edge ({i},{j}) oriented to non-endpoint {h}")
        alloc[h] += w
    return tuple(alloc)


def _check_trace(g: ExplicitGame, t: GreedyTrace):
    v = g.values
    if len(t.sets) != len(t.order) + 1 or len(t.deltas) != len(t.order) or t.sets[0] != g.grand:
        raise ValueError("trace is inconsistent with the game's player set")
    for r, (i, d) in enumerate(zip(t.order, t.deltas)):
        prev, cur = t.sets[r], t.sets[r + 1]
        if not prev >> i & 1 or cur != prev & ~(1 << i) or v[prev] - v[cur] != d or d <= 0:
            raise ValueError(f"trace stage {r + 1} does not match the game")


def impact_matrix(g: Game, t: GreedyTrace) -> tuple[tuple[int, ...], ...]:
    """a[r][j] = [v(A_{r-1}) - v(A_r)] - [v(A_{r-1} - j) - v(A_r - j)]."""
    ge = to_explicit(g)
    _check_trace(ge, t)
    v = ge.values
    rows = []
    for r in range(t.stages):
        prev, cur = t.sets[r], t.sets[r + 1]
        row = []
        for j in range(ge.n):
            bit = ~(1 << j)
            row.append((v[prev] - v[cur]) - (v[prev & bit] - v[cur & bit]))
        rows.append(tuple(row))
    return tuple(rows)


def impact_matrix_is(g: ISGame, t: GreedyTrace) -> tuple[tuple[int, ...], ...]:
    """Closed form of the impact coefficients for IS games: the edge weight
    w(i_r, j) for neighbours j still present after stage r, Delta_r on the
    diagonal, 0 elsewhere."""
    w = {}
    for i, j, wt in g.edges:
        w[i, j] = w[j, i] = wt
    rows = []
    for r, (ir, d) in enumerate(zip(t.order, t.deltas)):
        after = t.sets[r + 1]
        row = []
        for j in range(g.n):
            if j == ir:
                row.append(d)
            elif after >> j & 1 and (ir, j) in w:
                row.append(w[ir, j])
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


def z_decomposition(g: ISGame, opt: Orientation, rg: tuple[Orientation, GreedyTrace]) -> ZDecomposition:
    """Charge each edge of ``opt`` to the greedy stage that oriented it.

    At stage r every edge (i_r, j) with j still present is oriented towards
    i_r by the greedy run.  If ``opt`` agrees, its weight goes to
    Z[r][i_r]; otherwise it goes to Z[r][j].
    """
    rg_orient, trace = rg
    if len(opt.heads) != len(g.edges) or len(rg_orient.heads) != len(g.edges):
        raise ValueError("orientations do not match the game's edge set")
    cover = cover_of_orientation(g, opt)
    cover_of_orientation(g, rg_orient)
    z = [[0] * g.n for _ in range(trace.stages)]
    done = [False] * len(g.edges)
    for r, ir in enumerate(trace.order):
        after = trace.sets[r + 1]
        for k, (i, j, w) in enumerate(g.edges):
            if done[k] or (i != ir and j != ir):
                continue
            other = j if i == ir else i
            if not after >> other & 1:
                continue
            if rg_orient.heads[k] != ir:
                raise ValueError(f"greedy orientation disagrees with its trace on edge ({i},{j})")
            done[k] = True
            if opt.heads[k] == ir:
                z[r][ir] += w
            else:
                z[r][other] += w
    leftover = [k for k, (_, _, w) in enumerate(g.edges) if not done[k] and w > 0]
    if leftover:
        raise ValueError("trace does not orient every positive-weight edge")
    return ZDecomposition(tuple(tuple(row) for row in z), cover)


def check_z_decomposition(zd: ZDecomposition, a: Sequence[Sequence[int]]) -> bool:
    """Column sums reproduce the cover and 0 <= Z[r][j] <= a[r][j]."""
    n = len(zd.cover)
    if len(zd.z) != len(a):
        return False
    for j in range(n):
        if sum(row[j] for row in zd.z) != zd.cover[j]:
            return False
    return all(0 <= zv <= av for zrow, arow in zip(zd.z, a) for zv, av in zip(zrow, arow))
