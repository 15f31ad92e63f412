"""TU cooperative games: explicit value tables and induced subgraph games.

Coalitions are integer bitmasks over player indices (bit ``i`` set means
player ``i`` belongs to the coalition).  Player order is fixed at
construction and used everywhere downstream.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, Union

MAX_TABLE_PLAYERS = 16
MAX_SHAPLEY_PLAYERS = 12
EMPTY_KEY = "∅"

Cover = tuple[int, ...]


class MonotonicityWarning(UserWarning):
    pass


class GameFormatError(ValueError):
    """Raised for malformed game files or dictionaries."""


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


@dataclass(frozen=True)
class ExplicitGame:
    """A game given by its full table ``values[mask]`` of 2**n integers."""

    n: int
    values: tuple[int, ...]
    players: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a game needs at least one player")
        if self.n > MAX_TABLE_PLAYERS:
            raise ValueError(f"explicit tables are capped at {MAX_TABLE_PLAYERS} players, got {self.n}")
        values = tuple(self.values)
        if len(values) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} values, got {len(values)}")
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"coalition values must be nonnegative integers, got {v!r}")
        if values[0] != 0:
            raise ValueError("value of the empty coalition must be 0")
        players = tuple(self.players) or _default_names(self.n)
        if len(players) != self.n or len(set(players)) != self.n:
            raise ValueError("player names must be distinct, one per player")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "players", players)
        bad = _monotonicity_violation(self.n, values)
        if bad is not None:
            warnings.warn(
                f"game is not monotone: v({members(bad[0])}) > v({members(bad[1])})",
                MonotonicityWarning,
                stacklevel=3,
            )

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def value(self, mask: int) -> int:
        return self.values[mask]

    @classmethod
    def from_function(cls, n, fn, players=()) -> "ExplicitGame":
        """Tabulate ``fn(frozenset_of_indices)`` over all coalitions."""
        values = tuple(fn(frozenset(members(m))) for m in range(1 << n))
        return cls(n, values, tuple(players))


def _monotonicity_violation(n, values):
    for mask in range(1, 1 << n):
        for i in range(n):
            bit = 1 << i
            if mask & bit and values[mask ^ bit] > values[mask]:
                return mask ^ bit, mask
    return None


@dataclass(frozen=True)
class ISGame:
    """Induced subgraph game on a weighted loopless graph.

    ``edges`` holds ``(i, j, w)`` triples of player indices with ``i < j``
    and a nonnegative integer weight; every vertex needs positive adjacent
    weight.
    """

    players: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]
    _vertex_weight: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        players = tuple(self.players)
        n = len(players)
        if n < 1 or len(set(players)) != n:
            raise ValueError("players must be a nonempty list of distinct names")
        norm = []
        seen = set()
        for e in self.edges:
            i, j, w = e
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge endpoints out of range: {e}")
            if i == j:
                raise ValueError(f"self-loop at player {players[i]}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise ValueError(f"edge weights must be nonnegative integers: {e}")
            i, j = min(i, j), max(i, j)
            if (i, j) in seen:
                raise ValueError(f"duplicate edge {players[i]}-{players[j]}")
            seen.add((i, j))
            norm.append((i, j, w))
        weight = [0] * n
        for i, j, w in norm:
            weight[i] += w
            weight[j] += w
        zero = [players[i] for i in range(n) if weight[i] <= 0]
        if zero:
            raise ValueError(f"every vertex needs positive adjacent weight; offending: {zero}")
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "_vertex_weight", tuple(weight))

    @classmethod
    def from_named_edges(cls, players: Sequence[str], edges: Iterable[tuple[str, str, int]]) -> "ISGame":
        index = {p: k for k, p in enumerate(players)}
        try:
            triples = tuple((index[a], index[b], w) for a, b, w in edges)
        except KeyError as exc:
            raise ValueError(f"edge mentions unknown player {exc.args[0]!r}") from None
        return cls(tuple(players), triples)

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def vertex_weight(self, i: int) -> int:
        """Sum of the weights of the edges adjacent to ``i``."""
        return self._vertex_weight[i]

    def value(self, mask: int) -> int:
        return sum(w for i, j, w in self.edges if mask >> i & 1 and mask >> j & 1)


Game = Union[ExplicitGame, ISGame]


def coalition_value(g: Game, s: int) -> int:
    if s < 0 or s > g.grand:
        raise ValueError(f"coalition {s:#x} is not a subset of the player set")
    return g.value(s)


def mask_of(g: Game, names: Iterable[str]) -> int:
    index = {p: k for k, p in enumerate(g.players)}
    mask = 0
    for name in names:
        mask |= 1 << index[name]
    return mask


def _is_table(g: ISGame) -> list[int]:
    n = g.n
    nbr = [dict() for _ in range(n)]
    for i, j, w in g.edges:
        nbr[i][j] = w
        nbr[j][i] = w
    table = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        table[mask] = table[rest] + sum(w for k, w in nbr[low].items() if rest >> k & 1)
    return table


def to_explicit(g: Game) -> ExplicitGame:
    if isinstance(g, ExplicitGame):
        return g
    if g.n > MAX_TABLE_PLAYERS:
        raise ValueError(f"to_explicit supports at most {MAX_TABLE_PLAYERS} players, got {g.n}")
    return ExplicitGame(g.n, tuple(_is_table(g)), g.players)


def dual_game(g: ExplicitGame) -> ExplicitGame:
    """v*(S) = v(N) - v(N \\ S)."""
    g = to_explicit(g)
    full = g.grand
    vn = g.values[full]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MonotonicityWarning)
        return ExplicitGame(g.n, tuple(vn - g.values[full ^ m] for m in range(1 << g.n)), g.players)


def check_supermodular(g: Game) -> tuple[bool, tuple[int, int] | None]:
    """Return ``(True, None)`` or ``(False, (S, T))`` with a violating pair.

    Uses the local form: v(S+i+j) - v(S+i) - v(S+j) + v(S) >= 0 for all S and
    i, j outside S, which is equivalent to supermodularity.
    """
    g = to_explicit(g)
    v = g.values
    n = g.n
    for s in range(1 << n):
        for i in range(n):
            bi = 1 << i
            if s & bi:
                continue
            for j in range(i + 1, n):
                bj = 1 << j
                if s & bj:
                    continue
                if v[s | bi | bj] + v[s] < v[s | bi] + v[s | bj]:
                    return False, (s | bi, s | bj)
    return True, None


def coalition_sums(alloc: Sequence[int]) -> list[int]:
    n = len(alloc)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        sums[mask] = sums[mask & (mask - 1)] + alloc[low]
    return sums


def check_cover(g: Game, c: Sequence[int]) -> tuple[bool, list[int]]:
    """Check that ``c`` is an integer core allocation.

    Requires nonnegative integers summing to v(N) and x(S) >= v(S) for every
    coalition.  Returns ``(ok, violated)``; ``violated`` lists coalition
    masks, including N itself when the total is wrong.
    """
    g = to_explicit(g)
    if len(c) != g.n:
        raise ValueError(f"cover has {len(c)} entries for {g.n} players")
    if any(not isinstance(x, int) or x < 0 for x in c):
        raise ValueError(f"cover entries must be nonnegative integers: {tuple(c)}")
    sums = coalition_sums(c)
    violated = [m for m in range(1, g.grand) if sums[m] < g.values[m]]
    if sums[g.grand] != g.values[g.grand]:
        violated.append(g.grand)
    return not violated, violated


def utopia_payoff(g: Game, j: int) -> int:
    """v(N) - v(N \\ {j}), the largest share player j can get in the core."""
    return g.value(g.grand) - g.value(g.grand & ~(1 << j))


def shapley_general(g: Game) -> tuple[Fraction, ...]:
    """Exact Shapley value by the subset formula."""
    g = to_explicit(g)
    n = g.n
    if n > MAX_SHAPLEY_PLAYERS:
        raise ValueError(f"shapley_general supports at most {MAX_SHAPLEY_PLAYERS} players, got {n}")
    weight = [Fraction(math.factorial(k) * math.factorial(n - k - 1), math.factorial(n)) for k in range(n)]
    phi = [Fraction(0)] * n
    v = g.values
    for s in range(1 << n):
        k = s.bit_count()
        for i in range(n):
            if not s >> i & 1:
                phi[i] += weight[k] * (v[s | 1 << i] - v[s])
    return tuple(phi)


def shapley_is(g: ISGame) -> tuple[Fraction, ...]:
    """Shapley value of an IS game: half of each vertex's adjacent weight."""
    return tuple(Fraction(g.vertex_weight(i), 2) for i in range(g.n))


# -- JSON instance files ----------------------------------------------------


def game_to_dict(g: Game) -> dict:
    if isinstance(g, ISGame):
        return {
            "type": "is",
            "players": list(g.players),
            "edges": [[g.players[i], g.players[j], w] for i, j, w in g.edges],
        }
    values = {}
    for mask in range(1, 1 << g.n):
        values[",".join(g.players[i] for i in members(mask))] = g.values[mask]
    return {"type": "explicit", "players": list(g.players), "values": values}


def game_from_dict(data: dict) -> Game:
    if not isinstance(data, dict):
        raise GameFormatError("instance must be a JSON object")
    kind = data.get("type")
    players = data.get("players")
    if not isinstance(players, list) or not all(isinstance(p, str) for p in players):
        raise GameFormatError("'players' must be a list of strings")
    if any("," in p for p in players):
        raise GameFormatError("player names must not contain commas")
    try:
        if kind == "is":
            edges = data.get("edges")
            if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 3 for e in edges):
                raise GameFormatError("'edges' must be a list of [player, player, weight] triples")
            return ISGame.from_named_edges(players, [tuple(e) for e in edges])
        if kind == "explicit":
            return _explicit_from_dict(players, data.get("values"))
    except GameFormatError:
        raise
    except ValueError as exc:
        raise GameFormatError(str(exc)) from None
    raise GameFormatError(f"unknown game type {kind!r}; expected 'is' or 'explicit'")


def _explicit_from_dict(players, raw) -> ExplicitGame:
    if not isinstance(raw, dict):
        raise GameFormatError("'values' must be an object mapping coalitions to integers")
    index = {p: k for k, p in enumerate(players)}
    n = len(players)
    if n > MAX_TABLE_PLAYERS:
        raise GameFormatError(f"explicit games are capped at {MAX_TABLE_PLAYERS} players")
    table: list[int | None] = [None] * (1 << n)
    table[0] = 0
    for key, val in raw.items():
        if key in ("", EMPTY_KEY):
            mask = 0
        else:
            mask = 0
            for name in key.split(","):
                name = name.strip()
                if name not in index:
                    raise GameFormatError(f"coalition {key!r} mentions unknown player {name!r}")
                mask |= 1 << index[name]
        if table[mask] is not None and mask != 0:
            raise GameFormatError(f"coalition {key!r} given twice")
        table[mask] = val
    missing = [m for m, v in enumerate(table) if v is None]
    if missing:
        names = ",".join(players[i] for i in members(missing[0]))
        raise GameFormatError(f"{len(missing)} coalition values missing, e.g. {{{names}}}")
    return ExplicitGame(n, tuple(table), tuple(players))


def dumps_game(g: Game) -> str:
    return json.dumps(game_to_dict(g), ensure_ascii=False)


def loads_game(text: str) -> Game:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON: {exc}") from None
    return game_from_dict(data)


def load_game(path: Union[str, Path]) -> Game:
    return loads_game(Path(path).read_text(encoding="utf-8"))
