"""Seeded random instances: IS games on G(n, p) graphs and convex explicit games."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .games import ExplicitGame, ISGame, members


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    edge_prob: float
    w_max: int
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 vertices")
        if not (0 < self.edge_prob <= 1):
            raise ValueError("edge_prob must lie in (0, 1]")
        if self.w_max < 1:
            raise ValueError("w_max must be a positive integer")


def random_is_game(cfg: GeneratorConfig, rng: random.Random | None = None) -> tuple[ISGame, list[str]]:
    """Each pair joins independently with probability ``edge_prob``, weight
    uniform on 1..w_max.  A vertex left isolated gets one unit-weight edge to
    a random other vertex.  Returns the game and a list of repair notes.
    """
    rng = rng or random.Random(cfg.seed)
    n = cfg.n
    edges: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < cfg.edge_prob:
                edges[i, j] = rng.randint(1, cfg.w_max)
    notes = []
    for i in range(n):
        if not any(i in e for e in edges):
            j = rng.choice([k for k in range(n) if k != i])
            edges[min(i, j), max(i, j)] = 1
            notes.append(f"isolated v{i} joined to v{j} with weight 1")
    players = tuple(f"v{i}" for i in range(n))
    return ISGame(players, tuple((i, j, w) for (i, j), w in sorted(edges.items()))), notes


def random_is_games(count, seed, n_range=(2, 6), edge_prob=0.6, w_max=4, max_total=None, max_edges=None):
    """A deterministic batch of IS games; instances over the weight or edge
    caps are redrawn."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*n_range)
        cfg = GeneratorConfig(n, edge_prob, w_max, rng.getrandbits(63))
        g, _ = random_is_game(cfg, rng)
        if max_total is not None and g.total_weight > max_total:
            continue
        if max_edges is not None and len(g.edges) > max_edges:
            continue
        out.append(g)
    return out


def random_convex_game(n: int, rng: random.Random, pieces: int = 3, max_coef: int = 3) -> ExplicitGame:
    """Monotone supermodular integer game: an additive part plus a few terms
    phi(sum of weights of S inside a random block), phi convex and
    nondecreasing with phi(0) = 0."""
    additive = [rng.randint(0, max_coef) for _ in range(n)]
    terms = []
    for _ in range(pieces):
        block = [i for i in range(n) if rng.random() < 0.6]
        weights = {i: rng.randint(1, max_coef) for i in block}
        kind = rng.choice(("square", "hinge"))
        thresh = rng.randint(0, max_coef)
        terms.append((weights, kind, thresh))

    def phi(kind, thresh, x):
        return x * x if kind == "square" else max(0, x - thresh)

    def value(mask: int) -> int:
        s = set(members(mask))
        total = sum(additive[i] for i in s)
        for weights, kind, thresh in terms:
            total += phi(kind, thresh, sum(w for i, w in weights.items() if i in s))
        return total

    return ExplicitGame(n, tuple(value(m) for m in range(1 << n)))
