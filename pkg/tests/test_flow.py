import itertools
import random

import networkx as nx
import pytest

from worstfair.flow import FlowNetwork, feasible_flow


def test_max_flow_small():
    net = FlowNetwork(4)
    net.add_edge(0, 1, 3)
    net.add_edge(0, 2, 2)
    net.add_edge(1, 2, 5)
    net.add_edge(1, 3, 2)
    net.add_edge(2, 3, 3)
    assert net.max_flow(0, 3) == 5


def test_negative_capacity_rejected():
    with pytest.raises(ValueError):
        FlowNetwork(2).add_edge(0, 1, -1)


def test_max_flow_matches_networkx():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(2, 8)
        net = FlowNetwork(n)
        ref = nx.DiGraph()
        ref.add_nodes_from(range(n))
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < 0.4:
                    c = rng.randint(0, 9)
                    net.add_edge(u, v, c)
                    if ref.has_edge(u, v):
                        ref[u][v]["capacity"] += c
                    else:
                        ref.add_edge(u, v, capacity=c)
        assert net.max_flow(0, n - 1) == nx.maximum_flow_value(ref, 0, n - 1)


def _brute_feasible(n, arcs, s, t):
    ranges = [range(lo, hi + 1) for _, _, lo, hi in arcs]
    for flows in itertools.product(*ranges):
        bal = [0] * n
        for (u, v, _, _), f in zip(arcs, flows):
            bal[u] -= f
            bal[v] += f
        # conservation inside, nonnegative net flow out of s
        if bal[s] <= 0 and all(b == 0 for k, b in enumerate(bal) if k not in (s, t)):
            return True
    return False


def _valid(n, arcs, s, t, flows):
    bal = [0] * n
    for (u, v, lo, hi), f in zip(arcs, flows):
        if not lo <= f <= hi:
            return False
        bal[u] -= f
        bal[v] += f
    return bal[s] <= 0 and all(b == 0 for k, b in enumerate(bal) if k not in (s, t))


def test_feasible_flow_against_brute_force():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(2, 5)
        arcs = []
        for _ in range(rng.randint(1, 5)):
            u, v = rng.sample(range(n), 2)
            lo = rng.randint(0, 2)
            arcs.append((u, v, lo, lo + rng.randint(0, 2)))
        got = feasible_flow(n, arcs, 0, n - 1)
        assert (got is not None) == _brute_feasible(n, arcs, 0, n - 1)
        if got is not None:
            assert _valid(n, arcs, 0, n - 1, got)


def test_feasible_flow_inverted_bounds():
    assert feasible_flow(2, [(0, 1, 3, 2)], 0, 1) is None
