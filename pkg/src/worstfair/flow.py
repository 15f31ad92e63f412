"""Integer maximum flow (shortest augmenting paths) and feasibility of flows
with lower bounds on arcs."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        """Add arc u->v; returns its id (the reverse arc is ``id ^ 1``)."""
        if cap < 0:
            raise ValueError("capacity must be >= 0")
        k = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.adj[u].append(k)
        self.adj[v].append(k + 1)
        return k

    def flow_on(self, k: int) -> int:
        return self.cap[k ^ 1]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            parent = [-1] * self.n
            parent[s] = -2
            queue = deque([s])
            while queue and parent[t] == -1:
                u = queue.popleft()
                for k in self.adj[u]:
                    v = self.head[k]
                    if parent[v] == -1 and self.cap[k] > 0:
                        parent[v] = k
                        queue.append(v)
            if parent[t] == -1:
                return total
            push = None
            v = t
            while v != s:
                k = parent[v]
                push = self.cap[k] if push is None else min(push, self.cap[k])
                v = self.head[k ^ 1]
            v = t
            while v != s:
                k = parent[v]
                self.cap[k] -= push
                self.cap[k ^ 1] += push
                v = self.head[k ^ 1]
            total += push


def feasible_flow(n: int, arcs: list[tuple[int, int, int, int]], s: int, t: int) -> list[int] | None:
    """Find an s-t flow with ``lo <= flow <= hi`` on every arc ``(u, v, lo, hi)``.

    Any nonnegative flow value is allowed; returns per-arc flows or ``None`` when no flow
    meets the bounds.  Uses the circulation reduction: a t->s arc of unbounded
    capacity, each lower bound moved into node balances, and a max flow from a
    super source to a super sink that must saturate all balance arcs.
    """
    big = sum(hi for _, _, _, hi in arcs) + 1
    net = FlowNetwork(n + 2)
    ss, tt = n, n + 1
    balance = [0] * n
    ids = []
    for u, v, lo, hi in arcs:
        if lo > hi:
            return None
        ids.append(net.add_edge(u, v, hi - lo))
        balance[v] += lo
        balance[u] -= lo
    net.add_edge(t, s, big)
    need = 0
    for x in range(n):
        if balance[x] > 0:
            net.add_edge(ss, x, balance[x])
            need += balance[x]
        elif balance[x] < 0:
            net.add_edge(x, tt, -balance[x])
    if net.max_flow(ss, tt) != need:
        return None
    return [net.flow_on(k) + lo for k, (_, _, lo, _) in zip(ids, arcs)]
