"""Pure-Python reference implementation of the flow kernels.

The compiled extension in ``_flow.pyx`` mirrors these functions exactly
(same network layout, same edge insertion order, same Dinic traversal
order), so both backends produce identical flows and witnesses.
"""

from __future__ import annotations

from itertools import combinations

__all__ = ["check_slots_flow", "search_extra", "node_opening_flow", "BACKEND"]

BACKEND = "python"


class _Dinic:
    """Max flow on integer capacities; deterministic for a fixed edge order."""

    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, c: int) -> int:
        e = len(self.to)
        self.to.extend((v, u))
        self.cap.extend((c, 0))
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def max_flow(self, s: int, t: int) -> int:
        to, cap, adj = self.to, self.cap, self.adj
        n = self.n
        flow = 0
        while True:
            level = [-1] * n
            level[s] = 0
            queue = [s]
            for u in queue:
                for e in adj[u]:
                    if cap[e] > 0 and level[to[e]] < 0:
                        level[to[e]] = level[u] + 1
                        queue.append(to[e])
            if level[t] < 0:
                return flow
            it = [0] * n
            path: list[int] = []
            u = s
            while True:
                if u == t:
                    push = min(cap[e] for e in path)
                    flow += push
                    for e in path:
                        cap[e] -= push
                        cap[e ^ 1] += push
                    cut = next(i for i, e in enumerate(path) if cap[e] == 0)
                    u = to[path[cut] ^ 1]
                    del path[cut:]
                    continue
                advanced = False
                while it[u] < len(adj[u]):
                    e = adj[u][it[u]]
                    v = to[e]
                    if cap[e] > 0 and level[v] == level[u] + 1:
                        path.append(e)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        break
                    level[u] = -1
                    e = path.pop()
                    u = to[e ^ 1]

    def reachable(self, s: int) -> list[bool]:
        """Residual reachability from s (the canonical min-cut source side)."""
        seen = [False] * self.n
        seen[s] = True
        queue = [s]
        for u in queue:
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e] > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return seen


def _slot_network(p, r, d, g, slots):
    n = len(p)
    k = len(slots)
    slot_pos = {t: idx for idx, t in enumerate(slots)}
    dinic = _Dinic(n + k + 2)
    s, t = 0, n + k + 1
    for j in range(n):
        dinic.add_edge(s, 1 + j, p[j])
    for j in range(n):
        for tt in slots:
            if r[j] <= tt < d[j]:
                dinic.add_edge(1 + j, 1 + n + slot_pos[tt], 1)
    for idx in range(k):
        dinic.add_edge(1 + n + idx, t, g)
    return dinic, s, t


def check_slots_flow(p, r, d, g, slots) -> bool:
    """True iff the open slot set can host every job (max flow meets demand)."""
    total = sum(p)
    if g * len(slots) < total:
        return False
    dinic, s, t = _slot_network(p, r, d, g, slots)
    return dinic.max_flow(s, t) == total


def search_extra(p, r, d, g, forced, free, extra, iv_a, iv_b, iv_need):
    """First feasible slot set ``forced + combo`` over lexicographic combos.

    Enumerates ``extra``-subsets of ``free`` (both sorted ascending) in
    lexicographic order; a cheap per-interval counting bound filters
    candidates before the exact flow check.  Returns the merged slot tuple
    of the first feasible candidate, or None.
    """
    total = sum(p)
    n_iv = len(iv_a)
    base = [0] * n_iv
    for t in forced:
        for i in range(n_iv):
            if iv_a[i] <= t < iv_b[i]:
                base[i] += 1
    slot_iv = {t: [i for i in range(n_iv) if iv_a[i] <= t < iv_b[i]] for t in free}
    choices = combinations(free, extra) if extra else [()]
    for combo in choices:
        counts = base[:]
        for t in combo:
            for i in slot_iv[t]:
                counts[i] += 1
        if any(counts[i] < iv_need[i] for i in range(n_iv)):
            continue
        slots = sorted(forced + tuple(combo))
        if g * len(slots) < total:
            continue
        dinic, s, t = _slot_network(p, r, d, g, slots)
        if dinic.max_flow(s, t) == total:
            return tuple(slots)
    return None


def node_opening_flow(p, adj, cap, g):
    """Max flow on the 4-layer job/node network of an integral opening.

    ``adj[j]`` lists the tree nodes job j may use (ascending); ``cap[i]``
    is the opening of node i.  Arcs: source->job with the job's length,
    job->node with cap[i], node->sink with g*cap[i].  Returns the flow
    value, per-(job, adj position) flows, and the source-side job mask of
    the canonical min cut.
    """
    n = len(p)
    m = len(cap)
    dinic = _Dinic(n + m + 2)
    s, t = 0, n + m + 1
    for j in range(n):
        dinic.add_edge(s, 1 + j, p[j])
    node_jobs: list[list[int]] = [[] for _ in range(m)]
    for j in range(n):
        for i in adj[j]:
            node_jobs[i].append(j)
    mid: dict[tuple[int, int], int] = {}
    # middle arcs ordered by node index, then job order
    for i in range(m):
        for j in node_jobs[i]:
            mid[(j, i)] = dinic.add_edge(1 + j, 1 + n + i, cap[i])
    for i in range(m):
        dinic.add_edge(1 + n + i, t, g * cap[i])
    value = dinic.max_flow(s, t)
    flows = [[cap[i] - dinic.cap[mid[(j, i)]] for i in adj[j]] for j in range(n)]
    seen = dinic.reachable(s)
    cut_jobs = [1 if seen[1 + j] else 0 for j in range(n)]
    return value, flows, cut_jobs
