"""Exact integral s-t max-flow via the blocking-flow (level graph) method,
with an optional flow-value cap for early termination, source-minimal min-cut
extraction, and decomposition of flows into paths."""

from __future__ import annotations

from collections import deque
from typing import Optional

from .graphs import Graph, GraphError, split_node_capacities


class FlowError(ValueError):
    """Contract violation in a flow operation."""


class FlowIntegrityError(FlowError):
    """A supplied flow violates feasibility or conservation."""


class FlowResult:
    """Outcome of one max-flow call.

    ``value`` is exact when ``capped`` is false, otherwise it equals the cap and
    is a lower bound on the max-flow. ``cut_side`` is the source side of a
    minimum cut -- canonically the nodes reachable from s in the final residual
    network -- and is present only for uncapped (completed) runs. ``edge_flows``
    maps edge index -> signed flow, positive along (u, v) as stored.
    """

    __slots__ = ("graph", "s", "t", "value", "capped", "cut_side", "_residual", "_flows")

    def __init__(self, graph: Graph, s: int, t: int, value: int, capped: bool,
                 cut_side: Optional[frozenset[int]], residual: list[int]):
        self.graph = graph
        self.s = s
        self.t = t
        self.value = value
        self.capped = capped
        self.cut_side = cut_side
        self._residual = residual
        self._flows = None

    @property
    def edge_flows(self) -> dict[int, int]:
        if self._flows is None:
            flows = {}
            res = self._residual
            for idx, e in enumerate(self.graph.edges):
                a = 2 * idx
                if e.directed:
                    flows[idx] = e.cap - res[a]
                else:
                    flows[idx] = (res[a + 1] - res[a]) // 2
            self._flows = flows
        return self._flows

    def __repr__(self):
        return f"FlowResult(value={self.value}, capped={self.capped})"


def max_flow(g: Graph, s: int, t: int, cap: Optional[int] = None) -> FlowResult:
    """Maximum s-t flow; with ``cap``, stop as soon as the value reaches it.

    Uncapped runs return the exact value, a feasible integral flow, and the
    source-minimal minimum cut; the value always equals the returned cut's
    capacity. Capped runs satisfy value = min(cap, true max-flow).
    """
    if g.node_caps:
        raise GraphError("max_flow works on edge capacities; split node capacities first")
    if s == t:
        raise FlowError("source and sink must differ")
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise FlowError(f"terminal out of range: s={s}, t={t}")
    if cap is not None and cap < 1:
        raise FlowError(f"cap must be a positive integer, got {cap}")

    n = g.n
    arc_to: list[int] = []
    res: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in g.edges:
        a = len(arc_to)
        arc_to.append(e.v)
        res.append(e.cap)
        arc_to.append(e.u)
        res.append(0 if e.directed else e.cap)
        adj[e.u].append(a)
        adj[e.v].append(a + 1)

    value = 0
    capped = False
    level = [-1] * n

    while True:
        if cap is not None and value >= cap:
            capped = True
            break
        level = [-1] * n
        level[s] = 0
        dq = deque((s,))
        while dq:
            u = dq.popleft()
            lu = level[u] + 1
            for a in adj[u]:
                v = arc_to[a]
                if res[a] > 0 and level[v] < 0:
                    level[v] = lu
                    dq.append(v)
        if level[t] < 0:
            break

        # One blocking flow: repeated current-arc DFS inside the level graph.
        it = [0] * n
        path: list[int] = []
        u = s
        while True:
            if u == t:
                aug = min(res[a] for a in path)
                if cap is not None:
                    aug = min(aug, cap - value)
                for a in path:
                    res[a] -= aug
                    res[a ^ 1] += aug
                value += aug
                if cap is not None and value >= cap:
                    break
                for i, a in enumerate(path):
                    if res[a] == 0:
                        del path[i:]
                        break
                u = arc_to[path[-1]] if path else s
                continue
            arcs = adj[u]
            pos = it[u]
            advanced = False
            while pos < len(arcs):
                a = arcs[pos]
                if res[a] > 0 and level[arc_to[a]] == level[u] + 1:
                    it[u] = pos
                    path.append(a)
                    u = arc_to[a]
                    advanced = True
                    break
                pos += 1
            if not advanced:
                it[u] = pos
                if u == s:
                    break
                level[u] = -1
                a = path.pop()
                u = arc_to[a ^ 1]
                it[u] += 1
        if cap is not None and value >= cap:
            capped = True
            break

    if capped:
        return FlowResult(g, s, t, value, True, None, res)

    side = frozenset(v for v in range(n) if level[v] >= 0)
    cut_cap = 0
    for e in g.edges:
        in_u = e.u in side
        in_v = e.v in side
        if in_u and not in_v:
            cut_cap += e.cap
        elif in_v and not in_u and not e.directed:
            cut_cap += e.cap
    if cut_cap != value:
        raise AssertionError(
            f"max-flow/min-cut mismatch: flow {value}, cut {cut_cap} (s={s}, t={t})")
    return FlowResult(g, s, t, value, False, side, res)


def node_capacitated_flow(g: Graph, s: int, t: int) -> int:
    """Max-flow value of a node-capacitated graph via the splitting transform."""
    return max_flow(split_node_capacities(g, s, t), s, t).value


def flow_decompose(fr: FlowResult, s: int, t: int) -> list[tuple[tuple[int, ...], int]]:
    """Decompose a feasible s->t flow into at most m simple paths with unit counts.

    Returns (path, units) pairs with paths following residual directions and
    units summing to the flow value; circulations not reachable from s are
    dropped. Raises FlowIntegrityError if the flow is infeasible or violates
    conservation.
    """
    g = fr.graph
    out: list[dict[int, int]] = [dict() for _ in range(g.n)]
    net = [0] * g.n
    for idx, e in enumerate(g.edges):
        f = fr.edge_flows[idx]
        if f == 0:
            continue
        if f < 0 and e.directed:
            raise FlowIntegrityError(f"negative flow on directed edge {idx}")
        if abs(f) > e.cap:
            raise FlowIntegrityError(f"flow exceeds capacity on edge {idx}")
        a, b = (e.u, e.v) if f > 0 else (e.v, e.u)
        out[a][b] = out[a].get(b, 0) + abs(f)
        net[a] += abs(f)
        net[b] -= abs(f)
    for v in range(g.n):
        if v not in (s, t) and net[v] != 0:
            raise FlowIntegrityError(f"conservation violated at node {v}")
    if net[s] != fr.value or net[t] != -fr.value:
        raise FlowIntegrityError(
            f"flow value {fr.value} does not match terminal balance {net[s]}")

    def drain(seq: list[int]) -> int:
        units = min(out[seq[i]][seq[i + 1]] for i in range(len(seq) - 1))
        for i in range(len(seq) - 1):
            a, b = seq[i], seq[i + 1]
            out[a][b] -= units
            if out[a][b] == 0:
                del out[a][b]
        return units

    paths: list[tuple[tuple[int, ...], int]] = []
    while out[s]:
        walk = [s]
        pos = {s: 0}
        u = s
        while u != t:
            v = min(out[u])
            if v in pos:
                drain(walk[pos[v]:] + [v])  # cancel the cycle, restart
                walk = [s]
                pos = {s: 0}
                u = s
                if not out[s]:
                    break
                continue
            walk.append(v)
            pos[v] = len(walk) - 1
            u = v
        else:
            paths.append((tuple(walk), drain(walk)))
    return paths
