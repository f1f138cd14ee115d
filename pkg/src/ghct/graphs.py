"""Integer-capacitated multigraphs: construction, file I/O, contraction, and the
node-capacity splitting transform that reduces node-capacitated flow to edge flow."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


class GraphError(ValueError):
    """A graph operation was used outside its contract."""


class ParseError(GraphError):
    """A graph or instance file is malformed; the message names the line."""


@dataclass(frozen=True)
class Edge:
    """One capacitated edge; ``directed`` is only set inside gadget intermediate graphs
    and the digraphs produced by transforms."""

    u: int
    v: int
    cap: int = 1
    directed: bool = False


@dataclass(frozen=True)
class Graph:
    """Multigraph on dense node ids 0..n-1 with positive integer capacities.

    Parallel edges are permitted: an edge of capacity c is interchangeable with c
    parallel unit edges. Undirected edges are normalized to u < v at construction.
    Instances are immutable and safe to share across threads.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    node_caps: Optional[dict[int, int]] = None

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"graph needs at least one node, got n={self.n}")
        norm = []
        for e in self.edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphError(f"edge ({e.u},{e.v}) node id out of range for n={self.n}")
            if e.u == e.v:
                raise GraphError(f"self-loop at node {e.u}")
            if e.cap < 1:
                raise GraphError(f"edge ({e.u},{e.v}) has zero/negative capacity {e.cap}")
            if not e.directed and e.u > e.v:
                e = Edge(e.v, e.u, e.cap)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))
        if self.node_caps is not None:
            for v, c in self.node_caps.items():
                if not 0 <= v < self.n:
                    raise GraphError(f"node capacity for node id out of range: {v}")
                if c < 1:
                    raise GraphError(f"node {v} has zero/negative capacity {c}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_capacity(self) -> int:
        """Number of unit edges in the multigraph view (sum of capacities)."""
        return sum(e.cap for e in self.edges)

    @property
    def has_directed_edges(self) -> bool:
        return any(e.directed for e in self.edges)

    @property
    def is_unit_capacity(self) -> bool:
        return all(e.cap == 1 for e in self.edges)

    def capacity_degrees(self) -> list[int]:
        """Total incident capacity per node; upper-bounds any max-flow at that node."""
        deg = [0] * self.n
        for e in self.edges:
            deg[e.u] += e.cap
            deg[e.v] += e.cap
        return deg

    def canonical_edges(self) -> tuple[tuple[int, int, int, bool], ...]:
        return tuple(sorted((e.u, e.v, e.cap, e.directed) for e in self.edges))


@dataclass(frozen=True)
class Partition:
    """Nonempty, pairwise disjoint node blocks."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise GraphError("partition contains an empty block")
            if seen & b:
                raise GraphError("partition blocks are not disjoint")
            seen |= b

    def covered(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.blocks:
            out |= b
        return frozenset(out)


def contract(g: Graph, p: Partition, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Contract every block of ``p`` except ``keep`` to a single merged node.

    ``keep`` must be exactly one block of ``p`` and ``p`` must cover all nodes.
    Nodes of ``keep`` stay as singletons, renumbered 0..|keep|-1 in ascending
    order; every other block becomes one node, numbered next in the order the
    blocks appear in ``p``. Edges internal to a merged block are dropped and
    parallel edges between the same image pair are summed into one weighted
    edge, so any cut between unions of blocks keeps its capacity.
    """
    if g.node_caps is not None:
        raise GraphError("contract does not support node-capacitated graphs")
    if g.has_directed_edges:
        raise GraphError("contract does not support directed edges")
    keep_set = frozenset(keep)
    if keep_set not in p.blocks:
        raise GraphError("keep is not a block of the partition")
    if p.covered() != frozenset(range(g.n)):
        raise GraphError("partition does not cover all graph nodes")

    mapping: dict[int, int] = {}
    for i, v in enumerate(sorted(keep_set)):
        mapping[v] = i
    nxt = len(keep_set)
    for b in p.blocks:
        if b == keep_set:
            continue
        for v in b:
            mapping[v] = nxt
        nxt += 1

    acc: dict[tuple[int, int], int] = {}
    for e in g.edges:
        mu, mv = mapping[e.u], mapping[e.v]
        if mu == mv:
            continue
        key = (mu, mv) if mu < mv else (mv, mu)
        acc[key] = acc.get(key, 0) + e.cap
    edges = tuple(Edge(u, v, c) for (u, v), c in sorted(acc.items()))
    return Graph(nxt, edges), mapping


def split_node_capacities(g: Graph, s: int, t: int) -> Graph:
    """Split capacitated nodes so edge-capacitated max-flow applies.

    Every node v with a capacity, other than the terminals, becomes a pair
    (v_in, v_out) joined by a directed edge of capacity cap(v); v keeps its
    original id as the in-half and out-halves are appended after id n-1.
    Every undirected edge {u,v} becomes the two arcs u_out->v_in and
    v_out->u_in of capacity INF = (sum of all node capacities) + 1, and a
    directed edge keeps only its stated orientation. Terminal capacities are
    intentionally not enforced: flow out of the source and into the sink is
    unlimited.
    """
    if not g.node_caps:
        raise GraphError("split_node_capacities requires node capacities")
    if s == t:
        raise GraphError("terminals must differ")
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise GraphError(f"terminal out of range: s={s}, t={t}")

    inf = sum(g.node_caps.values()) + 1
    out_id: dict[int, int] = {}
    nxt = g.n
    for v in range(g.n):
        if v in (s, t) or v not in g.node_caps:
            continue
        out_id[v] = nxt
        nxt += 1

    edges = [Edge(v, out_id[v], g.node_caps[v], True) for v in sorted(out_id)]
    for e in g.edges:
        eu_out = out_id.get(e.u, e.u)
        ev_out = out_id.get(e.v, e.v)
        edges.append(Edge(eu_out, e.v, inf, True))
        if not e.directed:
            edges.append(Edge(ev_out, e.u, inf, True))
    return Graph(nxt, tuple(edges))


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    Records: comment lines ``c ...``; one header ``p ghct <n> <m>``; edge lines
    ``e <u> <v> [cap]`` (cap defaults to 1); node capacities ``n <v> <cap>``;
    directed gadget edges ``d <u> <v> [cap]``. Ids are 0-based and whitespace
    separated; the header must declare the exact number of edge lines.
    """
    n: Optional[int] = None
    declared_m: Optional[int] = None
    edges: list[Edge] = []
    caps: dict[int, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()

        def fail(msg: str):
            raise ParseError(f"line {lineno}: {msg}: {raw.strip()!r}")

        def num(tok: str) -> int:
            try:
                return int(tok)
            except ValueError:
                fail(f"expected an integer, got {tok!r}")

        kind = parts[0]
        if kind == "p":
            if n is not None:
                fail("duplicate header")
            if len(parts) != 4 or parts[1] != "ghct":
                fail("expected 'p ghct <n> <m>'")
            n, declared_m = num(parts[2]), num(parts[3])
            if n < 1:
                fail("node count must be positive")
        elif kind in ("e", "d"):
            if n is None:
                fail("edge before 'p ghct' header")
            if len(parts) not in (3, 4):
                fail(f"expected '{kind} <u> <v> [cap]'")
            u, v = num(parts[1]), num(parts[2])
            cap = num(parts[3]) if len(parts) == 4 else 1
            if not (0 <= u < n and 0 <= v < n):
                fail("node id out of range")
            if u == v:
                fail("self-loop")
            if cap < 1:
                fail("zero/negative capacity")
            edges.append(Edge(u, v, cap, directed=(kind == "d")))
        elif kind == "n":
            if n is None:
                fail("node capacity before 'p ghct' header")
            if len(parts) != 3:
                fail("expected 'n <v> <cap>'")
            v, cap = num(parts[1]), num(parts[2])
            if not 0 <= v < n:
                fail("node id out of range")
            if cap < 1:
                fail("zero/negative capacity")
            caps[v] = cap
        else:
            fail(f"unknown record type {kind!r}")

    if n is None:
        raise ParseError("missing 'p ghct <n> <m>' header")
    if declared_m != len(edges):
        raise ParseError(f"header declares {declared_m} edges, file has {len(edges)}")
    return Graph(n, tuple(edges), caps or None)


def format_graph(g: Graph) -> str:
    lines = [f"p ghct {g.n} {g.m}"]
    if g.node_caps:
        for v in sorted(g.node_caps):
            lines.append(f"n {v} {g.node_caps[v]}")
    for e in g.edges:
        if e.directed:
            lines.append(f"d {e.u} {e.v} {e.cap}")
        elif e.cap == 1:
            lines.append(f"e {e.u} {e.v}")
        else:
            lines.append(f"e {e.u} {e.v} {e.cap}")
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
