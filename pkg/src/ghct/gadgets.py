"""Hardness-gadget generators and checkers.

Two reductions into node-capacitated max-flow on (mostly) undirected graphs:

* an orthogonal-vectors instance over three sets of n binary d-vectors maps to
  a layered graph where a vector-pair flow stays below a threshold exactly when
  some middle vector is coordinatewise orthogonal to the pair;
* a boolean matrix product maps to a capacity-weighted tripartite graph where
  an entry of the product is 1 exactly when the corresponding terminal pair
  supports a large flow through the middle layer.

Capacity gaps between the layers force flow to advance rather than crisscross:
a two-hop path through a fat middle node beats any detour through unit-capacity
outer nodes. Capacitated connector edges are realized by subdividing them with
a unit-capacity node, so every remaining edge is uncapacitated (a shared INF of
one more than the total node capacity).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import Edge, Graph, GraphError, ParseError
from .maxflow import node_capacitated_flow

Vector = tuple[int, ...]


def _check_vectors(name: str, vecs: Sequence[Sequence[int]], d: int) -> tuple[Vector, ...]:
    out = []
    for vec in vecs:
        tup = tuple(int(x) for x in vec)
        if len(tup) != d:
            raise GraphError(f"{name}: vector {tup} has dimension {len(tup)}, expected {d}")
        if any(x not in (0, 1) for x in tup):
            raise GraphError(f"{name}: vector entries must be 0/1, got {tup}")
        out.append(tup)
    return tuple(out)


@dataclass(frozen=True)
class OVInstance:
    """Three equal-size sets of n binary vectors of dimension d."""

    u1: tuple[Vector, ...]
    u2: tuple[Vector, ...]
    u3: tuple[Vector, ...]

    def __post_init__(self):
        if not self.u1 or not self.u1[0]:
            raise GraphError("instance needs at least one vector of positive dimension")
        d = len(self.u1[0])
        n = len(self.u1)
        for name, vecs in (("u1", self.u1), ("u2", self.u2), ("u3", self.u3)):
            if len(vecs) != n:
                raise GraphError(f"{name} has {len(vecs)} vectors, expected {n}")
            object.__setattr__(self, name, _check_vectors(name, vecs, d))

    @property
    def n(self) -> int:
        return len(self.u1)

    @property
    def d(self) -> int:
        return len(self.u1[0])


@dataclass(frozen=True)
class BMMInstance:
    """Two n x n boolean matrices."""

    p: tuple[tuple[int, ...], ...]
    q: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.p)
        if n == 0:
            raise GraphError("matrices must be nonempty")
        for name, mat in (("p", self.p), ("q", self.q)):
            if len(mat) != n:
                raise GraphError("matrices must be square and of equal size")
            object.__setattr__(self, name, _check_vectors(name, mat, n))

    @property
    def n(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class GadgetGraph:
    """A generated gadget plus its layer layout and terminal index maps."""

    graph: Graph
    kind: str  # "ov-intermediate" | "ov-final" | "bmm"
    n: int
    d: int
    layers: dict[str, tuple[int, ...]]
    source_ids: tuple[int, ...]  # node of the i-th left-terminal vector
    sink_ids: tuple[int, ...]    # node of the i-th right-terminal vector
    declared_node_count: int     # before the subdivision nodes

    def terminal_flow(self, i: int, j: int) -> int:
        """Node-capacitated max-flow between left terminal i and right terminal j."""
        return node_capacitated_flow(self.graph, self.source_ids[i], self.sink_ids[j])


def _build_3ov(ov: OVInstance, directed_first_layer: bool, scale_inner: int) -> GadgetGraph:
    n, d = ov.n, ov.d
    if d < 2:
        raise GraphError(f"gadget construction needs dimension >= 2, got d={d}")

    # layer ids, in order: left terminals, coordinate pair layer, per-vector
    # coordinate nodes + collector, shared hub, coordinate layer, right terminals
    v1 = tuple(range(n))
    a0 = tuple(n + 2 * i for i in range(d))
    a1 = tuple(n + 2 * i + 1 for i in range(d))
    base = n + 2 * d
    beta = tuple(tuple(base + b * d + i for i in range(d)) for b in range(n))
    beta_prime = tuple(base + n * d + b for b in range(n))
    hub = base + n * d + n
    bb = tuple(hub + 1 + i for i in range(d))
    v3 = tuple(hub + 1 + d + c for c in range(n))
    declared = n + 2 * d + n * d + n + 1 + d + n

    def scaled(c: int) -> int:
        return c * scale_inner

    caps: dict[int, int] = {}
    for a in v1:
        caps[a] = 1
    for i in range(d):
        caps[a0[i]] = scaled(n)
        caps[a1[i]] = scaled(n)
    for b in range(n):
        for i in range(d):
            caps[beta[b][i]] = scaled(1)
        caps[beta_prime[b]] = scaled(d - 1)
    caps[hub] = scaled(n * (d - 1))
    for i in range(d):
        caps[bb[i]] = scaled(n)
    for c in v3:
        caps[c] = 1

    plain: list[tuple[int, int, bool]] = []  # (u, v, directed)
    for a, vec in zip(v1, ov.u1):
        for i in range(d):
            target = a1[i] if vec[i] == 1 else a0[i]
            plain.append((a, target, directed_first_layer))
    for b, vec in enumerate(ov.u2):
        for i in range(d):
            if vec[i] == 1:
                plain.append((beta[b][i], bb[i], False))
    for c, vec in zip(v3, ov.u3):
        for i in range(d):
            if vec[i] == 1:
                plain.append((bb[i], c, False))
    for b in range(n):
        for i in range(d):
            plain.append((beta[b][i], beta_prime[b], False))
        plain.append((beta_prime[b], hub, False))
    for c in v3:
        plain.append((hub, c, False))

    # unit-capacity connectors, realized by subdividing with a capacity-1 node
    connectors: list[tuple[int, int]] = []
    for b in range(n):
        for i in range(d):
            connectors.append((a0[i], beta_prime[b]))
            connectors.append((a1[i], beta[b][i]))

    subdivision = []
    nxt = declared
    for _ in connectors:
        subdivision.append(nxt)
        caps[nxt] = scaled(1)
        nxt += 1

    inf = sum(caps.values()) + 1
    edges: list[Edge] = [Edge(u, v, inf, directed) for u, v, directed in plain]
    for (u, v), mid in zip(connectors, subdivision):
        edges.append(Edge(u, mid, inf, False))
        edges.append(Edge(mid, v, inf, False))

    graph = Graph(nxt, tuple(edges), caps)
    layers = {
        "v1": v1,
        "a": a0 + a1,
        "beta": tuple(x for row in beta for x in row),
        "beta_prime": beta_prime,
        "hub": (hub,),
        "b": bb,
        "v3": v3,
        "subdivision": tuple(subdivision),
    }
    kind = "ov-intermediate" if directed_first_layer else "ov-final"
    return GadgetGraph(graph, kind, n, d, layers, v1, v3, declared)


def build_3ov_intermediate(ov: OVInstance) -> GadgetGraph:
    """Layered gadget with the left layer's edges directed.

    For terminals (a, c): if no middle vector is orthogonal to the pair the
    max-flow reaches n*d, and any orthogonal middle vector caps it at n*d - 1.
    """
    return _build_3ov(ov, directed_first_layer=True, scale_inner=1)


def build_3ov_final(ov: OVInstance) -> GadgetGraph:
    """Fully undirected gadget; inner capacities are scaled by 2n.

    The flow threshold becomes 2*n^2*d: losing the edge directions lets outer
    terminals leak flow, but their unit capacities bound the leak below the
    scaled gap.
    """
    return _build_3ov(ov, directed_first_layer=False, scale_inner=2 * ov.n)


def flow_threshold(ov: OVInstance) -> int:
    return 2 * ov.n * ov.n * ov.d


def is_orthogonal_triple(a: Vector, b: Vector, c: Vector) -> bool:
    return all(x * y * z == 0 for x, y, z in zip(a, b, c))


def has_orthogonal_blocker(ov: OVInstance, i: int, j: int) -> bool:
    """True iff some middle vector is coordinatewise orthogonal with pair (i, j)."""
    return any(is_orthogonal_triple(ov.u1[i], b, ov.u3[j]) for b in ov.u2)


def solve_3ov_bruteforce(ov: OVInstance) -> Optional[tuple[int, int, int]]:
    """First orthogonal triple (i, j, k) by index order, or None."""
    for i, a in enumerate(ov.u1):
        for j, b in enumerate(ov.u2):
            for k, c in enumerate(ov.u3):
                if is_orthogonal_triple(a, b, c):
                    return (i, j, k)
    return None


@dataclass(frozen=True)
class OVGadgetReport:
    n: int
    d: int
    threshold: int
    pair_flows: dict[tuple[int, int], int]
    pair_blocked: dict[tuple[int, int], bool]
    triple: Optional[tuple[int, int, int]]
    min_flow: int
    max_blocked_flow: Optional[int]  # largest flow among blocked pairs
    dichotomy_ok: bool               # flow >= threshold iff the pair is unblocked
    equivalence_ok: bool             # min flow >= threshold iff no triple exists
    ok: bool


def check_gadget(ov: OVInstance) -> OVGadgetReport:
    """Exhaustively compare gadget flows against the brute-force vector scan."""
    gadget = build_3ov_final(ov)
    thr = flow_threshold(ov)
    flows: dict[tuple[int, int], int] = {}
    blocked: dict[tuple[int, int], bool] = {}
    for i in range(ov.n):
        for j in range(ov.n):
            flows[(i, j)] = gadget.terminal_flow(i, j)
            blocked[(i, j)] = has_orthogonal_blocker(ov, i, j)
    triple = solve_3ov_bruteforce(ov)
    min_flow = min(flows.values())
    blocked_flows = [f for pair, f in flows.items() if blocked[pair]]
    max_blocked = max(blocked_flows) if blocked_flows else None
    dichotomy = all((flows[p] >= thr) == (not blocked[p]) for p in flows)
    equivalence = (min_flow >= thr) == (triple is None)
    return OVGadgetReport(ov.n, ov.d, thr, flows, blocked, triple, min_flow,
                          max_blocked, dichotomy, equivalence,
                          dichotomy and equivalence)


def build_bmm_gadget(p: Sequence[Sequence[int]], q: Sequence[Sequence[int]]) -> GadgetGraph:
    """Tripartite boolean-product gadget: outer nodes capacity 1, middle 2n.

    The product entry (a, c) is 1 iff the max-flow between the two terminals is
    at least 2n; otherwise every flow path crosses another unit-capacity outer
    node, which bounds the value by 2n - 2.
    """
    inst = BMMInstance(tuple(tuple(row) for row in p), tuple(tuple(row) for row in q))
    n = inst.n
    a_ids = tuple(range(n))
    b_ids = tuple(n + i for i in range(n))
    c_ids = tuple(2 * n + i for i in range(n))
    caps = {v: 1 for v in a_ids + c_ids}
    caps.update({v: 2 * n for v in b_ids})
    inf = sum(caps.values()) + 1
    edges = []
    for i in range(n):
        for j in range(n):
            if inst.p[i][j]:
                edges.append(Edge(a_ids[i], b_ids[j], inf))
    for i in range(n):
        for j in range(n):
            if inst.q[i][j]:
                edges.append(Edge(b_ids[i], c_ids[j], inf))
    graph = Graph(3 * n, tuple(edges), caps)
    layers = {"a": a_ids, "b": b_ids, "c": c_ids}
    return GadgetGraph(graph, "bmm", n, 0, layers, a_ids, c_ids, 3 * n)


def bmm_flow_matrix(gadget: GadgetGraph) -> list[list[int]]:
    n = gadget.n
    return [[gadget.terminal_flow(i, j) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# instance files


def format_ov_instance(ov: OVInstance) -> str:
    lines = [f"ov {ov.n} {ov.d}"]
    for block in (ov.u1, ov.u2, ov.u3):
        lines.extend("".join(str(x) for x in vec) for vec in block)
    return "\n".join(lines) + "\n"


def parse_ov_instance(text: str) -> OVInstance:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("c")]
    if not lines or not lines[0].startswith("ov"):
        raise ParseError("missing 'ov <n> <d>' header")
    parts = lines[0].split()
    if len(parts) != 3:
        raise ParseError("expected 'ov <n> <d>'")
    try:
        n, d = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ParseError(f"bad header: {exc}") from exc
    rows = lines[1:]
    if len(rows) != 3 * n:
        raise ParseError(f"expected {3 * n} vector rows, found {len(rows)}")
    vecs = []
    for lineno, row in enumerate(rows, start=2):
        if len(row) != d or any(ch not in "01" for ch in row):
            raise ParseError(f"line {lineno}: expected a {d}-character bitstring: {row!r}")
        vecs.append(tuple(int(ch) for ch in row))
    return OVInstance(tuple(vecs[:n]), tuple(vecs[n:2 * n]), tuple(vecs[2 * n:]))


def format_bmm_instance(inst: BMMInstance) -> str:
    lines = [f"bmm {inst.n}"]
    for mat in (inst.p, inst.q):
        lines.extend("".join(str(x) for x in row) for row in mat)
    return "\n".join(lines) + "\n"


def parse_bmm_instance(text: str) -> BMMInstance:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("c")]
    if not lines or not lines[0].startswith("bmm"):
        raise ParseError("missing 'bmm <n>' header")
    parts = lines[0].split()
    if len(parts) != 2:
        raise ParseError("expected 'bmm <n>'")
    try:
        n = int(parts[1])
    except ValueError as exc:
        raise ParseError(f"bad header: {exc}") from exc
    rows = lines[1:]
    if len(rows) != 2 * n:
        raise ParseError(f"expected {2 * n} matrix rows, found {len(rows)}")
    mats = []
    for lineno, row in enumerate(rows, start=2):
        if len(row) != n or any(ch not in "01" for ch in row):
            raise ParseError(f"line {lineno}: expected an {n}-character bitstring: {row!r}")
        mats.append(tuple(int(ch) for ch in row))
    return BMMInstance(tuple(mats[:n]), tuple(mats[n:]))
