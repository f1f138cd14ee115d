"""Certifying prover/verifier for cut-equivalent trees.

The prover replays the candidate tree as a sequence of star expansions, one per
node of a recursive centroid decomposition taken in order of increasing depth.
Each expansion replaces the super-node holding the centroid by a star of its
tree components, builds the matching contracted auxiliary graph, evaluates all
claimed cuts there in a single edge pass, and attaches evidence that every cut
is minimum: either per-neighbor flows, or edge-disjoint directed trees packed
in the Eulerian transform of the auxiliary graph.

The verifier replays the expansions recorded in the witness (any order that
refines the tree to singletons is accepted, centroid or not), recomputes the
auxiliary graphs itself, re-evaluates the cuts, and checks the evidence. The
first failing step aborts with a machine-readable rejection. Expansions at the
same decomposition depth touch disjoint auxiliary graphs, so they could be
checked concurrently; this implementation keeps a single thread.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .cuttree import CutTree
from .graphs import Edge, Graph, GraphError, Partition, contract
from .maxflow import max_flow


class CertifierError(ValueError):
    """Prover-side contract violation."""


class WitnessFormatError(ValueError):
    """A serialized witness cannot be decoded."""


# ---------------------------------------------------------------------------
# centroid decomposition


@dataclass(frozen=True)
class CentroidPlan:
    """Recursive centroid decomposition: processing order, per-node depth, and
    the component each centroid was computed in."""

    order: tuple[int, ...]
    depth: dict[int, int]
    subtree_nodes: dict[int, frozenset[int]]


def _find_centroid(adj: list[list[int]], comp: frozenset[int]) -> int:
    """Smallest-id node whose removal leaves parts of at most half the size."""
    total = len(comp)
    if total == 1:
        return next(iter(comp))
    root = min(comp)
    parent = {root: None}
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in comp and v not in parent:
                parent[v] = u
                order.append(v)
                stack.append(v)
    size = {v: 1 for v in comp}
    heaviest = {v: 0 for v in comp}
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            size[p] += size[v]
            heaviest[p] = max(heaviest[p], size[v])
    best = None
    for v in sorted(comp):
        max_part = max(heaviest[v], total - size[v])
        if max_part <= total // 2 and best is None:
            best = v
    assert best is not None
    return best


def centroid_decompose(t: CutTree) -> CentroidPlan:
    """Decompose ``t`` recursively; same-depth centroids are ordered by id."""
    n = t.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for v, p, _ in t.edge_list():
        adj[v].append(p)
        adj[p].append(v)

    order: list[int] = []
    depth: dict[int, int] = {}
    subtree: dict[int, frozenset[int]] = {}
    comps: list[frozenset[int]] = [frozenset(range(n))]
    d = 0
    while comps:
        found = sorted((_find_centroid(adj, comp), comp) for comp in comps)
        nxt: list[frozenset[int]] = []
        for c, comp in found:
            order.append(c)
            depth[c] = d
            subtree[c] = comp
            remaining = comp - {c}
            seen: set[int] = set()
            for start in sorted(remaining):
                if start in seen:
                    continue
                sub = {start}
                stack = [start]
                while stack:
                    u = stack.pop()
                    for v in adj[u]:
                        if v in remaining and v not in sub:
                            sub.add(v)
                            stack.append(v)
                seen |= sub
                nxt.append(frozenset(sub))
        comps = nxt
        d += 1
    return CentroidPlan(tuple(order), depth, subtree)


# ---------------------------------------------------------------------------
# witness data model


@dataclass(frozen=True)
class CutClaim:
    """One claimed minimum cut: the tree side of ``neighbor`` and its value."""

    neighbor: int
    side: frozenset[int]  # original node ids
    value: int


@dataclass(frozen=True)
class FlowEvidence:
    """Per-neighbor feasible flows in the auxiliary graph, indexed by its
    canonical edge order."""

    flows: tuple[tuple[int, tuple[int, ...]], ...]  # (neighbor, signed flow per edge)

    kind = "flows"


@dataclass(frozen=True)
class PackingEvidence:
    """Edge-disjoint directed trees in the Eulerian transform of the auxiliary
    graph, each tree given as (child, parent) arcs."""

    trees: tuple[tuple[tuple[int, int], ...], ...]

    kind = "packing"


@dataclass(frozen=True)
class ExpansionRecord:
    centroid: int
    blocks: tuple[tuple[int, ...], ...]  # aux partition; index = auxiliary node id
    cuts: tuple[CutClaim, ...]
    evidence: Union[FlowEvidence, PackingEvidence]


@dataclass(frozen=True)
class Witness:
    n: int
    expansions: tuple[ExpansionRecord, ...]


@dataclass(frozen=True)
class VerifyResult:
    """Accept, or Reject with the failing expansion and check."""

    accepted: bool
    expansion: Optional[int] = None
    centroid: Optional[int] = None
    check: Optional[str] = None  # structure | cut-check | flow-check | malformed
    detail: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def to_dict(self) -> dict:
        if self.accepted:
            return {"result": "accept"}
        return {
            "result": "reject",
            "expansion": self.expansion,
            "centroid": self.centroid,
            "check": self.check,
            "detail": self.detail,
        }


ACCEPT = VerifyResult(True)


# ---------------------------------------------------------------------------
# expansion replay


@dataclass(frozen=True)
class ExpansionView:
    """Everything one expansion exposes: the auxiliary graph, the claimed cut
    sides both in original and auxiliary ids, and the tree weights to match."""

    centroid: int
    block: frozenset[int]
    aux: Graph
    mapping: dict[int, int]
    partition_by_aux_id: tuple[tuple[int, ...], ...]
    neighbors: tuple[int, ...]
    weights: tuple[int, ...]
    sides_nodes: tuple[frozenset[int], ...]
    sides_aux: tuple[frozenset[int], ...]


class _ExpansionSim:
    """Replays star expansions, mirroring a truncated classical construction."""

    def __init__(self, g: Graph, t: CutTree):
        if t.n != g.n:
            raise GraphError(f"tree has {t.n} nodes, graph has {g.n}")
        self.g = g
        self.t = t
        n = g.n
        self.tadj: list[list[tuple[int, int]]] = t.adjacency()
        self.blocks: list[set[int]] = [set(range(n))]
        self.block_of = [0] * n
        # state-tree adjacency; the value is the tree edge (x, y) that crosses
        # between the two blocks, with x on this block's side
        self.nbrs: list[dict[int, tuple[int, int]]] = [dict()]

    def all_singletons(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def expand(self, c: int) -> Optional[ExpansionView]:
        if not 0 <= c < self.g.n:
            raise GraphError(f"centroid id out of range: {c}")
        bi = self.block_of[c]
        block = frozenset(self.blocks[bi])
        if len(block) == 1:
            return None

        # components of the candidate tree inside the block, minus the centroid
        groups: list[tuple[int, int, set[int]]] = []  # (neighbor, weight, component)
        for nb, w in self.tadj[c]:
            if nb not in block:
                continue
            comp = {nb}
            stack = [nb]
            while stack:
                u = stack.pop()
                for v, _ in self.tadj[u]:
                    if v != c and v in block and v not in comp:
                        comp.add(v)
                        stack.append(v)
            groups.append((nb, w, comp))
        groups.sort()

        # full tree side of each neighbor (component of t minus the edge (c, nb))
        sides: list[frozenset[int]] = []
        for nb, _, _ in groups:
            side = {nb}
            stack = [nb]
            while stack:
                u = stack.pop()
                for v, _ in self.tadj[u]:
                    if v != c and v not in side:
                        side.add(v)
                        stack.append(v)
            sides.append(frozenset(side))

        # components of the state tree around this block -> merged aux nodes
        comps: list[frozenset[int]] = []
        seen = {bi}
        for nb_block in self.nbrs[bi]:
            if nb_block in seen:
                continue
            stack = [nb_block]
            seen.add(nb_block)
            nodes: set[int] = set()
            while stack:
                b = stack.pop()
                nodes |= self.blocks[b]
                for b2 in self.nbrs[b]:
                    if b2 not in seen:
                        seen.add(b2)
                        stack.append(b2)
            comps.append(frozenset(nodes))
        comps.sort(key=min)

        parts = (block,) + tuple(comps)
        aux, mapping = contract(self.g, Partition(parts), block)

        partition_by_aux_id: list[tuple[int, ...]] = [(v,) for v in sorted(block)]
        partition_by_aux_id.extend(tuple(sorted(comp)) for comp in comps)

        sides_aux: list[frozenset[int]] = []
        for side in sides:
            ids = {mapping[v] for v in side & block}
            for comp in comps:
                inter = comp & side
                if inter == comp:
                    ids.add(mapping[min(comp)])
                elif inter:
                    raise AssertionError("merged component straddles a tree cut")
            sides_aux.append(frozenset(ids))

        view = ExpansionView(
            centroid=c,
            block=block,
            aux=aux,
            mapping=mapping,
            partition_by_aux_id=tuple(partition_by_aux_id),
            neighbors=tuple(nb for nb, _, _ in groups),
            weights=tuple(w for _, w, _ in groups),
            sides_nodes=tuple(sides),
            sides_aux=tuple(sides_aux),
        )

        # apply the expansion to the state tree
        old_nbrs = self.nbrs[bi]
        self.blocks[bi] = {c}
        self.nbrs[bi] = {}
        for nb, _, comp in groups:
            j = len(self.blocks)
            self.blocks.append(set(comp))
            for v in comp:
                self.block_of[v] = j
            self.nbrs.append({})
            self.nbrs[bi][j] = (c, nb)
            self.nbrs[j][bi] = (nb, c)
        for nb_block, (x, y) in old_nbrs.items():
            home = self.block_of[x]
            del self.nbrs[nb_block][bi]
            self.nbrs[home][nb_block] = (x, y)
            self.nbrs[nb_block][home] = (y, x)
        return view


def _evaluate_cuts(aux: Graph, sides_aux: Sequence[frozenset[int]],
                   centroid_aux: int) -> tuple[Optional[list[int]], int, str]:
    """Evaluate all disjoint cut capacities in one pass over the edges.

    Returns (values, updates, error). Each edge contributes to at most two of
    the cuts, so the number of accumulator updates is bounded by 2|E|.
    """
    side_of = [-1] * aux.n
    for k, side in enumerate(sides_aux):
        for v in side:
            if side_of[v] != -1:
                return None, 0, f"cut sides {side_of[v]} and {k} overlap at aux node {v}"
            side_of[v] = k
    if side_of[centroid_aux] != -1:
        return None, 0, "a cut side contains the expanded node"
    values = [0] * len(sides_aux)
    updates = 0
    for e in aux.edges:
        a, b = side_of[e.u], side_of[e.v]
        if a == b:
            continue
        if a >= 0:
            values[a] += e.cap
            updates += 1
        if b >= 0:
            values[b] += e.cap
            updates += 1
    assert updates <= 2 * aux.m, "cut evaluation touched an edge more than twice"
    return values, updates, ""


# ---------------------------------------------------------------------------
# Eulerian transform and tree packings


def eulerian_transform(h: Graph) -> Graph:
    """Subdivide each unit edge with a fresh middle node, then orient both ways.

    A capacity-c edge counts as c parallel unit edges, so the result has
    |V| + U nodes and 4U unit arcs for U = total capacity, is Eulerian, and
    preserves all min-cut values between original nodes.
    """
    if h.has_directed_edges:
        raise GraphError("eulerian_transform expects an undirected multigraph")
    edges: list[Edge] = []
    mid = h.n
    for e in h.edges:
        for _ in range(e.cap):
            edges.append(Edge(e.u, mid, 1, True))
            edges.append(Edge(mid, e.v, 1, True))
            edges.append(Edge(e.v, mid, 1, True))
            edges.append(Edge(mid, e.u, 1, True))
            mid += 1
    return Graph(mid, tuple(edges))


def _packing_failure(h: Graph, root: int, lam: Mapping[int, int],
                     trees: Sequence[Sequence[tuple[int, int]]]) -> Optional[str]:
    he = eulerian_transform(h)
    arcs = {(e.u, e.v) for e in he.edges}
    used: set[tuple[int, int]] = set()
    containing = [0] * he.n
    for ti, tree in enumerate(trees):
        parent_of: dict[int, int] = {}
        for child, parent in tree:
            if not (0 <= child < he.n and 0 <= parent < he.n):
                return f"tree {ti} refers to a node outside the transformed graph"
            if (parent, child) not in arcs:
                return f"tree {ti} uses arc ({parent},{child}) absent from the transformed graph"
            if (parent, child) in used:
                return f"trees share arc ({parent},{child})"
            used.add((parent, child))
            if child in parent_of:
                return f"tree {ti} gives node {child} two parents"
            if child == root:
                return f"tree {ti} gives the root a parent"
            parent_of[child] = parent
        nodes = {root}
        for child in parent_of:
            seen_chain = set()
            x = child
            while x != root:
                if x in seen_chain:
                    return f"tree {ti} contains a cycle through node {x}"
                seen_chain.add(x)
                if x not in parent_of:
                    return f"tree {ti} is not connected to the root at node {x}"
                x = parent_of[x]
            nodes |= seen_chain
        for v in nodes:
            containing[v] += 1
    for v, need in lam.items():
        if not 0 <= v < he.n:
            return f"requirement on unknown node {v}"
        if containing[v] < need:
            return f"node {v} appears in {containing[v]} trees, needs {need}"
    return None


def check_tree_packing(h: Graph, root: int, lam: Mapping[int, int],
                       trees: Sequence[Sequence[tuple[int, int]]]) -> bool:
    """True iff the trees are pairwise edge-disjoint directed trees rooted at
    ``root`` in the Eulerian transform of ``h``, and every node v lies in at
    least lam(v) of them. Such a packing lower-bounds every root-to-v max-flow."""
    if not 0 <= root < h.n:
        raise GraphError(f"root out of range: {root}")
    return _packing_failure(h, root, lam, trees) is None


def pack_trees(h: Graph, root: int, demands: Mapping[int, int],
               attempts: int = 16) -> Optional[tuple[tuple[tuple[int, int], ...], ...]]:
    """Best-effort greedy packing meeting ``demands``; None when it fails.

    Tree i must reach every node with demand >= i; each search extracts a
    pruned reachability tree from the remaining arcs. Later attempts shuffle
    arc order with a seeded generator, so output is deterministic.
    """
    he = eulerian_transform(h)
    rounds = max(demands.values(), default=0)
    if rounds == 0:
        return ()
    base_adj: list[list[int]] = [[] for _ in range(he.n)]
    for e in he.edges:
        base_adj[e.u].append(e.v)
    for lst in base_adj:
        lst.sort()

    for attempt in range(attempts):
        adj = [list(lst) for lst in base_adj]
        if attempt > 0:
            rng = random.Random(attempt)
            for lst in adj:
                rng.shuffle(lst)
        removed: set[tuple[int, int]] = set()
        trees: list[tuple[tuple[int, int], ...]] = []
        ok = True
        for i in range(1, rounds + 1):
            required = [v for v, need in demands.items() if need >= i]
            parent: dict[int, int] = {root: -1}
            stack = [root]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v not in parent and (u, v) not in removed:
                        parent[v] = u
                        stack.append(v)
            if any(v not in parent for v in required):
                ok = False
                break
            keep: set[int] = set()
            for v in required:
                x = v
                while x != root and x not in keep:
                    keep.add(x)
                    x = parent[x]
            arcs = tuple(sorted((v, parent[v]) for v in keep))
            for child, par in arcs:
                removed.add((par, child))
            trees.append(arcs)
        if ok:
            return tuple(trees)
    return None


# ---------------------------------------------------------------------------
# prover


def prove(g: Graph, t: CutTree, evidence: str = "auto",
          packing_attempts: int = 16, order: Optional[Sequence[int]] = None) -> Witness:
    """Produce a witness certifying that ``t`` is a cut-equivalent tree of ``g``.

    Claimed values are never invented: each equals the capacity of the
    tree-induced cut evaluated in the auxiliary graph. ``evidence`` selects the
    attachment: "flows" always works, "packing" fails when the greedy packer
    gives up, "auto" prefers a packing and falls back to flows. Expansions
    follow the recursive centroid decomposition unless ``order`` overrides it;
    the verifier accepts any order that refines the tree to singletons.
    """
    if evidence not in ("auto", "flows", "packing"):
        raise CertifierError(f"unknown evidence mode {evidence!r}")
    if order is None:
        order = centroid_decompose(t).order
    sim = _ExpansionSim(g, t)
    records: list[ExpansionRecord] = []
    for c in order:
        view = sim.expand(c)
        if view is None:
            continue
        values, _, err = _evaluate_cuts(view.aux, view.sides_aux, view.mapping[c])
        if err:
            raise AssertionError(err)
        cuts = tuple(
            CutClaim(nb, side, val)
            for nb, side, val in zip(view.neighbors, view.sides_nodes, values))

        ev: Union[FlowEvidence, PackingEvidence, None] = None
        if evidence in ("auto", "packing"):
            demands = {view.mapping[nb]: val for nb, val in zip(view.neighbors, values)}
            trees = pack_trees(view.aux, view.mapping[c], demands, attempts=packing_attempts)
            if trees is not None:
                ev = PackingEvidence(trees)
            elif evidence == "packing":
                raise CertifierError(
                    f"greedy packer failed for the expansion at node {c}")
        if ev is None:
            rows = []
            for nb in view.neighbors:
                fr = max_flow(view.aux, view.mapping[c], view.mapping[nb])
                rows.append((nb, tuple(fr.edge_flows[i] for i in range(view.aux.m))))
            ev = FlowEvidence(tuple(rows))
        records.append(ExpansionRecord(c, view.partition_by_aux_id, cuts, ev))
    return Witness(g.n, tuple(records))


# ---------------------------------------------------------------------------
# verifier


def _check_flow_evidence(view: ExpansionView, ev: FlowEvidence) -> Optional[str]:
    aux = view.aux
    got = dict(ev.flows)
    if len(got) != len(ev.flows):
        return "duplicate neighbor in flow evidence"
    for nb, want in zip(view.neighbors, view.weights):
        if nb not in got:
            return f"missing flow for neighbor {nb}"
        flows = got.pop(nb)
        if len(flows) != aux.m:
            return f"flow for neighbor {nb} has {len(flows)} entries, expected {aux.m}"
        net = [0] * aux.n
        for idx, e in enumerate(aux.edges):
            f = flows[idx]
            if abs(f) > e.cap:
                return f"flow for neighbor {nb} exceeds capacity on edge {idx}"
            net[e.u] -= f
            net[e.v] += f
        src, dst = view.mapping[view.centroid], view.mapping[nb]
        for v in range(aux.n):
            if v not in (src, dst) and net[v] != 0:
                return f"flow for neighbor {nb} violates conservation at aux node {v}"
        value = -net[src]
        if value != net[dst]:
            return f"flow for neighbor {nb} has unbalanced terminals"
        if value < want:
            return f"flow value {value} for neighbor {nb} is below the claimed {want}"
    return None


def verify(g: Graph, t: CutTree, w: Witness) -> VerifyResult:
    """Check a witness; Accept implies ``t`` is a cut-equivalent tree of ``g``.

    Every expansion must pass the single-pass cut check (each claimed value
    equals both the evaluated capacity and the tree edge weight) and the flow
    check (the evidence proves each cut is minimum). Any malformed input is a
    rejection, never an exception.
    """
    if w.n != g.n or t.n != g.n:
        return VerifyResult(False, check="malformed",
                            detail=f"size mismatch: graph {g.n}, tree {t.n}, witness {w.n}")
    try:
        sim = _ExpansionSim(g, t)
    except GraphError as exc:
        return VerifyResult(False, check="malformed", detail=str(exc))

    for i, rec in enumerate(w.expansions):
        def reject(check: str, detail: str) -> VerifyResult:
            return VerifyResult(False, expansion=i, centroid=rec.centroid,
                                check=check, detail=detail)

        try:
            view = sim.expand(rec.centroid)
        except (GraphError, AssertionError) as exc:
            return reject("structure", str(exc))
        if view is None:
            return reject("structure", "expansion on a singleton super-node")
        if rec.blocks != view.partition_by_aux_id:
            return reject("structure", "auxiliary partition does not match the tree state")
        if tuple(cut.neighbor for cut in rec.cuts) != view.neighbors:
            return reject("structure", "claimed neighbors do not match the tree")
        for cut, side in zip(rec.cuts, view.sides_nodes):
            if cut.side != side:
                return reject("structure",
                              f"claimed side for neighbor {cut.neighbor} is not the tree side")

        values, _, err = _evaluate_cuts(view.aux, view.sides_aux,
                                        view.mapping[rec.centroid])
        if err:
            return reject("cut-check", err)
        for cut, evaluated, tree_w in zip(rec.cuts, values, view.weights):
            if cut.value != evaluated:
                return reject("cut-check",
                              f"claimed value {cut.value} for neighbor {cut.neighbor} "
                              f"differs from evaluated capacity {evaluated}")
            if cut.value != tree_w:
                return reject("cut-check",
                              f"claimed value {cut.value} for neighbor {cut.neighbor} "
                              f"differs from tree weight {tree_w}")

        ev = rec.evidence
        if isinstance(ev, FlowEvidence):
            err2 = _check_flow_evidence(view, ev)
            if err2:
                return reject("flow-check", err2)
        elif isinstance(ev, PackingEvidence):
            demands = {view.mapping[nb]: wgt
                       for nb, wgt in zip(view.neighbors, view.weights)}
            err2 = _packing_failure(view.aux, view.mapping[rec.centroid],
                                    demands, ev.trees)
            if err2:
                return reject("flow-check", err2)
        else:
            return reject("malformed", "unknown evidence kind")

    if not sim.all_singletons():
        return VerifyResult(False, check="structure",
                            detail="witness does not refine the tree to singletons")
    return ACCEPT


# ---------------------------------------------------------------------------
# structural reports


@dataclass(frozen=True)
class StretchReport:
    """Capacity-weighted tree hop-length of the graph edges against the tree
    weight sum (they match on valid trees) and twice the total capacity."""

    lhs: int
    rhs_equality: int
    rhs_bound: int
    ok: bool


def stretch_check(g: Graph, t: CutTree) -> StretchReport:
    if t.n != g.n:
        raise GraphError(f"tree has {t.n} nodes, graph has {g.n}")
    n = g.n
    adj = t.adjacency()
    dist = [[0] * n for _ in range(n)]
    for src in range(n):
        row = dist[src]
        stack = [(src, -1, 0)]
        while stack:
            v, par, hops = stack.pop()
            for nb, _ in adj[v]:
                if nb != par:
                    row[nb] = hops + 1
                    stack.append((nb, v, hops + 1))
    lhs = sum(e.cap * dist[e.u][e.v] for e in g.edges)
    rhs_eq = sum(t.weight)
    rhs_bound = 2 * g.total_capacity
    return StretchReport(lhs, rhs_eq, rhs_bound, lhs == rhs_eq and lhs <= rhs_bound)


@dataclass(frozen=True)
class AuxSizeAudit:
    """Per-depth totals of auxiliary-graph sizes (in unit edges) for a full
    expansion replay, against the linear-per-depth budget."""

    per_depth: dict[int, int]
    overall: int
    per_depth_bound: int
    overall_bound: int
    per_expansion: tuple[tuple[int, int, int], ...]  # (centroid, depth, unit edges)
    ok: bool


def aux_size_audit(g: Graph, t: CutTree, plan: Optional[CentroidPlan] = None) -> AuxSizeAudit:
    if plan is None:
        plan = centroid_decompose(t)
    sim = _ExpansionSim(g, t)
    per_depth: dict[int, int] = {}
    rows: list[tuple[int, int, int]] = []
    for c in plan.order:
        view = sim.expand(c)
        if view is None:
            continue
        units = view.aux.total_capacity
        d = plan.depth[c]
        per_depth[d] = per_depth.get(d, 0) + units
        rows.append((c, d, units))
    m = g.total_capacity
    per_depth_bound = 4 * m
    levels = max(1, g.n - 1).bit_length() if g.n > 1 else 0  # ceil(log2 n)
    overall_bound = 4 * m * (levels + 1)
    overall = sum(per_depth.values())
    ok = all(v <= per_depth_bound for v in per_depth.values()) and overall <= overall_bound
    return AuxSizeAudit(per_depth, overall, per_depth_bound, overall_bound,
                        tuple(rows), ok)


# ---------------------------------------------------------------------------
# witness serialization

_SCHEMA = "ghct-witness-v1"


def witness_to_json(w: Witness) -> str:
    expansions = []
    for rec in w.expansions:
        if isinstance(rec.evidence, FlowEvidence):
            ev = {"kind": "flows",
                  "flows": [{"neighbor": nb, "edge_flows": list(flows)}
                            for nb, flows in rec.evidence.flows]}
        else:
            ev = {"kind": "packing",
                  "trees": [[[c, p] for c, p in tree] for tree in rec.evidence.trees]}
        expansions.append({
            "centroid": rec.centroid,
            "blocks": [list(b) for b in rec.blocks],
            "cuts": [{"neighbor": cut.neighbor,
                      "side": sorted(cut.side),
                      "value": cut.value} for cut in rec.cuts],
            "evidence": ev,
        })
    return json.dumps({"schema": _SCHEMA, "n": w.n, "expansions": expansions},
                      sort_keys=True, separators=(",", ":")) + "\n"


def witness_from_json(text: str) -> Witness:
    def fail(msg: str):
        raise WitnessFormatError(msg)

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        fail(f"invalid JSON: {exc}")
    if not isinstance(data, dict) or data.get("schema") != _SCHEMA:
        fail(f"expected a witness object with schema {_SCHEMA!r}")
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        fail("missing or invalid node count")
    raw = data.get("expansions")
    if not isinstance(raw, list):
        fail("missing expansion list")

    records = []
    for item in raw:
        if not isinstance(item, dict):
            fail("expansion entry is not an object")
        try:
            centroid = int(item["centroid"])
            blocks = tuple(tuple(int(v) for v in b) for b in item["blocks"])
            cuts = tuple(
                CutClaim(int(cut["neighbor"]), frozenset(int(v) for v in cut["side"]),
                         int(cut["value"]))
                for cut in item["cuts"])
            ev_raw = item["evidence"]
            kind = ev_raw["kind"]
            if kind == "flows":
                ev = FlowEvidence(tuple(
                    (int(row["neighbor"]), tuple(int(x) for x in row["edge_flows"]))
                    for row in ev_raw["flows"]))
            elif kind == "packing":
                ev = PackingEvidence(tuple(
                    tuple((int(c), int(p)) for c, p in tree)
                    for tree in ev_raw["trees"]))
            else:
                fail(f"unknown evidence kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            fail(f"malformed expansion entry: {exc}")
        records.append(ExpansionRecord(centroid, blocks, cuts, ev))
    return Witness(n, tuple(records))


def load_witness(path) -> Witness:
    with open(path, "r", encoding="utf-8") as fh:
        return witness_from_json(fh.read())


def save_witness(w: Witness, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(witness_to_json(w))
