"""Cut-equivalent tree constructions and queries.

Four builders share one contract -- the produced tree answers every min-cut
query by its bottleneck edge:

* ``gomory_hu``: the classical iterative construction on contracted auxiliary
  graphs, n-1 uncapped max-flow calls.
* ``gusfield``: same call count, every max-flow runs on the original graph.
* ``partial_tree``: a truncated run that resolves exactly the node pairs with
  connectivity at most k, using value-capped max-flow probes.
* ``hybrid_cut_tree``: two stages -- a d-partial tree first (all low-degree
  nodes end up resolved there), then a resumed classical run inside the
  remaining super-nodes, whose uncapped call count is bounded by the number
  of nodes with degree above d.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .graphs import Graph, GraphError, ParseError, Partition, contract
from .maxflow import FlowResult, max_flow


@dataclass(frozen=True)
class CutTree:
    """Rooted tree over graph nodes: ``weight[v]`` belongs to edge v--parent[v].

    The root has parent -1 and weight 0. For every pair (s, u), the minimum
    weight on the s-u tree path equals the max-flow between s and u in the
    source graph, and deleting a minimum-weight path edge bipartitions the
    nodes into a minimum s-u cut of that value.
    """

    parent: tuple[int, ...]
    weight: tuple[int, ...]

    def __post_init__(self):
        n = len(self.parent)
        if n < 1 or len(self.weight) != n:
            raise GraphError("parent and weight arrays must be nonempty and equal length")
        roots = [v for v, p in enumerate(self.parent) if p < 0]
        if len(roots) != 1:
            raise GraphError(f"tree must have exactly one root, found {len(roots)}")
        if self.weight[roots[0]] != 0:
            raise GraphError("root weight must be 0")
        state = [0] * n  # 0 unseen, 1 on stack, 2 done
        for v in range(n):
            chain = []
            u = v
            while state[u] == 0:
                state[u] = 1
                chain.append(u)
                p = self.parent[u]
                if p < 0:
                    break
                if not p < n:
                    raise GraphError(f"parent id out of range at node {u}")
                u = p
            if state[u] == 1 and self.parent[u] >= 0:
                raise GraphError("parent pointers contain a cycle")
            for c in chain:
                state[c] = 2
        if any(w < 0 for w in self.weight):
            raise GraphError("tree weights must be non-negative")

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return next(v for v, p in enumerate(self.parent) if p < 0)

    def edge_list(self) -> list[tuple[int, int, int]]:
        return [(v, p, self.weight[v]) for v, p in enumerate(self.parent) if p >= 0]

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for v, p, w in self.edge_list():
            adj[v].append((p, w))
            adj[p].append((v, w))
        for lst in adj:
            lst.sort()
        return adj

    @classmethod
    def from_edges(cls, n: int, edges, root: int = 0) -> "CutTree":
        """Build the rooted representation from an undirected edge list."""
        edges = list(edges)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        if len(edges) != n - 1:
            raise GraphError(f"a tree on {n} nodes needs {n - 1} edges")
        for u, v, w in edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        parent = [-2] * n
        weight = [0] * n
        parent[root] = -1
        stack = [root]
        seen = 1
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if parent[v] == -2:
                    parent[v] = u
                    weight[v] = w
                    seen += 1
                    stack.append(v)
        if seen != n:
            raise GraphError("edges do not form a spanning tree")
        return cls(tuple(parent), tuple(weight))


@dataclass(frozen=True)
class SuperNodeTree:
    """Tree over node-set blocks, the intermediate state of a truncated run."""

    blocks: Partition
    tree_edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        l = len(self.blocks.blocks)
        for i, j, w in self.tree_edges:
            if not (0 <= i < l and 0 <= j < l) or i == j:
                raise GraphError(f"tree edge ({i},{j}) references invalid blocks")
            if w < 0:
                raise GraphError("tree edge weights must be non-negative")

    @property
    def n_blocks(self) -> int:
        return len(self.blocks.blocks)

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks.blocks):
            if v in b:
                return i
        raise GraphError(f"node {v} not covered by the partition")


@dataclass
class BuildStats:
    """Instrumentation of one tree construction."""

    algorithm: str
    n: int
    m: int  # unit-edge count (total capacity)
    d: Optional[int] = None
    k: Optional[int] = None
    flow_calls: int = 0          # uncapped max-flow invocations
    capped_calls: int = 0        # value-capped probes
    sum_flow_values: int = 0     # sum over uncapped invocations
    peak_aux_edges: int = 0      # largest auxiliary graph seen, in unit edges
    tree_weight_sum: int = 0
    high_degree_nodes: Optional[int] = None  # |{v : deg(v) > d}|, hybrid only
    wall_time_s: float = 0.0


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _GomoryHuEngine:
    """Mutable super-node tree refined by minimum-cut splits."""

    def __init__(self, g: Graph, stats: BuildStats):
        if g.node_caps is not None:
            raise GraphError("cut-tree construction requires node-uncapacitated input")
        if g.has_directed_edges:
            raise GraphError("cut-tree construction requires undirected input")
        self.g = g
        self.blocks: list[set[int]] = [set(range(g.n))]
        self.tree: list[dict[int, int]] = [dict()]  # block -> {neighbor block: weight}
        self.stats = stats

    def _aux_graph(self, bi: int):
        """Contract each connected component of the tree minus ``bi`` to one node."""
        comps: list[frozenset[int]] = []
        seen = {bi}
        for nb in self.tree[bi]:
            if nb in seen:
                continue
            stack = [nb]
            seen.add(nb)
            nodes: set[int] = set()
            while stack:
                b = stack.pop()
                nodes |= self.blocks[b]
                for b2 in self.tree[b]:
                    if b2 not in seen:
                        seen.add(b2)
                        stack.append(b2)
            comps.append(frozenset(nodes))
        comps.sort(key=min)
        parts = (frozenset(self.blocks[bi]),) + tuple(comps)
        aux, mapping = contract(self.g, Partition(parts), self.blocks[bi])
        self.stats.peak_aux_edges = max(self.stats.peak_aux_edges, aux.total_capacity)
        return aux, mapping

    def probe(self, bi: int, s: int, t: int, cap: Optional[int] = None) -> FlowResult:
        """One max-flow on the auxiliary graph; splits the block unless capped."""
        aux, mapping = self._aux_graph(bi)
        fr = max_flow(aux, mapping[s], mapping[t], cap=cap)
        if cap is None:
            self.stats.flow_calls += 1
            self.stats.sum_flow_values += fr.value
        else:
            self.stats.capped_calls += 1
        if fr.capped:
            return fr

        side = fr.cut_side
        block = self.blocks[bi]
        s_part = {v for v in block if mapping[v] in side}
        t_part = block - s_part
        new = len(self.blocks)
        self.blocks[bi] = s_part
        self.blocks.append(t_part)
        old_nbrs = self.tree[bi]
        self.tree[bi] = {}
        self.tree.append({})
        for nb, w in old_nbrs.items():
            home = bi if mapping[min(self.blocks[nb])] in side else new
            self.tree[home][nb] = w
            del self.tree[nb][bi]
            self.tree[nb][home] = w
        self.tree[bi][new] = fr.value
        self.tree[new][bi] = fr.value
        return fr

    def first_splittable(self) -> Optional[int]:
        for bi, blk in enumerate(self.blocks):
            if len(blk) > 1:
                return bi
        return None

    def to_cut_tree(self) -> CutTree:
        owner = {}
        for bi, blk in enumerate(self.blocks):
            if len(blk) != 1:
                raise GraphError("tree still has non-singleton super-nodes")
            owner[bi] = next(iter(blk))
        edges = []
        for bi, nbrs in enumerate(self.tree):
            for bj, w in nbrs.items():
                if bi < bj:
                    edges.append((owner[bi], owner[bj], w))
        return CutTree.from_edges(self.g.n, edges)

    def to_supernode_tree(self) -> SuperNodeTree:
        parts = Partition(tuple(frozenset(b) for b in self.blocks))
        edges = []
        for bi, nbrs in enumerate(self.tree):
            for bj, w in nbrs.items():
                if bi < bj:
                    edges.append((bi, bj, w))
        return SuperNodeTree(parts, tuple(sorted(edges)))


def _run_partial(engine: _GomoryHuEngine, k: int) -> None:
    """Refine until every block is a single cluster of >k-connected nodes.

    Probes are capped at k+1: a capped probe certifies connectivity above k
    (the two clusters merge), anything else is a genuine split with cut value
    at most k. Connectivity above a threshold is preserved under min of the
    two pair values, so clusters can never straddle a found cut.
    """
    uf = _UnionFind(engine.g.n)
    while True:
        target = None
        for bi, blk in enumerate(engine.blocks):
            if len(blk) > 1 and len({uf.find(v) for v in blk}) > 1:
                target = bi
                break
        if target is None:
            return
        blk = engine.blocks[target]
        s = min(blk)
        rs = uf.find(s)
        t = min(v for v in blk if uf.find(v) != rs)
        fr = engine.probe(target, s, t, cap=k + 1)
        if fr.capped:
            uf.union(s, t)
        else:
            new = len(engine.blocks) - 1
            s_roots = {uf.find(v) for v in engine.blocks[target]}
            t_roots = {uf.find(v) for v in engine.blocks[new]}
            if s_roots & t_roots:
                raise AssertionError("a >k-connected cluster was split by a cut of value <= k")


def _run_full(engine: _GomoryHuEngine) -> None:
    while True:
        bi = engine.first_splittable()
        if bi is None:
            return
        blk = engine.blocks[bi]
        s = min(blk)
        t = min(blk - {s})
        engine.probe(bi, s, t)


def default_hybrid_d(g: Graph) -> int:
    """Degree threshold used when none is given: ceil(sqrt(m))."""
    m = g.total_capacity
    r = math.isqrt(m)
    return max(1, r if r * r == m else r + 1)


def adjusted_hybrid_d(g: Graph) -> int:
    """Alternative threshold ceil(sqrt(m) * n^(1/6)) for slower flow solvers."""
    val = math.sqrt(g.total_capacity) * g.n ** (1 / 6)
    return max(1, math.ceil(val))


def build_cut_tree(g: Graph, algorithm: str, d: Optional[int] = None,
                   k: Optional[int] = None):
    """Instrumented entry point; returns (CutTree | SuperNodeTree, BuildStats)."""
    start = time.perf_counter()
    stats = BuildStats(algorithm=algorithm, n=g.n, m=g.total_capacity)

    if algorithm in ("gh", "gomory-hu"):
        engine = _GomoryHuEngine(g, stats)
        _run_full(engine)
        result = engine.to_cut_tree()
    elif algorithm == "gusfield":
        result = _gusfield(g, stats)
    elif algorithm == "partial":
        if k is None or k < 1:
            raise GraphError(f"partial tree needs a positive k, got {k}")
        stats.k = k
        engine = _GomoryHuEngine(g, stats)
        _run_partial(engine, k)
        result = engine.to_supernode_tree()
    elif algorithm == "hybrid":
        if d is None:
            d = default_hybrid_d(g)
        if d < 1:
            raise GraphError(f"hybrid needs a positive degree threshold, got {d}")
        stats.d = d
        degs = g.capacity_degrees()
        stats.high_degree_nodes = sum(1 for x in degs if x > d)
        engine = _GomoryHuEngine(g, stats)
        _run_partial(engine, d)
        _run_full(engine)
        result = engine.to_cut_tree()
    else:
        raise GraphError(f"unknown algorithm {algorithm!r}")

    if isinstance(result, CutTree):
        stats.tree_weight_sum = sum(result.weight)
    else:
        stats.tree_weight_sum = sum(w for _, _, w in result.tree_edges)
    stats.wall_time_s = time.perf_counter() - start
    return result, stats


def _gusfield(g: Graph, stats: BuildStats) -> CutTree:
    n = g.n
    if g.node_caps is not None:
        raise GraphError("cut-tree construction requires node-uncapacitated input")
    if g.has_directed_edges:
        raise GraphError("cut-tree construction requires undirected input")
    parent = [0] * n
    weight = [0] * n
    parent[0] = -1
    for v in range(1, n):
        p = parent[v]
        fr = max_flow(g, v, p)
        stats.flow_calls += 1
        stats.sum_flow_values += fr.value
        weight[v] = fr.value
        side = fr.cut_side  # contains v
        for u in range(n):
            if u != v and parent[u] == p and u in side:
                parent[u] = v
        if parent[p] >= 0 and parent[p] in side:
            parent[v] = parent[p]
            parent[p] = v
            weight[v] = weight[p]
            weight[p] = fr.value
    return CutTree(tuple(parent), tuple(weight))


def gomory_hu(g: Graph) -> CutTree:
    """Classical cut-equivalent tree; exactly n-1 uncapped max-flow calls,
    each on a contracted auxiliary graph."""
    return build_cut_tree(g, "gh")[0]


def gusfield(g: Graph) -> CutTree:
    """Cut-equivalent tree with every max-flow call on the original graph."""
    return build_cut_tree(g, "gusfield")[0]


def partial_tree(g: Graph, k: int) -> SuperNodeTree:
    """Tree over super-nodes resolving exactly the pairs with connectivity <= k."""
    return build_cut_tree(g, "partial", k=k)[0]


def hybrid_cut_tree(g: Graph, d: Optional[int] = None) -> CutTree:
    """Two-stage construction: d-partial tree, then a resumed classical run."""
    return build_cut_tree(g, "hybrid", d=d)[0]


def tree_query(t: CutTree, s: int, u: int) -> tuple[int, frozenset[int]]:
    """Bottleneck value on the s-u tree path and the side of s after deleting
    that edge; ties go to the minimal edge closest to s."""
    n = t.n
    if s == u:
        raise GraphError("query endpoints must differ")
    if not (0 <= s < n and 0 <= u < n):
        raise GraphError(f"query node out of range: ({s},{u})")

    anc_s = []
    x = s
    while x >= 0:
        anc_s.append(x)
        x = t.parent[x]
    index_s = {v: i for i, v in enumerate(anc_s)}
    anc_u = []
    x = u
    while x not in index_s:
        anc_u.append(x)
        x = t.parent[x]
    lca = x
    # edges child->parent from s up to lca, then from lca down to u
    path_children = anc_s[:index_s[lca]] + list(reversed(anc_u))

    best_child = None
    best_w = None
    for c in path_children:
        w = t.weight[c]
        if best_w is None or w < best_w:
            best_w = w
            best_child = c

    below: set[int] = set()
    stack = [best_child]
    children: list[list[int]] = [[] for _ in range(n)]
    for v, p in enumerate(t.parent):
        if p >= 0:
            children[p].append(v)
    while stack:
        x = stack.pop()
        below.add(x)
        stack.extend(children[x])
    side = below if s in below else set(range(n)) - below
    return best_w, frozenset(side)


def all_pairs_matrix(t: CutTree) -> list[list[int]]:
    """n x n matrix of bottleneck values; symmetric with zero diagonal."""
    n = t.n
    adj = t.adjacency()
    mat = [[0] * n for _ in range(n)]
    for src in range(n):
        row = mat[src]
        stack = [(src, -1, None)]
        while stack:
            v, par, bottleneck = stack.pop()
            for nb, w in adj[v]:
                if nb == par:
                    continue
                b = w if bottleneck is None else min(bottleneck, w)
                row[nb] = b
                stack.append((nb, v, b))
    return mat


def format_tree(t: CutTree) -> str:
    lines = [f"t {t.n}"]
    for v, p, w in t.edge_list():
        lines.append(f"e {v} {p} {w}")
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> CutTree:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()

        def fail(msg: str):
            raise ParseError(f"line {lineno}: {msg}: {raw.strip()!r}")

        if parts[0] == "t":
            if n is not None:
                fail("duplicate header")
            if len(parts) != 2:
                fail("expected 't <n>'")
            try:
                n = int(parts[1])
            except ValueError:
                fail("expected an integer node count")
        elif parts[0] == "e":
            if n is None:
                fail("edge before 't' header")
            if len(parts) != 4:
                fail("expected 'e <u> <v> <w>'")
            try:
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                fail("expected integers")
            if not (0 <= u < n and 0 <= v < n):
                fail("node id out of range")
            if w < 0:
                fail("negative weight")
            edges.append((u, v, w))
        else:
            fail(f"unknown record type {parts[0]!r}")
    if n is None:
        raise ParseError("missing 't <n>' header")
    if len(edges) != n - 1:
        raise ParseError(f"a tree on {n} nodes needs {n - 1} edges, file has {len(edges)}")
    try:
        return CutTree.from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def load_tree(path) -> CutTree:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tree(fh.read())


def save_tree(t: CutTree, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_tree(t))


def format_blocks(snt: SuperNodeTree) -> str:
    blocks = snt.blocks.blocks
    n = len(snt.blocks.covered())
    lines = [f"p ghct-blocks {n} {len(blocks)}"]
    for b in blocks:
        lines.append("s " + " ".join(str(v) for v in sorted(b)))
    for i, j, w in snt.tree_edges:
        lines.append(f"e {i} {j} {w}")
    return "\n".join(lines) + "\n"


def parse_blocks(text: str) -> SuperNodeTree:
    header = None
    blocks = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "ghct-blocks":
                raise ParseError(f"line {lineno}: expected 'p ghct-blocks <n> <l>'")
            header = (int(parts[2]), int(parts[3]))
        elif parts[0] == "s":
            blocks.append(frozenset(int(x) for x in parts[1:]))
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2]), int(parts[3])))
        else:
            raise ParseError(f"line {lineno}: unknown record type {parts[0]!r}")
    if header is None:
        raise ParseError("missing 'p ghct-blocks' header")
    if len(blocks) != header[1]:
        raise ParseError(f"header declares {header[1]} blocks, file has {len(blocks)}")
    return SuperNodeTree(Partition(tuple(blocks)), tuple(edges))
