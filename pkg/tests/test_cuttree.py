import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghct.cuttree import (CutTree, SuperNodeTree, all_pairs_matrix,
                          build_cut_tree, default_hybrid_d, format_blocks,
                          format_tree, gomory_hu, gusfield, hybrid_cut_tree,
                          parse_blocks, parse_tree, partial_tree, tree_query)
from ghct.graphs import Edge, Graph, GraphError
from ghct.maxflow import max_flow

from oracles import (all_pairs_min_cut, cut_capacity, min_cut_value,
                     tree_path_bottleneck)


def k(n):
    return Graph(n, tuple(Edge(u, v) for u, v in itertools.combinations(range(n), 2)))


def path(n):
    return Graph(n, tuple(Edge(i, i + 1) for i in range(n - 1)))


def random_graph(rng, max_n=14, max_m=30, max_cap=1):
    n = rng.randint(2, max_n)
    m = rng.randint(0, max_m)
    edges = set()
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    cap = (lambda: rng.randint(1, max_cap)) if max_cap > 1 else (lambda: 1)
    return Graph(n, tuple(Edge(u, v, cap()) for u, v in sorted(edges)))


class TestGomoryHu:
    def test_path(self):
        t = gomory_hu(path(3))
        assert sorted(t.weight) == [0, 1, 1]
        assert all_pairs_matrix(t) == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]

    def test_k3_all_two(self):
        mat = all_pairs_matrix(gomory_hu(k(3)))
        assert all(mat[i][j] == 2 for i in range(3) for j in range(3) if i != j)

    def test_cycle_all_two(self):
        c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        mat = all_pairs_matrix(gomory_hu(c4))
        assert all(mat[i][j] == 2 for i in range(4) for j in range(4) if i != j)

    def test_exactly_n_minus_one_calls(self):
        for g in (path(5), k(4), Graph(1), Graph(3, [(0, 1)])):
            _, stats = build_cut_tree(g, "gh")
            assert stats.flow_calls == g.n - 1
            assert stats.capped_calls == 0

    def test_disconnected_zero_weights(self):
        g = Graph(4, [(0, 1), (2, 3)])
        t = gomory_hu(g)
        mat = all_pairs_matrix(t)
        assert mat[0][2] == mat[1][3] == 0
        assert mat[0][1] == mat[2][3] == 1

    def test_single_node(self):
        t = gomory_hu(Graph(1))
        assert t.parent == (-1,) and t.weight == (0,)

    def test_node_caps_unsupported(self):
        with pytest.raises(GraphError, match="node-uncapacitated"):
            gomory_hu(Graph(2, [(0, 1)], node_caps={0: 1}))

    def test_oracle_property(self):
        # bottleneck value and bipartition capacity both match the direct cut
        rng = random.Random(17)
        for _ in range(25):
            g = random_graph(rng, max_n=9, max_m=16, max_cap=3)
            t = gomory_hu(g)
            for s, u in itertools.combinations(range(g.n), 2):
                value, side = tree_query(t, s, u)
                assert value == min_cut_value(g, s, u)
                assert cut_capacity(g, side) == value
                assert s in side and u not in side


class TestGusfield:
    def test_path_matches(self):
        assert all_pairs_matrix(gusfield(path(3))) == all_pairs_matrix(gomory_hu(path(3)))

    def test_k4_all_three(self):
        mat = all_pairs_matrix(gusfield(k(4)))
        assert all(mat[i][j] == 3 for i in range(4) for j in range(4) if i != j)

    def test_agreement_on_random_graphs(self):
        rng = random.Random(23)
        for _ in range(50):
            g = random_graph(rng, max_n=20, max_m=40)
            assert all_pairs_matrix(gusfield(g)) == all_pairs_matrix(gomory_hu(g))

    def test_call_count(self):
        _, stats = build_cut_tree(k(5), "gusfield")
        assert stats.flow_calls == 4


class TestPartialTree:
    def test_k4_low_threshold_single_block(self):
        snt = partial_tree(k(4), 2)
        assert len(snt.blocks.blocks) == 1
        assert snt.tree_edges == ()

    def test_path_all_resolved(self):
        snt = partial_tree(path(3), 1)
        assert sorted(len(b) for b in snt.blocks.blocks) == [1, 1, 1]
        assert sorted(w for _, _, w in snt.tree_edges) == [1, 1]

    def test_star_high_threshold(self):
        star = Graph(4, [(0, 1), (0, 2), (0, 3)])
        snt = partial_tree(star, 5)
        assert all(len(b) == 1 for b in snt.blocks.blocks)
        assert all(w == 1 for _, _, w in snt.tree_edges)

    def test_invalid_k(self):
        with pytest.raises(GraphError, match="positive k"):
            partial_tree(k(3), 0)

    def test_weights_bounded_by_k(self):
        rng = random.Random(31)
        for _ in range(20):
            g = random_graph(rng, max_n=12, max_m=26)
            k_bound = rng.randint(1, 4)
            snt = partial_tree(g, k_bound)
            assert all(w <= k_bound for _, _, w in snt.tree_edges)

    def test_blocks_are_connectivity_classes(self):
        # same block <=> pairwise min-cut above k, checked against the oracle
        rng = random.Random(37)
        for _ in range(15):
            g = random_graph(rng, max_n=9, max_m=18)
            k_bound = rng.randint(1, 3)
            snt = partial_tree(g, k_bound)
            block_of = {}
            for i, b in enumerate(snt.blocks.blocks):
                for v in b:
                    block_of[v] = i
            mat = all_pairs_min_cut(g)
            for s, u in itertools.combinations(range(g.n), 2):
                same = block_of[s] == block_of[u]
                assert same == (mat[s][u] > k_bound)

    def test_blocks_match_cut_tree_contraction(self):
        # same partition as contracting every cut-tree edge of weight > k
        rng = random.Random(39)
        for _ in range(15):
            g = random_graph(rng, max_n=10, max_m=20)
            k_bound = rng.randint(1, 3)
            snt = partial_tree(g, k_bound)
            t = gomory_hu(g)
            parent = list(range(g.n))

            def find(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            for v, p, w in t.edge_list():
                if w > k_bound:
                    parent[find(v)] = find(p)
            merged = {}
            for v in range(g.n):
                merged.setdefault(find(v), set()).add(v)
            expected = {frozenset(b) for b in merged.values()}
            assert set(snt.blocks.blocks) == expected

    def test_resolved_pairs_have_correct_bottleneck(self):
        rng = random.Random(41)
        for _ in range(10):
            g = random_graph(rng, max_n=9, max_m=14)
            k_bound = rng.randint(1, 3)
            snt = partial_tree(g, k_bound)
            adj = {i: {} for i in range(len(snt.blocks.blocks))}
            for i, j, w in snt.tree_edges:
                adj[i][j] = w
                adj[j][i] = w
            block_of = {v: i for i, b in enumerate(snt.blocks.blocks) for v in b}
            mat = all_pairs_min_cut(g)

            def bottleneck(bi, bj):
                best = {bi: None}
                stack = [(bi, None)]
                while stack:
                    b, bn = stack.pop()
                    if b == bj:
                        return bn
                    for nb, w in adj[b].items():
                        if nb not in best:
                            nxt = w if bn is None else min(bn, w)
                            best[nb] = nxt
                            stack.append((nb, nxt))
                return None

            for s, u in itertools.combinations(range(g.n), 2):
                if mat[s][u] <= k_bound:
                    assert bottleneck(block_of[s], block_of[u]) == mat[s][u]


class TestHybrid:
    def test_stage2_skipped_when_d_covers_degrees(self):
        g = k(4)
        _, stats = build_cut_tree(g, "hybrid", d=3)  # max degree 3
        assert stats.flow_calls == 0
        assert stats.high_degree_nodes == 0

    def test_k4_tight_threshold(self):
        tree, stats = build_cut_tree(k(4), "hybrid", d=2)
        assert stats.flow_calls <= 3
        mat = all_pairs_matrix(tree)
        assert all(mat[i][j] == 3 for i in range(4) for j in range(4) if i != j)

    def test_matches_gomory_hu(self):
        rng = random.Random(43)
        for _ in range(30):
            g = random_graph(rng, max_n=24, max_m=60)
            expected = all_pairs_matrix(gomory_hu(g))
            for d in (1, None, g.n):
                got = all_pairs_matrix(hybrid_cut_tree(g, d=d))
                assert got == expected

    def test_instrumentation_bounds(self):
        rng = random.Random(47)
        for _ in range(25):
            g = random_graph(rng, max_n=20, max_m=50)
            d = rng.choice([1, 2, default_hybrid_d(g), g.n])
            _, stats = build_cut_tree(g, "hybrid", d=d)
            assert stats.flow_calls <= stats.high_degree_nodes
            assert stats.sum_flow_values <= 2 * stats.m
            # nodes of degree above d number at most 2m/d
            assert stats.high_degree_nodes * d <= 2 * stats.m

    def test_weighted_inputs_supported(self):
        g = Graph(4, [(0, 1, 3), (1, 2, 2), (2, 3, 4), (0, 3, 1)])
        assert all_pairs_matrix(hybrid_cut_tree(g)) == all_pairs_matrix(gomory_hu(g))

    def test_node_caps_unsupported(self):
        with pytest.raises(GraphError, match="node-uncapacitated"):
            hybrid_cut_tree(Graph(2, [(0, 1)], node_caps={0: 1}), d=1)


class TestTreeQuery:
    def test_path_weights(self):
        t = CutTree.from_edges(3, [(0, 1, 1), (1, 2, 5)])
        value, side = tree_query(t, 0, 2)
        assert value == 1 and side == frozenset({0})
        assert tree_query(t, 1, 2)[0] == 5

    def test_star_uniform(self):
        t = CutTree.from_edges(4, [(0, 1, 2), (0, 2, 2), (0, 3, 2)])
        for a, b in itertools.combinations(range(1, 4), 2):
            assert tree_query(t, a, b)[0] == 2

    def test_tie_breaks_toward_source(self):
        t = CutTree.from_edges(4, [(0, 1, 2), (1, 2, 1), (2, 3, 1)])
        value, side = tree_query(t, 0, 3)
        assert value == 1
        assert side == frozenset({0, 1})  # first minimal edge along the path from 0
        value_rev, side_rev = tree_query(t, 3, 0)
        assert value_rev == 1
        assert side_rev == frozenset({3})

    def test_same_node_rejected(self):
        t = CutTree.from_edges(2, [(0, 1, 1)])
        with pytest.raises(GraphError, match="differ"):
            tree_query(t, 1, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_bottleneck_matches_path_walk(self, data):
        n = data.draw(st.integers(min_value=2, max_value=10))
        edges = []
        for v in range(1, n):
            p = data.draw(st.integers(min_value=0, max_value=v - 1))
            w = data.draw(st.integers(min_value=0, max_value=9))
            edges.append((v, p, w))
        t = CutTree.from_edges(n, edges)
        s = data.draw(st.integers(min_value=0, max_value=n - 1))
        u = data.draw(st.integers(min_value=0, max_value=n - 1))
        if s == u:
            return
        value, side = tree_query(t, s, u)
        assert value == tree_path_bottleneck(t, s, u)
        assert s in side and u not in side


class TestAllPairsMatrix:
    def test_path_matrix(self):
        t = CutTree.from_edges(3, [(0, 1, 1), (1, 2, 5)])
        assert all_pairs_matrix(t) == [[0, 1, 1], [1, 0, 5], [1, 5, 0]]

    def test_single_node(self):
        assert all_pairs_matrix(CutTree((-1,), (0,))) == [[0]]

    def test_matches_queries(self):
        t = gomory_hu(k(5))
        mat = all_pairs_matrix(t)
        for s, u in itertools.combinations(range(5), 2):
            assert mat[s][u] == tree_query(t, s, u)[0]
            assert mat[s][u] == mat[u][s]


class TestTreeFiles:
    def test_round_trip(self):
        t = gomory_hu(k(4))
        again = parse_tree(format_tree(t))
        assert all_pairs_matrix(again) == all_pairs_matrix(t)

    def test_parse_rejects_non_tree(self):
        from ghct.graphs import ParseError
        with pytest.raises(ParseError):
            parse_tree("t 3\ne 0 1 1\ne 0 1 2\n")

    def test_blocks_round_trip(self):
        snt = partial_tree(path(4), 1)
        again = parse_blocks(format_blocks(snt))
        assert again.blocks == snt.blocks
        assert again.tree_edges == snt.tree_edges


class TestWeightSumBound:
    def test_tree_weight_sum_at_most_twice_capacity(self):
        rng = random.Random(53)
        for _ in range(30):
            g = random_graph(rng, max_n=16, max_m=40, max_cap=3)
            for algo in ("gh", "gusfield", "hybrid"):
                tree, stats = build_cut_tree(g, algo)
                assert sum(tree.weight) <= 2 * g.total_capacity
