import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghct.graphs import Edge, Graph, GraphError
from ghct.maxflow import (FlowError, FlowIntegrityError, FlowResult,
                          flow_decompose, max_flow)

from oracles import cut_capacity, min_cut_value


def k(n):
    return Graph(n, tuple(Edge(u, v) for u, v in itertools.combinations(range(n), 2)))


class TestMaxFlow:
    def test_triangle(self):
        fr = max_flow(k(3), 0, 1)
        assert fr.value == 2
        assert fr.cut_side == frozenset({0})
        assert not fr.capped

    def test_cap_binds(self):
        fr = max_flow(Graph(2, [(0, 1, 5)]), 0, 1, cap=3)
        assert fr.value == 3 and fr.capped
        assert fr.cut_side is None

    def test_disconnected(self):
        fr = max_flow(Graph(2), 0, 1)
        assert fr.value == 0
        assert fr.cut_side == frozenset({0})

    def test_same_terminal_rejected(self):
        with pytest.raises(FlowError, match="differ"):
            max_flow(k(3), 1, 1)

    def test_node_caps_rejected(self):
        g = Graph(2, [(0, 1)], node_caps={0: 1})
        with pytest.raises(GraphError, match="split"):
            max_flow(g, 0, 1)

    def test_parallel_edges_sum(self):
        g = Graph(2, [(0, 1), (0, 1), (0, 1, 3)])
        assert max_flow(g, 0, 1).value == 5

    def test_directed_asymmetry(self):
        g = Graph(3, [Edge(0, 1, 2, True), Edge(1, 2, 2, True)])
        assert max_flow(g, 0, 2).value == 2
        assert max_flow(g, 2, 0).value == 0

    def test_exhaustive_n4_catalog(self):
        # every simple graph on 4 nodes, all terminal pairs, against the cut oracle
        pairs = list(itertools.combinations(range(4), 2))
        for mask in range(1 << len(pairs)):
            edges = tuple(Edge(u, v) for i, (u, v) in enumerate(pairs) if mask >> i & 1)
            g = Graph(4, edges)
            for s, t in pairs:
                fr = max_flow(g, s, t)
                assert fr.value == min_cut_value(g, s, t)
                assert cut_capacity(g, fr.cut_side) == fr.value
                assert s in fr.cut_side and t not in fr.cut_side

    def test_random_small_against_oracle(self):
        rng = random.Random(3)
        for _ in range(200):
            n = rng.randint(2, 8)
            m = rng.randint(0, 14)
            edges = []
            for _ in range(m):
                u, v = rng.sample(range(n), 2)
                edges.append(Edge(u, v, rng.randint(1, 4)))
            g = Graph(n, tuple(edges))
            s, t = rng.sample(range(n), 2)
            fr = max_flow(g, s, t)
            assert fr.value == min_cut_value(g, s, t)
            assert cut_capacity(g, fr.cut_side) == fr.value

    def test_source_minimal_cut(self):
        # residual reachability makes the source side minimal: on a path the
        # cut right after the source is reported
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert max_flow(g, 0, 3).cut_side == frozenset({0})

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_monotone_capping(self, data):
        n = data.draw(st.integers(min_value=2, max_value=6))
        m = data.draw(st.integers(min_value=0, max_value=10))
        edges = []
        for _ in range(m):
            u = data.draw(st.integers(min_value=0, max_value=n - 1))
            v = data.draw(st.integers(min_value=0, max_value=n - 1))
            if u != v:
                edges.append(Edge(u, v, data.draw(st.integers(min_value=1, max_value=5))))
        g = Graph(n, tuple(edges))
        cap = data.draw(st.integers(min_value=1, max_value=12))
        full = max_flow(g, 0, n - 1).value
        fr = max_flow(g, 0, n - 1, cap=cap)
        assert fr.value == min(cap, full)
        assert fr.capped == (full >= cap)


class TestDecompose:
    def test_single_edge(self):
        fr = max_flow(Graph(2, [(0, 1, 5)]), 0, 1)
        assert flow_decompose(fr, 0, 1) == [((0, 1), 5)]

    def test_triangle_paths(self):
        fr = max_flow(k(3), 0, 1)
        paths = dict(flow_decompose(fr, 0, 1))
        assert paths == {(0, 1): 1, (0, 2, 1): 1}

    def test_zero_flow(self):
        fr = max_flow(Graph(2), 0, 1)
        assert flow_decompose(fr, 0, 1) == []

    def test_units_sum_to_value(self):
        rng = random.Random(5)
        for _ in range(80):
            n = rng.randint(2, 8)
            edges = []
            for _ in range(rng.randint(0, 14)):
                u, v = rng.sample(range(n), 2)
                edges.append(Edge(u, v, rng.randint(1, 4)))
            g = Graph(n, tuple(edges))
            s, t = rng.sample(range(n), 2)
            fr = max_flow(g, s, t)
            parts = flow_decompose(fr, s, t)
            assert sum(units for _, units in parts) == fr.value
            assert len(parts) <= g.m
            for path, units in parts:
                assert path[0] == s and path[-1] == t
                assert len(set(path)) == len(path)
                assert units > 0

    def test_conservation_violation_raises(self):
        g = Graph(3, [(0, 1), (1, 2)])
        fr = max_flow(g, 0, 2)
        # residual claiming one unit on (0,1) and nothing on (1,2)
        broken = FlowResult(g, 0, 2, 1, False, frozenset({0}), [0, 2, 1, 1])
        with pytest.raises(FlowIntegrityError, match="conservation"):
            flow_decompose(broken, 0, 2)
        assert fr.value == 1

    def test_value_mismatch_raises(self):
        g = Graph(2, [(0, 1, 2)])
        bogus = FlowResult(g, 0, 1, 2, False, frozenset({0}), [1, 3])
        with pytest.raises(FlowIntegrityError, match="balance"):
            flow_decompose(bogus, 0, 1)
