import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghct.graphs import (Edge, Graph, GraphError, ParseError, Partition,
                         contract, format_graph, parse_graph,
                         split_node_capacities)
from ghct.maxflow import max_flow, node_capacitated_flow

from oracles import (cut_capacity, min_cut_value, node_cap_flow_paths,
                     node_cap_flow_separators)


TRIANGLE = "p ghct 3 3\ne 0 1\ne 1 2\ne 0 2\n"


class TestParse:
    def test_triangle(self):
        g = parse_graph(TRIANGLE)
        assert g.n == 3 and g.m == 3
        assert g.is_unit_capacity

    def test_single_weighted_edge(self):
        g = parse_graph("p ghct 2 1\ne 0 1 5\n")
        assert g.edges == (Edge(0, 1, 5),)

    def test_comments_and_blanks(self):
        g = parse_graph("c hello\n\np ghct 2 1\nc mid\ne 0 1\n")
        assert g.m == 1

    def test_node_caps_and_directed(self):
        g = parse_graph("p ghct 3 2\nn 1 4\ne 0 1\nd 1 2 3\n")
        assert g.node_caps == {1: 4}
        assert g.edges[1] == Edge(1, 2, 3, directed=True)

    def test_node_id_out_of_range(self):
        with pytest.raises(ParseError, match="node id out of range"):
            parse_graph("p ghct 3 1\ne 0 3\n")

    def test_zero_capacity(self):
        with pytest.raises(ParseError, match="zero/negative capacity"):
            parse_graph("p ghct 2 1\ne 0 1 0\n")

    def test_self_loop(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_graph("p ghct 2 1\ne 1 1\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_graph("e 0 1\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(ParseError, match="declares"):
            parse_graph("p ghct 3 2\ne 0 1\n")

    def test_unknown_record(self):
        with pytest.raises(ParseError, match="unknown record"):
            parse_graph("p ghct 2 1\nq 0 1\n")

    def test_error_names_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_graph("p ghct 3 2\ne 0 1\ne 0 9\n")


def graph_strategy(max_n=7, max_m=10, max_cap=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=max_n))
        m = draw(st.integers(min_value=0, max_value=max_m)) if n > 1 else 0
        edges = []
        for _ in range(m):
            u = draw(st.integers(min_value=0, max_value=n - 1))
            v = draw(st.integers(min_value=0, max_value=n - 1))
            if u == v:
                continue
            cap = draw(st.integers(min_value=1, max_value=max_cap))
            edges.append(Edge(u, v, cap))
        return Graph(n, tuple(edges))

    return build()


class TestRoundTrip:
    @settings(max_examples=60, deadline=None)
    @given(graph_strategy())
    def test_parse_format_identity(self, g):
        again = parse_graph(format_graph(g))
        assert again.n == g.n
        assert again.canonical_edges() == g.canonical_edges()
        assert again.node_caps == g.node_caps

    def test_capacitated_round_trip(self):
        g = Graph(4, [(0, 1, 2), (2, 3, 1)], node_caps={1: 3, 2: 7})
        again = parse_graph(format_graph(g))
        assert again.node_caps == {1: 3, 2: 7}
        assert again.canonical_edges() == g.canonical_edges()


class TestContract:
    def test_identity_contraction(self):
        g = Graph(3, [(0, 1), (1, 2)])
        p = Partition((frozenset({0}), frozenset({1}), frozenset({2})))
        out, mapping = contract(g, p, {1})
        assert out.n == 3
        assert sorted(mapping.values()) == [0, 1, 2]
        assert out.total_capacity == g.total_capacity

    def test_k4_merge(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        p = Partition((frozenset({0, 1}), frozenset({2, 3})))
        out, mapping = contract(g, p, {2, 3})
        assert out.n == 3
        assert mapping[2] == 0 and mapping[3] == 1
        assert mapping[0] == mapping[1] == 2
        assert out.canonical_edges() == ((0, 1, 1, False), (0, 2, 2, False), (1, 2, 2, False))

    def test_whole_graph_keep(self):
        g = Graph(3, [(0, 1), (0, 2), (1, 2)])
        out, _ = contract(g, Partition((frozenset({0, 1, 2}),)), {0, 1, 2})
        assert out.canonical_edges() == g.canonical_edges()

    def test_keep_not_a_block(self):
        g = Graph(3, [(0, 1)])
        p = Partition((frozenset({0, 1}), frozenset({2})))
        with pytest.raises(GraphError, match="keep is not a block"):
            contract(g, p, {0})

    def test_partition_must_cover(self):
        g = Graph(3, [(0, 1)])
        p = Partition((frozenset({0}), frozenset({1})))
        with pytest.raises(GraphError, match="cover"):
            contract(g, p, {0})

    def test_cut_preservation(self):
        # any bipartition of blocks keeps its crossing capacity after contraction
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(2, 8)
            edges = []
            for _ in range(rng.randint(0, 12)):
                u, v = rng.sample(range(n), 2)
                edges.append(Edge(u, v, rng.randint(1, 4)))
            g = Graph(n, tuple(edges))
            ids = list(range(n))
            rng.shuffle(ids)
            cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
            blocks = []
            prev = 0
            for c in cuts + [n]:
                blocks.append(frozenset(ids[prev:c]))
                prev = c
            p = Partition(tuple(blocks))
            keep = blocks[rng.randrange(len(blocks))]
            out, mapping = contract(g, p, keep)
            chosen = [b for b in blocks if rng.random() < 0.5 and b != keep]
            side_nodes = set().union(*chosen) if chosen else set()
            side_new = {mapping[v] for v in side_nodes}
            assert cut_capacity(g, side_nodes) == cut_capacity(out, side_new)


class TestSplit:
    def test_single_bottleneck(self):
        g = Graph(3, [(0, 1), (1, 2)], node_caps={1: 1})
        assert node_capacitated_flow(g, 0, 2) == 1

    def test_middle_layer_capacity(self):
        # three layers, fat middle node: a two-hop path carries its full capacity
        g = Graph(3, [(0, 1), (1, 2)], node_caps={0: 1, 1: 4, 2: 1})
        assert node_capacitated_flow(g, 0, 2) >= 4

    def test_direct_edge_gets_inf(self):
        g = Graph(3, [(0, 1), (1, 2), (0, 2)], node_caps={0: 1, 1: 1, 2: 1})
        split = split_node_capacities(g, 0, 2)
        inf = sum(g.node_caps.values()) + 1
        value = max_flow(split, 0, 2).value
        assert value == 1 + inf
        assert value == min_cut_value(split, 0, 2)

    def test_terminals_not_split(self):
        g = Graph(3, [(0, 1), (1, 2)], node_caps={0: 1, 1: 2, 2: 1})
        split = split_node_capacities(g, 0, 2)
        assert split.n == 4  # only the middle node doubled
        assert node_capacitated_flow(g, 0, 2) == 2

    def test_directed_edge_single_orientation(self):
        g = Graph(3, [Edge(0, 1, 1, True), Edge(1, 2, 1, True)], node_caps={1: 3})
        assert node_capacitated_flow(g, 0, 2) == 3
        assert node_capacitated_flow(g, 2, 0) == 0

    def test_requires_caps(self):
        g = Graph(2, [(0, 1)])
        with pytest.raises(GraphError, match="node capacities"):
            split_node_capacities(g, 0, 1)

    def test_terminals_differ(self):
        g = Graph(2, [(0, 1)], node_caps={0: 1})
        with pytest.raises(GraphError, match="differ"):
            split_node_capacities(g, 0, 0)

    def test_against_path_and_separator_oracles(self):
        rng = random.Random(11)
        checked = 0
        for _ in range(60):
            n = rng.randint(3, 6)
            edges = set()
            for _ in range(rng.randint(n - 1, 8)):
                u, v = rng.sample(range(n), 2)
                edges.add((min(u, v), max(u, v)))
            caps = {v: rng.randint(1, 3) for v in range(n)}
            g = Graph(n, tuple(Edge(u, v) for u, v in sorted(edges)), node_caps=caps)
            s, t = rng.sample(range(n), 2)
            got = node_capacitated_flow(g, s, t)
            assert got == node_cap_flow_separators(g, s, t)
            assert got == node_cap_flow_paths(g, s, t)
            checked += 1
        assert checked == 60
