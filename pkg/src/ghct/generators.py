"""Deterministic instance generators for the CLI, tests, and benchmarks."""

from __future__ import annotations

import itertools
import random

from .gadgets import BMMInstance, OVInstance
from .graphs import Edge, Graph, GraphError


def gen_path(n: int) -> Graph:
    return Graph(n, tuple(Edge(i, i + 1) for i in range(n - 1)))


def gen_star(n: int) -> Graph:
    if n < 2:
        raise GraphError("a star needs at least 2 nodes")
    return Graph(n, tuple(Edge(0, i) for i in range(1, n)))


def gen_clique(n: int) -> Graph:
    return Graph(n, tuple(Edge(u, v) for u, v in itertools.combinations(range(n), 2)))


def gen_gnm(n: int, m: int, rng: random.Random) -> Graph:
    """Uniform simple graph with exactly m edges."""
    pairs = list(itertools.combinations(range(n), 2))
    if m > len(pairs):
        raise GraphError(f"cannot place {m} simple edges on {n} nodes")
    chosen = rng.sample(pairs, m)
    return Graph(n, tuple(Edge(u, v) for u, v in sorted(chosen)))


def gen_random_regular(n: int, degree: int, rng: random.Random,
                       max_tries: int = 500) -> Graph:
    """Simple regular graph via the configuration model with rejection."""
    if degree < 0 or degree >= n:
        raise GraphError(f"degree must be in [0, n), got {degree}")
    if (n * degree) % 2 != 0:
        raise GraphError(f"no {degree}-regular graph on {n} nodes: odd stub count")
    if degree == 0:
        return Graph(n)
    for _ in range(max_tries):
        stubs = [v for v in range(n) for _ in range(degree)]
        rng.shuffle(stubs)
        seen: set[tuple[int, int]] = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            key = (u, v) if u < v else (v, u)
            if key in seen:
                ok = False
                break
            seen.add(key)
        if ok:
            return Graph(n, tuple(Edge(u, v) for u, v in sorted(seen)))
    raise GraphError(f"failed to sample a {degree}-regular graph on {n} nodes")


def gen_ov_instance(n: int, d: int, rng: random.Random,
                    one_probability: float = 0.5) -> OVInstance:
    def block():
        return tuple(
            tuple(1 if rng.random() < one_probability else 0 for _ in range(d))
            for _ in range(n))

    return OVInstance(block(), block(), block())


def gen_bmm_instance(n: int, rng: random.Random, density: float = 0.5) -> BMMInstance:
    def mat():
        return tuple(
            tuple(1 if rng.random() < density else 0 for _ in range(n))
            for _ in range(n))

    return BMMInstance(mat(), mat())
