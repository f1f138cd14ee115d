"""Benchmark harness: run tree constructions over a corpus, record per-run
stats, and check the call-count and flow-sum invariants of the hybrid builder.

Each run yields one JSON-ready record; instances are independent, so runs may
execute in a process pool. Timing fields are informational and excluded from
determinism comparisons."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .certifier import aux_size_audit, prove, verify
from .cuttree import adjusted_hybrid_d, build_cut_tree, default_hybrid_d
from .graphs import Graph

SCHEMA = "ghct-bench-v1"


def resolve_d(g: Graph, d: Optional[int], d_policy: str) -> int:
    if d is not None:
        return d
    if d_policy == "sqrt":
        return default_hybrid_d(g)
    if d_policy == "sqrt-n16":
        return adjusted_hybrid_d(g)
    raise ValueError(f"unknown d policy {d_policy!r}")


def bench_one(instance_id: str, g: Graph, algorithm: str, repeat: int,
              d: Optional[int] = None, k: Optional[int] = None,
              d_policy: str = "sqrt", certify: bool = False) -> dict:
    kwargs = {}
    if algorithm == "hybrid":
        kwargs["d"] = resolve_d(g, d, d_policy)
    elif algorithm == "partial":
        kwargs["k"] = k if k is not None else default_hybrid_d(g)

    start = time.perf_counter()
    result, stats = build_cut_tree(g, algorithm, **kwargs)
    wall = time.perf_counter() - start

    violations = []
    if algorithm in ("gh", "gusfield") and stats.flow_calls != g.n - 1:
        violations.append(
            f"expected {g.n - 1} max-flow calls, made {stats.flow_calls}")
    if algorithm == "hybrid":
        high = stats.high_degree_nodes
        if stats.flow_calls > high:
            violations.append(
                f"stage-2 calls {stats.flow_calls} exceed high-degree count {high}")
        if g.is_unit_capacity and stats.sum_flow_values > 2 * stats.m:
            violations.append(
                f"stage-2 flow sum {stats.sum_flow_values} exceeds 2m = {2 * stats.m}")
    if stats.tree_weight_sum > 2 * stats.m:
        violations.append(
            f"tree weight sum {stats.tree_weight_sum} exceeds 2m = {2 * stats.m}")

    record = {
        "schema": SCHEMA,
        "instance": instance_id,
        "n": g.n,
        "m": stats.m,
        "algorithm": algorithm,
        "d": stats.d,
        "k": stats.k,
        "repeat": repeat,
        "flow_calls": stats.flow_calls,
        "capped_calls": stats.capped_calls,
        "sum_flow_values": stats.sum_flow_values,
        "high_degree_nodes": stats.high_degree_nodes,
        "peak_aux_edges": stats.peak_aux_edges,
        "tree_weight_sum": stats.tree_weight_sum,
        "wall_time_s": round(wall, 6),
        "invariant_violations": violations,
    }

    if certify and algorithm != "partial":
        witness = prove(g, result)
        outcome = verify(g, result, witness)
        audit = aux_size_audit(g, result)
        record["certified"] = bool(outcome)
        record["aux_edges_per_depth"] = {str(d_): v for d_, v in sorted(audit.per_depth.items())}
        record["aux_audit_ok"] = audit.ok
        if not outcome:
            violations.append(f"certifier rejected: {outcome.to_dict()}")
        if not audit.ok:
            violations.append("auxiliary size audit exceeded its budget")
    return record


def _bench_job(args) -> tuple[int, dict]:
    index, payload = args
    return index, bench_one(**payload)


def run_bench(instances: list[tuple[str, Graph]], algorithms: list[str],
              repeats: int = 1, d: Optional[int] = None, k: Optional[int] = None,
              d_policy: str = "sqrt", certify: bool = False,
              workers: int = 1) -> tuple[list[dict], bool]:
    """Run every (instance, algorithm, repeat) cell; returns (records, all_ok)."""
    jobs = []
    for instance_id, g in instances:
        for algorithm in algorithms:
            for repeat in range(repeats):
                jobs.append({
                    "instance_id": instance_id, "g": g, "algorithm": algorithm,
                    "repeat": repeat, "d": d, "k": k, "d_policy": d_policy,
                    "certify": certify,
                })
    if workers > 1 and len(jobs) > 1:
        results: list[Optional[dict]] = [None] * len(jobs)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, record in pool.map(_bench_job, list(enumerate(jobs))):
                results[index] = record
        records = [r for r in results if r is not None]
    else:
        records = [bench_one(**payload) for payload in jobs]
    ok = all(not r["invariant_violations"] for r in records)
    return records, ok
