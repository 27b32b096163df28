"""Exhaustive ground truth over all 2^m orientations.

Enumeration follows integer order of the bit sequence (bit 0 least
significant); with symmetry halving (the default) edge 0 is pinned
low-to-high, which reversal symmetry makes lossless.  Witnesses are the
first orientation in enumeration order achieving the reported value.  The
orientation space can be split into contiguous chunks across worker
threads; results are folded in chunk order so they do not depend on the
worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backends
from .distances import INF
from .graphs import GraphError, Orientation, connectivity_report

DEFAULT_EDGE_CAP = 26
_HARD_EDGE_CAP = 62  # masks must fit an int64


class OracleCapError(GraphError):
    """Instance exceeds the configured oracle edge cap."""

    def __init__(self, m, cap):
        self.m = m
        self.cap = cap
        super().__init__(
            f"oracle refuses m={m} edges: cap is {cap} "
            f"(2^{m} orientations; raise the cap to override)"
        )


@dataclass(frozen=True)
class OracleResult:
    optimum: object  # int or INF
    witness: Orientation
    explored: int


def _edge_cap(limit_m):
    if limit_m is not None:
        return limit_m
    env = os.environ.get("ORIENTDP_ORACLE_CAP")
    return int(env) if env else DEFAULT_EDGE_CAP


def _prepare(graph, limit_m):
    cap = _edge_cap(limit_m)
    if graph.m > cap:
        raise OracleCapError(graph.m, cap)
    if graph.m > _HARD_EDGE_CAP:
        raise OracleCapError(graph.m, _HARD_EDGE_CAP)
    tails = np.array([u for u, _ in graph.edges], dtype=np.int64)
    heads = np.array([v for _, v in graph.edges], dtype=np.int64)
    return tails, heads


def _degenerate(graph):
    """A disconnected or bridged graph orients to INF however the bits
    fall, so one representative evaluation stands for the whole space."""
    connected, bridge_list = connectivity_report(graph)
    return not connected or bool(bridge_list)


def _run_scan(fn, pre_args, total, shift, threads):
    """Evaluate fn over mask indices [0, total), possibly split in
    contiguous chunks across threads; results come back in chunk order."""
    if threads <= 1 or total < 4096:
        return [fn(*pre_args, 0, total, shift)]
    workers = max(1, min(threads, total))
    step = (total + workers - 1) // workers
    spans = [(i, min(i + step, total)) for i in range(0, total, step)]
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        futs = [pool.submit(fn, *pre_args, lo, hi, shift) for lo, hi in spans]
        return [f.result() for f in futs]


def _scan_space(graph, halve):
    m = graph.m
    if halve and m >= 1:
        return 1 << (m - 1), 1
    return 1 << m, 0


def _fold_min(parts):
    """Deterministic fold: strictly better value wins, ties keep the
    earliest chunk's witness (which is the earliest mask overall)."""
    best, best_mask, explored = None, -1, 0
    for value, mask, count in parts:
        explored += count
        if best_mask < 0 or value < best:
            best, best_mask = int(value), int(mask)
    return best, best_mask, explored


def oracle_min_diameter(graph, limit_m=None, halve=True, threads=1):
    """Exact minimum directed diameter over all orientations."""
    tails, heads = _prepare(graph, limit_m)
    if _degenerate(graph):
        return OracleResult(INF, Orientation((0,) * graph.m), 1)
    total, shift = _scan_space(graph, halve)
    parts = _run_scan(
        backends.scan_min_diameter, (graph.n, tails, heads), total, shift, threads
    )
    best, best_mask, explored = _fold_min(parts)
    optimum = INF if best >= backends.INF_INT else best
    return OracleResult(optimum, Orientation.from_mask(best_mask, graph.m), explored)


def oracle_decide_diameter(graph, l, limit_m=None, halve=True, threads=1):
    """(feasible, witness): is some orientation of diameter at most l?"""
    if l < 1:
        raise GraphError(f"bound must be at least 1, got {l}")
    tails, heads = _prepare(graph, limit_m)
    if _degenerate(graph):
        return False, None
    total, shift = _scan_space(graph, halve)
    parts = _run_scan(
        backends.scan_decide_diameter, (graph.n, tails, heads, l), total, shift, threads
    )
    found = [int(mask) for mask, _ in parts if mask >= 0]
    if not found:
        return False, None
    return True, Orientation.from_mask(min(found), graph.m)


def oracle_min_wiener(graph, limit_m=None, halve=True, threads=1):
    """Exact minimum Wiener index over all orientations."""
    tails, heads = _prepare(graph, limit_m)
    if _degenerate(graph):
        return OracleResult(INF, Orientation((0,) * graph.m), 1)
    total, shift = _scan_space(graph, halve)
    parts = _run_scan(
        backends.scan_min_wiener, (graph.n, tails, heads), total, shift, threads
    )
    best, best_mask, explored = _fold_min(parts)
    optimum = INF if best >= backends.INF_INT else best
    return OracleResult(optimum, Orientation.from_mask(best_mask, graph.m), explored)
