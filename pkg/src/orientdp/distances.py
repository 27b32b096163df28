"""Distances, diameter and Wiener index for graphs and digraphs.

Infinity is the float INF, never a large integer; arithmetic on distances
saturates through it naturally.  Bulk sweeps go through the selected kernel
backend; DistanceMatrix deliberately recomputes everything with a plain
Floyd-Warshall pass so it can serve as an independent cross-check of the
BFS-based routes (cubic, desk scale only).
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import backends
from .graphs import Digraph, GraphError, UndirectedGraph

INF = float("inf")

_INF_INT = backends.INF_INT


def _neighbor_lists(h):
    if isinstance(h, Digraph):
        return h.out
    if isinstance(h, UndirectedGraph):
        return h.adj
    raise GraphError(f"expected a graph or digraph, got {type(h).__name__}")


def _csr(h):
    lists = _neighbor_lists(h)
    indptr = np.zeros(h.n + 1, dtype=np.int64)
    for v, nbrs in enumerate(lists):
        indptr[v + 1] = indptr[v] + len(nbrs)
    targets = np.empty(indptr[-1], dtype=np.int64)
    pos = 0
    for nbrs in lists:
        for w in nbrs:
            targets[pos] = w
            pos += 1
    return indptr, targets


def sssp(h, s):
    """Breadth-first distances from s; INF marks unreachable vertices."""
    lists = _neighbor_lists(h)
    if not 0 <= s < h.n:
        raise GraphError(f"source {s} out of range for n={h.n}")
    dist = [INF] * h.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w in lists[v]:
            if dist[w] is INF:
                dist[w] = d
                queue.append(w)
    return dist


def diameter(h):
    """Max distance over ordered vertex pairs; 0 for n=1, INF if some pair
    is unreachable."""
    if h.n < 1:
        raise GraphError("diameter needs at least one vertex")
    if h.n == 1:
        return 0
    indptr, targets = _csr(h)
    d = int(backends.csr_diameter(h.n, indptr, targets))
    return INF if d >= _INF_INT else d


def wiener_index(h):
    """Sum of distances over ordered vertex pairs; INF if any is unreachable."""
    if h.n < 1:
        raise GraphError("wiener index needs at least one vertex")
    if h.n == 1:
        return 0
    indptr, targets = _csr(h)
    w = int(backends.csr_wiener(h.n, indptr, targets))
    return INF if w >= _INF_INT else w


def diameter_at_most(h, l):
    """True iff every ordered pair is within distance l (early-exit sweep)."""
    if h.n <= 1:
        return True
    indptr, targets = _csr(h)
    return bool(backends.csr_diameter_at_most(h.n, indptr, targets, l))


class DistanceMatrix:
    """All-pairs distances as an explicit matrix.

    Built by a Floyd-Warshall sweep, so it shares no code with the BFS
    kernels and can arbitrate them.
    """

    __slots__ = ("n", "_d")

    def __init__(self, n, matrix):
        self.n = n
        self._d = matrix

    @classmethod
    def from_graph(cls, h):
        n = h.n
        d = np.full((n, n), np.inf)
        np.fill_diagonal(d, 0.0)
        for v, nbrs in enumerate(_neighbor_lists(h)):
            for w in nbrs:
                d[v, w] = 1.0
        for k in range(n):
            np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :], out=d)
        return cls(n, d)

    def entry(self, x, y):
        v = self._d[x, y]
        return INF if np.isinf(v) else int(v)

    def diameter(self):
        if self.n == 1:
            return 0
        off = self._d[~np.eye(self.n, dtype=bool)]
        v = off.max()
        return INF if np.isinf(v) else int(v)

    def wiener(self):
        if self.n == 1:
            return 0
        off = self._d[~np.eye(self.n, dtype=bool)]
        if np.isinf(off).any():
            return INF
        return int(off.sum())

    def check_invariants(self):
        """Zero diagonal and the saturating triangle inequality."""
        if (np.diag(self._d) != 0).any():
            return False
        d = self._d
        for k in range(self.n):
            if (d > d[:, k : k + 1] + d[k : k + 1, :] + 1e-9).any():
                return False
        return True
