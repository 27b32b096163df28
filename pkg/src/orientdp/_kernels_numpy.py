"""NumPy fallback kernels, signature-compatible with the numba backend.

Orientation scans are evaluated in batches: a batch of masks becomes a stack
of boolean adjacency matrices and distances come from levelwise boolean
matrix products.  Single-digraph distance sweeps delegate to
scipy.sparse.csgraph.  Roughly an order of magnitude slower than the numba
backend; selected via ORIENTDP_BACKEND=numpy or when numba is unavailable.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

INF_INT = 1 << 30

_BATCH = 1024
_SOURCE_CHUNK = 256


def _batch_dist(n, tails, heads, masks):
    """Distance tensors (B, n, n) for a batch of orientation masks."""
    b = masks.shape[0]
    m = tails.shape[0]
    bits = (masks[:, None] >> np.arange(m)[None, :]) & 1
    adj = np.zeros((b, n, n), dtype=bool)
    rows = np.arange(b)
    for i in range(m):
        u, v = tails[i], heads[i]
        src = np.where(bits[:, i] == 1, v, u)
        dst = np.where(bits[:, i] == 1, u, v)
        adj[rows, src, dst] = True
    reach = np.broadcast_to(np.eye(n, dtype=bool), (b, n, n)).copy()
    dist = np.where(reach, 0, INF_INT).astype(np.int32)
    frontier = reach.copy()
    for level in range(1, n):
        nxt = np.matmul(frontier.astype(np.uint8), adj.astype(np.uint8)) > 0
        nxt &= ~reach
        if not nxt.any():
            break
        dist[nxt] = level
        reach |= nxt
        frontier = nxt
    return dist


def _mask_iter(lo, hi):
    k = lo
    while k < hi:
        yield np.arange(k, min(k + _BATCH, hi), dtype=np.int64)
        k += _BATCH


def scan_min_diameter(n, tails, heads, lo, hi, shift):
    best = INF_INT
    best_mask = -1
    explored = 0
    for ks in _mask_iter(lo, hi):
        masks = ks << shift
        dist = _batch_dist(n, tails, heads, masks)
        diams = dist.max(axis=(1, 2))
        explored += len(ks)
        i = int(np.argmin(diams))
        if best_mask < 0:
            best_mask = int(masks[0])
        if diams[i] < best:
            best = int(diams[i])
            best_mask = int(masks[i])
    if best >= INF_INT:
        best = INF_INT
    return best, best_mask, explored


def scan_decide_diameter(n, tails, heads, l, lo, hi, shift):
    explored = 0
    for ks in _mask_iter(lo, hi):
        masks = ks << shift
        dist = _batch_dist(n, tails, heads, masks)
        ok = dist.max(axis=(1, 2)) <= l
        hits = np.flatnonzero(ok)
        if hits.size:
            explored += int(hits[0]) + 1
            return int(masks[hits[0]]), explored
        explored += len(ks)
    return -1, explored


def scan_min_wiener(n, tails, heads, lo, hi, shift):
    best = INF_INT
    best_mask = -1
    explored = 0
    for ks in _mask_iter(lo, hi):
        masks = ks << shift
        dist = _batch_dist(n, tails, heads, masks).astype(np.int64)
        finite = (dist < INF_INT).all(axis=(1, 2))
        sums = dist.sum(axis=(1, 2))
        sums[~finite] = INF_INT
        explored += len(ks)
        i = int(np.argmin(sums))
        if best_mask < 0:
            best_mask = int(masks[0])
        if sums[i] < best:
            best = int(sums[i])
            best_mask = int(masks[i])
    return best, best_mask, explored


def _csgraph(n, indptr, targets):
    data = np.ones(len(targets), dtype=np.int8)
    return csr_matrix((data, targets, indptr), shape=(n, n))

def _dist_chunks(n, indptr, targets):
    g = _csgraph(n, indptr, targets)
    for s in range(0, n, _SOURCE_CHUNK):
        idx = np.arange(s, min(s + _SOURCE_CHUNK, n))
        yield shortest_path(g, method="D", unweighted=True, indices=idx)


def csr_all_dist(n, indptr, targets):
    out = np.empty((n, n), dtype=np.int32)
    row = 0
    for d in _dist_chunks(n, indptr, targets):
        block = np.where(np.isinf(d), INF_INT, d).astype(np.int32)
        out[row : row + block.shape[0]] = block
        row += block.shape[0]
    return out


def csr_diameter(n, indptr, targets):
    diam = 0
    for d in _dist_chunks(n, indptr, targets):
        if np.isinf(d).any():
            return INF_INT
        diam = max(diam, int(d.max()))
    return diam


def csr_wiener(n, indptr, targets):
    total = 0
    for d in _dist_chunks(n, indptr, targets):
        if np.isinf(d).any():
            return INF_INT
        total += int(d.sum())
    return total


def csr_diameter_at_most(n, indptr, targets, l):
    for d in _dist_chunks(n, indptr, targets):
        if np.isinf(d).any() or d.max() > l:
            return False
    return True
