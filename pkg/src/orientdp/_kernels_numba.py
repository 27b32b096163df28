"""Numba-compiled kernels: orientation-space scans and BFS distance sweeps.

All scans evaluate orientation masks k in [lo, hi); the mask actually applied
to the edges is k << shift, so shift=1 enumerates only orientations with edge
0 fixed low-to-high.  Distances use the integer sentinel INF_INT for
"unreachable"; callers translate to a proper infinity.

Scan kernels require n <= 63 (vertex sets live in one uint64).
"""

import numpy as np
from numba import njit

INF_INT = 1 << 30

_DB = np.uint64(0x03F79D71B4CB0A89)
_DB_TABLE = np.zeros(64, dtype=np.int64)
for _i in range(64):
    _DB_TABLE[(0x03F79D71B4CB0A89 << _i & (2**64 - 1)) >> 58] = _i


@njit(cache=True, nogil=True, inline="always")
def _ctz(x):
    return _DB_TABLE[(x & (~x + np.uint64(1))) * _DB >> np.uint64(58)]


@njit(cache=True, nogil=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, nogil=True, inline="always")
def _build_out(out, n, tails, heads, mask):
    for v in range(n):
        out[v] = np.uint64(0)
    for i in range(tails.shape[0]):
        if (mask >> i) & 1:
            out[heads[i]] |= np.uint64(1) << np.uint64(tails[i])
        else:
            out[tails[i]] |= np.uint64(1) << np.uint64(heads[i])


@njit(cache=True, nogil=True, inline="always")
def _ecc_capped(out, n, full, s, cap):
    """Eccentricity of s, or INF_INT once it provably exceeds cap."""
    visited = np.uint64(1) << np.uint64(s)
    frontier = visited
    level = np.int64(0)
    while visited != full:
        nxt = np.uint64(0)
        f = frontier
        while f != np.uint64(0):
            v = _ctz(f)
            f &= f - np.uint64(1)
            nxt |= out[v]
        nxt &= ~visited
        if nxt == np.uint64(0):
            return INF_INT
        level += 1
        if level > cap:
            return INF_INT
        visited |= nxt
        frontier = nxt
    return level


@njit(cache=True, nogil=True)
def scan_min_diameter(n, tails, heads, lo, hi, shift):
    full = (np.uint64(1) << np.uint64(n)) - np.uint64(1)
    out = np.empty(n, dtype=np.uint64)
    best = np.int64(INF_INT)
    best_mask = np.int64(-1)
    explored = np.int64(0)
    for k in range(lo, hi):
        mask = k << shift
        explored += 1
        _build_out(out, n, tails, heads, mask)
        diam = np.int64(0)
        for s in range(n):
            # abort once this mask cannot strictly beat the incumbent
            ecc = _ecc_capped(out, n, full, s, best - 1)
            if ecc >= best:
                diam = np.int64(INF_INT)
                break
            if ecc > diam:
                diam = ecc
        if diam < best:
            best = diam
            best_mask = mask
        if best_mask < 0:
            best_mask = mask
    return best, best_mask, explored


@njit(cache=True, nogil=True)
def scan_decide_diameter(n, tails, heads, l, lo, hi, shift):
    full = (np.uint64(1) << np.uint64(n)) - np.uint64(1)
    out = np.empty(n, dtype=np.uint64)
    explored = np.int64(0)
    for k in range(lo, hi):
        mask = k << shift
        explored += 1
        _build_out(out, n, tails, heads, mask)
        ok = True
        for s in range(n):
            if _ecc_capped(out, n, full, s, l) > l:
                ok = False
                break
        if ok:
            return mask, explored
    return np.int64(-1), explored


@njit(cache=True, nogil=True)
def scan_min_wiener(n, tails, heads, lo, hi, shift):
    full = (np.uint64(1) << np.uint64(n)) - np.uint64(1)
    out = np.empty(n, dtype=np.uint64)
    best = np.int64(INF_INT)
    best_mask = np.int64(-1)
    explored = np.int64(0)
    for k in range(lo, hi):
        mask = k << shift
        explored += 1
        _build_out(out, n, tails, heads, mask)
        total = np.int64(0)
        for s in range(n):
            visited = np.uint64(1) << np.uint64(s)
            frontier = visited
            level = np.int64(0)
            while visited != full:
                nxt = np.uint64(0)
                f = frontier
                while f != np.uint64(0):
                    v = _ctz(f)
                    f &= f - np.uint64(1)
                    nxt |= out[v]
                nxt &= ~visited
                if nxt == np.uint64(0):
                    total = np.int64(INF_INT)
                    break
                level += 1
                total += level * _popcount(nxt)
                visited |= nxt
                frontier = nxt
            if total >= best:
                total = np.int64(INF_INT)
                break
        if total < best:
            best = total
            best_mask = mask
        if best_mask < 0:
            best_mask = mask
    return best, best_mask, explored


@njit(cache=True, nogil=True)
def csr_all_dist(n, indptr, targets):
    dist = np.full((n, n), INF_INT, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = row[v]
            for j in range(indptr[v], indptr[v + 1]):
                w = targets[j]
                if row[w] == INF_INT:
                    row[w] = dv + 1
                    queue[tail] = w
                    tail += 1
    return dist


@njit(cache=True, nogil=True)
def csr_diameter(n, indptr, targets):
    dist = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    diam = np.int64(0)
    for s in range(n):
        dist[:] = INF_INT
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            for j in range(indptr[v], indptr[v + 1]):
                w = targets[j]
                if dist[w] == INF_INT:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
        if tail < n:
            return np.int64(INF_INT)
        ecc = np.int64(0)
        for v in range(n):
            if dist[v] > ecc:
                ecc = np.int64(dist[v])
        if ecc > diam:
            diam = ecc
    return diam


@njit(cache=True, nogil=True)
def csr_wiener(n, indptr, targets):
    dist = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    total = np.int64(0)
    for s in range(n):
        dist[:] = INF_INT
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            for j in range(indptr[v], indptr[v + 1]):
                w = targets[j]
                if dist[w] == INF_INT:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
        if tail < n:
            return np.int64(INF_INT)
        for v in range(n):
            total += dist[v]
    return total


@njit(cache=True, nogil=True)
def csr_diameter_at_most(n, indptr, targets, l):
    dist = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[:] = INF_INT
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            if dv >= l:
                break
            for j in range(indptr[v], indptr[v + 1]):
                w = targets[j]
                if dist[w] == INF_INT:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
        if tail < n:
            return False
    return True
