"""Decide "does some orientation have diameter <= l" by dynamic programming
over a nice tree decomposition.

Distances are capped: values live in {0, ..., l, TOP} with TOP = l + 1
standing for "greater than l, possibly infinite"; everything above the
bound is indistinguishable for the decision.  A state consists of

  dist    capped pairwise distances between bag vertices inside the
          oriented part of the graph processed so far (closed under
          capped min-plus),
  s_out   capped distance vectors from forgotten vertices to the bag,
  s_in    capped distance vectors from the bag to forgotten vertices,
  pairs   (out, in) vector pairs, one per ordered pair of forgotten
          vertices whose current distance still exceeds l.

Profiles are kept fully relaxed through dist, so a pair is satisfied
exactly when min_y out[y] + in[y] <= l; once satisfied it never returns
(adding arcs only shrinks distances).  Any path that can still improve a
tracked quantity must cross the current bag, which is what makes the
profile vectors a sufficient interface.  Equal states merge; with witness
tracking each state carries the lexicographically least partial
orientation that reaches it, encoded as an integer with edge 0 at the
most significant position.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass

from .graphs import GraphError, Orientation, is_connected
from .treewidth import (
    FORGET,
    INTRODUCE_EDGE,
    INTRODUCE_VERTEX,
    JOIN,
    LEAF,
    DecompositionError,
)


class DPState:
    """Immutable, canonically encoded DP configuration."""

    __slots__ = ("bag", "dist", "s_out", "s_in", "pairs", "_hash")

    def __init__(self, bag, dist, s_out, s_in, pairs):
        self.bag = bag
        self.dist = dist
        self.s_out = s_out
        self.s_in = s_in
        self.pairs = pairs
        self._hash = hash((bag, dist, s_out, s_in, pairs))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            self._hash == other._hash
            and self.dist == other.dist
            and self.bag == other.bag
            and self.s_out == other.s_out
            and self.s_in == other.s_in
            and self.pairs == other.pairs
        )

    def __repr__(self):
        return (
            f"DPState(bag={self.bag}, dist={self.dist}, "
            f"out={len(self.s_out)}, in={len(self.s_in)}, pairs={len(self.pairs)})"
        )


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    witness: object  # Orientation when requested and feasible
    stats: dict


def transition_leaf():
    return DPState((), (), (), (), ())


def transition_introduce_vertex(state, v, l):
    """Add an isolated vertex to the bag: its row and column are TOP."""
    bag = state.bag
    if v in bag:
        raise GraphError(f"vertex {v} already in bag {bag}")
    top = l + 1
    pos = bisect_left(bag, v)
    b = len(bag)
    nbag = bag[:pos] + (v,) + bag[pos:]
    nb = b + 1
    dist = state.dist
    nd = [top] * (nb * nb)
    for x in range(b):
        xs = x + (x >= pos)
        row = x * b
        nrow = xs * nb
        for y in range(b):
            nd[nrow + y + (y >= pos)] = dist[row + y]
    nd[pos * nb + pos] = 0

    def widen(p):
        return p[:pos] + (top,) + p[pos:]

    return DPState(
        nbag,
        tuple(nd),
        tuple(widen(p) for p in state.s_out),
        tuple(widen(q) for q in state.s_in),
        tuple((widen(p), widen(q)) for p, q in state.pairs),
    )


def _pair_alive(p, q, l):
    """Unsatisfied: no bag vertex closes the pair within the bound."""
    for y in range(len(p)):
        if p[y] + q[y] <= l:
            return False
    return True


def transition_introduce_edge(state, u, v, l):
    """Both successors of orienting edge {u, v}: arc u->v then arc v->u."""
    bag = state.bag
    iu = bisect_left(bag, u)
    if iu >= len(bag) or bag[iu] != u:
        raise GraphError(f"endpoint {u} not in bag {bag}")
    iv = bisect_left(bag, v)
    if iv >= len(bag) or bag[iv] != v:
        raise GraphError(f"endpoint {v} not in bag {bag}")
    return (_add_arc(state, iu, iv, l), _add_arc(state, iv, iu, l))


def _add_arc(state, src, dst, l):
    bag = state.bag
    b = len(bag)
    dist = state.dist
    if dist[src * b + dst] <= 1:
        return state
    nd = list(dist)
    # one new arc: relax every pair through it once (paths use it at most
    # once more than before, and dist was already closed)
    for x in range(b):
        dxs = dist[x * b + src] + 1
        row = x * b
        for y in range(b):
            cand = dxs + dist[dst * b + y]
            if cand < nd[row + y]:
                nd[row + y] = cand
    nd = tuple(nd)
    p_src = src
    p_dst_row = dst * b

    def relax_out(p):
        base = p[p_src] + 1
        return tuple(
            min(p[y], base + nd[p_dst_row + y]) for y in range(b)
        )

    def relax_in(q):
        base = 1 + q[dst]
        return tuple(
            min(q[x], nd[x * b + p_src] + base) for x in range(b)
        )

    s_out = tuple(sorted({relax_out(p) for p in state.s_out}))
    s_in = tuple(sorted({relax_in(q) for q in state.s_in}))
    pairs = set()
    for p, q in state.pairs:
        p2 = relax_out(p)
        q2 = relax_in(q)
        if _pair_alive(p2, q2, l):
            pairs.add((p2, q2))
    return DPState(bag, nd, s_out, s_in, tuple(sorted(pairs)))


def transition_forget(state, v, l):
    """Drop v from the bag, recording its profiles and the ordered pairs
    against previously forgotten vertices that are still open."""
    bag = state.bag
    pos = bisect_left(bag, v)
    if pos >= len(bag) or bag[pos] != v:
        raise GraphError(f"vertex {v} not in bag {bag}")
    b = len(bag)
    dist = state.dist
    nbag = bag[:pos] + bag[pos + 1 :]
    rest = [j for j in range(b) if j != pos]
    v_out = tuple(dist[pos * b + j] for j in rest)
    v_in = tuple(dist[j * b + pos] for j in rest)

    def drop(p):
        return p[:pos] + p[pos + 1 :]

    pairs = {(drop(p), drop(q)) for p, q in state.pairs}
    # distances from/to v are exact in coordinate pos right now; pairs with
    # v are created only if v's side still exceeds the bound
    for p in state.s_out:
        if p[pos] > l:
            pairs.add((drop(p), v_in))
    for q in state.s_in:
        if q[pos] > l:
            pairs.add((v_out, drop(q)))
    s_out = {drop(p) for p in state.s_out}
    s_out.add(v_out)
    s_in = {drop(q) for q in state.s_in}
    s_in.add(v_in)
    nd = tuple(dist[x * b + y] for x in rest for y in rest)
    return DPState(
        nbag, nd, tuple(sorted(s_out)), tuple(sorted(s_in)), tuple(sorted(pairs))
    )


def transition_join(left, right, l):
    """Combine two states over the same bag whose introduced edge sets are
    disjoint."""
    bag = left.bag
    if bag != right.bag:
        raise GraphError(f"join bags differ: {bag} vs {right.bag}")
    b = len(bag)
    dl, dr = left.dist, right.dist
    nd = [dl[i] if dl[i] < dr[i] else dr[i] for i in range(b * b)]
    for k in range(b):
        kb = k * b
        for x in range(b):
            xk = nd[x * b + k]
            row = x * b
            for y in range(b):
                cand = xk + nd[kb + y]
                if cand < nd[row + y]:
                    nd[row + y] = cand
    nd = tuple(nd)

    def relax_out(p):
        return tuple(
            min(p[x] + nd[x * b + y] for x in range(b)) for y in range(b)
        )

    def relax_in(q):
        return tuple(
            min(nd[x * b + y] + q[y] for y in range(b)) for x in range(b)
        )

    out_l = {relax_out(p) for p in left.s_out}
    out_r = {relax_out(p) for p in right.s_out}
    in_l = {relax_in(q) for q in left.s_in}
    in_r = {relax_in(q) for q in right.s_in}
    pairs = set()
    for p, q in left.pairs + right.pairs:
        p2 = relax_out(p)
        q2 = relax_in(q)
        if _pair_alive(p2, q2, l):
            pairs.add((p2, q2))
    # ordered pairs across the two forgotten regions route through the bag
    for outs, ins in ((out_l, in_r), (out_r, in_l)):
        for p in outs:
            for q in ins:
                if _pair_alive(p, q, l):
                    pairs.add((p, q))
    return DPState(
        bag,
        nd,
        tuple(sorted(out_l | out_r)),
        tuple(sorted(in_l | in_r)),
        tuple(sorted(pairs)),
    )


def root_accept(state, l):
    """At the empty root bag a state is accepting iff no ordered pair of
    vertices is left unsatisfied."""
    if state.bag:
        raise GraphError(f"root acceptance needs an empty bag, got {state.bag}")
    return not state.pairs


def canonicalize(state, l):
    """Re-close dist, re-relax every profile, drop satisfied pairs and
    re-sort; on canonical states this is the identity."""
    b = len(state.bag)
    nd = list(state.dist)
    for k in range(b):
        kb = k * b
        for x in range(b):
            xk = nd[x * b + k]
            row = x * b
            for y in range(b):
                cand = xk + nd[kb + y]
                if cand < nd[row + y]:
                    nd[row + y] = cand
    nd = tuple(nd)

    def relax_out(p):
        return tuple(
            min(p[x] + nd[x * b + y] for x in range(b)) for y in range(b)
        )

    def relax_in(q):
        return tuple(
            min(nd[x * b + y] + q[y] for y in range(b)) for x in range(b)
        )

    pairs = set()
    for p, q in state.pairs:
        p2, q2 = relax_out(p), relax_in(q)
        if _pair_alive(p2, q2, l):
            pairs.add((p2, q2))
    return DPState(
        state.bag,
        nd,
        tuple(sorted({relax_out(p) for p in state.s_out})),
        tuple(sorted({relax_in(q) for q in state.s_in})),
        tuple(sorted(pairs)),
    )


def _is_dead(state, top):
    """A pair with an all-TOP side can never be satisfied by future arcs."""
    for p, q in state.pairs:
        if all(x >= top for x in p) or all(x >= top for x in q):
            return True
    return False


def dp_decide(graph, nice, l, want_witness=False, prune=False):
    """Feasibility of "some orientation has diameter <= l".

    Deterministic for fixed inputs; dead-state pruning is behavior
    preserving and off by default.  The witness, when requested, is
    re-derivable: its feasibility is not taken on faith by callers.
    """
    if l < 1:
        raise GraphError(f"bound must be at least 1, got {l}")
    if not is_connected(graph):
        raise GraphError("dp_decide requires a connected graph")
    nice.validate(graph)
    t0 = time.perf_counter()
    m = graph.m
    top = l + 1
    nodes = nice.nodes
    tables = [None] * len(nodes)
    remaining_uses = [0] * len(nodes)
    for nd in nodes:
        for c in nd.children:
            remaining_uses[c] += 1
    counts = []
    for i, nd in enumerate(nodes):
        kind = nd.kind
        if kind == LEAF:
            tab = {transition_leaf(): 0}
        elif kind == INTRODUCE_VERTEX:
            child = tables[nd.children[0]]
            tab = {}
            for s, w in child.items():
                s2 = transition_introduce_vertex(s, nd.vertex, l)
                old = tab.get(s2)
                if old is None or w < old:
                    tab[s2] = w
        elif kind == INTRODUCE_EDGE:
            child = tables[nd.children[0]]
            u, v = graph.edges[nd.edge]
            bit = 1 << (m - 1 - nd.edge)
            tab = {}
            for s, w in child.items():
                s0, s1 = transition_introduce_edge(s, u, v, l)
                old = tab.get(s0)
                if old is None or w < old:
                    tab[s0] = w
                w1 = w | bit
                old = tab.get(s1)
                if old is None or w1 < old:
                    tab[s1] = w1
        elif kind == FORGET:
            child = tables[nd.children[0]]
            tab = {}
            for s, w in child.items():
                s2 = transition_forget(s, nd.vertex, l)
                if prune and _is_dead(s2, top):
                    continue
                old = tab.get(s2)
                if old is None or w < old:
                    tab[s2] = w
        elif kind == JOIN:
            lt = tables[nd.children[0]]
            rt = tables[nd.children[1]]
            tab = {}
            for sl, wl in lt.items():
                for sr, wr in rt.items():
                    s2 = transition_join(sl, sr, l)
                    if prune and _is_dead(s2, top):
                        continue
                    w2 = wl | wr
                    old = tab.get(s2)
                    if old is None or w2 < old:
                        tab[s2] = w2
        else:
            raise DecompositionError(f"unknown node kind {kind!r}")
        tables[i] = tab
        counts.append(len(tab))
        for c in nd.children:
            remaining_uses[c] -= 1
            if remaining_uses[c] == 0:
                tables[c] = None

    root_tab = tables[-1]
    best_word = None
    for s, w in root_tab.items():
        if root_accept(s, l) and (best_word is None or w < best_word):
            best_word = w
    feasible = best_word is not None
    witness = None
    if feasible and want_witness:
        bits = tuple((best_word >> (m - 1 - i)) & 1 for i in range(m))
        witness = Orientation(bits)
    stats = {
        "nodes": len(nodes),
        "peak_states": max(counts) if counts else 0,
        "total_states": sum(counts),
        "states_per_node": tuple(counts),
        "millis": (time.perf_counter() - t0) * 1000.0,
    }
    return Verdict(feasible, witness, stats)
