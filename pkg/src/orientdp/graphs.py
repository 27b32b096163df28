"""Core graph types: undirected graphs, orientations, digraphs.

Vertices are integers 0..n-1.  Edges of an undirected graph are kept as a
lexicographically sorted tuple of (u, v) pairs with u < v; the position of a
pair in that tuple is the edge's canonical index, and every orientation bit,
witness and bridge report refers to it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class GraphError(Exception):
    """Base class for errors raised by this package."""


class ParseError(GraphError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


class UndirectedGraph:
    """Simple undirected graph with a canonical edge ordering."""

    __slots__ = ("n", "edges", "adj", "_edge_index")

    def __init__(self, n, edges):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        canon = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop edge ({u},{v}) not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            canon.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(canon))
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._edge_index = {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self):
        return len(self.edges)

    def edge_index(self, u, v):
        """Canonical index of the edge {u, v}."""
        key = (u, v) if u < v else (v, u)
        try:
            return self._edge_index[key]
        except KeyError:
            raise GraphError(f"no edge ({u},{v})") from None

    def has_edge(self, u, v):
        key = (u, v) if u < v else (v, u)
        return key in self._edge_index

    def degree(self, v):
        return len(self.adj[v])

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Orientation:
    """One direction bit per canonical edge.

    Bit i = 0 orients edge i from its lesser endpoint to its greater one,
    bit i = 1 the reverse.
    """

    bits: tuple

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise GraphError("orientation bits must be 0 or 1")

    @classmethod
    def from_mask(cls, mask, m):
        """Bit i of the integer mask becomes bit i of the orientation."""
        return cls(tuple((mask >> i) & 1 for i in range(m)))

    def to_mask(self):
        mask = 0
        for i, b in enumerate(self.bits):
            mask |= b << i
        return mask

    def reversed(self):
        return Orientation(tuple(1 - b for b in self.bits))

    def __len__(self):
        return len(self.bits)


class Digraph:
    """Directed graph as per-vertex out-neighbor lists."""

    __slots__ = ("n", "out")

    def __init__(self, n, arcs):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        seen = set()
        out = [[] for _ in range(n)]
        for u, v in arcs:
            if u == v:
                raise GraphError(f"loop arc ({u},{v}) not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u},{v}) out of range for n={n}")
            if (u, v) in seen:
                raise GraphError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
            out[u].append(v)
        self.n = n
        self.out = tuple(tuple(sorted(o)) for o in out)

    def arcs(self):
        for u in range(self.n):
            for v in self.out[u]:
                yield (u, v)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sum(len(o) for o in self.out)})"


def orient(graph, orientation):
    """Apply an orientation to a graph, one arc per edge."""
    bits = orientation.bits if isinstance(orientation, Orientation) else tuple(orientation)
    if len(bits) != graph.m:
        raise GraphError(
            f"orientation has {len(bits)} bits but graph has {graph.m} edges"
        )
    arcs = []
    for (u, v), b in zip(graph.edges, bits):
        arcs.append((v, u) if b else (u, v))
    return Digraph(graph.n, arcs)


def parse_edge_list(text):
    """Parse the edge-list text format into a canonical UndirectedGraph.

    One "u v" pair per line; lines starting with '#' or 'c' are comments; an
    optional "p <n> <m>" header fixes the vertex count (otherwise it is
    max id + 1).  Duplicate and reversed pairs collapse to a single edge.
    """
    header_n = None
    pairs = []
    max_id = -1
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#c":
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header_n is not None:
                raise ParseError("duplicate header", ln)
            if len(tokens) < 2:
                raise ParseError("header needs a vertex count", ln)
            try:
                header_n = int(tokens[1])
            except ValueError:
                raise ParseError(f"non-integer token {tokens[1]!r}", ln) from None
            if header_n < 0:
                raise ParseError("negative vertex count", ln)
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", ln)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", ln) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id in {line!r}", ln)
        if u == v:
            raise ParseError("loop", ln)
        pairs.append((u, v))
        max_id = max(max_id, u, v)
    n = header_n if header_n is not None else max_id + 1
    if max_id >= n:
        raise ParseError(f"vertex id {max_id} exceeds header count {n}")
    return UndirectedGraph(n, pairs)


def serialize_edge_list(graph):
    """Canonical edge-list text: header plus edges in canonical order."""
    lines = [f"p {graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


FAMILIES = ("path", "cycle", "complete", "grid", "book")


def generate(family, p):
    """Build a named graph family member.

    path(p)/cycle(p)/complete(p) on p vertices, grid(g) is the g x g grid,
    book(t) is t triangles sharing the common edge (0,1).
    """
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}, expected one of {FAMILIES}")
    minimum = 3 if family in ("cycle", "complete") else 1
    if p < minimum:
        raise GraphError(f"{family} needs parameter >= {minimum}, got {p}")
    if family == "path":
        return UndirectedGraph(p, [(i, i + 1) for i in range(p - 1)])
    if family == "cycle":
        return UndirectedGraph(p, [(i, (i + 1) % p) for i in range(p)])
    if family == "complete":
        return UndirectedGraph(p, [(i, j) for i in range(p) for j in range(i + 1, p)])
    if family == "grid":
        edges = []
        for r in range(p):
            for c in range(p):
                v = r * p + c
                if c + 1 < p:
                    edges.append((v, v + 1))
                if r + 1 < p:
                    edges.append((v, v + p))
        return UndirectedGraph(p * p, edges)
    # book: apexes 2..t+1, each joined to both ends of the shared edge
    edges = [(0, 1)]
    for a in range(2, p + 2):
        edges.append((0, a))
        edges.append((1, a))
    return UndirectedGraph(p + 2, edges)


def is_connected(graph):
    if graph.n <= 1:
        return True
    seen = [False] * graph.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        x = queue.popleft()
        for y in graph.adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count == graph.n


def bridges(graph):
    """Canonical indices of all bridge edges (iterative lowpoint search)."""
    n = graph.n
    disc = [-1] * n
    low = [0] * n
    result = []
    for root in range(n):
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(graph.adj[root]))]
        timer = len([d for d in disc if d != -1])
        disc[root] = low[root] = timer
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for w in it:
                eidx = graph.edge_index(v, w)
                if eidx == parent_edge:
                    continue
                if disc[w] == -1:
                    timer += 1
                    disc[w] = low[w] = timer
                    stack.append((w, eidx, iter(graph.adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        result.append(graph.edge_index(p, v))
    return sorted(result)


def connectivity_report(graph):
    """(connected flag, canonical indices of bridge edges)."""
    return is_connected(graph), bridges(graph)


def contract_edge(graph, i):
    """Contract edge i into its lesser endpoint and relabel contiguously.

    The greater endpoint disappears; ids above it shift down by one; loops
    vanish and parallel edges collapse so the result stays simple.
    """
    if not 0 <= i < graph.m:
        raise GraphError(f"edge index {i} out of range for m={graph.m}")
    keep, gone = graph.edges[i]

    def relabel(x):
        if x == gone:
            x = keep
        return x if x < gone else x - 1

    edges = set()
    for u, v in graph.edges:
        a, b = relabel(u), relabel(v)
        if a != b:
            edges.add((a, b) if a < b else (b, a))
    return UndirectedGraph(graph.n - 1, edges)


def relabel(graph, perm):
    """Apply a vertex permutation (perm[v] = new id of v)."""
    if sorted(perm) != list(range(graph.n)):
        raise GraphError("not a permutation of the vertex set")
    return UndirectedGraph(graph.n, [(perm[u], perm[v]) for u, v in graph.edges])
