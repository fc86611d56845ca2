"""Immutable simple graphs on bitset adjacency rows, plus the operations
(complement, line graph, cone, blow-up and Cartesian products) that the
construction catalog composes.

Vertices are ``0..n-1``.  Row ``i`` is a Python int whose bit ``j`` is set
iff ``i ~ j``.  Graphs are frozen after construction; every operation
returns a new graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

MAX_VERTICES = 4096  # bit-row width budget


class GraphError(ValueError):
    """Invalid construction argument or malformed adjacency data."""


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise GraphError("row count does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {i} has bits beyond vertex range")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.rows[i] >> j & 1) != (self.rows[j] >> i & 1):
                    raise GraphError(f"adjacency not symmetric at ({i},{j})")

    @property
    def m(self) -> int:
        """Edge count."""
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if i < j]

    def with_label(self, label: str) -> "Graph":
        return Graph(self.n, self.rows, label)

    def to_numpy(self, dtype=None):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=dtype or np.int64)
        for i in range(self.n):
            for j in _bits(self.rows[i]):
                a[i, j] = 1
        return a

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"<Graph n={self.n} m={self.m}{tag}>"


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]  # sorted ascending
    is_regular: bool
    r: int | None  # common degree when regular


def _bits(x: int) -> list[int]:
    out = []
    while x:
        b = x & -x
        out.append(b.bit_length() - 1)
        x ^= b
    return out


def from_edges(n: int, edges, label: str = "") -> Graph:
    """Build a graph from an iterable of (i, j) pairs."""
    if n < 1:
        raise GraphError("need at least one vertex")
    rows = [0] * n
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge ({i},{j}) out of range for n={n}")
        if i == j:
            raise GraphError(f"self-loop at vertex {i}")
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(n, tuple(rows), label)


def from_bitmask(n: int, mask: int, label: str = "") -> Graph:
    """Decode an upper-triangle edge bitmask, lexicographic pair order.

    Bit ``0`` is the pair (0,1), bit ``1`` is (0,2), ... — the order used by
    the labeled-enumeration stream.
    """
    rows = [0] * n
    b = 0
    for i in range(n):
        for j in range(i + 1, n):
            if mask >> b & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            b += 1
    return Graph(n, tuple(rows), label)


def to_bitmask(G: Graph) -> int:
    mask = 0
    b = 0
    for i in range(G.n):
        for j in range(i + 1, G.n):
            if G.rows[i] >> j & 1:
                mask |= 1 << b
            b += 1
    return mask


# ---------------------------------------------------------------------------
# elementary constructors


def empty(n: int) -> Graph:
    if n < 1:
        raise GraphError("empty graph needs n >= 1")
    return Graph(n, (0,) * n, f"empty({n})")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)), f"K{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    rows = [(1 << ((i + 1) % n)) | (1 << ((i - 1) % n)) for i in range(n)]
    return Graph(n, tuple(rows), f"C{n}")


def complete_multipartite(parts) -> Graph:
    """Complete multipartite graph; vertices grouped part by part."""
    parts = sorted(parts)
    if not parts:
        raise GraphError("need at least one part")
    if any(p < 1 for p in parts):
        raise GraphError("part sizes must be positive")
    n = sum(parts)
    part_mask = []
    start = 0
    for p in parts:
        part_mask.append(((1 << p) - 1) << start)
        start += p
    full = (1 << n) - 1
    rows = []
    for k, p in enumerate(parts):
        other = full ^ part_mask[k]
        rows.extend([other] * p)
    label = "K_{" + ",".join(map(str, parts)) + "}"
    return Graph(n, tuple(rows), label)


def k_minus(l: int) -> Graph:
    """Complete bipartite graph on l+l vertices minus a perfect matching."""
    if l <= 2:
        raise GraphError("k_minus needs l > 2")
    rows = [0] * (2 * l)
    for i in range(l):
        for j in range(l):
            if i != j:
                rows[i] |= 1 << (l + j)
                rows[l + j] |= 1 << i
    return Graph(2 * l, tuple(rows), f"K-{l},{l}")


# ---------------------------------------------------------------------------
# operations


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    rows = tuple((full ^ r) ^ (1 << i) for i, r in enumerate(G.rows))
    return Graph(G.n, rows, f"complement({G.label})" if G.label else "")


def line_graph(G: Graph) -> Graph:
    """Line graph; vertices are the edges of G in sorted (i, j) order."""
    es = G.edges()
    if not es:
        raise GraphError("line graph of an edgeless graph")
    m = len(es)
    rows = [0] * m
    for a, b in combinations(range(m), 2):
        u, v = es[a]
        x, y = es[b]
        if u == x or u == y or v == x or v == y:
            rows[a] |= 1 << b
            rows[b] |= 1 << a
    return Graph(m, tuple(rows), f"L({G.label})" if G.label else "")


def cone(G: Graph) -> Graph:
    """Add an apex vertex (index n) adjacent to every vertex of G."""
    n = G.n
    apex = 1 << n
    rows = [r | apex for r in G.rows]
    rows.append((1 << n) - 1)
    return Graph(n + 1, tuple(rows), f"cone({G.label})" if G.label else "")


def tensor_j(G: Graph, m: int) -> Graph:
    """Blow-up replacing each vertex by m pairwise nonadjacent clones.

    Clone (u, i) sits at index u*m + i; (u, i) ~ (v, j) iff u ~ v.
    """
    if m < 1:
        raise GraphError("tensor_j needs m >= 1")
    if G.n * m > MAX_VERTICES:
        raise GraphError("product exceeds supported vertex count")
    rows = []
    for u in range(G.n):
        row = _spread(G.rows[u], m)
        rows.extend([row] * m)
    return Graph(G.n * m, tuple(rows), f"({G.label})xJ{m}" if G.label else "")


def star_j(G: Graph, m: int) -> Graph:
    """Blow-up replacing each vertex by an m-clique of clones.

    Same indexing as tensor_j; additionally (u, i) ~ (u, j) for i != j.
    """
    if m < 1:
        raise GraphError("star_j needs m >= 1")
    if G.n * m > MAX_VERTICES:
        raise GraphError("product exceeds supported vertex count")
    block = (1 << m) - 1
    rows = []
    for u in range(G.n):
        base = _spread(G.rows[u] | (1 << u), m)
        for i in range(m):
            rows.append(base ^ (1 << (u * m + i)))
    return Graph(G.n * m, tuple(rows), f"({G.label})*J{m}" if G.label else "")


def _spread(row: int, m: int) -> int:
    """Replace each set bit u of row by the m-bit block at u*m."""
    block = (1 << m) - 1
    out = 0
    while row:
        b = row & -row
        u = b.bit_length() - 1
        out |= block << (u * m)
        row ^= b
    return out


def cartesian_product(G: Graph, H: Graph) -> Graph:
    """Cartesian (box) product; (u, x) sits at index u*|V(H)| + x."""
    if G.n * H.n > MAX_VERTICES:
        raise GraphError("product exceeds supported vertex count")
    nh = H.n
    rows = []
    for u in range(G.n):
        for x in range(H.n):
            rows.append((H.rows[x] << (u * nh)) | _spread_single(G.rows[u], nh, x))
    return Graph(G.n * H.n, tuple(rows), f"({G.label})box({H.label})" if G.label and H.label else "")


def _spread_single(row: int, m: int, offset: int) -> int:
    """Place bit u of row at u*m + offset."""
    out = 0
    while row:
        b = row & -row
        u = b.bit_length() - 1
        out |= 1 << (u * m + offset)
        row ^= b
    return out


def disjoint_union(graphs) -> Graph:
    graphs = list(graphs)
    if not graphs:
        raise GraphError("union of nothing")
    n = sum(g.n for g in graphs)
    if n > MAX_VERTICES:
        raise GraphError("union exceeds supported vertex count")
    rows = []
    off = 0
    for g in graphs:
        rows.extend(r << off for r in g.rows)
        off += g.n
    label = "+".join(g.label for g in graphs if g.label)
    return Graph(n, tuple(rows), label)


def connected_components(G: Graph) -> list[tuple[Graph, list[int]]]:
    """Components as (subgraph, original vertex indices) pairs."""
    seen = 0
    comps = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.rows[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        verts = _bits(comp)
        index = {v: k for k, v in enumerate(verts)}
        rows = [0] * len(verts)
        for v in verts:
            for w in _bits(G.rows[v]):
                rows[index[v]] |= 1 << index[w]
        comps.append((Graph(len(verts), tuple(rows)), verts))
    return comps


def is_connected(G: Graph) -> bool:
    comp = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= G.rows[v]
        frontier = nxt & ~comp
        comp |= nxt
    return comp == (1 << G.n) - 1


def is_bipartite(G: Graph) -> bool:
    color = [None] * G.n
    for s in range(G.n):
        if color[s] is not None:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in _bits(G.rows[v]):
                if color[w] is None:
                    color[w] = color[v] ^ 1
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def diameter(G: Graph):
    """Longest shortest-path distance; math.inf when disconnected."""
    best = 0
    full = (1 << G.n) - 1
    for s in range(G.n):
        reached = 1 << s
        frontier = reached
        d = 0
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.rows[v]
            frontier = nxt & ~reached
            if frontier:
                d += 1
                reached |= frontier
        if reached != full:
            return math.inf
        best = max(best, d)
    return best


def distance_k_graph(G: Graph, k: int) -> Graph:
    """Graph joining vertex pairs at shortest-path distance exactly k."""
    if k < 1:
        raise GraphError("distance graph needs k >= 1")
    rows = [0] * G.n
    for s in range(G.n):
        reached = 1 << s
        frontier = reached
        d = 0
        while frontier and d < k:
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.rows[v]
            frontier = nxt & ~reached
            reached |= frontier
            d += 1
        if d == k:
            rows[s] = frontier
    return Graph(G.n, tuple(rows), f"dist{k}({G.label})" if G.label else "")


def degree_profile(G: Graph) -> DegreeProfile:
    degs = sorted(G.degrees())
    regular = degs[0] == degs[-1]
    return DegreeProfile(tuple(degs), regular, degs[0] if regular else None)


# ---------------------------------------------------------------------------
# isomorphism (exact backtracking with color refinement, meant for n <= 32)


def _refine(G: Graph, colors: list[int]) -> list[int]:
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[w] for w in _bits(G.rows[v]))))
            for v in range(G.n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [order[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def are_isomorphic(G: Graph, H: Graph) -> bool:
    """Exact isomorphism test by backtracking over refinement color classes."""
    if G.n != H.n or G.m != H.m:
        return False
    cg = _refine(G, [0] * G.n)
    ch = _refine(H, [0] * H.n)
    if sorted(cg) != sorted(ch):
        return False

    n = G.n
    mapping = [-1] * n  # G vertex -> H vertex
    used = 0

    def candidates(v: int) -> list[int]:
        req_adj = 0
        req_non = 0
        for u in range(n):
            if mapping[u] >= 0:
                if G.rows[v] >> u & 1:
                    req_adj |= 1 << mapping[u]
                else:
                    req_non |= 1 << mapping[u]
        out = []
        for w in range(n):
            if used >> w & 1 or ch[w] != cg[v]:
                continue
            if (H.rows[w] & req_adj) == req_adj and not (H.rows[w] & req_non):
                out.append(w)
        return out

    def pick() -> int:
        # most-constrained unmapped vertex: maximize mapped neighbors
        best, best_key = -1, (-1, -1)
        for v in range(n):
            if mapping[v] >= 0:
                continue
            mapped_nbrs = sum(1 for u in _bits(G.rows[v]) if mapping[u] >= 0)
            key = (mapped_nbrs, G.degree(v))
            if key > best_key:
                best, best_key = v, key
        return best

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == n:
            return True
        v = pick()
        for w in candidates(v):
            mapping[v] = w
            used |= 1 << w
            if extend(depth + 1):
                return True
            mapping[v] = -1
            used ^= 1 << w
        return False

    return extend(0)
