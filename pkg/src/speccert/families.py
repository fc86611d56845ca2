"""Named constructions: the Shrikhande graph, the order-4 lattice graph, the
22-vertex point/plane graph of the binary affine 3-space, its AG(3,q)
generalization, block-design incidence graphs, verified cones over strongly
regular base graphs, and the catalog of regular 4-eigenvalue examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import graphs as gr
from .graphs import Graph
from .spectra import ExactSpectrum, spectrum_from_string


class InfeasibleParameters(ValueError):
    """Strongly regular parameters with no integral eigenvalue data."""


@dataclass(frozen=True)
class SrgParams:
    n: int
    r: int
    alpha: int
    beta: int

    def __post_init__(self):
        if not (0 <= self.alpha <= self.r and 0 <= self.beta <= self.r < self.n):
            raise ValueError("need 0 <= alpha,beta <= r < n")
        if self.r * (self.r - self.alpha - 1) != (self.n - self.r - 1) * self.beta:
            raise ValueError("parameters fail r(r-alpha-1) = (n-r-1)beta")

    def __str__(self):
        return f"srg({self.n},{self.r},{self.alpha},{self.beta})"


@dataclass(frozen=True)
class SymbolicSrgSpectrum:
    """Non-integral strongly regular spectrum ((diff +- sqrt(disc))/2)."""

    r: int
    diff: int  # alpha - beta
    disc: int  # nonsquare discriminant
    m2: int
    m3: int

    def to_floats(self):
        s = math.sqrt(self.disc)
        return ([float(self.r)] + [(self.diff + s) / 2] * self.m2
                + [(self.diff - s) / 2] * self.m3)


@dataclass(frozen=True)
class Bibd:
    """2-design: b blocks over v points, every point in r blocks, blocks of
    size k, every point pair in exactly alpha blocks."""

    v: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        b = len(self.blocks)
        if b == 0 or self.v < 2:
            raise ValueError("degenerate design")
        sizes = {len(bl) for bl in self.blocks}
        if len(sizes) != 1:
            raise ValueError("blocks have mixed sizes")
        reps = [sum(1 for bl in self.blocks if p in bl) for p in range(self.v)]
        if len(set(reps)) != 1:
            raise ValueError("points have mixed replication counts")
        pair_counts = set()
        for p in range(self.v):
            for q in range(p + 1, self.v):
                pair_counts.add(sum(1 for bl in self.blocks if p in bl and q in bl))
        if len(pair_counts) != 1:
            raise ValueError("point pairs lie in varying numbers of blocks")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks[0])

    @property
    def r(self) -> int:
        return sum(1 for bl in self.blocks if 0 in bl)

    @property
    def alpha(self) -> int:
        return sum(1 for bl in self.blocks if 0 in bl and 1 in bl)

    @property
    def symmetric(self) -> bool:
        return self.b == self.v


def fano_plane() -> Bibd:
    """The (7,3,1) symmetric design, blocks in incidence-matrix row order."""
    rows = [
        (1, 0, 0, 0, 1, 0, 1),
        (1, 1, 0, 0, 0, 1, 0),
        (0, 1, 1, 0, 0, 0, 1),
        (1, 0, 1, 1, 0, 0, 0),
        (0, 1, 0, 1, 1, 0, 0),
        (0, 0, 1, 0, 1, 1, 0),
        (0, 0, 0, 1, 0, 1, 1),
    ]
    blocks = tuple(frozenset(j for j, x in enumerate(row) if x) for row in rows)
    return Bibd(7, blocks)


def incidence_matrix(design: Bibd) -> list[list[int]]:
    return [[1 if p in bl else 0 for p in range(design.v)] for bl in design.blocks]


def incidence_graph(design: Bibd) -> Graph:
    """Bipartite point-block graph: points 0..v-1, blocks v..v+b-1."""
    edges = []
    for bi, bl in enumerate(design.blocks):
        for p in bl:
            edges.append((p, design.v + bi))
    return gr.from_edges(design.v + design.b, edges,
                         f"incidence({design.v},{design.k},{design.alpha})")


def matching_deleted_design(l: int) -> Bibd:
    """The symmetric (l, l-1, l-2) design whose blocks drop one point each;
    its incidence graph is the matching-deleted complete bipartite graph."""
    if l <= 2:
        raise ValueError("needs l > 2")
    blocks = tuple(frozenset(set(range(l)) - {i}) for i in range(l))
    return Bibd(l, blocks)


# ---------------------------------------------------------------------------
# strongly regular machinery


def detect_srg_params(G: Graph) -> SrgParams | None:
    """Combinatorial strong regularity: constant common-neighbor counts over
    adjacent and nonadjacent pairs; complete and empty graphs excluded."""
    degs = G.degrees()
    r = degs[0]
    if any(d != r for d in degs):
        return None
    if G.m == 0 or G.m == G.n * (G.n - 1) // 2:
        return None
    alpha = beta = None
    for i in range(G.n):
        for j in range(i + 1, G.n):
            common = (G.rows[i] & G.rows[j]).bit_count()
            if G.rows[i] >> j & 1:
                if alpha is None:
                    alpha = common
                elif alpha != common:
                    return None
            else:
                if beta is None:
                    beta = common
                elif beta != common:
                    return None
    if alpha is None or beta is None:
        return None
    return SrgParams(G.n, r, alpha, beta)


def srg_spectrum(params: SrgParams):
    """Spectrum from strongly regular parameters.

    Returns a certifiable ExactSpectrum when the discriminant is a perfect
    square, a SymbolicSrgSpectrum for the conference case, and raises
    InfeasibleParameters when the multiplicities fail to be integers.
    """
    n, r, a, b = params.n, params.r, params.alpha, params.beta
    diff = a - b
    disc = diff * diff + 4 * (r - b)
    s = math.isqrt(disc)
    numer = 2 * r + (n - 1) * diff
    if s * s == disc:
        if s == 0 or numer % s or (n - 1 - numer // s) % 2:
            raise InfeasibleParameters(f"{params}: non-integral multiplicities")
        m2 = (n - 1 - numer // s) // 2
        m3 = (n - 1 + numer // s) // 2
        if m2 < 0 or m3 < 0:
            raise InfeasibleParameters(f"{params}: negative multiplicity")
        l2 = (diff + s) // 2
        l3 = (diff - s) // 2
        pairs = [(l2, m2), (l3, m3), (r, 1)]
        return ExactSpectrum.from_pairs([(e, m) for e, m in pairs if m > 0], n)
    if numer != 0 or (n - 1) % 2:
        raise InfeasibleParameters(f"{params}: irrational eigenvalues with unequal halves")
    return SymbolicSrgSpectrum(r, diff, disc, (n - 1) // 2, (n - 1) // 2)


# ---------------------------------------------------------------------------
# fixed graphs


def shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for x in range(4):
        for y in range(4):
            for dx, dy in conn:
                u = x * 4 + y
                v = ((x + dx) % 4) * 4 + (y + dy) % 4
                if u < v:
                    edges.append((u, v))
    return gr.from_edges(16, edges, "shrikhande")


def lattice_l2_4() -> Graph:
    return gr.line_graph(gr.complete_multipartite([4, 4])).with_label("L2(4)")


# 4-regular cospectral mate of line(Q3) on 12 vertices; fixed edge table,
# externally sourced, regenerable by adjacency switching on line(Q3) and
# validated by the catalog gates (spectrum and non-isomorphism).
_BCS9_EDGES = [
    (0, 3), (0, 5), (0, 6), (0, 11), (1, 2), (1, 8), (1, 9), (1, 11),
    (2, 4), (2, 5), (2, 9), (3, 5), (3, 6), (3, 8), (4, 6), (4, 7),
    (4, 10), (5, 9), (6, 7), (7, 9), (7, 10), (8, 10), (8, 11), (10, 11),
]


def bcs9() -> Graph:
    return gr.from_edges(12, _BCS9_EDGES, "BCS9")


def ag32_graph() -> Graph:
    """22-vertex graph on the points and planes of the binary affine 3-space,
    assembled block by block from the Fano incidence matrix X:

        [ 0_8 | 1^t  0^t ]      upper-right 8x14: all-ones row over X | Y
        [     | X    Y   ]      with Y = J - X
        [ ----+--------- ]
        [  .. | (J-I) all]      lower-right 14x14: every 7x7 block is J-I
    """
    X = incidence_matrix(fano_plane())
    Y = [[1 - x for x in row] for row in X]
    n = 22
    A = [[0] * n for _ in range(n)]

    def put(i0, j0, block):
        for di, row in enumerate(block):
            for dj, v in enumerate(row):
                A[i0 + di][j0 + dj] = v
                A[j0 + dj][i0 + di] = v

    put(0, 8, [[1] * 7])          # vertex 0 vs first block column
    put(0, 15, [[0] * 7])
    put(1, 8, X)
    put(1, 15, Y)
    jmi = [[0 if i == j else 1 for j in range(7)] for i in range(7)]
    put(8, 8, jmi)
    put(8, 15, jmi)
    put(15, 15, jmi)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if A[i][j]]
    return gr.from_edges(n, edges, "ag32")


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            return False
    return True


def ag3q_family(q: int) -> Graph:
    """Points of (Z_q)^3 joined to the affine planes containing them, plus an
    edge between every two intersecting (non-parallel) planes."""
    if not _is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    npts = q ** 3

    def pt(x, y, z):
        return (x * q + y) * q + z

    # plane normals up to scalar: first nonzero coordinate is 1
    normals = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                if (a, b, c) == (0, 0, 0):
                    continue
                if (a == 1) or (a == 0 and b == 1) or (a == 0 and b == 0 and c == 1):
                    normals.append((a, b, c))
    planes = [(na, off) for na in normals for off in range(q)]
    nb = len(planes)
    edges = []
    members: list[set[int]] = []
    for bi, ((a, b, c), off) in enumerate(planes):
        mem = set()
        for x in range(q):
            for y in range(q):
                for z in range(q):
                    if (a * x + b * y + c * z) % q == off:
                        p = pt(x, y, z)
                        mem.add(p)
                        edges.append((p, npts + bi))
        members.append(mem)
    for i in range(nb):
        for j in range(i + 1, nb):
            if planes[i][0] != planes[j][0]:  # non-parallel planes intersect
                edges.append((npts + i, npts + j))
    return gr.from_edges(npts + nb, edges, f"ag3({q})")


def ag3q_design(q: int) -> Bibd:
    """The (q^3, q^2, q+1) point/plane design underlying ag3q_family."""
    G = ag3q_family(q)
    npts = q ** 3
    blocks = tuple(
        frozenset(v for v in G.neighbors(b) if v < npts)
        for b in range(npts, G.n)
    )
    return Bibd(npts, blocks)


def cone_family(base: Graph, alpha: int) -> Graph:
    """Cone over a verified srg(a^3+2a^2, a^2+a, a, a) base graph."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    want = SrgParams(alpha ** 3 + 2 * alpha ** 2, alpha ** 2 + alpha, alpha, alpha)
    got = detect_srg_params(base)
    if got != want:
        raise ValueError(f"base graph is {got}, cone family needs {want}")
    return gr.cone(base).with_label(f"cone[{alpha}]({base.label})")


def cone_family_spectrum(alpha: int) -> ExactSpectrum:
    n = alpha ** 3 + 2 * alpha ** 2 + 1
    return ExactSpectrum.from_pairs(
        [(alpha ** 2 + 2 * alpha, 1),
         (alpha, (alpha ** 3 + 2 * alpha ** 2 - alpha - 2) // 2),
         (-alpha, (alpha ** 3 + 2 * alpha ** 2 + alpha + 2) // 2)], n)


def hamming_333() -> Graph:
    k3 = gr.complete(3)
    return gr.cartesian_product(gr.cartesian_product(k3, k3), k3).with_label("H(3,3)")


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    build: object  # () -> Graph
    expected: ExactSpectrum | None = None
    recipe: str = ""  # recipe-grammar string reconstructing the graph

    def graph(self) -> Graph:
        return self.build()


def _t2(key, build, spec_str, recipe=""):
    return CatalogEntry("table2/" + key, build, spectrum_from_string(spec_str),
                        recipe or "catalog:table2/" + key)


def _table2_entries() -> list[CatalogEntry]:
    lq3 = lambda: gr.line_graph(gr.k_minus(4)).with_label("L(Q3)")
    lcp3 = lambda: gr.line_graph(gr.complete_multipartite([2, 2, 2])).with_label("L(CP(3))")
    ck33k3 = lambda: gr.complement(
        gr.cartesian_product(gr.complete_multipartite([3, 3]), gr.complete(3))
    ).with_label("cK33K3")
    lk6 = lambda: gr.line_graph(gr.complete(6)).with_label("L(K6)")
    return [
        _t2("LQ3", lq3, "4^1 2^3 0^3 -2^5", "line(kminus(4))"),
        _t2("BCS9", bcs9, "4^1 2^3 0^3 -2^5"),
        _t2("LCP3", lcp3, "6^1 2^3 0^2 -2^6", "line(multipartite(2,2,2))"),
        _t2("cK33K3", ck33k3, "12^1 3^2 0^9 -3^6",
            "complement(cartesian(kpq(3,3),complete(3)))"),
        _t2("LQ3xJ2", lambda: gr.tensor_j(lq3(), 2), "8^1 4^3 0^15 -4^5",
            "tensorJ(line(kminus(4)),2)"),
        _t2("BCS9xJ2", lambda: gr.tensor_j(bcs9(), 2), "8^1 4^3 0^15 -4^5",
            "tensorJ(catalog:table2/BCS9,2)"),
        _t2("LCP3xJ2", lambda: gr.tensor_j(lcp3(), 2), "12^1 4^3 0^14 -4^6",
            "tensorJ(line(multipartite(2,2,2)),2)"),
        _t2("H33", hamming_333, "6^1 3^6 0^12 -3^8",
            "cartesian(cartesian(complete(3),complete(3)),complete(3))"),
        _t2("cH33d3", lambda: gr.complement(gr.distance_k_graph(hamming_333(), 3)),
            "18^1 3^6 0^8 -3^12"),
        _t2("H33d2", lambda: gr.distance_k_graph(hamming_333(), 2),
            "12^1 3^8 0^6 -3^12"),
        _t2("LK6xJ2", lambda: gr.tensor_j(lk6(), 2), "16^1 4^5 0^15 -4^9",
            "tensorJ(line(complete(6)),2)"),
    ]


def table2_catalog() -> list[tuple[Graph, ExactSpectrum]]:
    """Every representable catalog row as (graph, expected spectrum)."""
    return [(e.graph(), e.expected) for e in _table2_entries()]


def _named_entries() -> list[CatalogEntry]:
    return [
        CatalogEntry("shrikhande", shrikhande,
                     spectrum_from_string("6^1 2^6 -2^9"), "shrikhande"),
        CatalogEntry("l24", lattice_l2_4, spectrum_from_string("6^1 2^6 -2^9"),
                     "line(kpq(4,4))"),
        CatalogEntry("cone_shrikhande", lambda: cone_family(shrikhande(), 2),
                     spectrum_from_string("8^1 2^6 -2^10"), "cone(shrikhande)"),
        CatalogEntry("cone_l24", lambda: cone_family(lattice_l2_4(), 2),
                     spectrum_from_string("8^1 2^6 -2^10"), "cone(line(kpq(4,4)))"),
        CatalogEntry("ag32", ag32_graph, spectrum_from_string("14^1 2^7 -2^14"),
                     "ag3q(2)"),
        CatalogEntry("q3", lambda: gr.k_minus(4).with_label("Q3"),
                     spectrum_from_string("3^1 1^3 -1^3 -3^1"), "kminus(4)"),
        CatalogEntry("cp3", lambda: gr.complete_multipartite([2, 2, 2]),
                     spectrum_from_string("4^1 0^3 -2^2"), "multipartite(2,2,2)"),
        CatalogEntry("lk6", lambda: gr.line_graph(gr.complete(6)).with_label("L(K6)"),
                     spectrum_from_string("8^1 2^5 -2^9"), "line(complete(6))"),
        CatalogEntry("heawood", lambda: incidence_graph(fano_plane()).with_label("heawood"),
                     spectrum_from_string("3^1 sqrt(2)^6 -sqrt(2)^6 -3^1"),
                     "heawood"),
        CatalogEntry("petersen",
                     lambda: gr.complement(gr.line_graph(gr.complete(5))).with_label("petersen"),
                     spectrum_from_string("3^1 1^5 -2^4"),
                     "complement(line(complete(5)))"),
    ]


def catalog() -> dict[str, CatalogEntry]:
    """All named constructions addressable by stable string keys."""
    out = {}
    for e in _named_entries() + _table2_entries():
        out[e.key] = e
    return out
