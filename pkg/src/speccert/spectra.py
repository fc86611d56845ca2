"""Floating-point spectra, exact spectrum certification, and characteristic
polynomials.

The float path diagonalizes with cyclic-sweep Jacobi rotations.  The exact
path never trusts a float: integer eigenvalue multiplicities are nullities
of A - e*I computed by fraction-free (Bareiss) elimination over the big
integers, and an irrational pair +-sqrt(d) is certified through an exact
annihilating-polynomial identity on the adjacency matrix.  Float clusters
only *route* candidates into the exact machinery; tolerances never decide a
certified answer.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from ._batch import jacobi_eigenvalues
from .graphs import Graph, connected_components

DEFAULT_FLOAT_TOL = 1e-9
CLUSTER_TOL = 1e-7   # routes float clusters; certification stays exact
INTEGER_GATE = 1e-6  # cluster center must sit this close to an integer


class CertificationError(ValueError):
    """An exact check failed or the candidate shape is unsupported."""


# ---------------------------------------------------------------------------
# exact values


@dataclass(frozen=True)
class ExactEigenvalue:
    """An integer, or sign*sqrt(radicand) with a nonsquare radicand."""

    integer: int | None = None
    sign: int = 0
    radicand: int = 0

    def __post_init__(self):
        if self.integer is not None:
            if self.sign or self.radicand:
                raise ValueError("integer eigenvalue carries surd fields")
        else:
            if self.sign not in (-1, 1) or self.radicand < 2:
                raise ValueError("surd needs sign +-1 and radicand >= 2")
            if math.isqrt(self.radicand) ** 2 == self.radicand:
                raise ValueError("perfect-square radicand must be an integer")

    @staticmethod
    def of(v: int) -> "ExactEigenvalue":
        return ExactEigenvalue(integer=int(v))

    @staticmethod
    def surd(sign: int, radicand: int) -> "ExactEigenvalue":
        return ExactEigenvalue(integer=None, sign=sign, radicand=radicand)

    @property
    def is_integer(self) -> bool:
        return self.integer is not None

    def value(self) -> float:
        if self.integer is not None:
            return float(self.integer)
        return self.sign * math.sqrt(self.radicand)

    def squared(self) -> int:
        return self.integer * self.integer if self.integer is not None else self.radicand

    def __neg__(self) -> "ExactEigenvalue":
        if self.integer is not None:
            return ExactEigenvalue.of(-self.integer)
        return ExactEigenvalue.surd(-self.sign, self.radicand)

    def _lt(self, other: "ExactEigenvalue") -> bool:
        a, b = self, other
        if a.is_integer and b.is_integer:
            return a.integer < b.integer
        if a.is_integer:
            if b.sign > 0:
                return a.integer < 0 or a.integer * a.integer < b.radicand
            return a.integer < 0 and a.integer * a.integer > b.radicand
        if b.is_integer:
            return not (b._lt(a) or a == b)
        if a.sign != b.sign:
            return a.sign < b.sign
        return a.radicand < b.radicand if a.sign > 0 else a.radicand > b.radicand

    def __lt__(self, other):
        return self._lt(other)

    def __le__(self, other):
        return self == other or self._lt(other)

    def __str__(self):
        if self.integer is not None:
            return str(self.integer)
        return f"{'-' if self.sign < 0 else ''}sqrt({self.radicand})"


@dataclass(frozen=True)
class ExactSpectrum:
    """Descending (eigenvalue, multiplicity) pairs for a graph of order n."""

    entries: tuple[tuple[ExactEigenvalue, int], ...]
    n: int
    certified: bool = False

    def __post_init__(self):
        if sum(m for _, m in self.entries) != self.n:
            raise ValueError("multiplicities do not sum to the order")
        for (a, ma), (b, mb) in zip(self.entries, self.entries[1:]):
            if not b._lt(a):
                raise ValueError("entries must be strictly descending")
        if any(m < 1 for _, m in self.entries):
            raise ValueError("multiplicities must be positive")
        # trace of an adjacency matrix is zero: integer parts cancel and the
        # +-sqrt(d) pairs must balance radicand by radicand
        if sum((e.integer or 0) * m for e, m in self.entries) != 0:
            raise ValueError("integer eigenvalues do not sum to zero")
        surd_balance: dict[int, int] = {}
        for e, m in self.entries:
            if not e.is_integer:
                surd_balance[e.radicand] = surd_balance.get(e.radicand, 0) + e.sign * m
        if any(v != 0 for v in surd_balance.values()):
            raise ValueError("surd eigenvalues do not cancel in the trace")

    @staticmethod
    def from_pairs(pairs, n: int, certified: bool = False) -> "ExactSpectrum":
        merged: dict[ExactEigenvalue, int] = {}
        for e, m in pairs:
            if isinstance(e, int):
                e = ExactEigenvalue.of(e)
            merged[e] = merged.get(e, 0) + m
        entries = tuple(sorted(merged.items(), key=_sort_key, reverse=True))
        return ExactSpectrum(entries, n, certified)

    @property
    def index(self) -> ExactEigenvalue:
        return self.entries[0][0]

    @property
    def distinct(self) -> int:
        return len(self.entries)

    @property
    def is_integral(self) -> bool:
        return all(e.is_integer for e, _ in self.entries)

    def multiplicity(self, e: ExactEigenvalue | int) -> int:
        if isinstance(e, int):
            e = ExactEigenvalue.of(e)
        for v, m in self.entries:
            if v == e:
                return m
        return 0

    def sum_of_squares(self) -> int:
        return sum(e.squared() * m for e, m in self.entries)

    def to_floats(self) -> np.ndarray:
        out = []
        for e, m in self.entries:
            out.extend([e.value()] * m)
        return np.array(out)

    def __str__(self):
        return " ".join(f"{e}^{m}" for e, m in self.entries)


def _sort_key(item):
    e = item[0]

    class _K:
        __slots__ = ("e",)

        def __init__(self, e):
            self.e = e

        def __lt__(self, other):
            return self.e._lt(other.e)

    return _K(e)


_SPEC_TOKEN = re.compile(r"^(-?\d+|-?sqrt\((\d+)\))(?:\^(\d+))?$")


def spectrum_from_string(text: str, n: int | None = None) -> ExactSpectrum:
    """Parse "14^1 2^7 -2^14" or "sqrt(6)^1 0^3 -sqrt(6)^1" into a spectrum."""
    pairs = []
    for tok in text.split():
        mt = _SPEC_TOKEN.match(tok)
        if not mt:
            raise ValueError(f"bad spectrum token {tok!r}")
        base, rad, mult = mt.group(1), mt.group(2), int(mt.group(3) or 1)
        if rad is not None:
            e = ExactEigenvalue.surd(-1 if base.startswith("-") else 1, int(rad))
        else:
            e = ExactEigenvalue.of(int(base))
        pairs.append((e, mult))
    total = sum(m for _, m in pairs)
    return ExactSpectrum.from_pairs(pairs, n if n is not None else total)


# ---------------------------------------------------------------------------
# float spectra


@dataclass(frozen=True)
class FloatSpectrum:
    values: tuple[float, ...]  # descending
    cluster_tolerance: float = DEFAULT_FLOAT_TOL
    certified: bool = field(default=False, init=False)

    @property
    def n(self) -> int:
        return len(self.values)

    def clusters(self, tol: float | None = None) -> list[tuple[float, int]]:
        """Greedy partition of the sorted values into groups of small diameter."""
        tol = self.cluster_tolerance if tol is None else tol
        out: list[tuple[float, int]] = []
        anchor, total, count = None, 0.0, 0
        for v in self.values:
            if anchor is None or anchor - v > tol:
                if count:
                    out.append((total / count, count))
                anchor, total, count = v, v, 1
            else:
                total += v
                count += 1
        if count:
            out.append((total / count, count))
        return out

    def __str__(self):
        return " ".join(f"{c:.12g}^{m}" for c, m in self.clusters(CLUSTER_TOL))


def float_spectrum(G: Graph, tolerance: float = DEFAULT_FLOAT_TOL) -> FloatSpectrum:
    """Jacobi eigenvalues of the adjacency matrix, sorted descending."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    vals = jacobi_eigenvalues(G.to_numpy(dtype=np.float64)[None, :, :])[0]
    return FloatSpectrum(tuple(float(v) for v in vals), tolerance)


# ---------------------------------------------------------------------------
# exact integer linear algebra (fraction-free)


def _adjacency_int(G: Graph) -> list[list[int]]:
    return [[1 if G.rows[i] >> j & 1 else 0 for j in range(G.n)] for i in range(G.n)]


def _bareiss_rank(m: list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination (division-free pivoting,
    exact big-integer cross-multiplication with division by the previous
    pivot, which stays exact for any pivot order)."""
    nr = len(m)
    nc = len(m[0]) if nr else 0
    prev = 1
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if m[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nr):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, nc):
                row_i[j] = (row_i[j] * piv - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
        if r == nr:
            break
    return r


def _bareiss_det(m: list[list[int]]) -> int:
    nr = len(m)
    if nr == 0:
        return 1
    prev = 1
    sign = 1
    for k in range(nr):
        pr = next((i for i in range(k, nr) if m[i][k]), None)
        if pr is None:
            return 0
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, nr):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, nr):
                row_i[j] = (row_i[j] * piv - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * m[nr - 1][nr - 1]


def _int_matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Exact product; numpy int64 when a bound check rules out overflow."""
    n = len(a)
    max_a = max((abs(x) for row in a for x in row), default=0)
    max_b = max((abs(x) for row in b for x in row), default=0)
    if n * max_a * max_b < (1 << 62):
        c = np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)
        return c.tolist()
    bt = list(map(list, zip(*b)))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def certify_integer_eigenvalue(G: Graph, e: int) -> int:
    """Exact multiplicity of integer e: nullity of A - e*I."""
    m = _adjacency_int(G)
    for i in range(G.n):
        m[i][i] -= e
    return G.n - _bareiss_rank(m)


# ---------------------------------------------------------------------------
# characteristic polynomials


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial; coefficients from x^n downward."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in self.coefficients:
            acc = acc * x + c
        return acc

    def __str__(self):
        return " ".join(map(str, self.coefficients))


def char_poly(G: Graph) -> CharPoly:
    """Exact det(x*I - A), interpolated from n+1 exact determinant values.

    Evaluation points k = 0..n keep the Bareiss minors small; the integer
    Vandermonde system is solved with exact rationals (Newton form).
    """
    n = G.n
    base = _adjacency_int(G)
    values = []
    for k in range(n + 1):
        m = [row[:] for row in base]
        for i in range(n):
            m[i][i] = k - m[i][i]
            for j in range(n):
                if j != i:
                    m[i][j] = -m[i][j]
        values.append(_bareiss_det(m))
    coeffs = _newton_interpolate(values)
    if len(coeffs) < n + 1:
        coeffs = coeffs + [0] * (n + 1 - len(coeffs))
    return CharPoly(tuple(reversed(coeffs)))


def _newton_interpolate(values: list[int]) -> list[int]:
    """Integer polynomial through (k, values[k]) for k = 0..len-1, ascending
    coefficients."""
    pts = len(values)
    dd = [Fraction(v) for v in values]
    for level in range(1, pts):
        for i in range(pts - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / level
    poly = [Fraction(0)] * pts
    poly[0] = dd[pts - 1]
    for k in range(pts - 2, -1, -1):
        # poly <- poly*(x - k) + dd[k]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - k * p for s, p in zip(shifted, poly)]
        poly[0] += dd[k]
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolation produced a non-integer coefficient")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def multipartite_char_poly(parts) -> CharPoly:
    """Closed-form characteristic polynomial of a complete multipartite graph:
    x^(n-r) * [ prod(x + p_i) - sum_i p_i * prod_{j != i} (x + p_j) ]."""
    parts = sorted(parts)
    if not parts or any(p < 1 for p in parts):
        raise ValueError("parts must be positive")
    n = sum(parts)
    r = len(parts)
    prod = [1]
    for p in parts:
        prod = _poly_mul(prod, [p, 1])
    acc = prod[:]
    for i, p in enumerate(parts):
        partial = [1]
        for j, q in enumerate(parts):
            if j != i:
                partial = _poly_mul(partial, [q, 1])
        acc = [a - p * b for a, b in zip(acc, partial + [0] * (len(acc) - len(partial)))]
    coeffs = [0] * (n - r) + acc
    return CharPoly(tuple(reversed(coeffs)))


def char_poly_from_spectrum(spec: ExactSpectrum) -> CharPoly:
    """prod (x - lambda_i)^(m_i), expanded exactly; surd pairs give (x^2-d)."""
    poly = [1]
    seen_surd: set[int] = set()
    for e, m in spec.entries:
        if e.is_integer:
            for _ in range(m):
                poly = _poly_mul(poly, [-e.integer, 1])
        else:
            if e.radicand in seen_surd:
                continue
            seen_surd.add(e.radicand)
            for _ in range(m):
                poly = _poly_mul(poly, [-e.radicand, 0, 1])
    return CharPoly(tuple(reversed(poly)))


# ---------------------------------------------------------------------------
# certification


def certify_spectrum(G: Graph, candidate: ExactSpectrum) -> ExactSpectrum:
    """Exactly verify a candidate spectrum against the graph.

    Integer entries are confirmed by their nullities.  A single +-sqrt(d)
    pair (equal multiplicities) is confirmed by the annihilating identity
    prod(A - e*I) * (A^2 - d*I) = 0 over the distinct integer entries e:
    with all integer multiplicities pinned exactly, the leftover invariant
    subspace must carry sqrt(d) and -sqrt(d) in equal halves since the trace
    is zero.  For the plain {sqrt(pq), 0^(n-2), -sqrt(pq)} shape this is the
    identity A^3 = pq*A.
    """
    if sum(m for _, m in candidate.entries) != G.n:
        raise CertificationError("multiplicity mismatch with graph order")
    if candidate.sum_of_squares() != 2 * G.m:
        raise CertificationError("sum of squared eigenvalues is not 2m")
    radicands = {e.radicand for e, _ in candidate.entries if not e.is_integer}
    if len(radicands) > 1:
        raise CertificationError("unsupported surd shape: more than one radicand")

    for e, m in candidate.entries:
        if e.is_integer:
            got = certify_integer_eigenvalue(G, e.integer)
            if got != m:
                raise CertificationError(
                    f"eigenvalue {e} has exact multiplicity {got}, candidate says {m}")

    if radicands:
        d = radicands.pop()
        ints = [e.integer for e, _ in candidate.entries if e.is_integer]
        a = _adjacency_int(G)
        prod = None
        for e in ints:
            m = [row[:] for row in a]
            for i in range(G.n):
                m[i][i] -= e
            prod = m if prod is None else _int_matmul(prod, m)
        a2 = _int_matmul(a, a)
        for i in range(G.n):
            a2[i][i] -= d
        prod = a2 if prod is None else _int_matmul(prod, a2)
        if any(x != 0 for row in prod for x in row):
            raise CertificationError(
                f"annihilating identity fails for the sqrt({d}) pair")

    return replace(candidate, certified=True)


def exact_spectrum(G: Graph):
    """Certified exact spectrum when the shape allows it, float fallback
    otherwise.  Disconnected graphs are certified component-wise and merged.

    Returns an ExactSpectrum (certified) or a FloatSpectrum.
    """
    comps = connected_components(G)
    if len(comps) > 1:
        parts = [exact_spectrum(c) for c, _ in comps]
        if all(isinstance(p, ExactSpectrum) and p.certified for p in parts):
            pairs = []
            for p in parts:
                pairs.extend(p.entries)
            return ExactSpectrum.from_pairs(pairs, G.n, certified=True)
        return float_spectrum(G)

    fs = float_spectrum(G)
    clusters = fs.clusters(CLUSTER_TOL)
    pairs = []
    surd_clusters = []
    for center, count in clusters:
        r = round(center)
        if abs(center - r) <= INTEGER_GATE:
            pairs.append((ExactEigenvalue.of(int(r)), count))
        else:
            surd_clusters.append((center, count))
    if not surd_clusters:
        return certify_spectrum(G, ExactSpectrum.from_pairs(pairs, G.n))
    if len(surd_clusters) == 2:
        (c1, m1), (c2, m2) = surd_clusters
        d = round(c1 * c1)
        if (m1 == m2 and abs(c1 + c2) <= CLUSTER_TOL
                and abs(c1 * c1 - d) <= INTEGER_GATE
                and math.isqrt(d) ** 2 != d):
            pairs.append((ExactEigenvalue.surd(1, d), m1))
            pairs.append((ExactEigenvalue.surd(-1, d), m2))
            return certify_spectrum(G, ExactSpectrum.from_pairs(pairs, G.n))
    return fs


# ---------------------------------------------------------------------------
# interlacing of multipartite part sizes


def multipartite_interlacing_check(parts, negative_eigenvalues, tol: float = 1e-9) -> bool:
    """Check p1 <= -l_(n-r+2) <= p2 <= ... <= p_(r-1) <= -l_n <= p_r for the
    r-1 negative eigenvalues of a complete multipartite graph, given
    ascending by absolute value."""
    parts = sorted(parts)
    r = len(parts)
    negs = list(negative_eigenvalues)
    if len(negs) != r - 1:
        raise ValueError(f"expected {r - 1} negative eigenvalues, got {len(negs)}")
    seq: list[float] = []
    for k, p in enumerate(parts):
        seq.append(float(p))
        if k < r - 1:
            seq.append(-float(negs[k]))
    return all(a <= b + tol for a, b in zip(seq, seq[1:]))
