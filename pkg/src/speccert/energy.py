"""Graph energy (trace norm of the adjacency matrix), singular values, the
trace-norm lower bound sigma1 + (sum a_ij^2 - sigma1^2)/sigma2, and the
energy upper bounds lambda1 + sqrt((n-1)(2m - lambda1^2)) and (n/2)(1+sqrt n).

Equality flags are decided exactly whenever the spectrum certifies: every
quantity involved then lives in Q(sqrt(d)) for a single radicand d, so the
bound comparison is literal arithmetic, not a tolerance test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph
from .spectra import ExactSpectrum, exact_spectrum, float_spectrum

EQUALITY_TOL = 1e-8


class BoundError(ValueError):
    """Bound preconditions violated (edgeless graph, impossible spectrum)."""


@dataclass(frozen=True)
class QuadValue:
    """Exact a + b*sqrt(d) with rational a, b and a fixed radicand d."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    @staticmethod
    def of(x) -> "QuadValue":
        return QuadValue(Fraction(x))

    @staticmethod
    def surd(b, d: int) -> "QuadValue":
        return QuadValue(Fraction(0), Fraction(b), d)

    def _join(self, other: "QuadValue") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError("mixed radicands")
        return self.d or other.d

    def __add__(self, other: "QuadValue") -> "QuadValue":
        d = self._join(other)
        return QuadValue(self.a + other.a, self.b + other.b, d if self.b + other.b else 0)

    def __sub__(self, other: "QuadValue") -> "QuadValue":
        return self + QuadValue(-other.a, -other.b, other.d)

    def square(self) -> "QuadValue":
        a = self.a * self.a + self.b * self.b * self.d
        b = 2 * self.a * self.b
        return QuadValue(a, b, self.d if b else 0)

    def reciprocal_times(self, c: Fraction) -> "QuadValue":
        """c / self, for self a pure rational or pure surd."""
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("zero divisor")
            return QuadValue(c / self.a)
        if self.a == 0:
            return QuadValue(Fraction(0), c / (self.b * self.d), self.d)
        raise ValueError("mixed quadratic divisor not supported")

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return (self.b > 0) - (self.b < 0)
        # compare a and -b*sqrt(d) by squaring with sign bookkeeping
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        big_is_a = lhs > rhs
        if lhs == rhs:
            return 0
        pos = self.a > 0
        return 1 if (big_is_a == pos) else -1

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        surd = f"sqrt({self.d})" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt({self.d})"
        if self.a == 0:
            return surd if self.b > 0 else "-" + surd
        return f"{self.a}{'+' if self.b > 0 else '-'}{surd}"


@dataclass(frozen=True)
class BoundReport:
    energy: float
    energy_exact: object | None  # int or QuadValue when the spectrum certified
    sigma1: float
    sigma2: float
    sum_sq: int
    nikiforov_bound: float
    km_bound: float
    km_n_bound: float
    nikiforov_equal: bool
    km_equal: bool
    exact: bool  # True when the equality flags were decided exactly


def singular_values(G: Graph) -> np.ndarray:
    """Moduli of the adjacency eigenvalues, descending."""
    vals = np.abs(np.array(float_spectrum(G).values))
    return -np.sort(-vals)


def _abs_pairs(spec: ExactSpectrum):
    """Exact |eigenvalue| multiset as descending (QuadValue, mult) pairs."""
    acc: dict[tuple, list] = {}
    for e, m in spec.entries:
        if e.is_integer:
            q = QuadValue.of(abs(e.integer))
        else:
            q = QuadValue.surd(1, e.radicand)
        key = (q.a, q.b, q.d)
        if key in acc:
            acc[key][1] += m
        else:
            acc[key] = [q, m]
    pairs = list(acc.values())
    pairs.sort(key=lambda p: float(p[0]), reverse=True)
    return [(q, m) for q, m in pairs]


def _exact_report(G: Graph, spec: ExactSpectrum) -> BoundReport:
    n, m2 = G.n, 2 * G.m
    pairs = _abs_pairs(spec)
    radicands = {q.d for q, _ in pairs if q.d}
    energy_q = QuadValue.of(0)
    single_field = len(radicands) <= 1
    if single_field:
        for q, mult in pairs:
            energy_q = energy_q + QuadValue(q.a * mult, q.b * mult, q.d)
        energy_f = float(energy_q)
    else:
        energy_f = float(sum(float(q) * mult for q, mult in pairs))

    sigma1 = pairs[0][0]
    sigma2 = pairs[0][0] if pairs[0][1] > 1 else pairs[1][0]
    s1sq = sigma1.square()
    assert s1sq.b == 0
    rest = Fraction(m2) - s1sq.a
    if rest < 0:
        raise BoundError("2m < lambda1^2: spectrum cannot belong to a graph")

    nik_f = float(sigma1) + float(rest) / float(sigma2)
    km_arg = (n - 1) * rest
    km_f = _index_float(spec) + math.sqrt(float(km_arg))

    if single_field:
        nik_q = sigma1 + sigma2.reciprocal_times(rest)
        nik_eq = (energy_q - nik_q).is_zero()
        lam1 = spec.entries[0][0]
        lam1_q = QuadValue.of(lam1.integer) if lam1.is_integer else QuadValue.surd(lam1.sign, lam1.radicand)
        diff = energy_q - lam1_q
        km_eq = diff.sign() >= 0 and (diff.square() - QuadValue.of(km_arg)).is_zero()
        energy_exact = int(energy_q.a) if energy_q.b == 0 else energy_q
    else:
        # several radicands: every non-index magnitude would have to match
        # sigma2 exactly, impossible across distinct surds
        nik_eq = _uniform_tail(pairs)
        km_eq = False
        energy_exact = None

    return BoundReport(
        energy=energy_f, energy_exact=energy_exact,
        sigma1=float(sigma1), sigma2=float(sigma2), sum_sq=m2,
        nikiforov_bound=nik_f, km_bound=km_f, km_n_bound=km_n_bound(G),
        nikiforov_equal=nik_eq, km_equal=km_eq, exact=True)


def _uniform_tail(pairs) -> bool:
    tail = []
    first = True
    for q, mult in pairs:
        take = mult - 1 if first else mult
        first = False
        if take and not q.is_zero():
            tail.append(q)
    return len(tail) <= 1


def _index_float(spec: ExactSpectrum) -> float:
    return spec.entries[0][0].value()


def _float_report(G: Graph, values) -> BoundReport:
    n, m2 = G.n, 2 * G.m
    vals = np.array(values)
    absvals = -np.sort(-np.abs(vals))
    energy = float(absvals.sum())
    sigma1, sigma2 = float(absvals[0]), float(absvals[1])
    rest = m2 - sigma1 * sigma1
    nik = sigma1 + rest / sigma2
    lam1 = float(vals[0])
    km_arg = (n - 1) * (m2 - lam1 * lam1)
    if km_arg < -EQUALITY_TOL:
        raise BoundError("2m < lambda1^2: numerical spectrum is inconsistent")
    km = lam1 + math.sqrt(max(km_arg, 0.0))
    tail = np.abs(vals[1:])
    km_eq = bool(tail.size == 0 or tail.max() - tail.min() <= EQUALITY_TOL)
    return BoundReport(
        energy=energy, energy_exact=None,
        sigma1=sigma1, sigma2=sigma2, sum_sq=m2,
        nikiforov_bound=nik, km_bound=km, km_n_bound=km_n_bound(G),
        nikiforov_equal=bool(abs(energy - nik) <= EQUALITY_TOL),
        km_equal=km_eq, exact=False)


def bound_report(G: Graph) -> BoundReport:
    """Energy, both bounds, and equality flags (exact where certified)."""
    if G.m == 0:
        raise BoundError("bounds need at least one edge")
    spec = exact_spectrum(G)
    if isinstance(spec, ExactSpectrum) and spec.certified:
        return _exact_report(G, spec)
    return _float_report(G, spec.values)


def energy(G: Graph):
    """Sum of |eigenvalues|: exact int or QuadValue when certified, else float."""
    spec = exact_spectrum(G)
    if isinstance(spec, ExactSpectrum) and spec.certified:
        pairs = _abs_pairs(spec)
        radicands = {q.d for q, _ in pairs if q.d}
        if len(radicands) <= 1:
            acc = QuadValue.of(0)
            for q, mult in pairs:
                acc = acc + QuadValue(q.a * mult, q.b * mult, q.d)
            return int(acc.a) if acc.b == 0 else acc
    vals = spec.to_floats() if isinstance(spec, ExactSpectrum) else np.array(spec.values)
    return float(np.abs(vals).sum())


def nikiforov_bound(G: Graph) -> tuple[float, bool]:
    """Trace-norm lower bound and whether the energy attains it."""
    rep = bound_report(G)
    return rep.nikiforov_bound, rep.nikiforov_equal


def km_bound(G: Graph) -> tuple[float, bool]:
    """Index-based energy upper bound and whether the energy attains it."""
    rep = bound_report(G)
    return rep.km_bound, rep.km_equal


def km_n_bound(G: Graph) -> float:
    """Order-only energy upper bound (n/2)(1 + sqrt(n))."""
    return G.n / 2 * (1 + math.sqrt(G.n))
