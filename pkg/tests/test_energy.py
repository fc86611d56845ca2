import math
import random
from fractions import Fraction

import numpy as np
import pytest

from speccert import graphs as gr
from speccert.energy import (BoundError, QuadValue, bound_report, energy,
                             km_bound, km_n_bound, nikiforov_bound,
                             singular_values)
from speccert.families import shrikhande
from speccert.spectra import float_spectrum


def path(n):
    return gr.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_energy_fixed_values():
    for n in (2, 4, 7):
        assert energy(gr.complete(n)) == 2 * (n - 1)
    assert energy(shrikhande()) == 36
    e = energy(gr.complete_multipartite([2, 3]))
    assert isinstance(e, QuadValue)
    assert (e.a, e.b, e.d) == (0, 2, 6)
    assert str(e) == "2*sqrt(6)"
    assert abs(float(e) - 2 * math.sqrt(6)) < 1e-12


def test_nikiforov_equalities():
    for p, q in [(1, 1), (2, 3), (4, 4)]:
        bound, eq = nikiforov_bound(gr.complete_multipartite([p, q]))
        assert eq
        assert abs(bound - 2 * math.sqrt(p * q)) < 1e-9
    bound, eq = nikiforov_bound(gr.complete(5))
    assert eq and abs(bound - 8) < 1e-12
    bound, eq = nikiforov_bound(path(4))
    assert not eq
    assert bound < float(energy(path(4)))


def test_km_equalities():
    bound, eq = km_bound(shrikhande())
    assert eq and abs(bound - 36) < 1e-12
    matching = gr.disjoint_union([gr.complete(2)] * 4)
    bound, eq = km_bound(matching)
    assert eq and abs(bound - 8) < 1e-12
    bound, eq = km_bound(gr.complete_multipartite([1, 2]))
    assert not eq
    assert abs(bound - (math.sqrt(2) + 2)) < 1e-12
    # the stated disconnected irregular equality family
    g = gr.disjoint_union([gr.complete(4), gr.complete(2), gr.complete(2)])
    assert km_bound(g)[1]


def test_km_n_bound_values():
    assert abs(km_n_bound(gr.complete(16)) - 40) < 1e-12
    assert abs(km_n_bound(gr.complete(4)) - 6) < 1e-12
    assert km_n_bound(gr.complete(4)) >= energy(gr.complete(4)) - 1e-12
    assert km_n_bound(gr.complete(2)) >= 2


def test_bounds_need_an_edge():
    with pytest.raises(BoundError):
        bound_report(gr.empty(3))


def test_report_exact_flag():
    rep = bound_report(shrikhande())
    assert rep.exact and rep.energy_exact == 36
    assert rep.sum_sq == 96
    rep = bound_report(path(4))
    assert not rep.exact and rep.energy_exact is None


def test_equality_flags_match_membership_small_exhaustive():
    # cross-validation of independent code paths on all graphs of order <= 5
    from speccert.classify import in_class_g
    from speccert.survey import enumerate_labeled

    for n in (2, 3, 4, 5):
        for G in enumerate_labeled(n):
            if G.m == 0:
                continue
            rep = bound_report(G)
            assert rep.nikiforov_equal == in_class_g(G).member
            vals = np.array(float_spectrum(G).values)
            tail = np.abs(vals[1:])
            flat = tail.max() - tail.min() <= 1e-8 if tail.size else True
            assert rep.km_equal == flat
            assert rep.nikiforov_bound <= rep.energy + 1e-8
            assert rep.energy <= rep.km_bound + 1e-8
            assert rep.energy <= rep.km_n_bound + 1e-8


def test_singular_values_cross_path():
    rng = random.Random(43)
    for _ in range(100):
        n = rng.randint(1, 20)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.4]
        G = gr.from_edges(n, edges)
        sv = singular_values(G)
        A = G.to_numpy(float)
        # LAPACK SVD is a fully independent route
        assert np.abs(sv - np.linalg.svd(A, compute_uv=False)).max() < 1e-8
        # and the A^T A eigenvalues must be the squares (compared as squares,
        # since sqrt doubles the relative error of near-zero eigenvalues)
        w = np.sort(np.linalg.eigvalsh(A.T @ A))[::-1]
        assert np.abs(sv ** 2 - w).max() < 1e-8 * max(1, 2 * G.m)


def test_singular_values_fixed():
    assert np.allclose(singular_values(gr.complete_multipartite([2, 3])),
                       [math.sqrt(6), math.sqrt(6), 0, 0, 0])
    sv = singular_values(shrikhande())
    assert abs(sv[0] - 6) < 1e-9 and np.allclose(sv[1:], 2, atol=1e-9)


def test_quadvalue_arithmetic():
    a = QuadValue(Fraction(1), Fraction(2), 6)
    b = QuadValue(Fraction(3))
    assert float(a + b) == pytest.approx(4 + 2 * math.sqrt(6))
    sq = a.square()
    assert (sq.a, sq.b, sq.d) == (25, 4, 6)
    assert a.sign() == 1
    assert QuadValue(Fraction(-5), Fraction(2), 6).sign() == -1  # 2*sqrt(6) < 5
    assert QuadValue(Fraction(0)).sign() == 0
    assert (a - a).is_zero()
    with pytest.raises(ValueError):
        a + QuadValue(Fraction(0), Fraction(1), 7)


def test_multi_radicand_members_fall_back_exactly():
    G = gr.disjoint_union([gr.complete_multipartite([2, 3]),
                           gr.complete_multipartite([2, 6])])
    rep = bound_report(G)
    assert rep.exact and not rep.nikiforov_equal and not rep.km_equal
