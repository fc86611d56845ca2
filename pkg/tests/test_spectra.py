import math
import random
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
import pytest

from speccert import graphs as gr
from speccert import spectra as sp
from speccert.spectra import (CertificationError, ExactEigenvalue, ExactSpectrum,
                              char_poly, char_poly_from_spectrum,
                              certify_integer_eigenvalue, certify_spectrum,
                              exact_spectrum, float_spectrum,
                              multipartite_char_poly,
                              multipartite_interlacing_check, spectrum_from_string)


def random_graph(rng, n, p=0.5):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return gr.from_edges(n, edges)


# ---------------------------------------------------------------------------
# float spectra (Jacobi backend)


def test_small_fixed_spectra():
    assert np.allclose(float_spectrum(gr.complete(2)).values, [1, -1])
    p3 = gr.from_edges(3, [(0, 1), (1, 2)])
    assert np.allclose(float_spectrum(p3).values,
                       [math.sqrt(2), 0, -math.sqrt(2)], atol=1e-12)


def test_jacobi_matches_lapack_oracle():
    rng = random.Random(1)
    worst = 0.0
    for _ in range(150):
        G = random_graph(rng, rng.randint(1, 20))
        mine = np.array(float_spectrum(G).values)
        ref = np.sort(np.linalg.eigvalsh(G.to_numpy(float)))[::-1]
        worst = max(worst, float(np.abs(mine - ref).max()))
    assert worst < 1e-9


def test_float_spectrum_trace_and_clusters():
    rng = random.Random(2)
    for _ in range(25):
        G = random_graph(rng, rng.randint(1, 12))
        fs = float_spectrum(G)
        assert abs(sum(fs.values)) <= G.n * fs.cluster_tolerance + 1e-12
        for _, count in fs.clusters(1e-7):
            assert count >= 1
        assert sum(c for _, c in fs.clusters(1e-7)) == G.n


def test_shrikhande_like_clusters():
    from speccert.families import shrikhande

    fs = float_spectrum(shrikhande())
    assert [(round(c), m) for c, m in fs.clusters(1e-7)] == [(6, 1), (2, 6), (-2, 9)]


def test_eigen_residual_via_inverse_iteration():
    # residual oracle: inverse iteration at each cluster center
    from speccert.families import shrikhande

    rng = np.random.default_rng(0)
    for G in [shrikhande(), gr.k_minus(4), gr.complete_multipartite([2, 3])]:
        A = G.to_numpy(float)
        for center, _ in float_spectrum(G).clusters(1e-7):
            v = rng.normal(size=G.n)
            shift = center + 1e-7
            for _ in range(3):
                v = np.linalg.solve(A - shift * np.eye(G.n), v)
                v /= np.linalg.norm(v)
            lam = v @ A @ v
            assert np.linalg.norm(A @ v - lam * v) <= 1e-8 * G.n
            assert abs(lam - center) < 1e-6


# ---------------------------------------------------------------------------
# exact eigenvalue bookkeeping


def test_exact_eigenvalue_ordering_and_negation():
    two = ExactEigenvalue.of(2)
    r6 = ExactEigenvalue.surd(1, 6)
    m3 = ExactEigenvalue.of(-3)
    assert two < r6 < ExactEigenvalue.of(3)
    assert m3 < ExactEigenvalue.surd(-1, 6) < two
    assert -r6 == ExactEigenvalue.surd(-1, 6)
    with pytest.raises(ValueError):
        ExactEigenvalue.surd(1, 9)  # perfect square must be an integer


def test_spectrum_invariants_enforced():
    with pytest.raises(ValueError):
        ExactSpectrum.from_pairs([(1, 2)], 2)  # trace not zero
    with pytest.raises(ValueError):
        ExactSpectrum.from_pairs([(1, 1), (-1, 1)], 3)  # wrong order count
    s = spectrum_from_string("6^1 2^6 -2^9")
    assert s.n == 16 and s.distinct == 3 and s.is_integral
    assert str(s) == "6^1 2^6 -2^9"


def test_spectrum_string_roundtrip_with_surds():
    s = spectrum_from_string("sqrt(6)^1 0^3 -sqrt(6)^1")
    assert str(s) == "sqrt(6)^1 0^3 -sqrt(6)^1"
    assert not s.is_integral
    assert s.sum_of_squares() == 12


# ---------------------------------------------------------------------------
# exact nullities (fraction-free elimination)


def _nullity_fraction_oracle(G, e):
    # plain Gaussian elimination over Fraction as an independent oracle
    n = G.n
    m = [[Fraction(1 if G.rows[i] >> j & 1 else 0) for j in range(n)] for i in range(n)]
    for i in range(n):
        m[i][i] -= e
    rank = 0
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        for r in range(row + 1, n):
            f = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= f * m[row][c]
        rank += 1
        row += 1
    return n - rank


def test_integer_multiplicities_fixed_cases():
    from speccert.families import shrikhande

    assert certify_integer_eigenvalue(gr.complete(4), -1) == 3
    assert certify_integer_eigenvalue(shrikhande(), 2) == 6
    assert certify_integer_eigenvalue(gr.complete_multipartite([2, 3]), 1) == 0


def test_nullity_matches_fraction_oracle():
    rng = random.Random(4)
    for _ in range(40):
        G = random_graph(rng, rng.randint(1, 9))
        for e in range(-3, 4):
            assert certify_integer_eigenvalue(G, e) == _nullity_fraction_oracle(G, e)


def test_multiplicity_matches_float_cluster_sizes():
    rng = random.Random(40)
    for _ in range(30):
        G = random_graph(rng, rng.randint(2, 8))
        clusters = float_spectrum(G).clusters(1e-7)
        if all(abs(c - round(c)) <= 1e-6 for c, _ in clusters):
            for c, count in clusters:
                assert certify_integer_eigenvalue(G, round(c)) == count


# ---------------------------------------------------------------------------
# certification


def test_certify_spectrum_surd_pair():
    G = gr.complete_multipartite([2, 3])
    cand = spectrum_from_string("sqrt(6)^1 0^3 -sqrt(6)^1")
    assert certify_spectrum(G, cand).certified


def test_certify_rejects_wrong_multiplicity():
    G = gr.complete(4)
    with pytest.raises(CertificationError):
        # well-formed candidate (zero trace, right power sum) with wrong entries
        certify_spectrum(G, spectrum_from_string("1^3 -3^1"))
    with pytest.raises(CertificationError):
        certify_spectrum(gr.complete(5), spectrum_from_string("3^1 -1^3"))


def test_certify_rejects_two_radicands():
    G = gr.disjoint_union([gr.complete_multipartite([2, 3]),
                           gr.complete_multipartite([2, 6])])
    cand = ExactSpectrum.from_pairs(
        [(ExactEigenvalue.surd(1, 12), 1), (ExactEigenvalue.surd(1, 6), 1),
         (ExactEigenvalue.of(0), 9),
         (ExactEigenvalue.surd(-1, 6), 1), (ExactEigenvalue.surd(-1, 12), 1)], 13)
    with pytest.raises(CertificationError):
        certify_spectrum(G, cand)


def test_exact_spectrum_examples():
    from speccert.families import shrikhande

    assert str(exact_spectrum(gr.complete_multipartite([4, 4]))) == "4^1 0^6 -4^1"
    assert str(exact_spectrum(gr.complete_multipartite([2, 3]))) == "sqrt(6)^1 0^3 -sqrt(6)^1"
    petersen = gr.complement(gr.line_graph(gr.complete(5)))
    assert str(exact_spectrum(petersen)) == "3^1 1^5 -2^4"
    assert str(exact_spectrum(gr.cone(shrikhande()))) == "8^1 2^6 -2^10"


def test_exact_spectrum_merges_components():
    U = gr.disjoint_union([gr.complete_multipartite([2, 3]),
                           gr.complete_multipartite([1, 6])])
    s = exact_spectrum(U)
    assert s.certified
    assert str(s) == "sqrt(6)^2 0^8 -sqrt(6)^2"


def test_exact_spectrum_float_fallback():
    p4 = gr.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    s = exact_spectrum(p4)
    assert isinstance(s, sp.FloatSpectrum)
    assert not s.certified


def test_float_and_exact_agree_when_certified():
    rng = random.Random(6)
    for _ in range(40):
        G = random_graph(rng, rng.randint(2, 8))
        s = exact_spectrum(G)
        if isinstance(s, ExactSpectrum):
            fv = np.array(float_spectrum(G).values)
            assert np.abs(s.to_floats() - fv).max() < 1e-8


# ---------------------------------------------------------------------------
# characteristic polynomials


def test_char_poly_small_cases():
    assert char_poly(gr.complete(2)).coefficients == (1, 0, -1)
    p3 = gr.from_edges(3, [(0, 1), (1, 2)])
    assert char_poly(p3).coefficients == (1, 0, -2, 0)


def test_char_poly_coefficient_invariants():
    rng = random.Random(8)
    for _ in range(25):
        G = random_graph(rng, rng.randint(1, 9))
        cp = char_poly(G)
        assert cp.degree == G.n
        assert cp.coefficients[0] == 1
        if G.n >= 2:
            assert cp.coefficients[1] == 0
            assert cp.coefficients[2] == -G.m


def test_char_poly_matches_certified_spectrum_product():
    from speccert.families import shrikhande

    G = shrikhande()
    assert char_poly(G) == char_poly_from_spectrum(exact_spectrum(G))


def test_char_poly_det_agrees_with_numpy():
    rng = random.Random(9)
    for _ in range(15):
        G = random_graph(rng, rng.randint(1, 8))
        cp = char_poly(G)
        for k in (0, 1, -2):
            want = round(np.linalg.det(k * np.eye(G.n) - G.to_numpy(float)))
            assert cp.evaluate(k) == want


def _all_part_lists(total_max):
    for total in range(1, total_max + 1):
        for r in range(1, total + 1):
            for parts in combinations_with_replacement(range(1, total + 1), r):
                if sum(parts) == total:
                    yield list(parts)


def test_multipartite_poly_exhaustive_to_10():
    for parts in _all_part_lists(10):
        assert multipartite_char_poly(parts) == char_poly(gr.complete_multipartite(parts))


def test_multipartite_poly_bipartite_shape():
    for p, q in [(1, 1), (2, 3), (4, 4), (2, 6)]:
        got = multipartite_char_poly([p, q])
        n = p + q
        want = [0] * (n + 1)
        want[0] = 1          # x^n
        want[2] = -p * q     # x^(n-2)
        assert got.coefficients == tuple(want[:3]) + (0,) * (n - 2)


# ---------------------------------------------------------------------------
# part-size interlacing


def test_interlacing_fixed_cases():
    assert multipartite_interlacing_check([2, 2, 2], [-2, -2])
    assert multipartite_interlacing_check([1, 2], [-math.sqrt(2)])
    with pytest.raises(ValueError):
        multipartite_interlacing_check([2, 2], [-1, -1])


def test_interlacing_exhaustive_small():
    for parts in _all_part_lists(8):
        if len(parts) < 2:
            continue
        # stable float roots of the polynomial: LAPACK on the graph it annihilates
        roots = np.linalg.eigvalsh(gr.complete_multipartite(parts).to_numpy(float))
        negs = sorted((r for r in roots if r < -1e-6), key=abs)
        assert len(negs) == len(parts) - 1
        assert multipartite_interlacing_check(parts, negs, tol=1e-6)
