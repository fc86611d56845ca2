"""Spectrum-shape taxonomy, membership in the two bound-equality families,
structure detection, and falsifiable verdicts for the characterization
statements the survey checks exhaustively.

Class G: nonempty graphs whose nonzero eigenvalues other than one occurrence
of the index share a single absolute value (the equality case of the
trace-norm lower bound).  Class H: connected irregular graphs all of whose
eigenvalues below the index share one absolute value, zeros included (the
irregular equality case of the index-based upper bound).  Class H is the
irregular connected slice of class G with no zero eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import graphs as gr
from .families import SrgParams, detect_srg_params
from .graphs import Graph
from .spectra import (CLUSTER_TOL, INTEGER_GATE, ExactEigenvalue, ExactSpectrum,
                      FloatSpectrum, exact_spectrum)

ZERO_TOL = 1e-6


# ---------------------------------------------------------------------------
# spectrum patterns


@dataclass(frozen=True)
class SpectrumPattern:
    """Shape tag of a spectrum's multiplicity structure.

    Case1a: {lam^1, 0^(n-t-1), mu^t}, lam > 0 > mu          (three distinct)
    Case1b: {lam^1, mu^(n-t-1), (-mu)^t}, lam > mu > 0      (three distinct)
    Case2:  {lam^1, mu^(n-k-t-1), 0^t, (-mu)^k}, lam > mu > 0  (four distinct)
    DisconnectedSymmetric: {lam^s, 0^t, (-lam)^s}, s >= 1, disconnected
    DisconnectedIndexed:   the Case1b/Case2 shapes on a disconnected graph
    """

    kind: str  # Empty | TwoDistinct | Case1a | Case1b | Case2 |
               # DisconnectedSymmetric | DisconnectedIndexed | Other
    lam: object = None
    mu: object = None
    t: int | None = None
    k: int | None = None
    r: int | None = None  # clique size for TwoDistinct

    def __str__(self):
        f = _fmt_val
        if self.kind == "TwoDistinct":
            return f"TwoDistinct({f(self.lam)},{self.r})"
        if self.kind == "Case1a":
            return f"Case1a({f(self.lam)},{f(self.mu)},{self.t})"
        if self.kind == "Case1b":
            return f"Case1b({f(self.lam)},{f(self.mu)},{self.t})"
        if self.kind == "Case2":
            return f"Case2({f(self.lam)},{f(self.mu)},{self.t},{self.k})"
        if self.kind == "DisconnectedSymmetric":
            return f"DisconnectedSymmetric({f(self.lam)},{self.t})"
        if self.kind == "DisconnectedIndexed":
            return f"DisconnectedIndexed({f(self.lam)},{f(self.mu)},{self.t},{self.k})"
        return self.kind


def _fmt_val(v):
    if v is None:
        return "?"
    if isinstance(v, ExactEigenvalue):
        return str(v)
    if isinstance(v, float) and abs(v - round(v)) <= INTEGER_GATE:
        return str(round(v))
    return f"{v:.6g}" if isinstance(v, float) else str(v)


def _norm_entries(spectrum):
    """(float value, mult, display value) triples, descending."""
    if isinstance(spectrum, ExactSpectrum):
        return [(e.value(), m, e) for e, m in spectrum.entries]
    return [(c, m, c) for c, m in spectrum.clusters(CLUSTER_TOL)]


def classify_pattern(spectrum, connected: bool | None = None) -> SpectrumPattern:
    """Deterministic shape tag; `connected` routes simple-index shapes to the
    connected variants and the decomposition shapes to the Disconnected ones."""
    ent = _norm_entries(spectrum)
    nz = [(v, m, d) for v, m, d in ent if abs(v) > ZERO_TOL]
    zeros = sum(m for v, m, _ in ent if abs(v) <= ZERO_TOL)
    if not nz:
        return SpectrumPattern("Empty")
    distinct = len(nz) + (1 if zeros else 0)
    top_v, top_m, top_d = nz[0]

    if distinct == 2 and not zeros:
        lo_v, lo_m, lo_d = nz[1]
        if abs(lo_v + 1) <= ZERO_TOL and abs(top_v - round(top_v)) <= ZERO_TOL and top_v >= 1:
            return SpectrumPattern("TwoDistinct", lam=top_d, r=int(round(top_v)) + 1)
        return SpectrumPattern("Other")

    if distinct == 3 and zeros:
        lo_v, lo_m, lo_d = nz[1]
        if lo_v > 0:
            return SpectrumPattern("Other")
        symmetric = abs(top_v + lo_v) <= ZERO_TOL and top_m == lo_m
        if connected is False or (connected is None and top_m > 1):
            if symmetric:
                return SpectrumPattern("DisconnectedSymmetric", lam=top_d, t=zeros)
            if top_m == 1:
                return SpectrumPattern("DisconnectedIndexed", lam=top_d, mu=_abs_d(lo_d),
                                       t=zeros, k=lo_m)
            return SpectrumPattern("Other")
        if top_m == 1:
            return SpectrumPattern("Case1a", lam=top_d, mu=lo_d, t=lo_m)
        return SpectrumPattern("Other")

    if distinct == 3 and not zeros:
        mid_v, mid_m, mid_d = nz[1]
        lo_v, lo_m, lo_d = nz[2]
        if not (mid_v > 0 and abs(mid_v + lo_v) <= ZERO_TOL):
            return SpectrumPattern("Other")
        if top_m != 1:
            return SpectrumPattern("Other")
        if connected is False:
            return SpectrumPattern("DisconnectedIndexed", lam=top_d, mu=mid_d, t=0, k=lo_m)
        return SpectrumPattern("Case1b", lam=top_d, mu=mid_d, t=lo_m)

    if distinct == 4 and zeros and len(nz) == 3:
        mid_v, mid_m, mid_d = nz[1]
        lo_v, lo_m, lo_d = nz[2]
        if not (mid_v > 0 and abs(mid_v + lo_v) <= ZERO_TOL and top_m == 1):
            return SpectrumPattern("Other")
        if connected is False:
            return SpectrumPattern("DisconnectedIndexed", lam=top_d, mu=mid_d,
                                   t=zeros, k=lo_m)
        return SpectrumPattern("Case2", lam=top_d, mu=mid_d, t=zeros, k=lo_m)

    return SpectrumPattern("Other")


def _abs_d(d):
    if isinstance(d, ExactEigenvalue):
        return -d if d.value() < 0 else d
    return abs(d)


# ---------------------------------------------------------------------------
# family membership


@dataclass(frozen=True)
class GMembership:
    member: bool
    pattern: SpectrumPattern
    certified: bool


def _magnitude_counts_exact(spec: ExactSpectrum):
    counts: dict[tuple, int] = {}
    for e, m in spec.entries:
        key = ("i", abs(e.integer)) if e.is_integer else ("s", e.radicand)
        counts[key] = counts.get(key, 0) + m
    return counts


def _tail_magnitudes_exact(spec: ExactSpectrum):
    """Distinct |eigenvalue| keys after removing one occurrence of the index."""
    counts = _magnitude_counts_exact(spec)
    top = spec.entries[0][0]
    top_key = ("i", abs(top.integer)) if top.is_integer else ("s", top.radicand)
    counts[top_key] -= 1
    return {k for k, c in counts.items() if c > 0}


def in_class_g(G: Graph) -> GMembership:
    """Nonzero eigenvalues other than one index occurrence share one
    absolute value; decided exactly when the spectrum certifies."""
    if G.m == 0:
        raise ValueError("class G is defined for nonempty graphs")
    spec = exact_spectrum(G)
    connected = gr.is_connected(G)
    pattern = classify_pattern(spec, connected)
    if isinstance(spec, ExactSpectrum):
        keys = _tail_magnitudes_exact(spec)
        keys.discard(("i", 0))
        return GMembership(len(keys) <= 1, pattern, spec.certified)
    vals = sorted((abs(v) for v in spec.values), reverse=True)[1:]
    nzs = [v for v in vals if v > ZERO_TOL]
    member = not nzs or (nzs[0] - nzs[-1] <= ZERO_TOL)
    return GMembership(member, pattern, False)


def in_class_h(G: Graph) -> bool:
    """Connected, irregular, and |lambda_2| = ... = |lambda_n| literally
    (a zero eigenvalue forces the shared absolute value to be zero)."""
    if G.m == 0:
        return False
    if not gr.is_connected(G) or gr.degree_profile(G).is_regular:
        return False
    spec = exact_spectrum(G)
    if isinstance(spec, ExactSpectrum):
        return len(_tail_magnitudes_exact(spec)) <= 1
    vals = sorted((abs(v) for v in spec.values), reverse=True)[1:]
    return not vals or max(vals) - min(vals) <= ZERO_TOL


# ---------------------------------------------------------------------------
# structure detection


def detect_srg(G: Graph) -> SrgParams | None:
    return detect_srg_params(G)


def multipartite_parts(G: Graph) -> list[int] | None:
    """Part sizes when G is complete multipartite (complement splits into
    cliques), else None."""
    comps = gr.connected_components(gr.complement(G))
    parts = []
    for comp, _ in comps:
        if comp.m != comp.n * (comp.n - 1) // 2:
            return None
        parts.append(comp.n)
    return sorted(parts)


def is_design_graph(G: Graph):
    """(n, lam, alpha) for a strongly regular graph with equal common-neighbor
    counts over adjacent and nonadjacent pairs."""
    p = detect_srg_params(G)
    if p is None or p.alpha != p.beta:
        return None
    return (p.n, p.r, p.alpha)


def is_multiplicative(G: Graph, mu_squared: int | None = None):
    """(d, squared alpha entries) when A^2 - d*I is an exact positive rank-one
    matrix; d is tried at mu_squared first when the caller knows the pattern."""
    n = G.n
    if n < 3:
        return None
    a = G.to_numpy()
    b = (a @ a).tolist()
    diag = [b[i][i] for i in range(n)]
    lo = min(diag)
    candidates = []
    if mu_squared is not None and 0 <= mu_squared < lo:
        candidates.append(mu_squared)
    else:
        candidates.extend(range(lo))
    for d in candidates:
        if _rank_one_positive(b, d, n):
            return d, tuple(x - d for x in diag)
    return None


def _rank_one_positive(b, d: int, n: int) -> bool:
    # M = B - d*I equals alpha*alpha^t with alpha > 0 iff the diagonal is
    # positive and every off-diagonal entry squares to the diagonal product
    for i in range(n):
        if b[i][i] - d <= 0:
            return False
    for i in range(n):
        bi = b[i]
        for j in range(i + 1, n):
            v = bi[j]
            if v <= 0 or v * v != (bi[i] - d) * (b[j][j] - d):
                return False
    return True


# ---------------------------------------------------------------------------
# verdicts


PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass(frozen=True)
class Verdict:
    status: str
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def _certified(G: Graph):
    spec = exact_spectrum(G)
    return spec if isinstance(spec, ExactSpectrum) and spec.certified else None


def verify_case1a_structure(G: Graph, spec: ExactSpectrum | None = None) -> Verdict:
    """Three distinct eigenvalues, one zero: mu = -lam iff complete bipartite;
    mu != -lam iff integral complete (t+1)-partite with all parts -mu, t >= 2."""
    spec = spec or _certified(G)
    if spec is None or not gr.is_connected(G):
        return Verdict(NA, "needs a connected, certified spectrum")
    pattern = classify_pattern(spec, True)
    if pattern.kind != "Case1a":
        return Verdict(NA, f"pattern is {pattern}")
    lam, mu, t = pattern.lam, pattern.mu, pattern.t
    parts = multipartite_parts(G)
    bipartite_complete = parts is not None and len(parts) == 2
    mu_is_neg_lam = mu == -lam
    if mu_is_neg_lam != bipartite_complete:
        return Verdict(FAIL, f"mu=-lam is {mu_is_neg_lam} but complete-bipartite is "
                             f"{bipartite_complete}")
    if not mu_is_neg_lam:
        if not spec.is_integral:
            return Verdict(FAIL, "three eigenvalues with mu != -lam but irrational")
        size = -mu.integer
        expected = parts is not None and len(parts) == t + 1 and all(p == size for p in parts)
        if t < 2 or not expected:
            return Verdict(FAIL, f"expected {t + 1} parts of size {size}, got {parts}")
    return Verdict(PASS, "bipartite branch" if mu_is_neg_lam else "equal-parts branch")


_MU2_TARGET_KEYS = ("cone_shrikhande", "cone_l24", "ag32")


def _mu2_targets():
    from .families import catalog

    cat = catalog()
    return [(key, cat[key].graph()) for key in _MU2_TARGET_KEYS]


def verify_case1b_structure(G: Graph, spec: ExactSpectrum | None = None) -> Verdict:
    """Three distinct nonzero eigenvalues: integral multiplicative with
    mu >= 2; regular iff a design graph with parameters
    (n, lam, lam - mu^2, lam - mu^2); irregular with mu = 2 iff one of the
    three sporadic cones/plane graphs; irregular with mu >= 3 forces n > 30."""
    spec = spec or _certified(G)
    if spec is None or not gr.is_connected(G):
        return Verdict(NA, "needs a connected, certified spectrum")
    pattern = classify_pattern(spec, True)
    if pattern.kind != "Case1b":
        return Verdict(NA, f"pattern is {pattern}")
    if not spec.is_integral:
        return Verdict(FAIL, "three nonzero eigenvalues but not integral")
    lam, mu = pattern.lam.integer, pattern.mu.integer
    if mu < 2:
        return Verdict(FAIL, f"second eigenvalue {mu} < 2")
    mult = is_multiplicative(G, mu_squared=mu * mu)
    if mult is None:
        return Verdict(FAIL, "A^2 - mu^2*I is not a positive rank-one matrix")
    regular = gr.degree_profile(G).is_regular
    design = is_design_graph(G)
    want_design = (G.n, lam, lam - mu * mu)
    if regular != (design == want_design):
        return Verdict(FAIL, f"regular={regular} but design detection gave {design}, "
                             f"wanted {want_design}")
    if regular:
        return Verdict(PASS, f"design graph {want_design}")
    if mu == 2:
        for key, target in _mu2_targets():
            if G.n == target.n and gr.are_isomorphic(G, target):
                return Verdict(PASS, f"matched {key}")
        return Verdict(FAIL, "irregular with mu = 2 but not one of the three "
                             "known graphs")
    if G.n <= 30:
        return Verdict(FAIL, f"irregular with mu = {mu} >= 3 needs n > 30, n = {G.n}")
    return Verdict(PASS, f"irregular, mu = {mu}, n = {G.n} > 30")


def verify_case2_regular(G: Graph, spec: ExactSpectrum | None = None) -> Verdict:
    """Four distinct eigenvalues with zero: integral; a regular instance is
    the complement of the matching-deleted-bipartite clique blow-up when some
    non-index eigenvalue is simple, else only the index is simple."""
    spec = spec or _certified(G)
    if spec is None or not gr.is_connected(G):
        return Verdict(NA, "needs a connected, certified spectrum")
    pattern = classify_pattern(spec, True)
    if pattern.kind != "Case2":
        return Verdict(NA, f"pattern is {pattern}")
    if not spec.is_integral:
        return Verdict(FAIL, "four distinct eigenvalues with zero but not integral")
    if not gr.degree_profile(G).is_regular:
        return Verdict(PASS, "irregular-case2")
    mu = pattern.mu.integer
    t, k = pattern.t, pattern.k
    mu_mult = G.n - k - t - 1
    if mu_mult == 1:
        if mu % 2:
            return Verdict(FAIL, f"regular with simple mu = {mu}, which is odd")
        target = gr.complement(gr.star_j(gr.k_minus(4), mu // 2))
        if G.n == target.n and gr.are_isomorphic(G, target):
            return Verdict(PASS, f"matched complement(Q3*J{mu // 2})")
        return Verdict(FAIL, "regular with two simple eigenvalues but not the "
                             "known product complement")
    if t == 1 or k == 1:
        return Verdict(FAIL, "regular with a simple zero or simple -mu eigenvalue")
    return Verdict(PASS, "index-only-simple")


def verify_disconnected_split(G: Graph) -> Verdict:
    """Disconnected membership decomposition: class G iff either every
    non-isolated component is complete bipartite with one common edge-product,
    or one component carries the (simple) index, lies in class G itself, and
    all other non-isolated components are complete bipartite with product
    mu^2."""
    if gr.is_connected(G):
        return Verdict(NA, "graph is connected")
    if G.m == 0:
        return Verdict(NA, "empty graph")
    spec = exact_spectrum(G)
    if not (isinstance(spec, ExactSpectrum) and spec.certified):
        return Verdict(NA, "component spectra did not certify")

    comps = [c for c, _ in gr.connected_components(G)]
    member = len(_nonzero_tail(spec)) <= 1

    # structural side
    c1, detail1 = _all_bipartite_equal_product(comps)
    c2, g1, others, detail2 = _indexed_decomposition(G, spec, comps)
    structural = c1 or c2
    if member != structural:
        return Verdict(FAIL, f"membership={member} but decomposition gives "
                             f"case(i)={detail1!r}, case(ii)={detail2!r}")
    if not member:
        return Verdict(PASS, "non-member, no decomposition")

    if c1:
        lam_sq = spec.entries[0][0].squared()
        non_iso = [c for c in comps if c.m > 0]
        if (lam_sq == 1) != all(c.n == 2 for c in non_iso):
            return Verdict(FAIL, "lam = 1 must coincide with all-matching components")
        return Verdict(PASS, f"case(i): bipartite components, product {lam_sq}")

    # case (ii): two distinct magnitudes
    mu_key = next(iter(_nonzero_tail(spec)))
    k = _neg_mu_mult(spec, mu_key)
    if k < 2:
        return Verdict(FAIL, f"case(ii) needs -mu multiplicity >= 2, got {k}")
    if not spec.is_integral:
        return Verdict(FAIL, "case(ii) members must be integral")
    mu_sq = mu_key[1] ** 2 if mu_key[0] == "i" else mu_key[1]
    if mu_sq == 1:
        g1_complete = g1.m == g1.n * (g1.n - 1) // 2
        if not (g1_complete and all(c.n == 2 for c in others if c.m > 0)):
            return Verdict(FAIL, "mu = 1 must coincide with complete G1 and "
                                 "matching components")
    return Verdict(PASS, "case(ii): indexed component plus bipartite components")


def _nonzero_tail(spec: ExactSpectrum):
    keys = _tail_magnitudes_exact(spec)
    keys.discard(("i", 0))
    return keys


def _neg_mu_mult(spec: ExactSpectrum, mu_key) -> int:
    for e, m in spec.entries:
        if e.is_integer and mu_key[0] == "i" and e.integer == -mu_key[1]:
            return m
        if not e.is_integer and mu_key[0] == "s" and e.sign < 0 and e.radicand == mu_key[1]:
            return m
    return 0


def _complete_bipartite_product(G: Graph):
    parts = multipartite_parts(G)
    if parts is None or len(parts) != 2:
        return None
    return parts[0] * parts[1]


def _all_bipartite_equal_product(comps):
    products = set()
    for c in comps:
        if c.m == 0:
            continue
        pq = _complete_bipartite_product(c)
        if pq is None:
            return False, "a component is not complete bipartite"
        products.add(pq)
    if len(products) != 1:
        return False, f"distinct products {sorted(products)}"
    return True, f"all components share product {products.pop()}"


def _indexed_decomposition(G: Graph, spec: ExactSpectrum, comps):
    """case (ii) structural test; returns (ok, g1, other components, detail)."""
    lam = spec.entries[0][0]
    if spec.entries[0][1] != 1:
        return False, None, None, "index is not simple"
    carriers = []
    for c in comps:
        cs = exact_spectrum(c)
        if isinstance(cs, ExactSpectrum) and cs.entries[0][0] == lam:
            carriers.append(c)
    if len(carriers) != 1:
        return False, None, None, f"{len(carriers)} components carry the index"
    g1 = carriers[0]
    if g1.m == 0 or not in_class_g(g1).member:
        return False, None, None, "index component is not a class G member"
    g1_tail = _nonzero_tail(exact_spectrum(g1))
    products = set()
    others = []
    for c in comps:
        if c is g1:
            continue
        others.append(c)
        if c.m == 0:
            continue
        pq = _complete_bipartite_product(c)
        if pq is None:
            return False, None, None, "a non-index component is not complete bipartite"
        products.add(pq)
    if len(products) > 1:
        return False, None, None, f"distinct products {sorted(products)}"
    if products and g1_tail:
        pq = products.pop()
        key = g1_tail.pop()
        mu_sq = key[1] ** 2 if key[0] == "i" else key[1]
        if pq != mu_sq:
            return False, None, None, f"component product {pq} != mu^2 = {mu_sq}"
    return True, g1, others, "indexed decomposition holds"


def check_multipartite_lambda2(G: Graph, spec=None) -> Verdict:
    """Connected graphs: complete multipartite iff lambda_2 <= 0."""
    if not gr.is_connected(G):
        return Verdict(NA, "disconnected")
    spec = spec or exact_spectrum(G)
    if isinstance(spec, ExactSpectrum):
        if spec.entries[0][1] > 1:
            lam2_nonpos = False  # index repeated: lambda_2 = lambda_1 > 0
        elif len(spec.entries) == 1:
            lam2_nonpos = True
        else:
            e = spec.entries[1][0]
            lam2_nonpos = e.value() <= 0
    else:
        vals = spec.values
        lam2_nonpos = len(vals) < 2 or vals[1] <= ZERO_TOL
    cm = multipartite_parts(G) is not None
    if cm != lam2_nonpos:
        return Verdict(FAIL, f"complete-multipartite={cm} but lambda2<=0 is {lam2_nonpos}")
    return Verdict(PASS)


def check_bipartite_three_eig(G: Graph, spec=None) -> Verdict:
    """Connected with three distinct eigenvalues and bipartite or irrational
    index: must be complete bipartite."""
    if not gr.is_connected(G):
        return Verdict(NA, "disconnected")
    spec = spec or exact_spectrum(G)
    if isinstance(spec, ExactSpectrum):
        distinct = spec.distinct
        irr_index = not spec.entries[0][0].is_integer
    else:
        clusters = spec.clusters(CLUSTER_TOL)
        distinct = len(clusters)
        irr_index = abs(clusters[0][0] - round(clusters[0][0])) > INTEGER_GATE
    if distinct != 3 or not (gr.is_bipartite(G) or irr_index):
        return Verdict(NA, "hypotheses not met")
    parts = multipartite_parts(G)
    if parts is None or len(parts) != 2:
        return Verdict(FAIL, "not complete bipartite")
    return Verdict(PASS)


def check_complement_four_eig(G: Graph, spec=None) -> Verdict:
    """Connected regular with four distinct eigenvalues: the complement is
    connected with four distinct eigenvalues, or a disjoint union of
    cospectral strongly regular graphs."""
    if not gr.is_connected(G) or not gr.degree_profile(G).is_regular:
        return Verdict(NA, "needs a connected regular graph")
    spec = spec or exact_spectrum(G)
    distinct = spec.distinct if isinstance(spec, ExactSpectrum) else len(spec.clusters(CLUSTER_TOL))
    if distinct != 4:
        return Verdict(NA, "not four distinct eigenvalues")
    H = gr.complement(G)
    if gr.is_connected(H):
        hspec = exact_spectrum(H)
        hdist = hspec.distinct if isinstance(hspec, ExactSpectrum) else len(hspec.clusters(CLUSTER_TOL))
        if hdist != 4:
            return Verdict(FAIL, f"connected complement has {hdist} distinct eigenvalues")
        return Verdict(PASS, "complement connected with four eigenvalues")
    comps = [c for c, _ in gr.connected_components(H)]
    strs = [str(exact_spectrum(c)) for c in comps]
    if len(set(strs)) != 1:
        return Verdict(FAIL, "complement components are not cospectral")
    if any(detect_srg_params(c) is None for c in comps):
        return Verdict(FAIL, "a complement component is not strongly regular")
    return Verdict(PASS, "complement splits into cospectral strongly regular graphs")


def check_forbidden_four_eig(G: Graph, spec: ExactSpectrum | None = None) -> Verdict:
    """No connected regular graph has integral spectrum
    {r^1, -1^1, d^m, z^(n-2-m)} with 2 <= m <= n-4; matching one is a failure."""
    if not gr.is_connected(G) or not gr.degree_profile(G).is_regular:
        return Verdict(NA, "needs a connected regular graph")
    spec = spec or _certified(G)
    if spec is None:
        # an uncertified spectrum is visibly non-integral or oddly shaped,
        # both of which rule the forbidden shape out
        clusters = exact_spectrum(G).clusters(CLUSTER_TOL)
        integral = all(abs(c - round(c)) <= INTEGER_GATE for c, _ in clusters)
        if len(clusters) != 4 or not integral:
            return Verdict(PASS, "shape cannot match")
        return Verdict(NA, "integral-looking spectrum did not certify")
    if spec.distinct != 4 or not spec.is_integral:
        return Verdict(PASS, "shape cannot match")
    ents = spec.entries
    if ents[0][1] != 1:
        return Verdict(PASS, "index not simple")
    n = G.n
    for e, m in ents[1:]:
        if e.integer == -1 and m == 1:
            rest = [(x, mm) for x, mm in ents[1:] if x.integer != -1]
            if len(rest) == 2 and all(2 <= mm <= n - 4 for _, mm in rest):
                return Verdict(FAIL, f"forbidden shape realized: {spec}")
    return Verdict(PASS, "shape cannot match")


# ---------------------------------------------------------------------------
# full report


CHECK_IDS = ("case1a_structure", "case1b_structure", "case2_regular",
             "disconnected_split", "multipartite_lambda2",
             "bipartite_three_eig", "complement_four_eig",
             "forbidden_four_eig")

_CHECKS = {
    "case1a_structure": lambda G: verify_case1a_structure(G),
    "case1b_structure": lambda G: verify_case1b_structure(G),
    "case2_regular": lambda G: verify_case2_regular(G),
    "disconnected_split": lambda G: verify_disconnected_split(G),
    "multipartite_lambda2": lambda G: check_multipartite_lambda2(G),
    "bipartite_three_eig": lambda G: check_bipartite_three_eig(G),
    "complement_four_eig": lambda G: check_complement_four_eig(G),
    "forbidden_four_eig": lambda G: check_forbidden_four_eig(G),
}


@dataclass(frozen=True)
class ClassReport:
    n: int
    m: int
    connected: bool
    regular: bool
    spectrum: str
    certified: bool
    pattern: SpectrumPattern
    in_g: bool
    in_h: bool
    srg: SrgParams | None
    design: tuple | None
    multiplicative: tuple | None
    integral: bool | None
    nikiforov_equal: bool
    km_equal: bool
    theorem_verdicts: dict = field(default_factory=dict)
    label: str = ""

    def to_dict(self):
        return {
            "n": self.n, "m": self.m,
            "regular": self.regular, "connected": self.connected,
            "spectrum": self.spectrum, "pattern": str(self.pattern),
            "in_G": self.in_g, "in_H": self.in_h,
            "srg_params": str(self.srg) if self.srg else None,
            "design": list(self.design) if self.design else None,
            "multiplicative_d": self.multiplicative[0] if self.multiplicative else None,
            "integral": self.integral,
            "certified": self.certified,
            "nikiforov_equal": self.nikiforov_equal,
            "km_equal": self.km_equal,
            "theorem_verdicts": {k: v.status for k, v in self.theorem_verdicts.items()},
            "label": self.label,
        }


def classify_report(G: Graph, checks=CHECK_IDS) -> ClassReport:
    """Classify one graph and run the requested verdicts."""
    from .energy import bound_report

    spec = exact_spectrum(G)
    certified = isinstance(spec, ExactSpectrum) and spec.certified
    connected = gr.is_connected(G)
    profile = gr.degree_profile(G)
    pattern = classify_pattern(spec, connected)
    if G.m == 0:
        return ClassReport(G.n, 0, connected, True, str(spec), certified, pattern,
                           False, False, None, None, None,
                           certified and spec.is_integral if certified else None,
                           False, False, {}, G.label)
    membership = in_class_g(G)
    mu_sq = None
    if pattern.kind == "Case1b" and isinstance(pattern.mu, ExactEigenvalue) \
            and pattern.mu.is_integer:
        mu_sq = pattern.mu.integer ** 2
    rep = bound_report(G)
    verdicts = {cid: _CHECKS[cid](G) for cid in checks}
    return ClassReport(
        n=G.n, m=G.m, connected=connected, regular=profile.is_regular,
        spectrum=str(spec), certified=certified, pattern=pattern,
        in_g=membership.member, in_h=in_class_h(G),
        srg=detect_srg_params(G),
        design=is_design_graph(G),
        multiplicative=is_multiplicative(G, mu_squared=mu_sq),
        integral=spec.is_integral if certified else None,
        nikiforov_equal=rep.nikiforov_equal, km_equal=rep.km_equal,
        theorem_verdicts=verdicts, label=G.label)
