"""Exhaustive labeled enumeration of small graphs, streaming classification
of graph6 archives, and aggregation into verification summaries.

The builtin sweep walks every edge bitmask of order n, processes chunks of
masks as numpy batches (adjacency stacks, batched connectivity, batched
Jacobi spectra, vectorized membership and bound tests), and routes the rare
shape candidates into the exact per-graph machinery.  Tolerances only select
candidates; every recorded verdict about a candidate is exact.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import classify as cl
from . import graphs as gr
from ._batch import jacobi_eigenvalues
from .graphio import parse_graph6, write_graph6, Graph6Error
from .graphs import Graph, GraphError
from .spectra import CLUSTER_TOL, CertificationError, ExactSpectrum, exact_spectrum

ZERO_TOL = 1e-6
EQ_TOL = 1e-8
CHUNK_BITS = 16

DEFAULT_CHECKS = ("case1a_structure", "case1b_structure", "case2_regular",
                  "multipartite_lambda2", "srg_three_eig", "forbidden_four_eig",
                  "bound_equalities", "integrality", "disconnected_split")

ENV_WORKERS = "SPECTRAL_CERTIFIER_THREADS"


@dataclass(frozen=True)
class SurveyConfig:
    n_min: int = 2
    n_max: int = 7
    connected_only: bool = True
    source: str = "builtin"          # "builtin" | "graph6"
    graph6_lines: tuple = ()         # records for the graph6 source
    checks: tuple = DEFAULT_CHECKS
    workers: int = 1
    include_n8: bool = False         # opt-in gate for the 2^28 sweep

    def __post_init__(self):
        if self.source == "builtin":
            hi = 8 if self.include_n8 else 7
            if not (2 <= self.n_min <= self.n_max <= hi):
                raise ValueError(f"builtin enumeration supports 2 <= n <= {hi}"
                                 " (n = 8 needs the explicit opt-in)")
        if not self.checks:
            raise ValueError("at least one check must be enabled")
        unknown = set(self.checks) - set(DEFAULT_CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")


@dataclass
class SurveySummary:
    graphs_scanned: int = 0
    pattern_counts: dict = field(default_factory=dict)
    g_members: list = field(default_factory=list)   # (graph6, pattern string)
    h_members: list = field(default_factory=list)
    failures: list = field(default_factory=list)    # {graph6, check, detail}
    skips: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self):
        return {
            "graphs_scanned": self.graphs_scanned,
            "pattern_counts": dict(sorted(self.pattern_counts.items())),
            "g_members": [list(x) for x in self.g_members],
            "h_members": list(self.h_members),
            "failures": self.failures,
            "skips": self.skips,
            "wall_time": round(self.wall_time, 3),
        }


def enumerate_labeled(n: int, connected_only: bool = False):
    """All labeled graphs of order n by edge bitmask, ascending mask order."""
    if not 2 <= n <= 8:
        raise ValueError("builtin enumeration supports 2 <= n <= 8")
    total = 1 << (n * (n - 1) // 2)
    for mask in range(total):
        G = gr.from_bitmask(n, mask)
        if connected_only and not gr.is_connected(G):
            continue
        yield G


# ---------------------------------------------------------------------------
# batched chunk scan


def _adjacency_batch(n: int, masks: np.ndarray) -> np.ndarray:
    npairs = n * (n - 1) // 2
    bits = (masks[:, None] >> np.arange(npairs)[None, :]) & 1
    iu, ju = np.triu_indices(n, 1)  # same lexicographic pair order as from_bitmask
    A = np.zeros((len(masks), n, n), dtype=np.float64)
    A[:, iu, ju] = bits
    A[:, ju, iu] = bits
    return A


def _connected_batch(A: np.ndarray) -> np.ndarray:
    b, n, _ = A.shape
    R = A + np.eye(n)[None, :, :]
    hops = 1
    while hops < n - 1:
        R = np.matmul(R, R)
        np.minimum(R, 1.0, out=R)
        hops *= 2
    return R.reshape(b, -1).min(axis=1) > 0.0


def _scan_chunk(n: int, lo: int, hi: int, connected_only: bool, checks: tuple) -> dict:
    masks = np.arange(lo, hi, dtype=np.int64)
    A = _adjacency_batch(n, masks)
    degs = A.sum(axis=2)
    m = degs.sum(axis=1) / 2
    regular = degs.min(axis=1) == degs.max(axis=1)
    connected = _connected_batch(A)
    scope = connected if connected_only else np.ones(len(masks), dtype=bool)

    evals = jacobi_eigenvalues(A)
    absv = np.abs(evals)
    abss = np.sort(absv, axis=1)[:, ::-1]
    energy = absv.sum(axis=1)
    lam1 = evals[:, 0]
    gaps = evals[:, :-1] - evals[:, 1:]
    distinct = 1 + (gaps > CLUSTER_TOL).sum(axis=1)
    has_zero = (absv <= ZERO_TOL).any(axis=1)
    integral_f = (np.abs(evals - np.round(evals)) <= ZERO_TOL).all(axis=1)
    nonempty = m >= 0.5

    # membership: nonzero magnitudes after one index occurrence share a value
    tail_mag = abss[:, 1:]
    nzmask = tail_mag > ZERO_TOL
    any_nz = nzmask.any(axis=1)
    tmax = tail_mag[:, 0]
    tmin = np.where(nzmask, tail_mag, tmax[:, None]).min(axis=1)
    in_g_f = nonempty & (~any_nz | (tmax - tmin <= ZERO_TOL))

    # bound arithmetic (rows with an edge only)
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma1, sigma2 = abss[:, 0], abss[:, 1]
        nik = sigma1 + (2 * m - sigma1 ** 2) / np.where(sigma2 > 0, sigma2, 1.0)
        km_arg = (n - 1) * np.maximum(2 * m - lam1 ** 2, 0.0)
        km = lam1 + np.sqrt(km_arg)
    nik_eq = nonempty & (np.abs(energy - nik) <= EQ_TOL)
    km_eq = nonempty & (np.abs(energy - km) <= EQ_TOL)
    flat_tail = np.abs(evals[:, 1:])
    tail_is_flat = flat_tail.max(axis=1) - flat_tail.min(axis=1) <= ZERO_TOL

    # combinatorial structure, batched
    eye = np.eye(n, dtype=bool)[None, :, :]
    nonadj = (A == 0) | eye  # same-part relation when complete multipartite
    closure = np.matmul(nonadj.astype(np.float64), nonadj.astype(np.float64)) > 0
    is_cm = (closure == nonadj).reshape(len(masks), -1).all(axis=1)

    A2 = np.matmul(A, A)
    big = float(n + 1)
    on_edge = A > 0
    off_edge = (~on_edge) & ~eye
    amax = np.where(on_edge, A2, -big).reshape(len(masks), -1).max(axis=1)
    amin = np.where(on_edge, A2, big).reshape(len(masks), -1).min(axis=1)
    bmax = np.where(off_edge, A2, -big).reshape(len(masks), -1).max(axis=1)
    bmin = np.where(off_edge, A2, big).reshape(len(masks), -1).min(axis=1)
    complete = m == n * (n - 1) / 2
    srg_flag = (regular & nonempty & ~complete
                & (amax == amin) & (bmax == bmin) & (bmax < big))

    out = {
        "scanned": int(scope.sum()),
        "failures": [],
        "members": [],
        "h_members": [],
        "pattern_rows": [],
        "counts": {},
    }

    def fail(mask_val, check, detail):
        G = gr.from_bitmask(n, int(mask_val))
        out["failures"].append({
            "n": n, "graph6": write_graph6(G).decode(), "check": check,
            "detail": detail,
        })

    # Lemma: connected => (complete multipartite <=> lambda2 <= 0)
    if "multipartite_lambda2" in checks:
        lam2_nonpos = evals[:, 1] <= ZERO_TOL
        bad = scope & connected & (is_cm != lam2_nonpos)
        for mv in masks[bad]:
            fail(mv, "multipartite_lambda2",
                 "complete-multipartite flag disagrees with lambda2 <= 0")

    # Lemma: connected regular => (strongly regular <=> three distinct eigenvalues)
    if "srg_three_eig" in checks:
        lhs = srg_flag
        rhs = (distinct == 3) & ~complete & nonempty
        bad = scope & connected & regular & (lhs != rhs)
        for mv in masks[bad]:
            fail(mv, "srg_three_eig",
                 "combinatorial strong regularity disagrees with eigenvalue count")

    # bound equalities against the two membership conditions
    if "bound_equalities" in checks:
        bad = scope & nonempty & (nik_eq != in_g_f)
        for mv in masks[bad]:
            fail(mv, "bound_equalities", "trace-norm lower bound equality "
                                         "disagrees with class G membership")
        bad = scope & nonempty & (km_eq != tail_is_flat)
        for mv in masks[bad]:
            fail(mv, "bound_equalities", "upper bound equality disagrees with "
                                         "|lambda_2| = ... = |lambda_n|")
        bad = scope & nonempty & ((energy - nik < -EQ_TOL)
                                  | (energy - km > EQ_TOL))
        for mv in masks[bad]:
            fail(mv, "bound_equalities", "energy escapes the bound sandwich")
        kmn = n / 2 * (1 + np.sqrt(n))
        bad = scope & nonempty & (energy > kmn + EQ_TOL)
        for mv in masks[bad]:
            fail(mv, "bound_equalities", "energy exceeds the order-only bound")

    # forbidden 4-eigenvalue shape candidates -> exact confirmation
    if "forbidden_four_eig" in checks:
        minus_one_simple = (np.abs(evals + 1.0) <= ZERO_TOL).sum(axis=1) == 1
        cand = scope & connected & regular & (distinct == 4) & integral_f & minus_one_simple
        for mv in masks[cand]:
            G = gr.from_bitmask(n, int(mv))
            v = cl.check_forbidden_four_eig(G)
            if v.failed:
                fail(mv, "forbidden_four_eig", v.detail)

    # class G members: exact certification plus the applicable theorem checks
    member_rows = np.flatnonzero(scope & in_g_f)
    for row in member_rows:
        mv = int(masks[row])
        G = gr.from_bitmask(n, mv)
        try:
            spec = exact_spectrum(G)
        except CertificationError as exc:
            fail(mv, "integrality", f"certification error: {exc}")
            continue
        certified = isinstance(spec, ExactSpectrum) and spec.certified
        if not certified:
            fail(mv, "integrality", "class G member failed exact certification")
            continue
        is_conn = bool(connected[row])
        membership = cl.in_class_g(G)
        if not membership.member:
            fail(mv, "bound_equalities",
                 "float membership not confirmed by the exact spectrum")
            continue
        pattern = membership.pattern
        g6 = write_graph6(G).decode()
        out["members"].append((mv, g6, str(pattern)))
        if cl.in_class_h(G):
            out["h_members"].append(g6)
        if "integrality" in checks and not spec.is_integral:
            if not _nonsquare_bipartite_excuse(G):
                fail(mv, "integrality",
                     "non-integral member without a complete bipartite excuse")
        if is_conn:
            if "case1a_structure" in checks and pattern.kind == "Case1a":
                v = cl.verify_case1a_structure(G, spec)
                if v.failed:
                    fail(mv, "case1a_structure", v.detail)
            if "case1b_structure" in checks and pattern.kind == "Case1b":
                v = cl.verify_case1b_structure(G, spec)
                if v.failed:
                    fail(mv, "case1b_structure", v.detail)
            if "case2_regular" in checks and pattern.kind == "Case2":
                v = cl.verify_case2_regular(G, spec)
                if v.failed:
                    fail(mv, "case2_regular", v.detail)

    # disconnected decomposition (needs the full stream)
    if "disconnected_split" in checks and not connected_only:
        cand = scope & ~connected & nonempty
        for mv in masks[np.flatnonzero(cand)]:
            G = gr.from_bitmask(n, int(mv))
            v = cl.verify_disconnected_split(G)
            if v.failed:
                fail(mv, "disconnected_split", v.detail)

    # pattern census: anything with > 4 clusters is Other; the rest are rare
    # enough to classify one by one
    counts = out["counts"]
    empty_rows = scope & ~nonempty
    counts["Empty"] = int(empty_rows.sum())
    other_rows = scope & nonempty & (distinct > 4)
    counts["Other"] = int(other_rows.sum())
    few = np.flatnonzero(scope & nonempty & (distinct <= 4))
    for row in few:
        G = gr.from_bitmask(n, int(masks[row]))
        pat = cl.classify_pattern(exact_spectrum(G), bool(connected[row]))
        counts[pat.kind] = counts.get(pat.kind, 0) + 1
    return out


def _nonsquare_bipartite_excuse(G: Graph) -> bool:
    """Non-integral members must owe every surd to a complete bipartite
    component with a nonsquare edge product."""
    for comp, _ in gr.connected_components(G):
        if comp.m == 0:
            continue
        cspec = exact_spectrum(comp)
        if isinstance(cspec, ExactSpectrum) and cspec.is_integral:
            continue
        parts = cl.multipartite_parts(comp)
        if parts is None or len(parts) != 2:
            return False
    return True


# ---------------------------------------------------------------------------
# survey driver


def _chunk_ranges(n: int):
    total = 1 << (n * (n - 1) // 2)
    step = 1 << CHUNK_BITS
    for lo in range(0, total, step):
        yield lo, min(lo + step, total)


def _merge(summary: SurveySummary, part: dict, n: int):
    summary.graphs_scanned += part["scanned"]
    for k, v in part["counts"].items():
        summary.pattern_counts[k] = summary.pattern_counts.get(k, 0) + v
    for _, g6, pat in sorted(part["members"]):
        summary.g_members.append((g6, pat))
    summary.h_members.extend(sorted(part["h_members"]))
    summary.failures.extend(part["failures"])


def worker_count(config: SurveyConfig) -> int:
    env = os.environ.get(ENV_WORKERS)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, config.workers)


def run_survey(config: SurveyConfig) -> SurveySummary:
    start = time.time()
    summary = SurveySummary()
    if config.source == "graph6":
        _run_stream(config, summary)
    else:
        workers = worker_count(config)
        for n in range(config.n_min, config.n_max + 1):
            jobs = [(n, lo, hi, config.connected_only, config.checks)
                    for lo, hi in _chunk_ranges(n)]
            if workers == 1 or len(jobs) == 1:
                parts = [_scan_chunk(*j) for j in jobs]
            else:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    parts = list(pool.map(_scan_chunk_star, jobs, chunksize=1))
            for part in parts:
                _merge(summary, part, n)
    summary.wall_time = time.time() - start
    return summary


def _scan_chunk_star(args):
    return _scan_chunk(*args)


def _run_stream(config: SurveyConfig, summary: SurveySummary):
    for lineno, line in enumerate(config.graph6_lines, 1):
        text = line.strip() if isinstance(line, str) else line.strip()
        if not text:
            continue
        try:
            G = parse_graph6(text)
        except (Graph6Error, GraphError) as exc:
            summary.skips.append({"line": lineno, "detail": str(exc)})
            continue
        summary.graphs_scanned += 1
        try:
            report = cl.classify_report(G, checks=_stream_checks(config.checks))
        except CertificationError as exc:
            summary.skips.append({"line": lineno, "detail": f"certification: {exc}"})
            continue
        kind = report.pattern.kind
        summary.pattern_counts[kind] = summary.pattern_counts.get(kind, 0) + 1
        g6 = write_graph6(G).decode()
        if report.in_g:
            summary.g_members.append((g6, str(report.pattern)))
        if report.in_h:
            summary.h_members.append(g6)
        for cid, verdict in report.theorem_verdicts.items():
            if verdict.failed:
                summary.failures.append({
                    "n": G.n, "graph6": g6, "check": cid, "detail": verdict.detail,
                })


def _stream_checks(checks):
    return tuple(c for c in checks if c in cl.CHECK_IDS)


# ---------------------------------------------------------------------------
# census


def census_class_g(n: int, connected_only: bool = True):
    """Isomorphism-class representatives of the order-n class G members,
    from the labeled sweep, each with its full report."""
    if not 2 <= n <= 8:
        raise ValueError("census supports 2 <= n <= 8")
    reps: list[Graph] = []
    seen: list[tuple] = []
    config = SurveyConfig(n_min=n, n_max=n, connected_only=connected_only,
                          checks=("bound_equalities",), include_n8=(n == 8))
    summary = run_survey(config)
    out = []
    for g6, _pat in summary.g_members:
        G = parse_graph6(g6)
        key = (tuple(sorted(G.degrees())), str(exact_spectrum(G)))
        dup = False
        for rep_key, rep in zip(seen, reps):
            if rep_key == key and gr.are_isomorphic(G, rep):
                dup = True
                break
        if dup:
            continue
        seen.append(key)
        reps.append(G)
        out.append((g6, cl.classify_report(G)))
    return out
