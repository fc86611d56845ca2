"""Command-line interface: construct catalog graphs and recipe expressions,
print spectra, classify, compute bounds, scan archives, and run the
exhaustive verification sweep.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from datetime import datetime, timezone

from . import graphs as gr
from .classify import classify_report
from .energy import bound_report
from .families import ag3q_family, catalog
from .graphio import Graph6Error, parse_edge_list, parse_graph6, write_graph6, write_report
from .graphs import Graph, GraphError
from .spectra import CLUSTER_TOL, ExactSpectrum, exact_spectrum, float_spectrum
from .survey import DEFAULT_CHECKS, SurveyConfig, run_survey


class RecipeError(ValueError):
    """Recipe syntax or lookup error, carrying the offending position."""


# ---------------------------------------------------------------------------
# recipe grammar: IDENT(args) with integer and sub-expression arguments,
# plus bare catalog keys and catalog:KEY references


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_/:.]*)"
                    r"|(?P<punct>[(),]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise RecipeError(f"unexpected character {text[pos]!r} at position {pos}")
            break
        if m.group("int"):
            out.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("punct", m.group("punct"), m.start("punct")))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _lookup_catalog(key: str, pos: int) -> Graph:
    cat = catalog()
    candidates = [key, key.lower(), "table2/" + key, "table2/" + key.lower()]
    for cand in candidates:
        if cand in cat:
            return cat[cand].graph()
    lowered = {k.lower(): k for k in cat}
    if key.lower() in lowered:
        return cat[lowered[key.lower()]].graph()
    raise RecipeError(f"unknown catalog key {key!r} at position {pos}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind or value is not None and tok[1] != value:
            want = value or kind
            raise RecipeError(f"expected {want} at position {tok[2]} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Graph:
        g = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise RecipeError(f"trailing input at position {tok[2]}")
        return g

    def expr(self) -> Graph:
        kind, value, pos = self.take()
        if kind != "name":
            raise RecipeError(f"expected a construction name at position {pos}")
        if value.startswith("catalog:"):
            return _lookup_catalog(value[len("catalog:"):], pos)
        if self.peek()[1] != "(":
            return _lookup_catalog(value, pos)
        self.take(value="(")
        args = [self.arg()]
        while self.peek()[1] == ",":
            self.take(value=",")
            args.append(self.arg())
        self.take(value=")")
        return self.build(value, args, pos)

    def arg(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return tok[1]
        return self.expr()

    def build(self, name: str, args: list, pos: int) -> Graph:
        def need(signature, kinds):
            if len(args) != len(kinds) or any(
                    not isinstance(a, (Graph if k == "G" else int)) for a, k in zip(args, kinds)):
                raise RecipeError(f"{name} expects {signature} (at position {pos})")

        try:
            if name == "complete":
                need("complete(n)", "i")
                return gr.complete(args[0])
            if name == "cycle":
                need("cycle(n)", "i")
                return gr.cycle(args[0])
            if name == "kpq":
                need("kpq(p,q)", "ii")
                return gr.complete_multipartite(args)
            if name == "multipartite":
                if not args or not all(isinstance(a, int) for a in args):
                    raise RecipeError(f"multipartite expects part sizes (at position {pos})")
                return gr.complete_multipartite(args)
            if name == "kminus":
                need("kminus(l)", "i")
                return gr.k_minus(args[0])
            if name == "cone":
                need("cone(X)", "G")
                return gr.cone(args[0])
            if name == "complement":
                need("complement(X)", "G")
                return gr.complement(args[0])
            if name == "line":
                need("line(X)", "G")
                return gr.line_graph(args[0])
            if name == "tensorJ":
                need("tensorJ(X,m)", "Gi")
                return gr.tensor_j(args[0], args[1])
            if name == "starJ":
                need("starJ(X,m)", "Gi")
                return gr.star_j(args[0], args[1])
            if name == "cartesian":
                need("cartesian(X,Y)", "GG")
                return gr.cartesian_product(args[0], args[1])
            if name == "ag3q":
                need("ag3q(q)", "i")
                return ag3q_family(args[0])
            if name == "union":
                if len(args) < 2 or not all(isinstance(a, Graph) for a in args):
                    raise RecipeError(f"union expects graphs (at position {pos})")
                return gr.disjoint_union(args)
        except (GraphError, ValueError) as exc:
            if isinstance(exc, RecipeError):
                raise
            raise RecipeError(f"{name}: {exc} (at position {pos})") from None
        raise RecipeError(f"unknown construction {name!r} at position {pos}")


def build_recipe(text: str) -> Graph:
    return _Parser(text).parse().with_label(text.strip())


# ---------------------------------------------------------------------------
# input plumbing


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def read_graphs(path: str, fmt: str = "auto") -> list[Graph]:
    """Graphs from a file or stdin: newline-delimited graph6 or one edge list."""
    text = _read_text(path)
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphError("no input records")
    if fmt == "edges":
        return [parse_edge_list(text)]
    if fmt == "graph6":
        return [parse_graph6(ln) for ln in lines]
    try:
        return [parse_graph6(ln) for ln in lines]
    except Graph6Error:
        return [parse_edge_list(text)]


def _timestamp(args) -> str | None:
    if getattr(args, "no_timestamp", False):
        return None
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_construct(args) -> int:
    G = build_recipe(args.recipe)
    if args.output == "edges":
        for i, j in G.edges():
            print(i, j)
    else:
        print(write_graph6(G).decode())
    return 0


def _cmd_spectrum(args) -> int:
    for G in read_graphs(args.input, args.format):
        if args.mode == "float":
            vals = float_spectrum(G).values
            print(" ".join(f"{v:.12g}" for v in vals))
            continue
        spec = exact_spectrum(G)
        if isinstance(spec, ExactSpectrum):
            print(spec)
        else:
            print(" ".join(f"{c:.12g}^{m}" for c, m in spec.clusters(CLUSTER_TOL)),
                  "(uncertified)")
    return 0


def _cmd_classify(args) -> int:
    reports = [classify_report(G) for G in read_graphs(args.input, args.format)]
    sys.stdout.buffer.write(write_report(reports, args.output, _timestamp(args)))
    return 0


def _cmd_bounds(args) -> int:
    rows = []
    for G in read_graphs(args.input, args.format):
        rep = bound_report(G)
        rows.append({
            "n": G.n, "m": G.m,
            "energy": rep.energy,
            "energy_exact": str(rep.energy_exact) if rep.energy_exact is not None else None,
            "sigma1": rep.sigma1, "sigma2": rep.sigma2, "sum_sq": rep.sum_sq,
            "nikiforov_bound": rep.nikiforov_bound,
            "km_bound": rep.km_bound, "km_n_bound": rep.km_n_bound,
            "nikiforov_equal": rep.nikiforov_equal, "km_equal": rep.km_equal,
            "exact": rep.exact,
        })
    doc = {"schema": 1}
    ts = _timestamp(args)
    if ts is not None:
        doc["timestamp"] = ts
    doc["bounds"] = rows
    print(json.dumps(doc, indent=2))
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text.strip())
    if not m:
        raise RecipeError(f"expected a range like 2..7, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _cmd_scan(args) -> int:
    if args.source:
        text = _read_text(args.source)
        config = SurveyConfig(source="graph6",
                              graph6_lines=tuple(text.splitlines()),
                              checks=tuple(args.checks.split(",")) if args.checks else DEFAULT_CHECKS,
                              workers=args.workers)
    else:
        config = SurveyConfig(
            n_min=args.n_min, n_max=args.n_max,
            connected_only=not args.all,
            checks=tuple(args.checks.split(",")) if args.checks else DEFAULT_CHECKS,
            workers=args.workers, include_n8=args.include_n8)
    summary = run_survey(config)
    doc = {"schema": 1}
    ts = _timestamp(args)
    if ts is not None:
        doc["timestamp"] = ts
    doc["summary"] = summary.to_dict()
    if args.no_timestamp:
        doc["summary"].pop("wall_time", None)
    print(json.dumps(doc, indent=2))
    return 1 if summary.failures or summary.skips else 0


def _cmd_verify(args) -> int:
    if args.builtin:
        lo, hi = _parse_range(args.builtin)
        failures = 0
        for connected_only in ((True,) if not args.all else (True, False)):
            top = hi if connected_only else min(hi, 6)
            if not connected_only and lo > top:
                continue
            config = SurveyConfig(n_min=lo, n_max=min(top, hi),
                                  connected_only=connected_only,
                                  workers=args.workers, include_n8=(hi >= 8))
            summary = run_survey(config)
            scope = "connected" if connected_only else "all graphs"
            status = "ok" if not summary.failures else f"{len(summary.failures)} FAILURES"
            print(f"builtin {lo}..{min(top, hi)} ({scope}): "
                  f"{summary.graphs_scanned} graphs, {len(summary.g_members)} members, "
                  f"{status} [{summary.wall_time:.1f}s]")
            for rec in summary.failures[:20]:
                print(f"  FAIL {rec['check']} {rec['graph6']}: {rec['detail']}")
            failures += len(summary.failures)
        return 1 if failures else 0
    config = SurveyConfig(source="graph6",
                          graph6_lines=tuple(_read_text(args.input).splitlines()),
                          workers=args.workers)
    summary = run_survey(config)
    print(f"{summary.graphs_scanned} graphs, {len(summary.g_members)} members, "
          f"{len(summary.failures)} failures, {len(summary.skips)} skips")
    for rec in summary.failures:
        print(f"  FAIL {rec['check']} {rec['graph6']}: {rec['detail']}")
    return 1 if summary.failures or summary.skips else 0


def _cmd_catalog(args) -> int:
    for key, entry in sorted(catalog().items()):
        G = entry.graph()
        expect = f"  {entry.expected}" if entry.expected else ""
        print(f"{key:20s} n={G.n:<3d}{expect}")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="speccert",
        description="construct, certify and survey graphs with at most two "
                    "nonzero eigenvalue magnitudes")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a graph from a recipe or catalog key")
    p.add_argument("recipe")
    p.add_argument("--output", choices=("graph6", "edges"), default="graph6")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("spectrum", help="print the spectrum of each input graph")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--exact", dest="mode", action="store_const", const="exact",
                   default="exact")
    p.add_argument("--float", dest="mode", action="store_const", const="float")
    p.add_argument("--format", choices=("auto", "graph6", "edges"), default="auto")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("classify", help="full classification report (JSON/CSV)")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=("auto", "graph6", "edges"), default="auto")
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--no-timestamp", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("bounds", help="energy and trace-norm bound report")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=("auto", "graph6", "edges"), default="auto")
    p.add_argument("--no-timestamp", action="store_true")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("scan", help="survey a graph6 stream or the builtin enumeration")
    p.add_argument("--source", help="graph6 file ('-' for stdin); omit for builtin")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--all", action="store_true", help="include disconnected graphs")
    p.add_argument("--include-n8", action="store_true")
    p.add_argument("--checks", help="comma-separated check ids")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timestamp", action="store_true")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("verify", help="run verification checks, exit 0 iff clean")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--builtin", help="order range for the exhaustive sweep, e.g. 2..7")
    p.add_argument("--all", action="store_true",
                   help="also sweep disconnected graphs (orders capped at 6)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("catalog", help="list the named constructions")
    p.set_defaults(func=_cmd_catalog)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (RecipeError, Graph6Error, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
