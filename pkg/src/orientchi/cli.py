"""``orientchi`` command line: gen, analyze, decompose, color, verify, export.

Exit codes: 0 success, 1 an ``--expect-absent`` expectation was violated (or
a verification suite failed), 2 input error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .budget import BudgetExceeded
from .certify import certificate_problems
from .constructions import (
    cyclic_tournament,
    random_acyclic,
    random_oriented,
    random_tournament,
    shift_digraph,
)
from .core import Digraph, DigraphError, parse_digraph, serialize_digraph, to_dot
from .decompositions import (
    ParamPack,
    PreconditionError,
    SourceSinkFailure,
    acyclic_partition,
    color_acyclic_spread,
    color_spread,
    robust_decomposition,
    source_sink_partition,
)
from .holes import enumerate_holes
from .patterns import find_induced, find_rich_vertex, is_lambda_spread, oriented_star_pattern, parse_pattern
from .solvers import chromatic_number, clique_number, is_perfect_underlying
from .verify import SUITES, run_suite

EXIT_OK, EXIT_EXPECTATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def load_schema(name: str) -> dict:
    """A shipped JSON schema by short name (certificate, coloring, ...)."""
    text = resources.files("orientchi").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str) -> Digraph:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_digraph(text)


# -- gen ----------------------------------------------------------------------------

def run_generate(args) -> int:
    kind = args.family
    if kind == "shift":
        G = shift_digraph(args.n)
    elif kind == "cyclic":
        G = cyclic_tournament(args.m)
    elif kind == "random":
        G = random_oriented(args.n, args.p, args.seed)
    elif kind == "acyclic":
        G = random_acyclic(args.n, args.p, args.seed)
    elif kind == "tournament":
        G = random_tournament(args.n, args.seed)
    else:
        G = oriented_star_pattern(args.s, args.t)
    _emit(serialize_digraph(G), args.output)
    return EXIT_OK


# -- analyze ------------------------------------------------------------------------

def run_analyze(args) -> int:
    G = _read_graph(args.input)
    results: dict = {}
    found = False
    if args.omega:
        size, clique = clique_number(G, budget=args.budget)
        results["omega"] = {"value": size, "clique": sorted(clique.vertices)}
    if args.chi:
        chi, col = chromatic_number(G, budget=args.budget)
        results["chi"] = {"value": chi, "colors": [col.colors[v] for v in G.vertices]}
    if args.pattern:
        H = parse_pattern(args.pattern)
        occ = find_induced(G, H, limit=args.limit)
        found |= bool(occ)
        results["pattern"] = {"pattern": args.pattern, "count": len(occ),
                              "occurrences": [list(o.host_vertices) for o in occ]}
    if args.holes:
        holes = enumerate_holes(G, args.min_len, args.max_len, budget=args.budget)
        found |= bool(holes)
        results["holes"] = {"count": len(holes), "holes": [h.to_json() for h in holes]}
    if args.spread is not None:
        rep = is_lambda_spread(G, args.spread)
        witness = None
        if rep.witness is not None:
            v, A, B = rep.witness
            witness = {"vertex": v, "A": list(A), "B": list(B)}
            found = True
        results["spread"] = {"lambda": args.spread, "verdict": rep.verdict, "witness": witness}
    if args.rich is not None:
        k, m = args.rich
        w = find_rich_vertex(G, k, m, budget=args.budget)
        witness = None
        if w is not None:
            found = True
            witness = {"vertex": w.v, "out_cliques": [list(c) for c in w.out_cliques],
                       "in_cliques": [list(c) for c in w.in_cliques]}
        results["rich"] = {"k": k, "m": m, "witness": witness}
    if args.perfect:
        verdict = is_perfect_underlying(G, max_vertices=args.max_vertices, budget=args.budget)
        found |= not verdict.perfect
        results["perfect"] = {"perfect": verdict.perfect,
                              "witness": list(verdict.witness) if verdict.witness else None}
    if not results:
        raise InputError("choose at least one analysis flag")
    _emit(dump_json({"graph": G.name, "vertex_count": G.vertex_count, "edge_count": len(G.edges),
                     "results": results}), args.output)
    return EXIT_EXPECTATION if args.expect_absent and found else EXIT_OK


# -- decompose ------------------------------------------------------------------------

def run_decompose(args) -> int:
    G = _read_graph(args.input)
    certs = []
    failure = None
    if args.theorem == "outnbrs":
        res = source_sink_partition(G, args.k, args.m, args.n, budget=args.budget)
        if isinstance(res, SourceSinkFailure):
            failure = res.to_json()
            if args.lam is not None:
                failure["classification"] = res.classify(G, args.k, args.lam)[0]
        else:
            certs.append(res)
    else:
        triple = robust_decomposition(G, args.h, args.k, budget=args.budget)
        if args.theorem == "robustpartition":
            certs.append(triple.certificate(G.vertices))
        else:
            certs += [acyclic_partition(G, w) for w in (triple.P, triple.Q) if w.parts]
    out = {
        "graph": G.name,
        "theorem": args.theorem,
        "certificates": [c.to_json() for c in certs],
        "failure": failure,
    }
    if args.check:
        out["independent_check"] = [p for c in out["certificates"] for p in certificate_problems(G, c)]
    _emit(dump_json(out), args.output)
    return EXIT_OK


# -- color ----------------------------------------------------------------------------

def run_color(args) -> int:
    G = _read_graph(args.input)
    kappa = args.kappa
    if kappa is None:
        kappa = clique_number(G, budget=args.budget)[0]
    params = ParamPack(kappa=kappa, lam=args.lam, tau=args.tau, n=args.n, k=args.k,
                       k1=args.k1, h=args.h, budget=args.budget)
    res = color_acyclic_spread(G, params) if args.acyclic else color_spread(G, params)
    _emit(dump_json(res.to_json()), args.output)
    return EXIT_OK


# -- verify / export -----------------------------------------------------------------

_SUITE_ARGS = {
    "flh-extraction": ("exhaustive_n", "samples", "seed", "n"),
    "chvatal": ("n", "samples", "seed"),
    "shift-family": ("n",),
    "cyclic-recognizer": ("n",),
    "outnbrs": ("n", "samples", "seed"),
    "outorderable": ("n", "samples", "seed"),
    "robustpartition": ("n", "samples", "seed"),
    "userobust": ("n", "samples", "seed"),
    "layer-inequality": ("n", "samples", "seed"),
    "pipeline": ("n", "samples", "seed"),
    "gettri-probe": ("n", "samples", "seed"),
}


def run_verify(args) -> int:
    kwargs = {}
    for name in _SUITE_ARGS[args.suite]:
        value = getattr(args, name.replace("-", "_"))
        if value is None:
            continue
        if args.suite == "flh-extraction" and name == "n":
            kwargs["max_n"] = value
        elif args.suite == "shift-family" and name == "n":
            kwargs["n_max"] = value
        else:
            kwargs[name] = value
    try:
        report = run_suite(args.suite, **kwargs)
    except BudgetExceeded as exc:
        _emit(dump_json({"suite": args.suite, "passed": False, "complete": False, "instances_run": 0,
                         "failures": [], "params": kwargs, "stats": {"budget": str(exc)},
                         "runtime": 0.0}), args.output)
        return EXIT_BUDGET
    _emit(dump_json(report.to_json()), args.output)
    return EXIT_OK if report.passed else EXIT_EXPECTATION


def run_export(args) -> int:
    G = _read_graph(args.input)
    _emit(to_dot(G) if args.dot else serialize_digraph(G), args.output)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orientchi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a digraph as an edge-list")
    gsub = gen.add_subparsers(dest="family", required=True)
    for fam in ("shift", "cyclic", "random", "acyclic", "tournament", "star"):
        g = gsub.add_parser(fam)
        g.add_argument("-o", "--output")
        if fam in ("shift", "random", "acyclic", "tournament"):
            g.add_argument("--n", type=int, required=True)
        if fam in ("random", "acyclic"):
            g.add_argument("--p", type=float, required=True)
        if fam in ("random", "acyclic", "tournament"):
            g.add_argument("--seed", type=int, required=True)
        if fam == "cyclic":
            g.add_argument("--m", type=int, required=True)
        if fam == "star":
            g.add_argument("--s", type=int, required=True)
            g.add_argument("--t", type=int, required=True)
    gen.set_defaults(func=run_generate)

    an = sub.add_parser("analyze", help="exact structural analyses, printed as JSON")
    an.add_argument("input")
    an.add_argument("--chi", action="store_true")
    an.add_argument("--omega", action="store_true")
    an.add_argument("--pattern")
    an.add_argument("--limit", type=int, help="stop after this many pattern occurrences")
    an.add_argument("--holes", action="store_true")
    an.add_argument("--min-len", type=int, default=4)
    an.add_argument("--max-len", type=int)
    an.add_argument("--spread", type=int, metavar="LAMBDA")
    an.add_argument("--rich", type=int, nargs=2, metavar=("K", "M"))
    an.add_argument("--perfect", action="store_true")
    an.add_argument("--max-vertices", type=int, default=10)
    an.add_argument("--expect-absent", action="store_true",
                    help="exit 1 if a pattern, hole or witness is found")
    an.add_argument("--budget", type=int)
    an.add_argument("-o", "--output")
    an.set_defaults(func=run_analyze)

    de = sub.add_parser("decompose", help="certified partitions as JSON")
    de.add_argument("input")
    de.add_argument("--theorem", choices=("outnbrs", "outorderable", "robustpartition"), required=True)
    de.add_argument("--k", type=int, default=1)
    de.add_argument("--m", type=int, default=1)
    de.add_argument("--n", type=int, default=3)
    de.add_argument("--h", type=int, default=2)
    de.add_argument("--lam", type=int, help="classify clique-family failures against this spread")
    de.add_argument("--check", action="store_true", help="re-verify with the independent checker")
    de.add_argument("--budget", type=int)
    de.add_argument("-o", "--output")
    de.set_defaults(func=run_decompose)

    co = sub.add_parser("color", help="colour a spread digraph through the partition pipeline")
    co.add_argument("input")
    co.add_argument("--lam", type=int, default=1)
    co.add_argument("--kappa", type=int)
    co.add_argument("--tau", type=int, default=1)
    co.add_argument("--n", type=int, default=3)
    co.add_argument("--k", type=int, default=1)
    co.add_argument("--k1", type=int)
    co.add_argument("--h", type=int)
    co.add_argument("--acyclic", action="store_true", help="use the acyclic recursion only")
    co.add_argument("--budget", type=int)
    co.add_argument("-o", "--output")
    co.set_defaults(func=run_color)

    ve = sub.add_parser("verify", help="run a property suite")
    ve.add_argument("suite", choices=sorted(SUITES))
    ve.add_argument("--n", type=int)
    ve.add_argument("--samples", type=int)
    ve.add_argument("--seed", type=int)
    ve.add_argument("--exhaustive-n", type=int)
    ve.add_argument("-o", "--output")
    ve.set_defaults(func=run_verify)

    ex = sub.add_parser("export", help="convert an edge-list")
    ex.add_argument("input")
    ex.add_argument("--dot", action="store_true")
    ex.add_argument("-o", "--output")
    ex.set_defaults(func=run_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"orientchi: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, DigraphError, PreconditionError, ValueError) as exc:
        print(f"orientchi: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
