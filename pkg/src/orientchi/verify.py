"""Property suites that exercise each construction on seeded or exhaustive inputs.

Each suite returns a ``VerificationReport``; an empty failure list means the
suite passed.  Every failure records enough to reproduce it: the generator
seed when there is one, and always the edge-list itself.
"""

from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .budget import BudgetExceeded
from .certify import brute_clique_number, certificate_problems, coloring_problems
from .constructions import (
    _draw,
    cyclic_tournament,
    enumerate_regular_tournaments,
    random_acyclic,
    random_oriented,
    random_tournament,
    recognize_cyclic,
    shift_digraph,
)
from .core import Digraph, serialize_digraph
from .decompositions import (
    is_robust,
    ParamPack,
    SourceSinkFailure,
    acyclic_partition,
    check_userobust_instance,
    color_spread,
    robust_decomposition,
    source_sink_partition,
    trace_problems,
)
from .holes import HoleClass, enumerate_holes, extract_flh_from_hole, has_disoriented_long_hole, layer_chromatic_profile, small_clique_tau
from .patterns import FLH, find_flh, find_induced, find_transitive_triangle, is_induced_occurrence, is_lambda_spread, parse_pattern
from .solvers import chromatic_number, clique_number, is_perfect_underlying


@dataclass
class VerificationReport:
    suite: str
    instances_run: int = 0
    failures: list[dict] = field(default_factory=list)
    runtime: float = 0.0
    params: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    complete: bool = True

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, G: Digraph, expected, got, seed=None) -> None:
        text = serialize_digraph(G)
        entry = {
            "digest": hashlib.sha256(text.encode()).hexdigest()[:16],
            "expected": expected,
            "got": got,
            "input": text,
        }
        if seed is not None:
            entry["seed"] = seed
        self.failures.append(entry)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "complete": self.complete,
            "instances_run": self.instances_run,
            "failures": sorted(self.failures, key=lambda f: f["digest"]),
            "params": dict(self.params),
            "stats": dict(self.stats),
            "runtime": round(self.runtime, 3),
        }


def _pick(seed: int, tag: str, idx: int, choices):
    return choices[_draw(seed, tag, idx) % len(choices)]


def _relabel(G: Digraph, perm) -> Digraph:
    return Digraph(G.vertex_count, tuple((perm[u], perm[v]) for u, v in G.edges), G.name)


# -- holes ------------------------------------------------------------------------

def _check_holes(G: Digraph, report: VerificationReport, seed=None) -> int:
    checked = 0
    for hole in enumerate_holes(G, 5):
        if hole.hole_class is not HoleClass.DISORIENTED:
            continue
        checked += 1
        try:
            occ = extract_flh_from_hole(G, hole)
        except Exception as exc:  # any raise counts as a failed extraction
            report.fail(G, "occurrence", f"{type(exc).__name__}: {exc}", seed)
            continue
        hosts = occ.host_vertices
        if not set(hosts) <= set(hole.cycle) or not is_induced_occurrence(G, FLH, hosts):
            report.fail(G, "occurrence on the hole", list(hosts), seed)
    return checked


def oriented_cycles(L: int):
    """Every labelled oriented cycle on {0..L-1}: each cyclic vertex order
    (up to rotation and reflection) with each of the 2^L orientations."""
    for rest in permutations(range(1, L)):
        if rest[0] > rest[-1]:
            continue
        order = (0,) + rest
        for dirs in product((0, 1), repeat=L):
            edges = []
            for i in range(L):
                a, b = order[i], order[(i + 1) % L]
                edges.append((a, b) if dirs[i] == 0 else (b, a))
            yield Digraph(L, tuple(edges))


def all_oriented_graphs(n: int):
    """Raw enumeration: every pair is absent, forward or backward."""
    pairs = list(combinations(range(n), 2))
    for states in product((0, 1, 2), repeat=len(pairs)):
        edges = tuple((i, j) if s == 1 else (j, i) for (i, j), s in zip(pairs, states) if s)
        yield Digraph(n, edges)


def atlas_hole_orientations(max_n: int, seed: int):
    """For every graph on at most ``max_n`` vertices (up to isomorphism) with
    a long hole: every orientation of that hole's edges, the remaining edges
    oriented by a seeded coin."""
    for gi, g in enumerate(nx.graph_atlas_g()):
        n = g.number_of_nodes()
        if n < 5 or n > max_n:
            continue
        und = Digraph(n, tuple(sorted((min(u, v), max(u, v)) for u, v in g.edges())))
        for hole in enumerate_holes(und, 5):
            cyc = hole.cycle
            L = len(cyc)
            hole_pairs = {frozenset((cyc[i], cyc[(i + 1) % L])) for i in range(L)}
            others = [e for e in und.edges if frozenset(e) not in hole_pairs]
            for dirs in product((0, 1), repeat=L):
                edges = []
                for i in range(L):
                    a, b = cyc[i], cyc[(i + 1) % L]
                    edges.append((a, b) if dirs[i] == 0 else (b, a))
                for idx, (u, v) in enumerate(others):
                    flip = _draw(seed, f"atlas{gi}", idx * 1024 + sum(d << j for j, d in enumerate(dirs))) & 1
                    edges.append((v, u) if flip else (u, v))
                yield Digraph(n, tuple(edges))


def suite_flh_extraction(exhaustive_n: int = 7, samples: int = 10_000, seed: int = 0,
                         max_n: int = 10) -> VerificationReport:
    report = VerificationReport("flh-extraction", params={
        "exhaustive_n": exhaustive_n, "samples": samples, "seed": seed, "max_n": max_n})
    holes = 0
    raw_n = min(exhaustive_n, 5)
    for n in range(5, raw_n + 1):
        for G in all_oriented_graphs(n):
            report.instances_run += 1
            holes += _check_holes(G, report)
    for L in range(5, exhaustive_n + 1):
        for G in oriented_cycles(L):
            report.instances_run += 1
            holes += _check_holes(G, report)
    for G in atlas_hole_orientations(exhaustive_n, seed):
        report.instances_run += 1
        holes += _check_holes(G, report)
    for i in range(samples):
        s = seed * 1_000_003 + i
        n = 5 + _draw(s, "flh-n", 0) % (max_n - 4)
        p = _pick(s, "flh-p", 0, (0.25, 0.35, 0.45, 0.6))
        G = random_oriented(n, p, s)
        report.instances_run += 1
        holes += _check_holes(G, report, s)
    report.stats["disoriented_long_holes"] = holes
    return report


# -- perfection of acyclic FLH-free orientations ---------------------------------------

def suite_chvatal(n: int = 9, samples: int = 500, seed: int = 7) -> VerificationReport:
    report = VerificationReport("chvatal", params={"n": n, "samples": samples, "seed": seed})
    attempts = 0
    while report.instances_run < samples:
        s = seed * 1_000_003 + attempts
        attempts += 1
        if attempts > 200 * samples:
            report.complete = False
            break
        size = 4 + _draw(s, "chv-n", 0) % (n - 3)
        p = _pick(s, "chv-p", 0, (0.3, 0.45, 0.6, 0.75, 0.9))
        G = random_acyclic(size, p, s)
        if find_flh(G) is not None:
            continue
        report.instances_run += 1
        verdict = is_perfect_underlying(G, max_vertices=n)
        chi, _ = chromatic_number(G)
        omega, _ = clique_number(G)
        if not verdict.perfect:
            report.fail(G, "perfect", {"witness": list(verdict.witness), "chi": verdict.chi,
                                       "omega": verdict.omega}, s)
        elif chi != omega:
            report.fail(G, {"chi": omega}, {"chi": chi}, s)
    report.stats["attempts"] = attempts
    return report


# -- shift digraphs -------------------------------------------------------------------

def suite_shift_family(n_min: int = 3, n_max: int = 8) -> VerificationReport:
    report = VerificationReport("shift-family", params={"n_min": n_min, "n_max": n_max})
    frf = parse_pattern("p4:frf")
    for n in range(n_min, n_max + 1):
        G = shift_digraph(n)
        report.instances_run += 1
        omega, _ = clique_number(G)
        chi, col = chromatic_number(G)
        occ = find_induced(G, frf, limit=1)
        expected = math.ceil(math.log2(n))
        got = {"omega": omega, "chi": chi, "frf": bool(occ)}
        report.stats[str(n)] = got
        if omega != 2 or occ or chi != expected or not col.is_proper(G):
            report.fail(G, {"omega": 2, "chi": expected, "frf": False}, got)
    return report


# -- cyclic tournaments ------------------------------------------------------------

def _to_nx(G: Digraph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges)
    return g


def is_cyclic_tournament(H: Digraph) -> bool:
    """Isomorphism oracle against the circulant model."""
    m = (H.vertex_count - 1) // 2
    return DiGraphMatcher(_to_nx(H), _to_nx(cyclic_tournament(m))).is_isomorphic()


def suite_cyclic_recognizer(n: int = 7) -> VerificationReport:
    report = VerificationReport("cyclic-recognizer", params={"n": n})
    cyclic_count = 0
    tournaments = 0
    for H in enumerate_regular_tournaments(n):
        tournaments += 1
        iso = is_cyclic_tournament(H)
        cyclic_count += iso
        for v in H.vertices:
            report.instances_run += 1
            try:
                res = recognize_cyclic(H, v)
            except Exception as exc:
                report.fail(H, "ordering or 4-cycle", f"{type(exc).__name__}: {exc} (v={v})")
                continue
            if (res.ordering is None) == (res.four_cycle is None):
                report.fail(H, "exactly one outcome", f"v={v}")
            elif res.cyclic != iso:
                report.fail(H, {"cyclic": iso}, {"cyclic": res.cyclic, "v": v})
            elif res.four_cycle is not None:
                p, q, r, s = res.four_cycle
                ok = (H.has_edge(p, q) and H.has_edge(q, r) and H.has_edge(r, s) and H.has_edge(s, p)
                      and H.has_edge(v, p) and H.has_edge(v, r) and H.has_edge(q, v) and H.has_edge(s, v))
                if not ok:
                    report.fail(H, "alternating 4-cycle", list(res.four_cycle))
    report.stats.update({"tournaments": tournaments, "cyclic": cyclic_count})
    return report


# -- partition certificates --------------------------------------------------------

def _partition_instance(seed: int, idx: int, max_n: int) -> tuple[int, Digraph]:
    s = seed * 1_000_003 + idx
    n = 3 + _draw(s, "part-n", 0) % (max_n - 2)
    p = _pick(s, "part-p", 0, (0.2, 0.4, 0.6, 0.8, 1.0))
    return s, random_oriented(n, p, s)


def _failure_problems(G: Digraph, fail: SourceSinkFailure) -> list[str]:
    problems = []
    n, m = fail.params["n"], fail.params["m"]
    v = fail.vertex
    for fam, rows in ((fail.out_family, G.out_masks), (fail.in_family, G.in_masks)):
        if len(fam) < n:
            problems.append("family below n")
        seen: set[int] = set()
        for c in fam:
            if len(c) != m or brute_clique_number(G, c) != m or seen & set(c):
                problems.append(f"bad clique {c}")
            if any(not rows[v] >> x & 1 for x in c):
                problems.append(f"clique {c} leaves the neighbourhood of {v}")
            seen |= set(c)
    return problems


def suite_outnbrs(n: int = 10, samples: int = 200, seed: int = 11) -> VerificationReport:
    report = VerificationReport("outnbrs", params={"n": n, "samples": samples, "seed": seed})
    grid = [(k, m, nn) for k in (1, 2) for m in (1, 2) for nn in (1, 2, 3)]
    certs = fails = 0
    for i in range(samples):
        s, G = _partition_instance(seed, i, n)
        for k, m, nn in grid:
            report.instances_run += 1
            res = source_sink_partition(G, k, m, nn)
            if isinstance(res, SourceSinkFailure):
                fails += 1
                problems = _failure_problems(G, res)
            else:
                certs += 1
                problems = certificate_problems(G, res.to_json())
                if not res.verified:
                    problems.append("unverified certificate")
            if problems:
                report.fail(G, "valid output", {"params": [k, m, nn], "problems": problems}, s)
    report.stats.update({"certificates": certs, "failure_witnesses": fails})
    return report


HK_GRID = ((1, 1), (1, 2), (2, 1), (2, 2))


def suite_outorderable(n: int = 10, samples: int = 200, seed: int = 13) -> VerificationReport:
    report = VerificationReport("outorderable", params={"n": n, "samples": samples, "seed": seed})
    for i in range(samples):
        s, G = _partition_instance(seed, i, n)
        for h, k in HK_GRID:
            triple = robust_decomposition(G, h, k)
            for witness in (triple.P, triple.Q):
                if not witness.parts:
                    continue
                report.instances_run += 1
                cert = acyclic_partition(G, witness)
                problems = certificate_problems(G, cert.to_json())
                if problems:
                    report.fail(G, "valid certificate", {"h": h, "k": k, "problems": problems}, s)
    return report


def suite_robustpartition(n: int = 12, samples: int = 200, seed: int = 17) -> VerificationReport:
    report = VerificationReport("robustpartition", params={"n": n, "samples": samples, "seed": seed})
    nonempty_r = 0
    for i in range(samples):
        s, G = _partition_instance(seed, i, n)
        for h, k in HK_GRID:
            report.instances_run += 1
            triple = robust_decomposition(G, h, k)
            nonempty_r += bool(triple.R)
            problems = certificate_problems(G, triple.certificate(G.vertices).to_json())
            if problems:
                report.fail(G, "valid certificate", {"h": h, "k": k, "problems": problems}, s)
    report.stats["nonempty_R"] = nonempty_r
    return report


# -- userobust ---------------------------------------------------------------------

def planted_dense_instance(seed: int, max_n: int = 12) -> tuple[Digraph, list[int]]:
    """A tournament on up to ``max_n`` vertices whose first 7..9 vertices
    (after a seeded relabelling) carry a near-regular sub-tournament."""
    size = 7 + _draw(seed, "ur-size", 0) % 3
    extra = _draw(seed, "ur-extra", 0) % (max_n - size + 1)
    n = size + extra
    core = cyclic_tournament(size // 2) if size % 2 else _near_regular(size)
    edges = list(core.edges)
    for idx, (i, j) in enumerate(combinations(range(n), 2)):
        if j >= size:
            x = _draw(seed, "ur-edge", idx)
            edges.append((i, j) if x & 1 else (j, i))
    perm = list(range(n))
    perm.sort(key=lambda v: _draw(seed, "ur-perm", v))
    G = _relabel(Digraph(n, tuple(edges)), perm)
    return G, sorted(perm[v] for v in range(size))


def _near_regular(size: int) -> Digraph:
    base = cyclic_tournament((size - 1) // 2)
    # add a vertex beating the first half and losing to the rest
    extra = size - 1
    edges = list(base.edges) + [(extra, v) if v < extra // 2 else (v, extra) for v in range(extra)]
    return Digraph(size, tuple(edges))


def suite_userobust(n: int = 12, samples: int = 200, seed: int = 19, taus=(1, 2)) -> VerificationReport:
    report = VerificationReport("userobust", params={"n": n, "samples": samples, "seed": seed,
                                                      "taus": list(taus)})
    hyp = 0
    for i in range(samples):
        s = seed * 1_000_003 + i
        G, X = planted_dense_instance(s, n)
        for tau in taus:
            report.instances_run += 1
            verdict = check_userobust_instance(G, X, 1, tau)
            hyp += verdict.hypothesis
            if not verdict.holds:
                report.fail(G, "conclusion", {"X": X, "tau": tau}, s)
    report.stats["hypothesis_true"] = hyp
    return report


# -- layer inequality ------------------------------------------------------------------

def suite_layer_inequality(n: int = 9, samples: int = 300, seed: int = 23) -> VerificationReport:
    report = VerificationReport("layer-inequality", params={"n": n, "samples": samples, "seed": seed})
    attempts = 0
    while report.instances_run < samples:
        s = seed * 1_000_003 + attempts
        attempts += 1
        if attempts > 200 * samples:
            report.complete = False
            break
        size = 4 + _draw(s, "layer-n", 0) % (n - 3)
        p = _pick(s, "layer-p", 0, (0.2, 0.3, 0.4, 0.5))
        G = random_oriented(size, p, s)
        if clique_number(G)[0] > 2 or has_disoriented_long_hole(G):
            continue
        report.instances_run += 1
        tau_hat = small_clique_tau(G, 2)
        for z in G.vertices:
            prof = layer_chromatic_profile(G, z, 2, tau_hat)
            if not prof.all_hold:
                report.fail(G, "inequality at every layer", {"root": z, "layer_chi": list(prof.layer_chi),
                                                              "tau_hat": tau_hat}, s)
    report.stats["attempts"] = attempts
    return report


# -- colouring pipeline ----------------------------------------------------------------

def spread_instance(seed: int, max_n: int = 10) -> Digraph | None:
    """A seeded candidate 1-spread digraph: a tournament, possibly with a few
    pairs removed; ``None`` if the removal broke the spread property."""
    n = 3 + _draw(seed, "pipe-n", 0) % (max_n - 2)
    T = random_tournament(n, seed)
    drop = _draw(seed, "pipe-drop", 0) % 4
    edges = list(T.edges)
    for j in range(drop):
        if edges:
            edges.pop(_draw(seed, "pipe-pop", j) % len(edges))
    G = Digraph(n, tuple(edges), f"spread({n},{seed})")
    return G if is_lambda_spread(G, 1).verdict else None


# (k1, h) overrides; R can only be nonempty when chi(R) > h, so small h is
# what drives the robust branch at this scale
PIPELINE_GRID = ((None, None), (2, 1), (3, 2), (2, 2))


def suite_pipeline(n: int = 10, samples: int = 100, seed: int = 29, grid=PIPELINE_GRID) -> VerificationReport:
    report = VerificationReport("pipeline", params={"n": n, "samples": samples, "seed": seed,
                                                     "grid": [list(g) for g in grid]})
    attempts = 0
    routes: dict[str, int] = {}
    graphs = 0
    while graphs < samples:
        s = seed * 1_000_003 + attempts
        attempts += 1
        G = spread_instance(s, n)
        if G is None:
            continue
        graphs += 1
        omega, _ = clique_number(G)
        chi, _ = chromatic_number(G)
        for k1, h in grid:
            report.instances_run += 1
            params = ParamPack(kappa=omega, lam=1, k1=k1, h=h)
            try:
                res = color_spread(G, params)
            except BudgetExceeded:
                raise
            except Exception as exc:
                report.fail(G, "proper colouring", f"{type(exc).__name__}: {exc}", s)
                continue
            colors = res.to_json()["colors"]
            problems = coloring_problems(G, colors) + trace_problems(G, res)
            if res.coloring.color_count < chi:
                problems.append(f"{res.coloring.color_count} colours below chi={chi}")
            for entry in res.trace:
                key = f"{entry['theorem']}:{entry['route']}"
                routes[key] = routes.get(key, 0) + 1
            if problems:
                report.fail(G, "proper colouring", {"k1": k1, "h": h, "problems": problems}, s)
    report.stats.update({"graphs": graphs, "attempts": attempts, "routes": dict(sorted(routes.items()))})
    return report


# -- transitive-triangle-free robustness probe (statistics only) -----------------------

def triangle_blowup(sizes) -> Digraph:
    """Cyclic triangle with each vertex replaced by an independent set."""
    starts = [0, sizes[0], sizes[0] + sizes[1]]
    parts = [range(starts[i], starts[i] + sizes[i]) for i in range(3)]
    edges = [(u, v) for i in range(3) for u in parts[i] for v in parts[(i + 1) % 3]]
    return Digraph(sum(sizes), tuple(edges), "blowup" + "-".join(map(str, sizes)))


def suite_gettri_probe(n: int = 12, samples: int = 100, seed: int = 31, k_probe=(1, 2, 3, 4)) -> VerificationReport:
    """Record how often 1-spread digraphs without a transitive triangle fail
    (3*Lambda*tau, k)-robustness.  Nothing is asserted: the constant that makes
    the implication hold is far beyond desk scale, so failures stay empty."""
    report = VerificationReport("gettri-probe", params={"n": n, "samples": samples, "seed": seed,
                                                         "k_probe": list(k_probe)})
    lam_big = ParamPack(kappa=3).Lambda
    non_robust = {str(k): 0 for k in k_probe}
    whole_set = 0
    attempts = 0
    while report.instances_run < samples:
        s = seed * 1_000_003 + attempts
        attempts += 1
        if attempts > 200 * samples:
            report.complete = False
            break
        if attempts % 2:
            sizes = [1 + _draw(s, "tri-size", i) % max(1, n // 3) for i in range(3)]
            G = triangle_blowup(sizes)
            G = _relabel(G, sorted(G.vertices, key=lambda v: _draw(s, "tri-perm", v)))
        else:
            size = 6 + _draw(s, "tri-n", 0) % (n - 5)
            G = random_oriented(size, _pick(s, "tri-p", 0, (0.1, 0.2, 0.3)), s)
        if not G.edges or find_transitive_triangle(G) is not None or not is_lambda_spread(G, 1).verdict:
            continue
        report.instances_run += 1
        tau = small_clique_tau(G, clique_number(G)[0])
        h = 3 * lam_big * tau
        for k in k_probe:
            verdict = is_robust(G, h, k)
            if not verdict.robust:
                non_robust[str(k)] += 1
                whole_set += len(verdict.violating) == G.vertex_count
    report.stats.update(attempts=attempts, non_robust=non_robust, violator_is_whole_set=whole_set)
    return report


SUITES = {
    "flh-extraction": suite_flh_extraction,
    "chvatal": suite_chvatal,
    "shift-family": suite_shift_family,
    "cyclic-recognizer": suite_cyclic_recognizer,
    "outnbrs": suite_outnbrs,
    "outorderable": suite_outorderable,
    "robustpartition": suite_robustpartition,
    "userobust": suite_userobust,
    "layer-inequality": suite_layer_inequality,
    "pipeline": suite_pipeline,
    "gettri-probe": suite_gettri_probe,
}


def run_suite(name: str, **kwargs) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    start = time.perf_counter()
    report = SUITES[name](**kwargs)
    report.runtime = time.perf_counter() - start
    return report
