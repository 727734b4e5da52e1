"""Certified partition algorithms and the colouring pipeline for spread digraphs.

Every decomposition checks its own output with exact oracles before
returning it.  A failed check raises ``CertificateError``: that always
means a bug here, never a property of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .budget import DEFAULT_ROBUST_VERTEX_LIMIT, BudgetExceeded, node_budget
from .core import Digraph, acyclicity, bits, induced_subdigraph, mask_of, reverse
from .patterns import RichWitness, is_lambda_spread
from .solvers import (
    Coloring,
    bigramsey_search,
    chromatic_at_most,
    chromatic_number,
    clique_number,
    cliques_of_size,
    degeneracy_coloring,
)
from . import kernels


class CertificateError(RuntimeError):
    """A decomposition failed its own verification."""


class PreconditionError(ValueError):
    """The input does not meet an operation's stated hypothesis."""


# -- parameters -----------------------------------------------------------------

@dataclass(frozen=True)
class ParamPack:
    """Numeric knobs of the colouring argument.

    The Ramsey-sized constants are not computable, so ``n`` (clique-family
    size), ``k`` (richness width used in the odd-clique step) and ``k1`` (the
    robustness threshold) are plain inputs with small defaults.  ``h``
    defaults to 4 * Lambda * tau and ``k1`` to max(8, 5 * Lambda).
    """

    kappa: int
    lam: int = 1
    tau: int = 1
    n: int = 3
    k: int = 1
    k1: int | None = None
    h: int | None = None
    budget: int | None = None

    def __post_init__(self):
        if self.kappa < 0 or self.lam < 0 or self.tau < 0:
            raise ValueError("kappa, lambda and tau must be nonnegative")
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")

    @property
    def Lambda(self) -> int:
        return 2 * self.lam * self.lam + self.lam

    @property
    def robust_h(self) -> int:
        return self.h if self.h is not None else 4 * self.Lambda * self.tau

    @property
    def robust_k(self) -> int:
        return self.k1 if self.k1 is not None else max(8, 5 * self.Lambda)

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa,
            "lambda": self.lam,
            "tau": self.tau,
            "Lambda": self.Lambda,
            "n": self.n,
            "k": self.k,
            "k1": self.robust_k,
            "h": self.robust_h,
        }


# -- certificates -----------------------------------------------------------------

@dataclass
class Part:
    vertices: tuple[int, ...]
    property: str
    verified: bool = False
    role: str | None = None

    def to_json(self) -> dict:
        out = {"vertices": list(self.vertices), "property": self.property, "verified": self.verified}
        if self.role is not None:
            out["role"] = self.role
        return out


@dataclass
class PartitionCertificate:
    theorem_tag: str
    ground_set: tuple[int, ...]
    parts: list[Part]
    params: dict
    trace: list[dict] = field(default_factory=list)
    verified: bool = False

    def part_sets(self) -> list[tuple[int, ...]]:
        return [p.vertices for p in self.parts]

    def to_json(self) -> dict:
        return {
            "theorem_tag": self.theorem_tag,
            "ground_set": list(self.ground_set),
            "parts": [p.to_json() for p in self.parts],
            "params": dict(self.params),
            "trace": list(self.trace),
            "verified": self.verified,
        }


def _check_partition(ground: Iterable[int], parts: Iterable[Iterable[int]]) -> None:
    ground = sorted(ground)
    seen: list[int] = []
    for p in parts:
        seen.extend(p)
    if sorted(seen) != ground:
        raise CertificateError("parts do not partition the ground set")


def has_sourced_clique(G: Digraph, verts: Iterable[int], size: int, sink: bool = False) -> tuple[int, ...] | None:
    """A ``size``-clique inside ``verts`` with a source (or a sink), if any."""
    rows = G.in_masks if sink else G.out_masks
    for clique in cliques_of_size(G, mask_of(verts), size):
        cm = mask_of(clique)
        for x in clique:
            if rows[x] & cm == cm & ~(1 << x):
                return clique
    return None


# -- robustness ----------------------------------------------------------------------

@dataclass(frozen=True)
class RobustVerdict:
    robust: bool
    violating: tuple[int, ...] | None = None


def is_robust(G: Digraph, h: int, k: int, max_vertices: int = DEFAULT_ROBUST_VERTEX_LIMIT,
              budget: int | None = None) -> RobustVerdict:
    """(h, k)-robustness by a full subset sweep (size, then lexicographic)."""
    n = G.vertex_count
    if n > max_vertices:
        raise BudgetExceeded(f"robustness check limited to {max_vertices} vertices, got {n}")
    z = kernels.robust_violation(G.out_masks, G.in_masks, G.adj_masks, n, h, k, node_budget(budget))
    if z == -1:
        return RobustVerdict(True)
    return RobustVerdict(False, tuple(bits(z)))


@dataclass
class OrderableWitness:
    """Ordered parts, each h-colourable, with each vertex having at most k-1
    out-neighbours (``direction="out"``) or in-neighbours (``"in"``) in later parts."""

    parts: list[tuple[int, ...]]
    h: int
    k: int
    colourings: list[Coloring]
    direction: str = "out"

    @property
    def vertices(self) -> list[int]:
        return sorted(v for p in self.parts for v in p)


def orderable_problems(G: Digraph, W: OrderableWitness) -> list[str]:
    problems = []
    rows = G.out_masks if W.direction == "out" else G.in_masks
    later = 0
    for i in range(len(W.parts) - 1, -1, -1):
        part = W.parts[i]
        col = W.colourings[i]
        if sorted(col.colors) != sorted(part) or col.color_count > W.h or not col.is_proper(G):
            problems.append(f"part {i} lacks a proper {W.h}-colouring")
        for v in part:
            if (rows[v] & later).bit_count() > W.k - 1:
                problems.append(f"vertex {v} of part {i} has >= {W.k} {W.direction}-neighbours later")
        later |= mask_of(part)
    return problems


@dataclass
class RobustTriple:
    P: OrderableWitness
    Q: OrderableWitness
    R: tuple[int, ...]
    h: int
    k: int
    verified: bool = False
    steps: list[dict] = field(default_factory=list)

    def certificate(self, ground: Iterable[int]) -> PartitionCertificate:
        parts = [Part(p, f"chromatic-bound({self.h})", self.verified, "P") for p in self.P.parts]
        parts += [Part(q, f"chromatic-bound({self.h})", self.verified, "Q") for q in self.Q.parts]
        parts.append(Part(self.R, f"robust({self.h},{self.k})", self.verified, "R"))
        return PartitionCertificate(
            "robustpartition", tuple(sorted(ground)), parts, {"h": self.h, "k": self.k},
            list(self.steps), self.verified,
        )


def robust_decomposition(G: Digraph, h: int, k: int, budget: int | None = None,
                         max_vertices: int = DEFAULT_ROBUST_VERTEX_LIMIT) -> RobustTriple:
    """Split V(G) into an out-orderable P, an in-orderable Q and a robust R.

    Repeatedly take the first violating Z of the remaining digraph; vertices
    of Z with fewer than k out-neighbours outside Z join the next out-part,
    the rest join the next in-part.
    """
    remaining = list(G.vertices)
    P_parts: list[tuple[int, ...]] = []
    Q_parts: list[tuple[int, ...]] = []
    steps = []
    while remaining:
        sub, relabel = induced_subdigraph(G, remaining)
        verdict = is_robust(sub, h, k, max_vertices, budget)
        if verdict.robust:
            break
        back = {new: old for old, new in relabel.items()}
        Z = [back[x] for x in verdict.violating]
        outside = mask_of(remaining) & ~mask_of(Z)
        X1 = tuple(v for v in Z if (G.out_masks[v] & outside).bit_count() < k)
        Y1 = tuple(v for v in Z if v not in X1)
        if X1:
            P_parts.append(X1)
        if Y1:
            Q_parts.append(Y1)
        steps.append({"theorem": "robustpartition", "Z": Z, "X": list(X1), "Y": list(Y1)})
        zm = mask_of(Z)
        remaining = [v for v in remaining if not zm >> v & 1]
    R = tuple(remaining)

    def witness(parts, direction):
        cols = []
        for part in parts:
            col = chromatic_at_most(G, part, h, budget)
            if col is None:
                raise CertificateError(f"part {part} is not {h}-colourable")
            cols.append(col)
        return OrderableWitness(parts, h, k, cols, direction)

    triple = RobustTriple(witness(P_parts, "out"), witness(Q_parts, "in"), R, h, k, steps=steps)
    _check_partition(G.vertices, P_parts + Q_parts + [R])
    problems = orderable_problems(G, triple.P) + orderable_problems(G, triple.Q)
    if problems:
        raise CertificateError("; ".join(problems))
    if R:
        subR, _ = induced_subdigraph(G, R)
        if not is_robust(subR, h, k, max_vertices, budget).robust:
            raise CertificateError("R is not robust")
    triple.verified = True
    return triple


# -- clique families and the source/sink partition -------------------------------------

@dataclass(frozen=True)
class CliqueFamily:
    cliques: tuple[tuple[int, ...], ...]
    reached: bool
    mode: str  # "exact" or "greedy"

    @property
    def union(self) -> int:
        return mask_of(x for c in self.cliques for x in c)


def disjoint_clique_family(G: Digraph, S: Iterable[int], m: int, target: int,
                           budget: int | None = None) -> CliqueFamily:
    """A maximal family of pairwise disjoint m-cliques inside S.

    Exact search for ``target`` members; when none exists the family returned
    is a maximum one.  If the search exhausts its budget the greedy
    lexicographic maximal family is used and ``mode`` says so.
    """
    if m < 1:
        raise ValueError("clique size must be positive")
    smask = mask_of(S)
    cliques = cliques_of_size(G, smask, m)
    masks = [mask_of(c) for c in cliques]
    limit = node_budget(budget)
    nodes = 0
    best: list[int] = []

    def rec(start, chosen, used):
        nonlocal best, nodes
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= target:
            return True
        if len(chosen) + (smask & ~used).bit_count() // m <= len(best):
            return False
        for idx in range(start, len(cliques)):
            if masks[idx] & used:
                continue
            nodes += 1
            if nodes > limit:
                raise BudgetExceeded("clique packing exceeded its budget")
            chosen.append(idx)
            if rec(idx + 1, chosen, used | masks[idx]):
                return True
            chosen.pop()
        return False

    mode = "exact"
    try:
        rec(0, [], 0)
    except BudgetExceeded:
        mode = "greedy"
        best = []
    used = 0
    for idx in best:
        used |= masks[idx]
    chosen = list(best)
    for idx in range(len(cliques)):
        if idx not in chosen and not masks[idx] & used:
            chosen.append(idx)
            used |= masks[idx]
    family = tuple(cliques[i] for i in sorted(chosen))
    return CliqueFamily(family, len(family) >= target, mode)


@dataclass
class SourceSinkFailure:
    """Some vertex has ``n`` disjoint m-cliques on both sides."""

    vertex: int
    out_family: tuple[tuple[int, ...], ...]
    in_family: tuple[tuple[int, ...], ...]
    failing_vertices: tuple[int, ...]
    params: dict

    def classify(self, G: Digraph, k: int, lam: int):
        """Interpret the families through the bipartite Ramsey search.

        Returns ("rich", RichWitness), ("not-spread", (A, B)) or
        ("insufficient-n", None).
        """
        n = self.params["n"]
        res = bigramsey_search(G, self.out_family[:n], self.in_family[:n], k, lam)
        if res.kind == "complete":
            return "rich", RichWitness(
                self.vertex,
                tuple(self.out_family[i] for i in res.I),
                tuple(self.in_family[j] for j in res.J),
            )
        if res.kind == "nonadjacent":
            return "not-spread", (res.A, res.B)
        return "insufficient-n", None

    def to_json(self) -> dict:
        return {
            "failure": "clique-families",
            "vertex": self.vertex,
            "out_family": [list(c) for c in self.out_family],
            "in_family": [list(c) for c in self.in_family],
            "failing_vertices": list(self.failing_vertices),
            "params": dict(self.params),
        }


def _aux_colour_classes(G: Digraph, side: list[int], families: dict[int, CliqueFamily]) -> list[tuple[int, ...]]:
    sm = mask_of(side)
    rows = [0] * G.vertex_count
    for v in side:
        heads = families[v].union & sm
        rows[v] |= heads
        for w in bits(heads):
            rows[w] |= 1 << v
    colour = degeneracy_coloring(rows, side)
    count = max(colour.values(), default=-1) + 1
    classes: list[list[int]] = [[] for _ in range(count)]
    for v in sorted(colour):
        classes[colour[v]].append(v)
    return [tuple(c) for c in classes]


def source_sink_partition(G: Digraph, k: int, m: int, n: int,
                          budget: int | None = None) -> PartitionCertificate | SourceSinkFailure:
    """Partition into at most 4nm parts, each free of sourced or of sinked (m+1)-cliques.

    P holds vertices whose out-neighbourhood has no n disjoint m-cliques, Q
    likewise for in-neighbourhoods.  If some vertex is in neither, the two
    families are returned as a failure.  Otherwise P and Q \\ P are each
    split by a degeneracy colouring of the auxiliary digraph joining v to the
    members of its maximal clique family.
    """
    if m < 1 or n < 1 or k < 1:
        raise ValueError("k, m and n must be positive")
    params = {"k": k, "m": m, "n": n}
    out_f = {v: disjoint_clique_family(G, bits(G.out_masks[v]), m, n, budget) for v in G.vertices}
    in_f = {v: disjoint_clique_family(G, bits(G.in_masks[v]), m, n, budget) for v in G.vertices}
    P = [v for v in G.vertices if not out_f[v].reached]
    Q = [v for v in G.vertices if not in_f[v].reached]
    pset = set(P)
    failing = tuple(v for v in G.vertices if v not in pset and in_f[v].reached)
    if failing:
        v = failing[0]
        return SourceSinkFailure(v, out_f[v].cliques, in_f[v].cliques, failing, params)
    Qp = [v for v in Q if v not in pset]
    p_classes = _aux_colour_classes(G, P, out_f) if P else []
    q_classes = _aux_colour_classes(G, Qp, in_f) if Qp else []
    if len(p_classes) > 2 * n * m or len(q_classes) > 2 * n * m:
        raise CertificateError("auxiliary digraph needed more than 2nm colours")
    parts = [Part(c, f"source-free({m + 1})") for c in p_classes]
    parts += [Part(c, f"sink-free({m + 1})") for c in q_classes]
    _check_partition(G.vertices, [p.vertices for p in parts])
    for part in parts:
        sink = part.property.startswith("sink")
        bad = has_sourced_clique(G, part.vertices, m + 1, sink)
        if bad is not None:
            raise CertificateError(f"part {part.vertices} has {part.property} violated by {bad}")
        part.verified = True
    modes = sorted({f.mode for f in list(out_f.values()) + list(in_f.values())})
    trace = [{"theorem": "outnbrs", "P": P, "Q": Q, "packing": modes or ["exact"]}]
    return PartitionCertificate("outnbrs", tuple(G.vertices), parts, params, trace, True)


def acyclic_partition(G: Digraph, witness: OrderableWitness) -> PartitionCertificate:
    """At most hk acyclic sets from an (h, k)-out- or in-orderable witness.

    Colour classes of the per-part colourings are merged into Y_1..Y_h; in
    each Y_j the auxiliary graph J is (k-1)-degenerate along the part order,
    so colouring in reverse part order uses at most k colours.
    """
    problems = orderable_problems(G, witness)
    if problems:
        raise PreconditionError("invalid orderable witness: " + "; ".join(problems))
    H = G if witness.direction == "out" else reverse(G)
    h, k = witness.h, witness.k
    part_of = {v: i for i, part in enumerate(witness.parts) for v in part}
    ground = sorted(part_of)
    gm = mask_of(ground)
    jrows = [0] * G.vertex_count
    for u, v in H.edges:
        if gm >> u & 1 and gm >> v & 1 and part_of[u] <= part_of[v]:
            jrows[u] |= 1 << v
            jrows[v] |= 1 << u
    classes: dict[tuple[int, int], list[int]] = {}
    for j in range(h):
        Y = [v for i, part in enumerate(witness.parts) for v in part
             if witness.colourings[i].colors[v] == j]
        colour: dict[int, int] = {}
        for v in sorted(Y, key=lambda x: (part_of[x], x), reverse=True):
            used = {colour[w] for w in bits(jrows[v]) if w in colour}
            c = 0
            while c in used:
                c += 1
            if c >= k:
                raise CertificateError(f"vertex {v} needs colour {c} >= k={k} in class {j}")
            colour[v] = c
        for v, c in colour.items():
            classes.setdefault((j, c), []).append(v)
    sets = [tuple(sorted(classes[key])) for key in sorted(classes)]
    if len(sets) > h * k:
        raise CertificateError("more than hk acyclic sets")
    parts = []
    for s in sets:
        if not acyclicity(G, mask_of(s)).acyclic:
            raise CertificateError(f"set {s} is not acyclic")
        parts.append(Part(s, "acyclic", True))
    _check_partition(ground, sets)
    return PartitionCertificate(
        "outorderable", tuple(ground), parts,
        {"h": h, "k": k, "direction": witness.direction}, [], True,
    )


# -- userobust -------------------------------------------------------------------------

@dataclass(frozen=True)
class UserobustVerdict:
    hypothesis: bool
    conclusion: bool
    spread: bool
    dense: bool

    @property
    def holds(self) -> bool:
        return (not self.hypothesis) or self.conclusion


def check_userobust_instance(G: Digraph, X: Iterable[int], lam: int, tau: int,
                             budget: int | None = None) -> UserobustVerdict:
    """Evaluate both sides of: spread G with every vertex of X having Lambda
    out- and in-neighbours in X is not (|X| tau, |X| + Lambda)-robust."""
    X = sorted(set(X))
    Lam = 2 * lam * lam + lam
    xm = mask_of(X)
    spread = is_lambda_spread(G, lam).verdict if lam >= 1 else G.vertex_count == 0
    dense = bool(X) and all(
        (G.out_masks[v] & xm).bit_count() >= Lam and (G.in_masks[v] & xm).bit_count() >= Lam
        for v in X
    )
    conclusion = not is_robust(G, len(X) * tau, len(X) + Lam, budget=budget).robust
    return UserobustVerdict(spread and dense, conclusion, spread, dense)


# -- colouring pipeline ---------------------------------------------------------------

@dataclass
class ColoringResult:
    coloring: Coloring
    trace: list[dict]
    params: dict

    def to_json(self) -> dict:
        n = max(self.coloring.colors, default=-1) + 1
        return {
            "color_count": self.coloring.color_count,
            "colors": [self.coloring.colors.get(v) for v in range(n)],
            "proper": True,
            "params": dict(self.params),
            "trace": list(self.trace),
        }


def _assign(trace, theorem, verts, kappa, route, colouring: dict[int, int], note=None) -> dict[int, int]:
    entry = {
        "theorem": theorem,
        "vertices": sorted(verts),
        "kappa": kappa,
        "route": route,
        "assigns": True,
        "colors": max(colouring.values(), default=-1) + 1,
    }
    if note:
        entry["note"] = note
    trace.append(entry)
    return colouring


def _exact(G, verts, budget):
    _, col = chromatic_number(G, verts, budget)
    return dict(col.colors)


def _stack(pieces: list[dict[int, int]]) -> dict[int, int]:
    out: dict[int, int] = {}
    offset = 0
    for piece in pieces:
        if not piece:
            continue
        for v, c in piece.items():
            out[v] = offset + c
        offset += max(piece.values()) + 1
    return out


def _sub_partition(G: Digraph, verts, k, m, n, budget):
    sub, relabel = induced_subdigraph(G, verts)
    back = {new: old for old, new in relabel.items()}
    res = source_sink_partition(sub, k, m, n, budget)
    if isinstance(res, SourceSinkFailure):
        return None, res, back
    return [tuple(back[x] for x in part.vertices) for part in res.parts], res, back


def _check_smaller_clique(G, part, kappa, budget):
    omega, _ = clique_number(G, part, budget)
    if omega >= kappa:
        raise CertificateError(f"part {part} keeps clique number {omega} >= {kappa}")


def _acyclic_colour(G: Digraph, verts, kappa: int, params: ParamPack, trace) -> dict[int, int]:
    verts = sorted(verts)
    if not verts:
        return {}
    if kappa <= 1:
        if any(G.adj_masks[v] & mask_of(verts) for v in verts):
            raise CertificateError(f"clique bound 1 but {verts} spans an edge")
        return _assign(trace, "acyclicstars", verts, kappa, "base", {v: 0 for v in verts})
    parts, res, back = _sub_partition(G, verts, 1, kappa - 1, params.n, params.budget)
    if parts is None:
        return _assign(trace, "acyclicstars", verts, kappa, "fallback", _exact(G, verts, params.budget),
                       f"clique families of size n={params.n} at vertex {back[res.vertex]}")
    trace.append({"theorem": "acyclicstars", "vertices": verts, "kappa": kappa, "route": "proof",
                  "assigns": False, "parts": len(parts)})
    pieces = []
    for part in parts:
        _check_smaller_clique(G, part, kappa, params.budget)
        pieces.append(_acyclic_colour(G, part, kappa - 1, params, trace))
    return _stack(pieces)


def _finish(G: Digraph, verts, colouring: dict[int, int], trace, params: ParamPack) -> ColoringResult:
    if sorted(colouring) != sorted(verts):
        raise CertificateError("colouring does not cover the vertex set")
    for u, v in G.edges:
        if u in colouring and v in colouring and colouring[u] == colouring[v]:
            raise CertificateError(f"edge {u}->{v} is monochromatic")
    relabel: dict[int, int] = {}
    out = {}
    for v in sorted(colouring):
        out[v] = relabel.setdefault(colouring[v], len(relabel))
    return ColoringResult(Coloring(out, len(relabel)), trace, params.to_json())


def color_acyclic_spread(G: Digraph, params: ParamPack) -> ColoringResult:
    """Colour an acyclic digraph by recursing on the clique bound.

    Each round partitions with (k=1, m=kappa-1); acyclicity gives every
    kappa-clique a source and a sink, so each part has smaller clique number.
    Blocked rounds fall back to the exact solver and say so in the trace.
    """
    if not acyclicity(G).acyclic:
        raise PreconditionError("digraph is not acyclic")
    omega, _ = clique_number(G, budget=params.budget)
    if omega > params.kappa:
        raise PreconditionError(f"clique number {omega} exceeds kappa={params.kappa}")
    trace: list[dict] = []
    colouring = _acyclic_colour(G, G.vertices, params.kappa, params, trace)
    return _finish(G, G.vertices, colouring, trace, params)


def _spread_colour(G: Digraph, verts, kappa: int, params: ParamPack, trace) -> dict[int, int]:
    verts = sorted(verts)
    if not verts:
        return {}
    if kappa <= 1:
        if any(G.adj_masks[v] & mask_of(verts) for v in verts):
            raise CertificateError(f"clique bound 1 but {verts} spans an edge")
        return _assign(trace, "stars", verts, kappa, "base", {v: 0 for v in verts})
    sub, relabel = induced_subdigraph(G, verts)
    back = {new: old for old, new in relabel.items()}
    h, k1 = params.robust_h, params.robust_k
    triple = robust_decomposition(sub, h, k1, params.budget)
    R = [back[x] for x in triple.R]
    trace.append({"theorem": "robustpartition", "vertices": verts, "kappa": kappa, "route": "proof",
                  "assigns": False, "P": [back[x] for x in triple.P.vertices],
                  "Q": [back[x] for x in triple.Q.vertices], "R": R})
    pieces = []
    for witness in (triple.P, triple.Q):
        if not witness.parts:
            continue
        acyc = acyclic_partition(sub, witness)
        trace.append({"theorem": "outorderable", "vertices": sorted(back[x] for x in acyc.ground_set),
                      "kappa": kappa, "route": "proof", "assigns": False, "direction": witness.direction,
                      "parts": len(acyc.parts)})
        for part in acyc.parts:
            pieces.append(_acyclic_colour(G, [back[x] for x in part.vertices], kappa, params, trace))
    if R:
        pieces.append(_robust_colour(G, R, kappa, params, trace))
    return _stack(pieces)


def _robust_colour(G: Digraph, R, kappa: int, params: ParamPack, trace) -> dict[int, int]:
    half = math.ceil(kappa / 2)
    parts, res, back = _sub_partition(G, R, 1, half, params.n, params.budget)
    if parts is None:
        return _assign(trace, "sinks", R, kappa, "fallback", _exact(G, R, params.budget),
                       f"clique families of size n={params.n} at vertex {back[res.vertex]}")
    trace.append({"theorem": "outnbrs", "vertices": sorted(R), "kappa": kappa, "route": "proof",
                  "assigns": False, "parts": len(parts)})
    pieces = []
    for Y in parts:
        if kappa % 2 == 0:
            _check_smaller_clique(G, Y, kappa, params.budget)
            pieces.append(_spread_colour(G, Y, kappa - 1, params, trace))
            continue
        m = kappa // 2
        inner, res2, back2 = _sub_partition(G, Y, params.k, m, params.n, params.budget)
        if inner is None:
            pieces.append(_assign(trace, "sinks", Y, kappa, "fallback", _exact(G, Y, params.budget),
                                  f"clique families of size n={params.n} at vertex {back2[res2.vertex]}"))
            continue
        trace.append({"theorem": "sinks", "vertices": sorted(Y), "kappa": kappa, "route": "proof",
                      "assigns": False, "parts": len(inner)})
        for Yp in inner:
            _check_smaller_clique(G, Yp, kappa, params.budget)
            pieces.append(_spread_colour(G, Yp, kappa - 1, params, trace))
    return _stack(pieces)


def color_spread(G: Digraph, params: ParamPack) -> ColoringResult:
    """Colour a lambda-spread digraph with clique number at most kappa.

    Robust partition; the orderable sides become acyclic sets coloured by
    ``color_acyclic_spread``'s recursion; the robust side is split by the
    source/sink partition and recursed on with a smaller clique bound.
    Any step whose hypotheses cannot be certified at the given parameters is
    coloured exactly and marked ``fallback`` in the trace.
    """
    if params.lam < 1:
        raise PreconditionError("lambda must be at least 1")
    report = is_lambda_spread(G, params.lam)
    if not report.verdict:
        raise PreconditionError(f"digraph is not {params.lam}-spread: witness {report.witness}")
    omega, _ = clique_number(G, budget=params.budget)
    if omega > params.kappa:
        raise PreconditionError(f"clique number {omega} exceeds kappa={params.kappa}")
    trace: list[dict] = []
    colouring = _spread_colour(G, G.vertices, params.kappa, params, trace)
    return _finish(G, G.vertices, colouring, trace, params)


def trace_problems(G: Digraph, result: ColoringResult) -> list[str]:
    """Structural checks on a pipeline trace: assigning entries partition V
    and each uses the colours it claims."""
    problems = []
    seen: list[int] = []
    for i, entry in enumerate(result.trace):
        for key in ("theorem", "vertices", "kappa", "route", "assigns"):
            if key not in entry:
                problems.append(f"entry {i} lacks {key}")
        if entry.get("route") not in ("proof", "fallback", "base"):
            problems.append(f"entry {i} has unknown route {entry.get('route')}")
        if entry.get("assigns"):
            seen.extend(entry["vertices"])
            used = {result.coloring.colors[v] for v in entry["vertices"]}
            if len(used) > entry["colors"]:
                problems.append(f"entry {i} uses {len(used)} colours, claims {entry['colors']}")
    if sorted(seen) != list(G.vertices):
        problems.append("assigning trace entries do not partition the vertex set")
    return problems
