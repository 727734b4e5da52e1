"""Induced-subdigraph detection, spread certification and rich vertices."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .budget import BudgetExceeded, node_budget
from .constructions import oriented_path
from .core import Digraph, DigraphError, bits, mask_of
from .solvers import clique_number, cliques_of_size, max_stable_set, nonadjacent_biclique


@dataclass(frozen=True)
class Occurrence:
    pattern: Digraph
    host_vertices: tuple[int, ...]


@dataclass(frozen=True)
class SpreadReport:
    lam: int
    verdict: bool
    witness: tuple[int, tuple[int, ...], tuple[int, ...]] | None = None


@dataclass(frozen=True)
class RichWitness:
    v: int
    out_cliques: tuple[tuple[int, ...], ...]
    in_cliques: tuple[tuple[int, ...], ...]


FLH = oriented_path(4, "frr", "p4:frr")
TRANSITIVE_TRIANGLE = Digraph(3, ((0, 1), (0, 2), (1, 2)), "TT3")


def oriented_star_pattern(s: int, t: int) -> Digraph:
    """Centre 0, out-leaves 1..s, in-leaves s+1..s+t."""
    if s < 0 or t < 0:
        raise DigraphError("star degrees must be nonnegative")
    edges = [(0, i) for i in range(1, s + 1)] + [(i, 0) for i in range(s + 1, s + t + 1)]
    return Digraph(1 + s + t, tuple(edges), f"star:{s},{t}")


def parse_pattern(spec: str) -> Digraph:
    """Pattern shorthand: ``p4:frr`` style oriented paths or ``star:s,t``."""
    spec = spec.strip()
    m = re.fullmatch(r"p(\d+):([fr]*)", spec)
    if m:
        return oriented_path(int(m.group(1)), m.group(2), spec)
    m = re.fullmatch(r"star:(\d+),(\d+)", spec)
    if m:
        return oriented_star_pattern(int(m.group(1)), int(m.group(2)))
    raise DigraphError(f"unknown pattern {spec!r}")


def is_induced_occurrence(G: Digraph, H: Digraph, hosts) -> bool:
    hosts = list(hosts)
    if len(hosts) != H.vertex_count or len(set(hosts)) != len(hosts):
        return False
    if any(not 0 <= x < G.vertex_count for x in hosts):
        return False
    for p in H.vertices:
        for q in H.vertices:
            if p != q and H.has_edge(p, q) != G.has_edge(hosts[p], hosts[q]):
                return False
    return True


def find_induced(G: Digraph, H: Digraph, limit: int | None = None) -> list[Occurrence]:
    """Induced embeddings of H in G, in lexicographic order of host tuples.

    Pattern vertices are assigned in id order; each host domain is the
    intersection of the out-, in- or non-neighbour rows demanded by the
    already-placed pattern vertices.
    """
    p = H.vertex_count
    found: list[Occurrence] = []
    if limit is not None and limit <= 0:
        return found
    if p > G.vertex_count:
        return found
    # constraints[i] = [(q, kind)] for q < i; kind 1: q->i, 2: i->q, 0: none
    constraints = []
    for i in range(p):
        row = []
        for q in range(i):
            if H.has_edge(q, i):
                row.append((q, 1))
            elif H.has_edge(i, q):
                row.append((q, 2))
            else:
                row.append((q, 0))
        constraints.append(row)
    out_deg = [H.out_degree(i) for i in range(p)]
    in_deg = [H.in_degree(i) for i in range(p)]
    hosts = [0] * p
    full = G.all_mask
    Gout, Gin, Gadj = G.out_masks, G.in_masks, G.adj_masks

    def rec(i, used):
        if i == p:
            found.append(Occurrence(H, tuple(hosts)))
            return limit is not None and len(found) >= limit
        dom = full & ~used
        for q, kind in constraints[i]:
            hq = hosts[q]
            if kind == 1:
                dom &= Gout[hq]
            elif kind == 2:
                dom &= Gin[hq]
            else:
                dom &= ~Gadj[hq]
        while dom:
            low = dom & -dom
            x = low.bit_length() - 1
            dom ^= low
            if Gout[x].bit_count() < out_deg[i] or Gin[x].bit_count() < in_deg[i]:
                continue
            hosts[i] = x
            if rec(i + 1, used | low):
                return True
        return False

    rec(0, 0)
    return found


def find_flh(G: Digraph) -> Occurrence | None:
    """Lexicographically least induced a->b<-c<-d, by direct scan."""
    out, inn, adj = G.out_masks, G.in_masks, G.adj_masks
    for a in G.vertices:
        for b in bits(out[a]):
            for c in bits(inn[b] & ~adj[a] & ~(1 << a)):
                for d in bits(inn[c] & ~adj[a] & ~adj[b] & ~(1 << a) & ~(1 << b)):
                    return Occurrence(FLH, (a, b, c, d))
    return None


def is_lambda_spread(G: Digraph, lam: int) -> SpreadReport:
    """Check every vertex for a nonadjacent lam-lam pair across its out/in sides.

    The witness is taken at the smallest failing vertex, with the
    lexicographically least pair there.
    """
    if lam < 1:
        raise ValueError("lambda must be positive")
    for v in G.vertices:
        pair = nonadjacent_biclique(G, bits(G.out_masks[v]), bits(G.in_masks[v]), lam)
        if pair is not None:
            return SpreadReport(lam, False, (v, pair[0], pair[1]))
    return SpreadReport(lam, True)


def _disjoint_families(cliques, k, budget_box, allowed=None):
    """Yield k-sets of pairwise disjoint cliques, lexicographically."""
    pool = cliques if allowed is None else [c for c in cliques if allowed(c)]
    masks = [mask_of(c) for c in pool]

    def rec(start, chosen, used):
        if len(chosen) == k:
            yield list(chosen)
            return
        for idx in range(start, len(pool)):
            if len(pool) - idx < k - len(chosen):
                return
            budget_box[0] -= 1
            if budget_box[0] < 0:
                raise BudgetExceeded("rich-vertex search exceeded its node budget")
            if masks[idx] & used:
                continue
            chosen.append(pool[idx])
            yield from rec(idx + 1, chosen, used | masks[idx])
            chosen.pop()

    yield from rec(0, [], 0)


def find_rich_vertex(G: Digraph, k: int, m: int, budget: int | None = None) -> RichWitness | None:
    """Smallest (k, m)-rich vertex with the lexicographically first witness."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    box = [node_budget(budget)]
    adj = G.adj_masks
    for v in G.vertices:
        outs = cliques_of_size(G, G.out_masks[v], m)
        ins = cliques_of_size(G, G.in_masks[v], m)
        if len(outs) < k or len(ins) < k:
            continue
        for fam in _disjoint_families(outs, k, box):
            union = mask_of(x for c in fam for x in c)
            common = G.in_masks[v]
            for x in bits(union):
                common &= adj[x]
            for in_fam in _disjoint_families(ins, k, box, lambda c: mask_of(c) & ~common == 0):
                return RichWitness(v, tuple(fam), tuple(in_fam))
    return None


def find_transitive_triangle(G: Digraph) -> Occurrence | None:
    """Lexicographically least transitive triangle, hosts as (source, middle, sink)."""
    adj = G.adj_masks
    for u in G.vertices:
        for v in bits(adj[u] & ~((2 << u) - 1)):
            for w in bits(adj[u] & adj[v] & ~((2 << v) - 1)):
                tri = (u, v, w)
                indeg = {x: sum(G.has_edge(y, x) for y in tri if y != x) for x in tri}
                if 2 in indeg.values():
                    src = next(x for x in tri if indeg[x] == 0)
                    sink = next(x for x in tri if indeg[x] == 2)
                    mid = next(x for x in tri if indeg[x] == 1)
                    return Occurrence(TRANSITIVE_TRIANGLE, (src, mid, sink))
    return None


def star_from_spread_witness(G: Digraph, witness, s: int, t: int, kappa: int):
    """Turn a failed-spread witness (v, A, B) into a big clique or an induced star.

    Returns ``("clique", vertices)`` for a (kappa+1)-clique inside A or B,
    ``("star", Occurrence)`` when A has a stable s-set and B a stable t-set,
    or ``None`` when neither is present (A, B below the Ramsey size).
    """
    v, A, B = witness
    for side in (A, B):
        size, clique = clique_number(G, side)
        if size >= kappa + 1:
            return ("clique", tuple(sorted(clique.vertices))[: kappa + 1])
    stable_a = max_stable_set(G, A)
    stable_b = max_stable_set(G, B)
    if len(stable_a) >= s and len(stable_b) >= t:
        hosts = (v,) + stable_a[:s] + stable_b[:t]
        star = oriented_star_pattern(s, t)
        if not is_induced_occurrence(G, star, hosts):
            raise RuntimeError(f"star assembled from spread witness is not induced: {hosts}")
        return ("star", Occurrence(star, hosts))
    return None
