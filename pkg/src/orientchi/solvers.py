"""Exact exponential-time solvers used as ground-truth oracles.

All results are deterministic: witnesses depend only on the input digraph
and the vertex numbering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import kernels
from .budget import DEFAULT_PERFECT_VERTEX_LIMIT, BudgetExceeded, node_budget
from .core import Digraph, bits, mask_of


@dataclass(frozen=True)
class Coloring:
    colors: dict[int, int]
    color_count: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.color_count)]
        for v in sorted(self.colors):
            out[self.colors[v]].append(v)
        return out

    def is_proper(self, G: Digraph) -> bool:
        if set(self.colors.values()) != set(range(self.color_count)):
            return False
        return all(
            self.colors[u] != self.colors[v]
            for u, v in G.edges
            if u in self.colors and v in self.colors
        )


@dataclass(frozen=True)
class CliqueWitness:
    vertices: frozenset[int]


@dataclass(frozen=True)
class PerfectionVerdict:
    perfect: bool
    witness: tuple[int, ...] | None = None
    chi: int | None = None
    omega: int | None = None


@dataclass(frozen=True)
class BigramseyResult:
    """Outcome of ``bigramsey_search``.

    ``kind`` is ``"nonadjacent"`` (``A``/``B`` set), ``"complete"``
    (``I``/``J`` set, 0-based indices) or ``"neither"``.
    """

    kind: str
    A: tuple[int, ...] = ()
    B: tuple[int, ...] = ()
    I: tuple[int, ...] = ()
    J: tuple[int, ...] = ()
    notes: list[str] = field(default_factory=list)


def _verts(G: Digraph, within) -> list[int]:
    if within is None:
        return list(G.vertices)
    return sorted(set(within))


def clique_number(G: Digraph, within: Iterable[int] | None = None,
                  budget: int | None = None) -> tuple[int, CliqueWitness]:
    verts = _verts(G, within)
    mask, _ = kernels.max_clique(G.adj_masks, mask_of(verts), node_budget(budget))
    found = frozenset(bits(mask))
    return len(found), CliqueWitness(found)


def dsatur_greedy(G: Digraph, verts: Sequence[int]) -> dict[int, int]:
    """Greedy DSATUR colouring (upper bound only)."""
    adj = G.adj_masks
    remaining = mask_of(verts)
    colour: dict[int, int] = {}
    classes: list[int] = []
    while remaining:
        best, best_key = -1, None
        for v in bits(remaining):
            sat = sum(1 for c in classes if c & adj[v])
            key = (sat, (adj[v] & remaining).bit_count())
            if best_key is None or key > best_key:
                best, best_key = v, key
        for c, cls in enumerate(classes):
            if not cls & adj[best]:
                classes[c] |= 1 << best
                colour[best] = c
                break
        else:
            colour[best] = len(classes)
            classes.append(1 << best)
        remaining &= ~(1 << best)
    return colour


def degeneracy_coloring(adj: Sequence[int], verts: Iterable[int]) -> dict[int, int]:
    """Greedy colouring along a smallest-last (degeneracy) order.

    Uses at most d+1 colours where d is the degeneracy of the graph on
    ``verts`` given by the bitset rows ``adj``.
    """
    remaining = mask_of(verts)
    removal = []
    while remaining:
        v = min(bits(remaining), key=lambda x: ((adj[x] & remaining).bit_count(), x))
        removal.append(v)
        remaining &= ~(1 << v)
    colour: dict[int, int] = {}
    for v in reversed(removal):
        used = {colour[w] for w in bits(adj[v]) if w in colour}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    return colour


def _compact(colour: dict[int, int]) -> Coloring:
    relabel: dict[int, int] = {}
    out = {}
    for v in sorted(colour):
        c = colour[v]
        if c not in relabel:
            relabel[c] = len(relabel)
        out[v] = relabel[c]
    return Coloring(out, len(relabel))


def chromatic_at_most(G: Digraph, verts: Iterable[int], h: int,
                      budget: int | None = None) -> Coloring | None:
    """A proper colouring of ``G[verts]`` with at most ``h`` colours, if one exists."""
    verts = sorted(set(verts))
    if not verts:
        return Coloring({}, 0)
    if h <= 0:
        return None
    res = kernels.k_coloring(G.adj_masks, verts, h, (), node_budget(budget))
    if res is None:
        return None
    return _compact(dict(zip(verts, res)))


def chromatic_number(G: Digraph, within: Iterable[int] | None = None,
                     budget: int | None = None) -> tuple[int, Coloring]:
    """Exact chromatic number of the underlying graph (of ``G[within]``)."""
    verts = _verts(G, within)
    if not verts:
        return 0, Coloring({}, 0)
    budget = node_budget(budget)
    omega, clique = clique_number(G, verts, budget)
    greedy = dsatur_greedy(G, verts)
    upper = max(greedy.values()) + 1
    seed = sorted(clique.vertices)
    for k in range(omega, upper):
        res = kernels.k_coloring(G.adj_masks, verts, k, seed, budget)
        if res is not None:
            col = _compact(dict(zip(verts, res)))
            return col.color_count, col
    col = _compact(greedy)
    return col.color_count, col


def is_perfect_underlying(G: Digraph, max_vertices: int = DEFAULT_PERFECT_VERTEX_LIMIT,
                          budget: int | None = None) -> PerfectionVerdict:
    """Perfection of the underlying graph by sweeping every induced subgraph.

    Subsets are visited by size, then lexicographically, so a failing verdict
    carries a smallest imperfect induced subgraph.
    """
    n = G.vertex_count
    if n > max_vertices:
        raise BudgetExceeded(f"perfection check limited to {max_vertices} vertices, got {n}")
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            omega, _ = clique_number(G, S, budget)
            chi, _ = chromatic_number(G, S, budget)
            if chi != omega:
                return PerfectionVerdict(False, S, chi, omega)
    return PerfectionVerdict(True)


def nonadjacent_biclique(G: Digraph, A: Iterable[int], B: Iterable[int],
                         lam: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Lexicographically least (A', B') with |A'| = |B'| = lam and no edge between.

    Exact: depth-first over subsets of A in lexicographic order, tracking the
    members of B that are still nonadjacent to everything chosen.
    """
    A = sorted(set(A))
    B = sorted(set(B))
    if set(A) & set(B):
        raise ValueError("A and B must be disjoint")
    if lam < 1:
        raise ValueError("lambda must be positive")
    adj = G.adj_masks

    def dfs(start, chosen, cand):
        if len(chosen) == lam:
            return chosen, cand
        for idx in range(start, len(A)):
            if len(A) - idx < lam - len(chosen):
                break
            nc = cand & ~adj[A[idx]]
            if nc.bit_count() >= lam:
                found = dfs(idx + 1, chosen + [A[idx]], nc)
                if found:
                    return found
        return None

    found = dfs(0, [], mask_of(B))
    if found is None:
        return None
    return tuple(found[0]), tuple(bits(found[1])[:lam])


def complete_with(G: Digraph, X: Iterable[int], Y: Iterable[int]) -> bool:
    """X is complete with Y in the underlying graph (and disjoint from it)."""
    X = list(X)
    Ym = mask_of(Y)
    if mask_of(X) & Ym:
        return False
    return all(G.adj_masks[x] & Ym == Ym for x in X)


def bigramsey_search(G: Digraph, As: Sequence[Iterable[int]], Bs: Sequence[Iterable[int]],
                     k: int, lam: int) -> BigramseyResult:
    """Search both alternatives of the bipartite Ramsey dichotomy.

    Tries the nonadjacent lam-pair first, then index sets I, J of size k with
    the A-union over I complete with the B-union over J.  Returns ``"neither"``
    when both fail (the family is below the Ramsey threshold).
    """
    As = [sorted(set(a)) for a in As]
    Bs = [sorted(set(b)) for b in Bs]
    seen: set[int] = set()
    for part in As + Bs:
        if seen & set(part):
            raise ValueError("the 2n sets must be pairwise disjoint")
        seen |= set(part)
    union_a = [v for a in As for v in a]
    union_b = [v for b in Bs for v in b]
    pair = nonadjacent_biclique(G, union_a, union_b, lam)
    if pair is not None:
        return BigramseyResult("nonadjacent", A=pair[0], B=pair[1])
    n_a, n_b = len(As), len(Bs)
    comp = [[complete_with(G, As[i], Bs[j]) for j in range(n_b)] for i in range(n_a)]
    if k <= n_a and k <= n_b:
        for I in combinations(range(n_a), k):
            common = [j for j in range(n_b) if all(comp[i][j] for i in I)]
            if len(common) >= k:
                return BigramseyResult("complete", I=I, J=tuple(common[:k]))
    return BigramseyResult("neither")


def max_stable_set(G: Digraph, within: Iterable[int] | None = None,
                   budget: int | None = None) -> tuple[int, ...]:
    """A maximum stable set of the underlying graph of ``G[within]``."""
    verts = _verts(G, within)
    full = G.all_mask
    comp = [full & ~G.adj_masks[v] & ~(1 << v) for v in G.vertices]
    mask, _ = kernels.max_clique(comp, mask_of(verts), node_budget(budget))
    return tuple(bits(mask))


def cliques_of_size(G: Digraph, within: int, size: int) -> list[tuple[int, ...]]:
    """All ``size``-cliques inside the vertex mask ``within``, lexicographic."""
    out: list[tuple[int, ...]] = []
    adj = G.adj_masks

    def rec(chosen, cand):
        if len(chosen) == size:
            out.append(tuple(chosen))
            return
        need = size - len(chosen)
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(chosen + [v], cand & adj[v])

    if size == 0:
        return [()]
    rec([], within)
    return out
