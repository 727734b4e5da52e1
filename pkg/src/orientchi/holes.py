"""Holes of oriented graphs: enumeration, classification, and the two facts
about them that the colouring argument for a->b<-c<-d relies on.

A hole is an induced cycle of the underlying graph of length at least four;
"long" means length at least five.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .budget import BudgetExceeded, node_budget
from .core import Digraph, DigraphError, bits, distance_layers
from .patterns import FLH, Occurrence, find_induced, is_induced_occurrence
from .solvers import chromatic_number, clique_number


class HoleClass(str, Enum):
    DIRECTED = "directed"
    ALTERNATING = "alternating"
    DISORIENTED = "disoriented"


@dataclass(frozen=True)
class HoleRecord:
    cycle: tuple[int, ...]
    hole_class: HoleClass

    def __len__(self):
        return len(self.cycle)

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "class": self.hole_class.value}


def canonical_cycle(cycle) -> tuple[int, ...]:
    """Least rotation of the lesser traversal direction."""
    cycle = list(cycle)
    i = cycle.index(min(cycle))
    fwd = cycle[i:] + cycle[:i]
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


def _cycle_out_degrees(G: Digraph, cycle) -> list[int]:
    L = len(cycle)
    return [
        G.has_edge(cycle[i], cycle[(i + 1) % L]) + G.has_edge(cycle[i], cycle[i - 1])
        for i in range(L)
    ]


def is_hole(G: Digraph, cycle) -> bool:
    cycle = list(cycle)
    L = len(cycle)
    if L < 4 or len(set(cycle)) != L or any(not 0 <= v < G.vertex_count for v in cycle):
        return False
    for i, j in combinations(range(L), 2):
        consecutive = j - i == 1 or (i == 0 and j == L - 1)
        if G.adjacent(cycle[i], cycle[j]) != consecutive:
            return False
    return True


def classify_hole(G: Digraph, cycle) -> HoleClass:
    if not is_hole(G, cycle):
        raise DigraphError(f"{list(cycle)} is not an induced cycle of length >= 4")
    degs = _cycle_out_degrees(G, cycle)
    if all(d == 1 for d in degs):
        return HoleClass.DIRECTED
    if all(d in (0, 2) for d in degs):
        return HoleClass.ALTERNATING
    return HoleClass.DISORIENTED


def enumerate_holes(G: Digraph, min_len: int = 4, max_len: int | None = None,
                    budget: int | None = None) -> list[HoleRecord]:
    """Every hole with length in [min_len, max_len], one record per hole.

    Each hole is grown as an induced path from its least vertex through larger
    vertices and kept only in the direction whose second vertex is smaller
    than its last, so records come out in canonical form and sorted.
    """
    if max_len is None:
        max_len = G.vertex_count
    min_len = max(min_len, 4)
    if min_len > max_len:
        return []
    adj = G.adj_masks
    limit = node_budget(budget)
    nodes = 0
    found: list[tuple[int, ...]] = []

    def extend(path, forbidden):
        # forbidden: vertices adjacent to some interior path vertex, or on the path
        nonlocal nodes
        nodes += 1
        if nodes > limit:
            raise BudgetExceeded(f"hole enumeration exceeded {limit} nodes")
        s, last = path[0], path[-1]
        cand = adj[last] & ~forbidden & ~((2 << s) - 1)
        for x in bits(cand):
            if adj[x] >> s & 1:
                L = len(path) + 1
                if L >= min_len and len(path) >= 3 and path[1] < x:
                    found.append(tuple(path) + (x,))
                continue
            if len(path) + 1 < max_len:
                extend(path + [x], forbidden | adj[last] | (1 << x))

    for s in G.vertices:
        for p1 in bits(adj[s] & ~((2 << s) - 1)):
            # interior vertices' neighbourhoods are forbidden; s itself is
            # allowed only as the closing neighbour
            extend([s, p1], (1 << s) | (1 << p1))
    found.sort()
    out = []
    for cyc in found:
        rec = HoleRecord(cyc, classify_hole(G, cyc))
        if rec.hole_class is HoleClass.ALTERNATING and len(cyc) % 2:
            raise RuntimeError(f"odd alternating hole {cyc}")
        out.append(rec)
    return out


def extract_flh_from_hole(G: Digraph, hole: HoleRecord | tuple | list) -> Occurrence:
    """Four consecutive hole vertices inducing a->b<-c<-d.

    Start from the lexicographically least directed two-edge path of the
    hole, grow it both ways to a maximal directed path, and read the window
    at its head: the vertex after the head points back into it.
    """
    cycle = list(hole.cycle if isinstance(hole, HoleRecord) else hole)
    cls = classify_hole(G, cycle)
    L = len(cycle)
    if cls is not HoleClass.DISORIENTED:
        raise DigraphError(f"hole is {cls.value}, not disoriented")
    if L < 5:
        raise DigraphError("extraction needs a hole of length at least five")

    # directed 2-paths as position triples in either direction around the cycle
    paths = []
    for i in range(L):
        for step in (1, -1):
            a, b, c = i, (i + step) % L, (i + 2 * step) % L
            if G.has_edge(cycle[a], cycle[b]) and G.has_edge(cycle[b], cycle[c]):
                paths.append(((cycle[a], cycle[b], cycle[c]), step, a, c))
    if not paths:
        raise RuntimeError("disoriented hole without a directed 2-path")
    _, step, _, head = min(paths)
    length = 3
    # grow forward from the head
    while length < L and G.has_edge(cycle[head], cycle[(head + step) % L]):
        head = (head + step) % L
        length += 1
    if G.has_edge(cycle[head], cycle[(head + step) % L]):
        raise RuntimeError("directed path closes around the whole hole")
    y = cycle[(head + step) % L]
    x_t = cycle[head]
    x_t1 = cycle[(head - step) % L]
    x_t2 = cycle[(head - 2 * step) % L]
    hosts = (y, x_t, x_t1, x_t2)
    if not is_induced_occurrence(G, FLH, hosts):
        raise RuntimeError(f"extracted window {hosts} does not induce a->b<-c<-d")
    sub = find_induced(_window_digraph(G, hosts), FLH)
    if not any(occ.host_vertices == (0, 1, 2, 3) for occ in sub):
        raise RuntimeError(f"matcher rejected extracted window {hosts}")
    return Occurrence(FLH, hosts)


def _window_digraph(G: Digraph, hosts) -> Digraph:
    pos = {h: i for i, h in enumerate(hosts)}
    edges = tuple((pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos)
    return Digraph(len(hosts), edges)


@dataclass(frozen=True)
class LayerProfile:
    root: int
    kappa: int
    layer_chi: tuple[int, ...]
    tau_hat: int
    holds: tuple[bool, ...]

    @property
    def all_hold(self) -> bool:
        return all(self.holds)


def small_clique_tau(G: Digraph, kappa: int, budget: int | None = None) -> int:
    """Largest chromatic number over induced subdigraphs with clique number < kappa."""
    n = G.vertex_count
    best = 0
    for size in range(n, 0, -1):
        if size <= best:
            break
        for S in combinations(range(n), size):
            omega, _ = clique_number(G, S, budget)
            if omega < kappa:
                chi, _ = chromatic_number(G, S, budget)
                best = max(best, chi)
    return best


def layer_chromatic_profile(G: Digraph, z: int, kappa: int,
                            tau_hat: int | None = None, budget: int | None = None) -> LayerProfile:
    """Exact chromatic number of each distance layer from ``z`` and the check
    chi(L_r) <= 3 * tau_hat * chi(L_{r-1}) for r >= 1.

    ``tau_hat`` is computed by an exhaustive subset sweep unless supplied.
    """
    omega, _ = clique_number(G, budget=budget)
    if omega > kappa:
        raise DigraphError(f"clique number {omega} exceeds kappa={kappa}")
    layers = distance_layers(G, z).layers
    chis = tuple(chromatic_number(G, L, budget)[0] for L in layers)
    if tau_hat is None:
        tau_hat = small_clique_tau(G, kappa, budget)
    holds = tuple(chis[r] <= 3 * tau_hat * chis[r - 1] for r in range(1, len(chis)))
    return LayerProfile(z, kappa, chis, tau_hat, holds)


def has_disoriented_long_hole(G: Digraph) -> bool:
    return any(h.hole_class is HoleClass.DISORIENTED for h in enumerate_holes(G, 5))
