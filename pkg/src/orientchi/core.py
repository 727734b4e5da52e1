"""Oriented graph representation and elementary structural queries.

Vertices are dense integers ``0..n-1``.  Every digraph also carries bitset
rows (Python ints) for out-, in- and underlying adjacency, which is what the
search kernels consume.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DigraphError(ValueError):
    """Raised for malformed edge-list input or invariant violations."""


def bits(mask: int) -> list[int]:
    """Vertex ids set in ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, eq=False)
class Digraph:
    """Simple oriented graph: no loops, no digons, no parallel edges.

    ``edges`` keeps insertion order so that edge-list round trips are exact;
    equality and hashing only look at the vertex count and the edge set.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()
    name: str | None = None
    out_masks: tuple[int, ...] = field(init=False, repr=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False)
    adj_masks: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise DigraphError("vertex count must be nonnegative")
        out = [0] * n
        inn = [0] * n
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"edge ({u},{v}) has an endpoint out of range 0..{n - 1}")
            if u == v:
                raise DigraphError(f"loop ({u},{v})")
            if out[u] >> v & 1:
                raise DigraphError(f"duplicate edge ({u},{v})")
            if out[v] >> u & 1:
                raise DigraphError(f"digon ({v},{u})/({u},{v})")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "out_masks", tuple(out))
        object.__setattr__(self, "in_masks", tuple(inn))
        object.__setattr__(self, "adj_masks", tuple(o | i for o, i in zip(out, inn)))

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((self.vertex_count, self.edge_set()))

    def __len__(self):
        return self.vertex_count

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def all_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        """Adjacency in the underlying graph."""
        return bool(self.adj_masks[u] >> v & 1)

    def out_neighbours(self, v: int) -> list[int]:
        return bits(self.out_masks[v])

    def in_neighbours(self, v: int) -> list[int]:
        return bits(self.in_masks[v])

    def neighbours(self, v: int) -> list[int]:
        return bits(self.adj_masks[v])

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def underlying_edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.edges)

    def renamed(self, name: str | None) -> Digraph:
        return Digraph(self.vertex_count, self.edges, name)


@dataclass(frozen=True)
class LayerDecomposition:
    root: int
    layers: tuple[frozenset[int], ...]
    unreachable: frozenset[int]

    def layer_of(self, v: int) -> int | None:
        for r, layer in enumerate(self.layers):
            if v in layer:
                return r
        return None


@dataclass(frozen=True)
class Acyclicity:
    """Either a topological ``order`` or a directed ``cycle`` (never both)."""

    order: tuple[int, ...] | None = None
    cycle: tuple[int, ...] | None = None

    @property
    def acyclic(self) -> bool:
        return self.order is not None


# -- edge-list format -------------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    """Parse the line-oriented edge-list format.

    ``# name: <label>`` comment lines set the digraph name; other ``#`` lines
    and blank lines are ignored.
    """
    n = None
    name = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:"):
                name = body[len("name:"):].strip() or None
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2:
                if n is not None:
                    raise DigraphError(f"line {lineno}: duplicate header")
                n = int(parts[1])
                if n < 0:
                    raise ValueError
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise DigraphError(f"line {lineno}: edge before 'n' header")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise DigraphError(f"line {lineno}: malformed line {raw!r}")
        except ValueError as exc:
            if isinstance(exc, DigraphError):
                raise
            raise DigraphError(f"line {lineno}: malformed line {raw!r}") from None
    if n is None:
        raise DigraphError("missing 'n <count>' header")
    try:
        return Digraph(n, tuple(edges), name)
    except DigraphError as exc:
        raise DigraphError(str(exc)) from None


def serialize_digraph(G: Digraph) -> str:
    lines = []
    if G.name:
        lines.append(f"# name: {G.name}")
    lines.append(f"n {G.vertex_count}")
    lines.extend(f"e {u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def to_dot(G: Digraph) -> str:
    label = G.name or "G"
    out = [f'digraph "{label}" {{', f'  label="{label}";']
    out.extend(f"  {v};" for v in G.vertices)
    out.extend(f"  {u} -> {v};" for u, v in G.edges)
    out.append("}")
    return "\n".join(out) + "\n"


# -- structural operations --------------------------------------------------

def induced_subdigraph(G: Digraph, S: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Subdigraph induced on ``S``; returns it with the old-id -> new-id map.

    New ids follow the ascending order of the old ids.
    """
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < G.vertex_count:
            raise DigraphError(f"vertex {v} not in digraph on {G.vertex_count} vertices")
    relabel = {v: i for i, v in enumerate(verts)}
    edges = tuple((relabel[u], relabel[v]) for u, v in G.edges if u in relabel and v in relabel)
    return Digraph(len(verts), edges), relabel


def reverse(G: Digraph) -> Digraph:
    return Digraph(G.vertex_count, tuple((v, u) for u, v in G.edges), G.name)


def distance_layers(G: Digraph, z: int) -> LayerDecomposition:
    if not 0 <= z < G.vertex_count:
        raise DigraphError(f"root {z} out of range")
    dist = {z: 0}
    queue = deque([z])
    while queue:
        u = queue.popleft()
        for w in bits(G.adj_masks[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    depth = max(dist.values())
    layers = [set() for _ in range(depth + 1)]
    for v, d in dist.items():
        layers[d].add(v)
    unreachable = frozenset(v for v in G.vertices if v not in dist)
    return LayerDecomposition(z, tuple(frozenset(x) for x in layers), unreachable)


def acyclicity(G: Digraph, within: int | None = None) -> Acyclicity:
    """Topological order (lexicographically least) or a directed cycle.

    ``within`` optionally restricts the check to the vertex mask given.
    """
    active = G.all_mask if within is None else within
    verts = bits(active)
    indeg = {v: (G.in_masks[v] & active).bit_count() for v in verts}
    heap = [v for v in verts if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for w in bits(G.out_masks[u] & active):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == len(verts):
        return Acyclicity(order=tuple(order))
    # every leftover vertex has an in-neighbour among the leftovers; walk back
    left = mask_of(v for v in verts if indeg[v] > 0)
    v = bits(left)[0]
    seen: dict[int, int] = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        preds = G.in_masks[v] & left
        v = (preds & -preds).bit_length() - 1
    cycle = walk[seen[v]:]
    cycle.reverse()
    start = cycle.index(min(cycle))
    cycle = cycle[start:] + cycle[:start]
    return Acyclicity(cycle=tuple(cycle))


def is_acyclic_set(G: Digraph, S: Iterable[int]) -> bool:
    return acyclicity(G, mask_of(S)).acyclic


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, tuple((i, (i + 1) % n) for i in range(n)), f"C{n}")


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)), f"TT{n}")


def from_edges(n: int, edges: Sequence[tuple[int, int]], name: str | None = None) -> Digraph:
    return Digraph(n, tuple(edges), name)
