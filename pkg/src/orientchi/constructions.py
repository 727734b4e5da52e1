"""Generators for the named digraph families and the cyclic-tournament recognizer."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .core import Digraph, DigraphError, acyclicity, bits


@dataclass(frozen=True)
class TournamentOrdering:
    order: tuple[int, ...]
    m: int


@dataclass(frozen=True)
class CyclicRecognition:
    """Exactly one of ``ordering`` and ``four_cycle`` is set.

    ``four_cycle`` is (p, q, r, s) with p->q->r->s->p, p and r out-neighbours
    of the chosen vertex and q, s in-neighbours.
    """

    vertex: int
    ordering: TournamentOrdering | None = None
    four_cycle: tuple[int, int, int, int] | None = None

    @property
    def cyclic(self) -> bool:
        return self.ordering is not None


def pair_index_colex(i: int, j: int) -> int:
    """Position of the pair {i, j} (1 <= i < j) in colex order."""
    return (j - 1) * (j - 2) // 2 + (i - 1)


def shift_digraph(n: int) -> Digraph:
    """Shift digraph on the 2-subsets of {1..n}, numbered in colex order."""
    if n < 2:
        raise DigraphError("shift digraph needs n >= 2")
    edges = [
        (pair_index_colex(i, j), pair_index_colex(j, k))
        for i, j, k in combinations(range(1, n + 1), 3)
    ]
    return Digraph(n * (n - 1) // 2, tuple(edges), f"shift({n})")


def shift_vertex_labels(n: int) -> list[tuple[int, int]]:
    labels = [(0, 0)] * (n * (n - 1) // 2)
    for i, j in combinations(range(1, n + 1), 2):
        labels[pair_index_colex(i, j)] = (i, j)
    return labels


def cyclic_tournament(m: int) -> Digraph:
    if m < 0:
        raise DigraphError("m must be nonnegative")
    n = 2 * m + 1
    edges = [(i, j) if j - i <= m else (j, i) for i, j in combinations(range(n), 2)]
    return Digraph(n, tuple(edges), f"cyclic({m})")


def oriented_path(n: int, pattern: str, name: str | None = None) -> Digraph:
    """Path v0-v1-...; pattern letter ``f`` orients v_i->v_{i+1}, ``r`` the reverse."""
    if len(pattern) != n - 1 or set(pattern) - {"f", "r"}:
        raise DigraphError(f"bad path orientation {pattern!r} for {n} vertices")
    edges = [(i, i + 1) if c == "f" else (i + 1, i) for i, c in enumerate(pattern)]
    return Digraph(n, tuple(edges), name)


# -- seeded random families ---------------------------------------------------
# Each decision is a pure function of (seed, family tag, index), so outputs do
# not depend on iteration order or platform.

def _draw(seed: int, tag: str, index: int) -> int:
    digest = hashlib.blake2b(f"{tag}:{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _uniform(x: int) -> float:
    return (x >> 11) / float(1 << 53)


def random_oriented(n: int, p: float, seed: int) -> Digraph:
    if not 0.0 <= p <= 1.0:
        raise DigraphError("edge probability must lie in [0, 1]")
    edges = []
    for idx, (i, j) in enumerate(combinations(range(n), 2)):
        x = _draw(seed, "oriented", idx)
        if p >= 1.0 or _uniform(x) < p:
            edges.append((i, j) if x & 1 == 0 else (j, i))
    return Digraph(n, tuple(edges), f"random({n},{p},{seed})")


def random_tournament(n: int, seed: int) -> Digraph:
    edges = []
    for idx, (i, j) in enumerate(combinations(range(n), 2)):
        x = _draw(seed, "tournament", idx)
        edges.append((i, j) if x & 1 == 0 else (j, i))
    return Digraph(n, tuple(edges), f"tournament({n},{seed})")


def random_acyclic(n: int, p: float, seed: int) -> Digraph:
    """Random underlying graph oriented along a seeded random vertex ranking."""
    if not 0.0 <= p <= 1.0:
        raise DigraphError("edge probability must lie in [0, 1]")
    rank = {v: (_draw(seed, "rank", v), v) for v in range(n)}
    edges = []
    for idx, (i, j) in enumerate(combinations(range(n), 2)):
        if p >= 1.0 or _uniform(_draw(seed, "acyclic", idx)) < p:
            edges.append((i, j) if rank[i] < rank[j] else (j, i))
    return Digraph(n, tuple(edges), f"acyclic({n},{p},{seed})")


# -- tournaments --------------------------------------------------------------

def is_tournament(H: Digraph) -> bool:
    n = H.vertex_count
    return len(H.edges) == n * (n - 1) // 2


def regular_half_degree(H: Digraph) -> int:
    """Common out-degree m of a regular tournament; raises otherwise."""
    n = H.vertex_count
    if not is_tournament(H) or n % 2 == 0:
        raise DigraphError("not a regular tournament")
    m = (n - 1) // 2
    if any(H.out_degree(v) != m for v in H.vertices):
        raise DigraphError("not a regular tournament: out-degrees differ")
    return m


def is_cyclic_ordering(H: Digraph, order, m: int) -> bool:
    """v_i -> v_j iff j - i <= m, for all positions i < j."""
    order = list(order)
    if sorted(order) != list(H.vertices) or len(order) != 2 * m + 1:
        return False
    for i, j in combinations(range(len(order)), 2):
        forward = H.has_edge(order[i], order[j])
        if forward != (j - i <= m):
            return False
        if not forward and not H.has_edge(order[j], order[i]):
            return False
    return True


def enumerate_regular_tournaments(n: int) -> Iterator[Digraph]:
    """All labelled regular tournaments on n (odd) vertices."""
    if n % 2 == 0:
        return
    m = (n - 1) // 2
    pairs = list(combinations(range(n), 2))
    outdeg = [0] * n
    left = [n - 1] * n
    chosen: list[tuple[int, int]] = []

    def rec(idx):
        if idx == len(pairs):
            yield Digraph(n, tuple(chosen))
            return
        i, j = pairs[idx]
        left[i] -= 1
        left[j] -= 1
        for tail, head in ((i, j), (j, i)):
            outdeg[tail] += 1
            if outdeg[tail] <= m and outdeg[head] + left[head] >= m:
                chosen.append((tail, head))
                yield from rec(idx + 1)
                chosen.pop()
            outdeg[tail] -= 1
        left[i] += 1
        left[j] += 1

    yield from rec(0)


def _alternating_four_cycle(H: Digraph, v: int) -> tuple[int, int, int, int] | None:
    outs = H.out_masks[v]
    ins = H.in_masks[v]
    for p in bits(outs):
        for q in bits(H.out_masks[p] & ins):
            for r in bits(H.out_masks[q] & outs):
                for s in bits(H.out_masks[r] & ins & H.in_masks[p]):
                    return (p, q, r, s)
    return None


def recognize_cyclic(H: Digraph, v: int) -> CyclicRecognition:
    """Cyclic ordering of a regular tournament, or an alternating 4-cycle at ``v``.

    With no directed p->q->r->s->p alternating between the out- and
    in-neighbourhood of ``v``, the bipartite subdigraph J between them is
    acyclic; listing ``v``, then the odd positions of a topological order of J
    reversed, then the even positions reversed, is a cyclic ordering.
    The ordering is checked against the definition before it is returned.
    """
    m = regular_half_degree(H)
    if not 0 <= v < H.vertex_count:
        raise DigraphError(f"vertex {v} out of range")
    cycle = _alternating_four_cycle(H, v)
    if cycle is not None:
        return CyclicRecognition(v, four_cycle=cycle)
    outs, ins = H.out_masks[v], H.in_masks[v]
    J = Digraph(
        H.vertex_count,
        tuple((a, b) for a, b in H.edges if (outs >> a & 1 and ins >> b & 1) or (ins >> a & 1 and outs >> b & 1)),
    )
    rest = H.all_mask & ~(1 << v)
    topo = acyclicity(J, rest)
    if not topo.acyclic:
        raise RuntimeError(f"J has a directed cycle {topo.cycle} but no alternating 4-cycle at {v}")
    seq = topo.order
    order = (v,) + tuple(reversed(seq[0::2])) + tuple(reversed(seq[1::2]))
    if not is_cyclic_ordering(H, order, m):
        raise RuntimeError(f"constructed ordering {order} is not cyclic")
    return CyclicRecognition(v, ordering=TournamentOrdering(order, m))
