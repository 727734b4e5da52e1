"""Independent re-verification of serialized certificates and colourings.

Nothing here uses the search kernels: every property is checked by plain
enumeration with itertools, so a bug in the fast solvers cannot hide a bad
certificate.  Intended for small instances.
"""

from __future__ import annotations

import re
from itertools import combinations

from .core import Digraph


def brute_is_clique(G: Digraph, S) -> bool:
    return all(G.adjacent(u, v) for u, v in combinations(S, 2))


def brute_clique_number(G: Digraph, S) -> int:
    S = sorted(S)
    best = 0
    for size in range(1, len(S) + 1):
        if any(brute_is_clique(G, c) for c in combinations(S, size)):
            best = size
        else:
            break
    return best


def brute_colourable(G: Digraph, S, h: int) -> bool:
    """Plain backtracking in vertex order with no heuristics."""
    S = sorted(S)
    if not S:
        return True
    if h <= 0:
        return False
    colour: dict[int, int] = {}

    def rec(i):
        if i == len(S):
            return True
        v = S[i]
        top = max(colour.values(), default=-1) + 1
        for c in range(min(h, top + 1)):
            if all(colour.get(w) != c for w in S[:i] if G.adjacent(v, w)):
                colour[v] = c
                if rec(i + 1):
                    return True
                del colour[v]
        return False

    return rec(0)


def brute_is_acyclic(G: Digraph, S) -> bool:
    """Repeatedly strip vertices with no in-neighbour left inside the set."""
    left = set(S)
    while left:
        free = [v for v in left if not any(G.has_edge(u, v) for u in left)]
        if not free:
            return False
        left.difference_update(free)
    return True


def brute_sourced_clique(G: Digraph, S, size: int, sink: bool = False):
    for c in combinations(sorted(S), size):
        if not brute_is_clique(G, c):
            continue
        for x in c:
            others = [y for y in c if y != x]
            if all((G.has_edge(y, x) if sink else G.has_edge(x, y)) for y in others):
                return c
    return None


def brute_robust(G: Digraph, S, h: int, k: int) -> bool:
    """(h, k)-robustness of G[S]."""
    S = sorted(S)
    for size in range(1, len(S) + 1):
        for Z in combinations(S, size):
            outside = [w for w in S if w not in Z]
            ok = all(
                sum(G.has_edge(z, w) for w in outside) < k or sum(G.has_edge(w, z) for w in outside) < k
                for z in Z
            )
            if ok and brute_colourable(G, Z, h):
                return False
    return True


def _ordered_problems(G: Digraph, parts, h: int, k: int, direction: str, role: str) -> list[str]:
    problems = []
    for i, part in enumerate(parts):
        if not brute_colourable(G, part, h):
            problems.append(f"{role} part {i} is not {h}-colourable")
        later = {w for p in parts[i + 1:] for w in p}
        for v in part:
            count = sum((G.has_edge(v, w) if direction == "out" else G.has_edge(w, v)) for w in later)
            if count >= k:
                problems.append(f"{role} vertex {v} has {count} {direction}-neighbours in later parts")
    return problems


_PROPERTY = re.compile(r"(source-free|sink-free|chromatic-bound)\((\d+)\)|acyclic|robust\((\d+),(\d+)\)")


def certificate_problems(G: Digraph, cert: dict) -> list[str]:
    """Every problem found when re-checking a serialized partition certificate."""
    problems = []
    ground = sorted(cert["ground_set"])
    whole = cert["theorem_tag"] in ("outnbrs", "robustpartition")
    if (ground != list(G.vertices)) if whole else not set(ground) <= set(G.vertices):
        problems.append("ground set does not match the vertex set")
    parts = [sorted(p["vertices"]) for p in cert["parts"]]
    flat = sorted(v for p in parts for v in p)
    if flat != ground:
        problems.append("parts do not partition the ground set")
    for i, part in enumerate(cert["parts"]):
        prop = part["property"]
        m = _PROPERTY.fullmatch(prop)
        if m is None:
            problems.append(f"part {i} has unknown property {prop!r}")
            continue
        verts = part["vertices"]
        if prop == "acyclic":
            if not brute_is_acyclic(G, verts):
                problems.append(f"part {i} is not acyclic")
        elif m.group(1) in ("source-free", "sink-free"):
            bad = brute_sourced_clique(G, verts, int(m.group(2)), m.group(1) == "sink-free")
            if bad is not None:
                problems.append(f"part {i} contains {bad}, violating {prop}")
        elif m.group(1) == "chromatic-bound":
            if not brute_colourable(G, verts, int(m.group(2))):
                problems.append(f"part {i} violates {prop}")
        else:
            if not brute_robust(G, verts, int(m.group(3)), int(m.group(4))):
                problems.append(f"part {i} violates {prop}")
    tag = cert["theorem_tag"]
    params = cert["params"]
    if tag == "outnbrs":
        bound = 4 * params["n"] * params["m"]
        if len(parts) > bound:
            problems.append(f"{len(parts)} parts exceed 4nm = {bound}")
    elif tag == "outorderable":
        bound = params["h"] * params["k"]
        if len(parts) > bound:
            problems.append(f"{len(parts)} parts exceed hk = {bound}")
    elif tag == "robustpartition":
        h, k = params["h"], params["k"]
        for role, direction in (("P", "out"), ("Q", "in")):
            seq = [p["vertices"] for p in cert["parts"] if p.get("role") == role]
            problems += _ordered_problems(G, seq, h, k, direction, role)
        if sum(1 for p in cert["parts"] if p.get("role") == "R") != 1:
            problems.append("expected exactly one R part")
    else:
        problems.append(f"unknown theorem tag {tag!r}")
    return problems


def coloring_problems(G: Digraph, colors: list) -> list[str]:
    """Re-check a serialized colouring (a colour per vertex)."""
    problems = []
    if len(colors) != G.vertex_count or any(c is None for c in colors):
        return ["colouring does not cover every vertex"]
    for u, v in G.edges:
        if colors[u] == colors[v]:
            problems.append(f"edge {u}->{v} is monochromatic")
    return problems
