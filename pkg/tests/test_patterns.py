from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import digraphs, graph
from orientchi.constructions import cyclic_tournament, oriented_path, shift_digraph
from orientchi.core import Digraph, DigraphError, directed_cycle, reverse
from orientchi.patterns import (
    FLH,
    TRANSITIVE_TRIANGLE,
    find_flh,
    find_induced,
    find_rich_vertex,
    find_transitive_triangle,
    is_induced_occurrence,
    is_lambda_spread,
    oriented_star_pattern,
    parse_pattern,
    star_from_spread_witness,
)
from orientchi.solvers import clique_number

TRIANGLE = graph(3, (0, 1), (1, 2), (2, 0))
C5_MIXED = graph(5, (0, 1), (1, 2), (3, 2), (3, 4), (0, 4))  # a->b, b->c, d->c, d->e, a->e


def test_parse_pattern():
    assert parse_pattern("p4:frr") == FLH
    assert parse_pattern("p4:frf").edge_set() == {(0, 1), (2, 1), (2, 3)}
    assert parse_pattern("star:1,1") == oriented_star_pattern(1, 1)
    for bad in ("p4:fr", "q4:frr", "star:1"):
        with pytest.raises(DigraphError):
            parse_pattern(bad)


def test_star_patterns():
    assert oriented_star_pattern(1, 0).edge_set() == {(0, 1)}
    assert oriented_star_pattern(2, 0).edge_set() == {(0, 1), (0, 2)}
    assert oriented_star_pattern(1, 1).edge_set() == {(0, 1), (2, 0)}
    with pytest.raises(DigraphError):
        oriented_star_pattern(-1, 0)


def test_two_path_in_transitive_triangle_is_not_induced():
    # every pair of the triangle is adjacent, so no induced 2-edge path exists;
    # the only (non-induced) placement of a->b->c is (0, 1, 2)
    two_path = oriented_path(3, "ff")
    assert find_induced(TRANSITIVE_TRIANGLE, two_path) == []
    assert oracles.induced_occurrences(TRANSITIVE_TRIANGLE, two_path) == []


def test_shift_has_no_frf():
    assert find_induced(shift_digraph(6), parse_pattern("p4:frf")) == []


def test_directed_c5_has_five_directed_three_paths():
    occ = find_induced(directed_cycle(5), parse_pattern("p4:fff"))
    hosts = [o.host_vertices for o in occ]
    assert hosts == oracles.induced_occurrences(directed_cycle(5), parse_pattern("p4:fff"))
    assert len(hosts) == 5


def test_find_induced_limit():
    assert len(find_induced(directed_cycle(5), parse_pattern("p4:fff"), limit=2)) == 2
    assert find_induced(directed_cycle(5), parse_pattern("p4:fff"), limit=0) == []


def test_find_flh_examples():
    assert find_flh(graph(4, (0, 1), (2, 1), (3, 2))).host_vertices == (0, 1, 2, 3)
    assert find_flh(directed_cycle(5)) is None
    occ = find_flh(C5_MIXED)
    assert occ.host_vertices == (3, 2, 1, 0)
    assert find_induced(C5_MIXED, FLH)[0].host_vertices == (3, 2, 1, 0)


@given(digraphs(max_n=6))
def test_find_induced_matches_brute_force(G):
    for spec in ("p4:frr", "p3:fr", "star:1,1"):
        H = parse_pattern(spec)
        got = [o.host_vertices for o in find_induced(G, H)]
        assert got == oracles.induced_occurrences(G, H)
        assert all(is_induced_occurrence(G, H, h) for h in got)


@given(digraphs(max_n=10))
def test_find_flh_agrees_with_matcher(G):
    direct = find_flh(G)
    general = find_induced(G, FLH, limit=1)
    assert (direct is None) == (not general)
    if direct is not None:
        assert direct.host_vertices == general[0].host_vertices


def test_spread_examples():
    assert is_lambda_spread(TRANSITIVE_TRIANGLE, 1).verdict
    rep = is_lambda_spread(graph(3, (0, 1), (1, 2)), 1)
    assert not rep.verdict and rep.witness == (1, (2,), (0,))
    assert is_lambda_spread(cyclic_tournament(3), 1).verdict
    assert oracles.is_lambda_spread(cyclic_tournament(3), 1)
    with pytest.raises(ValueError):
        is_lambda_spread(TRIANGLE, 0)


@given(digraphs(max_n=8))
def test_spread_properties(G):
    verdicts = [is_lambda_spread(G, lam).verdict for lam in (1, 2, 3)]
    assert verdicts == [oracles.is_lambda_spread(G, lam) for lam in (1, 2, 3)]
    # monotone in lambda
    assert verdicts == sorted(verdicts)
    assert verdicts == [is_lambda_spread(reverse(G), lam).verdict for lam in (1, 2, 3)]
    rep = is_lambda_spread(G, 2)
    if rep.witness:
        v, A, B = rep.witness
        assert all(G.has_edge(v, a) for a in A) and all(G.has_edge(b, v) for b in B)
        assert not any(G.adjacent(a, b) for a in A for b in B)


def test_rich_vertex_examples():
    w = find_rich_vertex(TRANSITIVE_TRIANGLE, 1, 1)
    assert w.v == 1 and w.out_cliques == ((2,),) and w.in_cliques == ((0,),)
    # the directed triangle is rich at every vertex; rotating labels moves the witness
    assert find_rich_vertex(TRIANGLE, 1, 1).v == 0
    for shift in range(3):
        rot = Digraph(3, tuple(((u + shift) % 3, (v + shift) % 3) for u, v in TRIANGLE.edges))
        assert find_rich_vertex(rot, 1, 1) is not None
    bip = Digraph(6, tuple((a, b) for a in range(3) for b in range(3, 6)))
    for k, m in product((1, 2), (2, 3)):
        assert find_rich_vertex(bip, k, m) is None


def _brute_rich(G, k, m):
    for v in G.vertices:
        outs = [c for c in combinations(G.out_neighbours(v), m) if oracles.clique_number(G, c) == m]
        ins = [c for c in combinations(G.in_neighbours(v), m) if oracles.clique_number(G, c) == m]
        for fo in combinations(outs, k):
            if len(set().union(*fo)) != k * m:
                continue
            for fi in combinations(ins, k):
                if len(set().union(*fi)) != k * m:
                    continue
                if all(G.adjacent(x, y) for c in fo for x in c for d in fi for y in d):
                    return v
    return None


@given(digraphs(max_n=7), st.integers(1, 2), st.integers(1, 2))
def test_rich_vertex_matches_brute_force(G, k, m):
    w = find_rich_vertex(G, k, m)
    assert (None if w is None else w.v) == _brute_rich(G, k, m)
    if w is not None:
        flat_out = [x for c in w.out_cliques for x in c]
        flat_in = [x for c in w.in_cliques for x in c]
        assert len(set(flat_out)) == len(flat_out) == k * m
        assert all(G.has_edge(w.v, x) for x in flat_out) and all(G.has_edge(y, w.v) for y in flat_in)
        assert all(G.adjacent(x, y) for x in flat_out for y in flat_in)
        # v together with one out-clique is a clique
        assert clique_number(G)[0] >= m + 1


def test_transitive_triangle_examples():
    occ = find_transitive_triangle(TRANSITIVE_TRIANGLE)
    assert occ.host_vertices == (0, 1, 2)
    assert find_transitive_triangle(TRIANGLE) is None
    pairs = list(combinations(range(4), 2))
    for dirs in product((0, 1), repeat=6):
        K4 = Digraph(4, tuple((i, j) if d else (j, i) for (i, j), d in zip(pairs, dirs)))
        occ = find_transitive_triangle(K4)
        assert occ is not None and is_induced_occurrence(K4, TRANSITIVE_TRIANGLE, occ.host_vertices)


@given(digraphs(min_n=3, max_n=9))
def test_spread_failure_gives_clique_or_star(G):
    rep = is_lambda_spread(G, 2)
    if rep.verdict:
        return
    omega = clique_number(G)[0]
    kappa = max(1, omega)
    res = star_from_spread_witness(G, rep.witness, 1, 1, kappa)
    # A, B have size 2 and no cross edges: a stable 1-set exists on both sides
    assert res is not None and res[0] == "star"
    assert is_induced_occurrence(G, oriented_star_pattern(1, 1), res[1].host_vertices)


def test_spread_failure_with_big_clique_side():
    # v=0 sends to a triangle {1,2,3} and receives from {4,5,6}; nothing across
    edges = [(0, x) for x in (1, 2, 3)] + [(x, 0) for x in (4, 5, 6)]
    edges += [(1, 2), (2, 3), (1, 3)]
    G = Digraph(7, tuple(edges))
    rep = is_lambda_spread(G, 3)
    assert not rep.verdict
    assert star_from_spread_witness(G, rep.witness, 2, 2, 2) == ("clique", (1, 2, 3))
    kind, occ = star_from_spread_witness(G, rep.witness, 1, 3, 3)
    assert kind == "star" and occ.host_vertices[0] == 0
    assert star_from_spread_witness(G, rep.witness, 2, 3, 3) is None
