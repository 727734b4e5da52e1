import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

import oracles
from orientchi.constructions import (
    cyclic_tournament,
    enumerate_regular_tournaments,
    is_cyclic_ordering,
    is_tournament,
    oriented_path,
    pair_index_colex,
    random_acyclic,
    random_oriented,
    random_tournament,
    recognize_cyclic,
    regular_half_degree,
    shift_digraph,
    shift_vertex_labels,
)
from orientchi.core import Digraph, DigraphError, acyclicity
from orientchi.patterns import find_induced, parse_pattern
from orientchi.solvers import chromatic_number, clique_number


def test_shift_small_cases():
    G = shift_digraph(3)
    assert G.vertex_count == 3 and G.edges == ((0, 2),)
    assert shift_vertex_labels(3) == [(1, 2), (1, 3), (2, 3)]
    assert pair_index_colex(3, 4) == 5
    with pytest.raises(DigraphError):
        shift_digraph(1)


def test_shift_clique_and_chromatic_numbers():
    assert clique_number(shift_digraph(5))[0] == 2
    assert chromatic_number(shift_digraph(8))[0] == 3 == math.ceil(math.log2(8))


@pytest.mark.parametrize("n", range(3, 8))
def test_shift_avoids_frf(n):
    assert find_induced(shift_digraph(n), parse_pattern("p4:frf")) == []


def test_shift_contains_flh():
    # shift digraphs are triangle-free with growing chromatic number, so they
    # cannot avoid the pattern the colouring results are about
    G = shift_digraph(4)
    labels = shift_vertex_labels(4)
    occ = find_induced(G, parse_pattern("p4:frr"))
    assert [tuple(labels[v] for v in o.host_vertices) for o in occ] == [((1, 3), (3, 4), (2, 3), (1, 2))]
    assert [o.host_vertices for o in occ] == oracles.induced_occurrences(G, parse_pattern("p4:frr"))


@pytest.mark.parametrize("n", range(3, 9))
def test_shift_is_triangle_free(n):
    assert clique_number(shift_digraph(n))[0] == 2


def test_cyclic_tournament_examples():
    assert cyclic_tournament(0).vertex_count == 1
    assert cyclic_tournament(1).edge_set() == {(0, 1), (1, 2), (2, 0)}
    C7 = cyclic_tournament(3)
    assert all(C7.out_degree(v) == 3 for v in C7.vertices)
    assert regular_half_degree(C7) == 3
    assert is_cyclic_ordering(C7, range(7), 3)


def test_oriented_path():
    assert oriented_path(4, "frr").edge_set() == {(0, 1), (2, 1), (3, 2)}
    with pytest.raises(DigraphError):
        oriented_path(3, "fff")


def test_random_generators():
    assert random_oriented(6, 0.0, 4).edges == ()
    K4 = random_oriented(4, 1.0, 4)
    assert len(K4.edges) == 6 and clique_number(K4)[0] == 4
    assert random_oriented(10, 0.5, 1).edges == random_oriented(10, 0.5, 1).edges
    assert random_oriented(10, 0.5, 1).edges != random_oriented(10, 0.5, 2).edges
    assert is_tournament(random_tournament(7, 3))
    with pytest.raises(DigraphError):
        random_oriented(3, 1.5, 0)


@given(st.integers(0, 12), st.floats(0, 1), st.integers(0, 10**6))
def test_random_acyclic_is_acyclic(n, p, seed):
    assert acyclicity(random_acyclic(n, p, seed)).acyclic


def test_regular_tournament_counts():
    # labelled regular tournaments: 24 on 5 vertices, 2640 on 7
    assert sum(1 for _ in enumerate_regular_tournaments(5)) == 24
    assert sum(1 for _ in enumerate_regular_tournaments(3)) == 2
    assert list(enumerate_regular_tournaments(4)) == []


def test_regular_half_degree_rejects():
    with pytest.raises(DigraphError):
        regular_half_degree(Digraph(3, ((0, 1), (1, 2), (0, 2))))
    with pytest.raises(DigraphError):
        regular_half_degree(Digraph(3, ((0, 1),)))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_cyclic_tournaments_recognized_everywhere(m):
    H = cyclic_tournament(m)
    for v in H.vertices:
        res = recognize_cyclic(H, v)
        assert res.cyclic and res.ordering.order[0] == v
        assert is_cyclic_ordering(H, res.ordering.order, m)


def _brute_is_cyclic(H):
    """Try every ordering that starts with vertex 0 (rotation is free)."""
    m = (H.vertex_count - 1) // 2
    return any(is_cyclic_ordering(H, (0,) + rest, m) for rest in permutations(range(1, H.vertex_count)))


def test_noncyclic_regular_tournament_gives_four_cycle():
    # oracle: first regular 7-tournament in enumeration order that no
    # ordering makes cyclic
    H = next(T for T in enumerate_regular_tournaments(7) if not _brute_is_cyclic(T))
    for v in H.vertices:
        res = recognize_cyclic(H, v)
        assert not res.cyclic
        p, q, r, s = res.four_cycle
        assert H.has_edge(p, q) and H.has_edge(q, r) and H.has_edge(r, s) and H.has_edge(s, p)
        assert H.has_edge(v, p) and H.has_edge(v, r) and H.has_edge(q, v) and H.has_edge(s, v)


def test_dichotomy_on_five_vertices():
    for H in enumerate_regular_tournaments(5):
        cyclic = _brute_is_cyclic(H)
        for v in H.vertices:
            assert recognize_cyclic(H, v).cyclic == cyclic


def test_recognizer_rejects_non_regular():
    with pytest.raises(DigraphError):
        recognize_cyclic(random_tournament(6, 0), 0)
    with pytest.raises(DigraphError):
        recognize_cyclic(cyclic_tournament(2), 9)


def _scrambled_regular(m, seed, flips=12):
    """Reverse seeded directed triangles of the cyclic tournament; every
    out-degree is unchanged, so the result stays regular."""
    import random

    rng = random.Random(seed)
    H = cyclic_tournament(m)
    edges = set(H.edges)
    n = H.vertex_count
    for _ in range(flips):
        tris = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)
                if (a, b) in edges and (b, c) in edges and (c, a) in edges and a < b and a < c]
        a, b, c = rng.choice(tris)
        edges -= {(a, b), (b, c), (c, a)}
        edges |= {(b, a), (c, b), (a, c)}
    return Digraph(n, tuple(sorted(edges)))


@pytest.mark.parametrize("seed", range(6))
def test_dichotomy_sampled_on_nine_vertices(seed):
    from orientchi.verify import is_cyclic_tournament

    H = _scrambled_regular(4, seed, flips=seed * 3)
    assert regular_half_degree(H) == 4
    iso = is_cyclic_tournament(H)
    for v in H.vertices:
        res = recognize_cyclic(H, v)
        assert res.cyclic == iso
