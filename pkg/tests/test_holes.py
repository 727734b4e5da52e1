from itertools import product

import pytest
from hypothesis import given

import oracles
from conftest import digraphs, graph
from orientchi.core import Digraph, DigraphError, directed_cycle, reverse
from orientchi.holes import (
    HoleClass,
    HoleRecord,
    canonical_cycle,
    classify_hole,
    enumerate_holes,
    extract_flh_from_hole,
    has_disoriented_long_hole,
    is_hole,
    layer_chromatic_profile,
    small_clique_tau,
)
from orientchi.patterns import FLH, find_flh, find_induced, is_induced_occurrence

TRANSITIVE = graph(3, (0, 1), (1, 2), (0, 2))


def oriented_cycle(dirs):
    L = len(dirs)
    return Digraph(L, tuple((i, (i + 1) % L) if d == 0 else ((i + 1) % L, i) for i, d in enumerate(dirs)))


def test_enumeration_examples():
    holes = enumerate_holes(directed_cycle(5))
    assert holes == [HoleRecord((0, 1, 2, 3, 4), HoleClass.DIRECTED)]
    alt = graph(4, (0, 1), (0, 3), (2, 1), (2, 3))
    assert [h.hole_class for h in enumerate_holes(alt)] == [HoleClass.ALTERNATING]
    assert enumerate_holes(TRANSITIVE) == []


def test_enumeration_length_bounds():
    G = Digraph(9, tuple((i, (i + 1) % 4) for i in range(4)) + tuple((4 + i, 4 + (i + 1) % 5) for i in range(5)))
    assert [len(h) for h in enumerate_holes(G)] == [4, 5]
    assert [len(h) for h in enumerate_holes(G, min_len=5)] == [5]
    assert [len(h) for h in enumerate_holes(G, max_len=4)] == [4]
    assert enumerate_holes(G, min_len=6, max_len=5) == []


def test_classification_examples():
    assert classify_hole(directed_cycle(6), range(6)) is HoleClass.DIRECTED
    alt6 = oriented_cycle([0, 1, 0, 1, 0, 1])
    assert classify_hole(alt6, range(6)) is HoleClass.ALTERNATING
    # out-degrees (2,1,0,2,0) around the cycle 0..4
    G = graph(5, (0, 1), (0, 4), (1, 2), (3, 2), (3, 4))
    degs = [sum(G.has_edge(v, w) for w in G.vertices) for v in G.vertices]
    assert degs == [2, 1, 0, 2, 0]
    assert classify_hole(G, range(5)) is HoleClass.DISORIENTED
    with pytest.raises(DigraphError):
        classify_hole(TRANSITIVE, range(3))


def test_canonical_cycle():
    assert canonical_cycle([3, 1, 4, 2]) == (1, 3, 2, 4)
    assert canonical_cycle([1, 4, 2, 3]) == (1, 3, 2, 4)


def _flh_windows(G, cycle):
    L = len(cycle)
    out = []
    for i in range(L):
        for step in (1, -1):
            window = tuple(cycle[(i + step * j) % L] for j in range(4))
            if is_induced_occurrence(G, FLH, window):
                out.append(window)
    return out


def test_extraction_examples():
    C5 = graph(5, (0, 1), (1, 2), (3, 2), (3, 4), (0, 4))
    occ = extract_flh_from_hole(C5, (0, 1, 2, 3, 4))
    assert occ.host_vertices == (3, 2, 1, 0)
    assert any(o.host_vertices == (3, 2, 1, 0) for o in find_induced(C5, FLH))
    # C6 directed except for the edge between 5 and 0
    C6 = graph(6, (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5))
    occ = extract_flh_from_hole(C6, range(6))
    assert _flh_windows(C6, list(range(6))) == [occ.host_vertices] == [(0, 5, 4, 3)]
    with pytest.raises(DigraphError, match="directed"):
        extract_flh_from_hole(directed_cycle(5), range(5))
    with pytest.raises(DigraphError):
        extract_flh_from_hole(graph(4, (0, 1), (1, 2), (2, 3), (0, 3)), range(4))


@pytest.mark.parametrize("L", [5, 6, 7, 8])
def test_every_disoriented_cycle_contains_flh(L):
    # presence of an induced pattern is label-independent, and only G[hole]
    # matters, so the orientations of C_L cover every hole of length L
    seen = 0
    for dirs in product((0, 1), repeat=L):
        G = oriented_cycle(dirs)
        if classify_hole(G, range(L)) is not HoleClass.DISORIENTED:
            continue
        seen += 1
        assert find_flh(G) is not None
        occ = extract_flh_from_hole(G, range(L))
        assert occ.host_vertices in _flh_windows(G, list(range(L)))
    assert seen == 2 ** L - 2 - (2 if L % 2 == 0 else 0)


@given(digraphs(max_n=8))
def test_hole_count_matches_naive_counter(G):
    holes = enumerate_holes(G)
    assert len(holes) == oracles.count_holes(G)
    for h in holes:
        assert is_hole(G, h.cycle) and canonical_cycle(h.cycle) == h.cycle
        if h.hole_class is HoleClass.ALTERNATING:
            assert len(h) % 2 == 0


@given(digraphs(max_n=9))
def test_reversal_preserves_classes(G):
    R = reverse(G)
    for h in enumerate_holes(G):
        assert classify_hole(R, h.cycle) is h.hole_class


@given(digraphs(max_n=10))
def test_disoriented_long_hole_forces_flh(G):
    for h in enumerate_holes(G, 5):
        if h.hole_class is HoleClass.DISORIENTED:
            occ = extract_flh_from_hole(G, h)
            assert set(occ.host_vertices) <= set(h.cycle)
            assert is_induced_occurrence(G, FLH, occ.host_vertices)
            assert find_flh(G) is not None


def test_layer_profile_examples():
    star = Digraph(5, tuple((0, i) for i in range(1, 5)))
    prof = layer_chromatic_profile(star, 0, 2)
    assert prof.layer_chi == (1, 1) and prof.all_hold
    prof = layer_chromatic_profile(directed_cycle(5), 3, 2)
    assert prof.layer_chi == (1, 1, 2) and prof.tau_hat == 1 and prof.all_hold
    with pytest.raises(DigraphError):
        layer_chromatic_profile(TRANSITIVE, 0, 2)


def test_small_clique_tau():
    # every triangle-free induced subgraph of C5 is at most 3-chromatic
    assert small_clique_tau(directed_cycle(5), 3) == 3
    assert small_clique_tau(directed_cycle(5), 2) == 1
    assert small_clique_tau(TRANSITIVE, 3) == 2


def test_has_disoriented_long_hole():
    assert not has_disoriented_long_hole(directed_cycle(5))
    assert has_disoriented_long_hole(graph(5, (0, 1), (1, 2), (3, 2), (3, 4), (0, 4)))
