from __future__ import annotations

import pytest

from critsurf import samples
from critsurf.census import disk_catalog
from critsurf.surface_map import euler_genus
from critsurf.topology import (
    NotACycle,
    PropertyViolated,
    classify_cycle,
    cut_along,
    g_expansion,
    is_contractible_cycle,
    min_essential_edges,
    subgraph_class,
)
from critsurf.weights import four_cycles


def test_facial_cycle_of_cube_is_contractible():
    G = samples.cube()
    for q in four_cycles(G):
        assert is_contractible_cycle(G, q)


def test_torus_four_cycle_is_essential_and_nonseparating():
    T = samples.groetzsch_torus()
    cls = classify_cycle(T, (2, 3, 4, 8))
    assert cls.tag == "essential"
    assert cls.sidedness == "two-sided"
    assert not cls.separating
    (piece,) = cls.cut.pieces
    assert euler_genus(piece.graph) == 0
    assert len(piece.cut_faces) == 2


def test_projective_cycle_one_sided():
    K = samples.k4_projective()
    # the three 4-faces are facial; a triangle of K4 is one-sided here
    one_sided = [c for c in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)) if classify_cycle(K, c).sidedness == "one-sided"]
    assert one_sided
    for c in one_sided:
        res = cut_along(K, c)
        assert res.one_sided and len(res.pieces) == 1
        assert euler_genus(res.pieces[0].graph) == 0


def test_cut_conserves_faces():
    T = samples.groetzsch_torus()
    for q in four_cycles(T):
        res = cut_along(T, q)
        hosted = sorted(f for p in res.pieces for f in p.host_faces)
        assert hosted == list(range(len(T.faces)))


def test_surrounding_cycle_on_cylinder():
    G = samples.figure1_cylinder()
    cls = classify_cycle(G, (0, 3, 7, 4))
    assert cls.tag in ("surrounds", "essential")
    assert not is_contractible_cycle(G, (0, 3, 7, 4))


def test_not_a_cycle():
    G = samples.cube()
    with pytest.raises(NotACycle):
        classify_cycle(G, (0, 1))
    with pytest.raises(NotACycle):
        classify_cycle(G, (0, 7, 3, 5))


def test_subgraph_class_disk():
    G = samples.hexagon_tripod()
    es = [G.edge_between(6, v) for v in (0, 2, 4)]
    assert subgraph_class(G, {0, 2, 4, 6}, es)[0] == "contractible"


def test_expansion_of_disk_faces():
    G = samples.c8_two_chords()
    ring_e = sorted(G.ring_edges())
    chord_e = [G.edge_between(0, 3), G.edge_between(4, 7)]
    Jv = set(range(8))
    Je = ring_e + chord_e
    from critsurf.topology import subgraph_embedding

    R = subgraph_embedding(G, Jv, Je)
    internal = [R.facemap[f] for f in G.internal_faces()]
    pieces = g_expansion(G, Jv, Je, internal)
    assert len(pieces) == 3
    total = sum(p.graph.ring_length(0) for p in pieces)
    assert total == sum(R.graph.face_length(f) for f in internal)
    with pytest.raises(PropertyViolated):
        g_expansion(G, Jv, Je, [R.facemap[G.rings[0].face]])


def test_expansion_pieces_are_critical():
    # a contractible cycle of a critical graph splits it into critical pieces
    from critsurf.coloring import is_R_critical

    for G in disk_catalog(4, 8, 10).graphs[:6]:
        ring_e = sorted(G.ring_edges())
        from critsurf.topology import subgraph_embedding

        R = subgraph_embedding(G, G.ring_vertices(), ring_e)
        inside = [f for f in range(len(R.graph.faces)) if f != R.facemap[G.rings[0].face]]
        for p in g_expansion(G, G.ring_vertices(), ring_e, inside):
            if p.graph.m > p.graph.ring_length(0):
                assert is_R_critical(p.graph).verdict


def test_min_essential_shortcut_in_disk():
    assert min_essential_edges(samples.hexagon_tripod(), 13)
