from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critsurf import samples
from critsurf.surface_map import (
    DanglingReference,
    EmbeddedGraph,
    EmbeddingError,
    EulerMismatch,
    NotNormal,
    NotSimple,
    Ring,
    build_from_neighbors,
    cellularize,
    euler_genus,
    face_class,
    parse_emg,
    restrict,
    write_emg,
)
from oracles import trace_faces


@st.composite
def signed_rotation_systems(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    g = nx.random_labeled_tree(n, seed=seed) if hasattr(nx, "random_labeled_tree") else nx.random_tree(n, seed=seed)
    extra = draw(st.integers(0, n))
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        g.add_edge(u, v)
    rot = []
    for v in range(n):
        nb = sorted(g.neighbors(v))
        rng.shuffle(nb)
        rot.append(nb)
    signs = {}
    if draw(st.booleans()):
        for u, v in g.edges():
            if rng.random() < 0.4:
                signs[frozenset((u, v))] = -1
    return rot, signs


@settings(max_examples=200, deadline=None)
@given(signed_rotation_systems())
def test_face_tracing_matches_oracle(data):
    rot, signs = data
    G = build_from_neighbors(rot, signs)
    assert sorted(len(w) for w in G.walks) == trace_faces(rot, signs)
    assert euler_genus(G) == 2 - G.n + G.m - len(G.walks)


@settings(max_examples=100, deadline=None)
@given(signed_rotation_systems())
def test_every_dart_twice_and_once_if_orientable(data):
    rot, signs = data
    G = build_from_neighbors(rot, signs)
    count = {}
    for w in G.walks:
        for d in w.darts:
            count[d >> 1] = count.get(d >> 1, 0) + 1
    assert all(c == 2 for c in count.values())
    if not signs:
        seen = [d for w in G.walks for d in w.darts]
        assert len(seen) == len(set(seen))


@settings(max_examples=100, deadline=None)
@given(signed_rotation_systems())
def test_emg_round_trip(data):
    rot, signs = data
    G = build_from_neighbors(rot, signs)
    text = write_emg(G)
    H = parse_emg(text)
    assert H == G
    assert write_emg(H) == text


def test_named_surfaces():
    assert euler_genus(samples.cube()) == 0
    K = samples.k4_projective()
    assert euler_genus(K) == 1 and not K.is_orientable()
    assert sorted(len(w) for w in K.walks) == [4, 4, 4]
    T = samples.groetzsch_torus()
    assert euler_genus(T) == 2 and T.is_orientable()
    P = samples.groetzsch_projective()
    assert euler_genus(P) == 1 and all(len(w) == 4 for w in P.walks)


def test_hexagon_tripod_faces():
    G = samples.hexagon_tripod()
    assert G.genus == 0
    assert sorted(G.face_length(f) for f in G.internal_faces()) == [4, 4, 4]
    assert G.ring_length(0) == 6
    assert all(face_class(G, f) == "closed-2-cell" for f in G.internal_faces())


def test_structure_errors():
    with pytest.raises(NotSimple):
        EmbeddedGraph(2, [(0, 1, 1), (1, 0, 1)], [[0, 2], [1, 3]])
    with pytest.raises(NotSimple):
        EmbeddedGraph(1, [(0, 0, 1)], [[0, 1]])
    with pytest.raises(DanglingReference):
        EmbeddedGraph(2, [(0, 1, 1)], [[0], []])
    with pytest.raises(DanglingReference):
        EmbeddedGraph(2, [(0, 1, 1)], [[0], [1]], rings=[Ring.facial(5)])
    G = samples.cube()
    with pytest.raises(EulerMismatch):
        EmbeddedGraph(G.n, G.edges, G.rot, genus=2)
    with pytest.raises(EmbeddingError):
        parse_emg("EMG 2\n")


def test_ring_must_be_a_cycle():
    # a path 0-1-2 plus a pendant: the single face is not a cycle
    G = build_from_neighbors([[1], [0, 2], [1]])
    with pytest.raises(NotNormal):
        G.with_rings([Ring.facial(0)])


def test_restrict_and_cellularize_genus():
    T = samples.groetzsch_torus()
    keep = [v for v in range(T.n) if v not in (2, 3, 4, 8)]
    es = [e for e, (u, v, _) in enumerate(T.edges) if u in keep and v in keep]
    R = restrict(T, keep, es, rings=())
    assert R.graph.n == 7
    pieces = cellularize(R.graph)
    assert sum(H.n for H, _ in pieces) == 7
    assert all(euler_genus(H) <= 1 for H, _ in pieces)


def test_single_vertex_ring():
    G = samples.single_vertex_ring(weak=True)
    assert G.rings[0].kind == "vertex" and G.rings[0].weak
    assert G.ring_vertices() == {0}
