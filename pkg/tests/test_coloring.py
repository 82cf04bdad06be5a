from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critsurf import samples
from critsurf.census import disk_catalog
from critsurf.coloring import (
    ImproperPrecoloring,
    PrecoloringExtends,
    all_colorings,
    critical_core,
    extend,
    is_3_colorable,
    is_4_critical,
    is_R_critical,
    is_R_critical_literal,
    non_extending,
    phi_critical_subgraph,
    precolorings,
    ring_structure,
    verify_certificate,
)
from oracles import colorable_bruteforce, extends_bruteforce


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return n, [p for p, b in zip(pairs, mask) if b]


@settings(max_examples=200, deadline=None)
@given(small_graphs())
def test_solver_matches_bruteforce(g):
    n, edges = g
    assert is_3_colorable(n, edges) == colorable_bruteforce(n, edges)


@settings(max_examples=100, deadline=None)
@given(small_graphs(6))
def test_all_colorings_complete(g):
    n, edges = g
    got = list(all_colorings(n, edges))
    assert got == sorted(got)
    from itertools import product

    want = [c for c in product((1, 2, 3), repeat=n) if all(c[u] != c[v] for u, v in edges)]
    assert got == want


def test_hexagon_tripod_precolorings():
    G = samples.hexagon_tripod()
    phis = list(precolorings(G))
    assert len(phis) == (2 ** 6 + 2) // 6
    bad = non_extending(G)
    # centre adjacent to v0, v2, v4: fails exactly when those get three colors
    order, _, _ = ring_structure(G)
    for phi in phis:
        col = dict(zip(order, phi))
        assert (phi in bad) == (len({col[0], col[2], col[4]}) == 3)
    ok = extend(G, {0: 1, 1: 2, 2: 1, 3: 2, 4: 1, 5: 2})
    assert ok is not None and ok[6] == 2


@pytest.mark.parametrize("k", range(3, 10))
def test_quotient_count(k):
    ring = samples.with_facial_ring(samples.planar_embedding(nx.cycle_graph(k)), range(k))
    assert len(list(precolorings(ring))) == (2 ** k + 2 * (-1) ** k) // 6
    assert len(list(precolorings(ring, quotient=False))) == 2 ** k + 2 * (-1) ** k


def test_extend_matches_bruteforce_on_census():
    for G in disk_catalog(4, 7, 9).graphs:
        order, _, weak = ring_structure(G)
        edges = [(u, v) for u, v, _ in G.edges]
        for phi in precolorings(G):
            fixed = dict(zip(order, phi))
            assert (extend(G, phi) is not None) == extends_bruteforce(G.n, edges, fixed)


def test_weak_vertex_ring():
    G = samples.single_vertex_ring(weak=True)
    col = extend(G, {0: 1})
    assert col[0] != 1


def test_improper_precoloring():
    G = samples.hexagon_tripod()
    with pytest.raises(ImproperPrecoloring):
        extend(G, {0: 1, 1: 1, 2: 2, 3: 1, 4: 2, 5: 3})
    with pytest.raises(ImproperPrecoloring):
        extend(G, {0: 1})


def test_criticality_examples():
    assert is_R_critical(samples.hexagon_tripod()).verdict
    assert is_R_critical(samples.c8_two_chords()).verdict
    ring = samples.with_facial_ring(samples.planar_embedding(nx.cycle_graph(6)), range(6))
    assert not is_R_critical(ring).verdict


def test_certificates_replay():
    for G in disk_catalog(4, 8, 10).graphs:
        cert = is_R_critical(G)
        assert cert.verdict and verify_certificate(G, cert)


def test_fast_and_literal_criticality_agree():
    rng = random.Random(7)
    from critsurf.census import enumerate_plane_maps

    maps = [M for M in enumerate_plane_maps(4, 6, 9) if M.n > 6]
    for M in rng.sample(maps, 40):
        G = M.to_embedded()
        assert is_R_critical(G).verdict == is_R_critical_literal(G)


def test_4_critical():
    assert is_4_critical(samples.groetzsch_graph())
    assert is_4_critical(nx.complete_graph(4))
    assert not is_4_critical(nx.cycle_graph(5))
    g = samples.groetzsch_graph()
    g.add_edge(10, 11)
    assert not is_4_critical(g)


def test_critical_core():
    g = nx.disjoint_union(samples.groetzsch_graph(), nx.path_graph(3))
    g.add_edge(0, 11)
    n = g.number_of_nodes()
    verts, edges = critical_core(n, list(g.edges()))
    assert verts == list(range(11))
    assert len(edges) == 20
    with pytest.raises(PrecoloringExtends):
        critical_core(5, list(nx.cycle_graph(5).edges()))


def test_phi_critical_subgraph():
    G = samples.hexagon_tripod()
    phi = non_extending(G)[0]
    H = phi_critical_subgraph(G, phi)
    assert H.m == G.m
    with pytest.raises(PrecoloringExtends):
        phi_critical_subgraph(G, (1, 2, 1, 2, 1, 2))
