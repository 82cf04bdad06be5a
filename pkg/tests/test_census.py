from __future__ import annotations

from itertools import combinations, permutations, product

import networkx as nx
import pytest

from critsurf import samples
from critsurf.census import (
    Catalog,
    CatalogIncomplete,
    PlaneMap,
    big_faces,
    disk_catalog,
    disk_code,
    enumerate_plane_maps,
    enumerate_surface,
    has_nonbipartite_quadrangulation,
    is_refinement,
    run_verification,
)
from critsurf.coloring import is_4_critical
from critsurf.surface_map import build_from_neighbors, euler_genus
from oracles import map_isomorphic, trace_faces


def test_small_catalogs():
    assert disk_catalog(4, 4, 10).multisets() == []
    assert disk_catalog(4, 5, 10).multisets() == []
    assert disk_catalog(4, 6, 10).multisets() == [()]
    assert disk_catalog(4, 7, 10).multisets() == [(5,)]
    assert disk_catalog(4, 8, 10).multisets() == [(), (5, 5), (6,)]
    for k in (5, 6, 7):
        assert disk_catalog(5, k, 12).multisets() == []


def test_tripod_in_catalog():
    code = disk_code(samples.hexagon_tripod())
    assert any(disk_code(G) == code for G in disk_catalog(4, 6, 10).graphs)


def _ring_colors(G):
    fid = G.rings[0].face
    col = [0] * len(G.t0)
    for w in G.faces[fid].walks:
        for x in G.walks[w].flags:
            col[x] = col[G.t0[x]] = 1
    return col


def test_enumeration_has_no_isomorphic_pairs():
    maps = [M.to_embedded() for M in enumerate_plane_maps(4, 6, 8)]
    assert len(maps) > 20
    cols = [_ring_colors(G) for G in maps]
    for i, j in combinations(range(len(maps)), 2):
        if maps[i].m == maps[j].m and maps[i].n == maps[j].n:
            assert not map_isomorphic(maps[i], maps[j], cols[i], cols[j])


def test_enumeration_matches_rotation_bruteforce():
    """Sphere maps with n <= 6, counted by trying every rotation system of every graph."""
    from critsurf.census import _code_all

    want = set()
    for g in nx.graph_atlas_g()[1:]:
        n = g.number_of_nodes()
        if n < 4 or n > 6 or not nx.is_biconnected(g) or any(nx.triangles(g).values()):
            continue
        choices = []
        for v in range(n):
            nb = sorted(g.neighbors(v))
            choices.append([[nb[0]] + list(p) for p in permutations(nb[1:])])
        for rot in product(*choices):
            rot = [list(r) for r in rot]
            if len(trace_faces(rot)) != 2 - n + g.number_of_edges():
                continue
            G = build_from_neighbors(rot)
            want.add(_code_all(G.t0, G.t1, G.t2))
    got = {_code_all(G.t0, G.t1, G.t2) for G in enumerate_surface("sphere", 6)}
    assert got == want


def test_projective_matches_bruteforce():
    from critsurf.census import _code_all

    want = set()
    for g in nx.graph_atlas_g()[1:]:
        n = g.number_of_nodes()
        if n < 4 or n > 5 or not nx.is_biconnected(g) or any(nx.triangles(g).values()):
            continue
        edges = list(g.edges())
        choices = []
        for v in range(n):
            nb = sorted(g.neighbors(v))
            choices.append([[nb[0]] + list(p) for p in permutations(nb[1:])])
        for rot in product(*choices):
            rot = [list(r) for r in rot]
            for mask in range(1 << len(edges)):
                signs = {frozenset(e): -1 for i, e in enumerate(edges) if mask >> i & 1}
                if len(trace_faces(rot, signs)) != 1 - n + len(edges):
                    continue
                G = build_from_neighbors(rot, signs)
                if G.is_orientable():
                    continue
                want.add(_code_all(G.t0, G.t1, G.t2))
    got = {_code_all(G.t0, G.t1, G.t2) for G in enumerate_surface("projective-plane", 5)}
    assert got == want


def test_surface_enumeration_small():
    tor = list(enumerate_surface("torus", 7))
    assert tor and all(euler_genus(G) == 2 and G.is_orientable() for G in tor)
    assert not any(is_4_critical(G) for G in tor)
    kb = list(enumerate_surface("klein-bottle", 6))
    assert kb and all(euler_genus(G) == 2 and not G.is_orientable() for G in kb)
    quads = list(enumerate_surface("projective-plane", 8, quadrangulation=True))
    assert all(all(len(w) == 4 for w in G.walks) for G in quads)
    with pytest.raises(ValueError):
        list(enumerate_surface("mobius", 5))


def test_projective_witness():
    W = samples.groetzsch_projective()
    assert has_nonbipartite_quadrangulation(W) is not None
    assert has_nonbipartite_quadrangulation(samples.k4_projective()) is None


def test_refinement_examples():
    cats = {k: disk_catalog(4, k, 10) for k in range(4, 11)}
    res = is_refinement((), (6,), cats)
    assert res.verdict and res.chain == [((6,), 6, ())]
    assert is_refinement((5, 5), (5, 5), cats).chain == []
    assert not is_refinement((6,), (5,), cats).verdict
    with pytest.raises(CatalogIncomplete):
        is_refinement((), (6,), {6: cats[6]})


def test_catalog_file_round_trip(tmp_path):
    cat = disk_catalog(4, 8, 10)
    path = tmp_path / "cat.txt"
    cat.write(path, tmp_path / "w")
    lines = path.read_text().splitlines()
    assert lines[1].startswith("{5,5} | ") and lines[1].endswith("| 10")
    back = Catalog.read(path, 4, 8)
    assert back.multisets() == cat.multisets() and back.exhaustive_up_to == 10
    assert len(list((tmp_path / "w").iterdir())) == 3


def test_big_faces_and_plane_map():
    M = PlaneMap.ring(8)
    M = M.add_ear(M.faces()[0], 0, 3, 1)
    assert sorted(len(f) for f in M.faces()) == [4, 6]
    G = M.to_embedded()
    assert big_faces(G) == (6,)


def test_suites_pass():
    for suite in ("disk-bounds", "girth5", "refinement", "surfineq", "reduce"):
        rep = run_verification(suite)
        assert rep.verdict, rep.text()
    with pytest.raises(ValueError):
        run_verification("nope")
