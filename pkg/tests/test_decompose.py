from __future__ import annotations

import networkx as nx
import pytest

from critsurf import samples
from critsurf.coloring import is_3_colorable, is_4_critical
from critsurf.decompose import HasTriangle, deletion_set, max_4critical_packing
from critsurf.surface_map import build_from_neighbors


def _check_certificate(G, res):
    Xs = set(res.X)
    for u, v, _ in G.edges:
        if u not in Xs and v not in Xs:
            assert res.certificate[u] != res.certificate[v]
    assert len(res.X) <= res.bound


def test_packing_two_disjoint_groetzsch():
    g = nx.disjoint_union(samples.groetzsch_graph(), samples.groetzsch_graph())
    pack = max_4critical_packing(g)
    assert len(pack) == 2
    assert sorted(len(v) for v, _ in pack) == [11, 11]
    assert not set(pack[0][0]) & set(pack[1][0])


def test_packing_ignores_pendant_path():
    g = samples.groetzsch_graph()
    g.add_edges_from([(10, 11), (11, 12), (12, 13)])
    pack = max_4critical_packing(g)
    assert len(pack) == 1
    verts, edges = pack[0]
    assert sorted(verts) == list(range(11))
    assert is_4_critical((11, edges))


def test_packing_of_bipartite_graph_is_empty():
    assert max_4critical_packing(nx.cycle_graph(6)) == []


def test_planar_input_needs_nothing():
    G = samples.cube()
    res = deletion_set(G)
    assert res.X == [] and res.genus == 0
    assert res.trace[0][0] == 1
    _check_certificate(G, res)


def test_groetzsch_projective_single_vertex():
    G = samples.groetzsch_projective()
    res = deletion_set(G)
    assert len(res.X) == 1
    assert [t[0] for t in res.trace] == [4]
    _check_certificate(G, res)


def test_groetzsch_torus_genus_drops():
    G = samples.groetzsch_torus()
    res = deletion_set(G)
    _check_certificate(G, res)
    assert res.trace[0][0] == 2 and res.trace[0][1] == 2
    assert res.trace[-1][1] < res.trace[0][1]
    rest = [v for v in range(G.n) if v not in set(res.X)]
    idx = {v: i for i, v in enumerate(rest)}
    es = [(idx[u], idx[v]) for u, v, _ in G.edges if u in idx and v in idx]
    assert is_3_colorable(len(rest), es)


def test_triangle_rejected():
    K4 = build_from_neighbors([[1, 2, 3], [2, 0, 3], [0, 1, 3], [0, 2, 1]])
    with pytest.raises(HasTriangle):
        deletion_set(K4)


def test_trace_text_is_stable():
    G = samples.groetzsch_projective()
    a, b = deletion_set(G).text(), deletion_set(G).text()
    assert a == b
    assert "rule=4 genus=1 n=11" in a
    assert "beta = 8226000" in a
