"""Small named instances used by the tests, the CLI and the census seeds."""
from __future__ import annotations

import networkx as nx

from .surface_map import EmbeddedGraph, Ring, build_from_neighbors, facial_ring


def planar_embedding(graph: nx.Graph, order=None) -> EmbeddedGraph:
    """Embed a planar networkx graph on the sphere (nodes relabelled 0..n-1)."""
    nodes = sorted(graph.nodes()) if order is None else list(order)
    index = {v: i for i, v in enumerate(nodes)}
    ok, emb = nx.check_planarity(graph)
    if not ok:
        raise ValueError("graph is not planar")
    nbrs = [[index[u] for u in emb.neighbors_cw_order(v)] for v in nodes]
    return build_from_neighbors(nbrs)


def with_facial_ring(G: EmbeddedGraph, cycle) -> EmbeddedGraph:
    return G.with_rings([facial_ring(G, cycle)])


def hexagon_tripod() -> EmbeddedGraph:
    """Ring v0..v5 with a centre 6 joined to v0, v2, v4."""
    G = build_from_neighbors([[1, 6, 5], [2, 0], [3, 6, 1], [4, 2], [5, 6, 3], [0, 4], [0, 2, 4]])
    return with_facial_ring(G, range(6))


def cube() -> EmbeddedGraph:
    return planar_embedding(nx.convert_node_labels_to_integers(nx.hypercube_graph(3), ordering="sorted"))


def c8_two_chords() -> EmbeddedGraph:
    """An 8-cycle ring with the chords v0v3 and v4v7."""
    G = build_from_neighbors([[1, 3, 7], [2, 0], [3, 1], [4, 0, 2], [5, 7, 3], [6, 4], [7, 5], [0, 4, 6]])
    return with_facial_ring(G, range(8))


def k4_projective() -> EmbeddedGraph:
    """K4 in the projective plane with three quadrilateral faces."""
    return build_from_neighbors([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]],
                                signs={frozenset((0, 2)): -1, frozenset((1, 3)): -1})


def groetzsch_graph() -> nx.Graph:
    """The Mycielskian of C5 (11 vertices, 20 edges)."""
    g = nx.cycle_graph(5)
    for i in range(5):
        for j in ((i - 1) % 5, (i + 1) % 5):
            g.add_edge(5 + i, j)
        g.add_edge(10, 5 + i)
    return g


def single_vertex_ring(weak: bool = False) -> EmbeddedGraph:
    """A vertex ring 0 with one neighbour, on the sphere with one cuff."""
    G = EmbeddedGraph(2, [(0, 1, 1)], [[0], [1]])
    return G.with_rings([Ring.at_vertex(0, 0, weak)])


def figure1_host() -> EmbeddedGraph:
    """A quad v0v1v2v3 with paths v0-4-8-5-v2 and v1-6-8-7-v3 meeting at 8.

    Vertex 7 is a ring whose cuff lies in the 5-face v2v3-7-8-5 and vertex 6
    a ring whose cuff lies in the 5-face v0v1-6-8-4.  Identifying v0 with v2
    produces a 4-cycle that surrounds a ring and can be flipped.
    """
    g = nx.Graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 8), (8, 5), (5, 2),
                  (1, 6), (6, 8), (8, 7), (7, 3)])
    G = planar_embedding(g)
    rings = []
    for v, cuff in ((7, {2, 3, 7, 8, 5}), (6, {0, 1, 6, 8, 4})):
        face = next(i for i, rec in enumerate(G.faces) if set(G.walk_vertices(rec.walks[0])) == cuff)
        rings.append(Ring.at_vertex(v, face))
    return G.with_rings(rings)


def figure1_cylinder() -> EmbeddedGraph:
    """The host above with v0 and v2 identified: one flippable 4-cycle."""
    from .reduce import collapse_4face

    G = figure1_host()
    f = next(i for i, rec in enumerate(G.faces)
             if len(rec.walks) == 1 and sorted(G.walk_vertices(rec.walks[0])) == [0, 1, 2, 3])
    return collapse_4face(G, f, 0, check_ring_bound=False).graph


def _cycles_of_length(adj, L):
    """Every cycle of length ``L`` once, as a tuple starting at its least vertex."""
    out = []

    def ext(path):
        v = path[-1]
        if len(path) == L:
            if path[0] in adj[v] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in sorted(adj[v]):
            if w > path[0] and w not in path:
                path.append(w)
                ext(path)
                path.pop()

    for s in sorted(adj):
        ext([s])
    return out


def embed_with_faces(graph: nx.Graph, lengths=(4,), euler_char=1, orientable=None, limit=None):
    """Search for cellular embeddings of ``graph`` whose faces are cycles of the given lengths.

    Yields EmbeddedGraph objects (nodes relabelled 0..n-1 in sorted order).
    Each edge lies on exactly two faces and the faces around every vertex
    form one cycle, so the face sets found are exactly the cellular
    embeddings with cycle-bounded faces.
    """
    from .surface_map import assemble

    nodes = sorted(graph.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    adj = {i: set() for i in range(n)}
    for u, v in graph.edges():
        adj[idx[u]].add(idx[v])
        adj[idx[v]].add(idx[u])
    edges = sorted((min(u, v), max(u, v)) for u in adj for v in adj[u] if u < v)
    eid = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    nfaces = euler_char - n + m
    cycles = [c for L in lengths for c in _cycles_of_length(adj, L)]
    cedges = [[eid[(min(c[i], c[(i + 1) % len(c)]), max(c[i], c[(i + 1) % len(c)]))] for i in range(len(c))]
              for c in cycles]
    through = [[] for _ in range(m)]
    for ci, es in enumerate(cedges):
        for e in es:
            through[e].append(ci)
    if sum(len(c) for c in cycles) == 0 or nfaces <= 0:
        return
    used = [0] * m
    chosen = []
    found = 0

    def links_ok():
        for v in range(n):
            link = {u: [] for u in adj[v]}
            for ci in chosen:
                c = cycles[ci]
                if v in c:
                    i = c.index(v)
                    a, b = c[i - 1], c[(i + 1) % len(c)]
                    link[a].append(b)
                    link[b].append(a)
            start = next(iter(link))
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in link[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(link):
                return False
        return True

    def build():
        t0, t1, t2, vkey, ekey = [], [], [], [], []
        slot = {}
        base = []
        for ci in chosen:
            c = cycles[ci]
            L = len(c)
            b = len(t0)
            base.append(b)
            for i in range(L):
                for s in (0, 1):
                    t0.append(b + 2 * i + (1 - s))
                    t1.append(b + 2 * ((i + 1) % L) if s else b + 2 * ((i - 1) % L) + 1)
                    t2.append(-1)
                    vkey.append(c[(i + s) % L])
                    ekey.append(eid[(min(c[i], c[(i + 1) % L]), max(c[i], c[(i + 1) % L]))])
                    slot.setdefault((ekey[-1], vkey[-1]), []).append(b + 2 * i + s)
        for pair in slot.values():
            x, y = pair
            t2[x], t2[y] = y, x
        groups = [(0, [b], []) for b in base]
        G, _, _ = assemble(t0, t1, t2, vkey, ekey, [], groups, [])
        return G

    def rec():
        nonlocal found
        if len(chosen) > nfaces:
            return
        best = None
        for e in range(m):
            if used[e] < 2:
                opts = [ci for ci in through[e] if ci not in chosen and all(used[x] < 2 for x in cedges[ci])]
                if best is None or len(opts) < len(best[1]):
                    best = (e, opts)
                    if not opts:
                        break
        if best is None:
            if len(chosen) == nfaces and links_ok():
                G = build()
                if orientable is None or G.is_orientable() == orientable:
                    found += 1
                    yield G
            return
        for ci in best[1]:
            chosen.append(ci)
            for x in cedges[ci]:
                used[x] += 1
            yield from rec()
            for x in cedges[ci]:
                used[x] -= 1
            chosen.pop()
            if limit is not None and found >= limit:
                return

    yield from rec()


def groetzsch_projective() -> EmbeddedGraph:
    """The Grötzsch graph as a quadrangulation of the projective plane."""
    return next(embed_with_faces(groetzsch_graph(), (4,), 1, False, limit=1))


def groetzsch_torus() -> EmbeddedGraph:
    """The Grötzsch graph on the torus (seven quads, a 5-face and a 7-face)."""
    return next(embed_with_faces(groetzsch_graph(), (4, 5, 6, 7, 8), 0, True, limit=1))


def random_quadrangulation_patch(rng, n_max: int = 14) -> EmbeddedGraph:
    """A random disk patch: a 4-cycle ring filled with quadrilaterals.

    Grows by placing a new vertex inside a random quad, joined to two
    opposite corners; ``rng`` is a ``random.Random``.
    """
    from .census import PlaneMap

    n = rng.randint(6, n_max)
    M = PlaneMap.ring(4)
    M = M.add_ear(M.faces()[0], 0, 2, 2)
    while M.n < n:
        faces = M.faces()
        face = faces[rng.randrange(len(faces))]
        i = rng.randrange(2)
        M = M.add_ear(face, i, i + 2, 2)
    return M.to_embedded()
