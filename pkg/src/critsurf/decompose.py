"""Small vertex sets whose removal makes a triangle-free embedded graph 3-colorable."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .coloring import ALL, _as_plain, critical_core, is_3_colorable, is_4_critical, masks, three_color
from .surface_map import EmbeddedGraph, cellularize, euler_genus, restrict
from .topology import classify_cycle
from .weights import default_kappa, fmt, four_cycles, triangles


class HasTriangle(ValueError):
    pass


class ColoringFailed(AssertionError):
    pass


@dataclass
class DeletionResult:
    X: list
    trace: list = field(default_factory=list)  # (rule, genus, n, detail)
    certificate: list = field(default_factory=list)  # color per vertex, 0 on X
    genus: int = 0
    beta: Fraction = Fraction(4)

    @property
    def bound(self) -> Fraction:
        return self.beta * self.genus

    def trace_lines(self):
        return [f"rule={r} genus={g} n={n} detail={d}" for r, g, n, d in self.trace]

    def text(self) -> str:
        lines = [f"genus = {self.genus}", f"beta = {fmt(self.beta)}", f"bound = {fmt(self.bound)}",
                 f"size = {len(self.X)}", "X = " + " ".join(map(str, self.X)),
                 "coloring = " + " ".join(map(str, self.certificate))]
        lines += self.trace_lines()
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# packings

def max_4critical_packing(graph):
    """Greedy maximal family of vertex-disjoint 4-critical subgraphs.

    Accepts a networkx graph, an EmbeddedGraph or ``(n, edges)``.  Returns a
    list of ``(vertices, edges)`` in the input's vertex numbering.
    """
    n, edges = _as_plain(graph)
    alive = set(range(n))
    out = []
    while True:
        verts = sorted(alive)
        idx = {v: i for i, v in enumerate(verts)}
        es = [(idx[u], idx[v]) for u, v in edges if u in alive and v in alive]
        if is_3_colorable(len(verts), es):
            return out
        cv, ce = critical_core(len(verts), es)
        out.append(([verts[v] for v in cv], [(verts[u], verts[v]) for u, v in ce]))
        alive -= {verts[v] for v in cv}


# ---------------------------------------------------------------------------
# the recursion

def _color_minus(n, edges, X):
    """A 3-coloring of the graph minus ``X`` (0 on ``X``), or None."""
    Xs = set(X)
    es = [(u, v) for u, v in edges if u not in Xs and v not in Xs]
    dom = [1 if v in Xs else ALL for v in range(n)]
    col = kernels.solve(masks(n, es), dom)
    if col is None:
        return None
    return [0 if v in Xs else c for v, c in enumerate(col)]


def _sub(G: EmbeddedGraph, keep):
    """Restriction to the vertices ``keep``, re-cut into open 2-cell pieces.

    Returns ``[(H, vertex list into G)]``.
    """
    keep = set(keep)
    es = [e for e, (u, v, _) in enumerate(G.edges) if u in keep and v in keep]
    R = restrict(G, keep, es, rings=())
    inv = {b: a for a, b in R.vmap.items()}
    out = []
    for H, comp in cellularize(R.graph):
        out.append((H, [inv[v] for v in comp]))
    return out


def _nonfacial_four_cycles(G: EmbeddedGraph):
    facial = set()
    for w in G.walks:
        if len(w) == 4 and w.vertex is None:
            vs = frozenset(G.walk_vertices(G.walks.index(w)))
            if len(vs) == 4:
                facial.add(vs)
    return [q for q in four_cycles(G) if frozenset(q) not in facial]


def _disk_inside(G: EmbeddedGraph, cls):
    """Vertices strictly inside and edges inside the closed disk bounded by a contractible cycle."""
    disk = next(p for p in cls.cut.pieces if p.genus == 0 and not p.ring_ids)
    verts, edges = set(), set()
    for f in disk.host_faces:
        for w in G.faces[f].walks:
            verts.update(G.walk_vertices(w))
            edges.update(G.walk_edges(w))
    return verts, edges


def _solve(G: EmbeddedGraph, trace, depth=0):
    """Deletion set for a cellular triangle-free embedding; returns (X, coloring) in G's numbering."""
    n = G.n
    edges = [(u, v) for u, v, _ in G.edges]
    g = euler_genus(G)
    if g == 0:
        col = three_color(n, edges)
        if col is None:
            raise ColoringFailed("a triangle-free plane graph was not 3-colored")
        trace.append((1, 0, n, "planar, X empty"))
        return [], col
    for K in _nonfacial_four_cycles(G):
        cls = classify_cycle(G, K)
        if cls.tag == "contractible":
            continue
        trace.append((2, g, n, f"non-contractible 4-cycle {'-'.join(map(str, K))}"))
        X, col = [], [0] * n
        for H, vl in _sub(G, set(range(n)) - set(K)):
            gh = euler_genus(H)
            if gh > g - 1:
                raise AssertionError(f"a piece after deleting a non-contractible 4-cycle has genus {gh} > {g - 1}")
            Xh, ch = _solve(H, trace, depth + 1)
            X += [vl[x] for x in Xh]
            for i, c in enumerate(ch):
                col[vl[i]] = c
        X += list(K)
        for v in K:
            col[v] = 0
        return sorted(X), col
    for K in _nonfacial_four_cycles(G):
        cls = classify_cycle(G, K)
        inside_v, inside_e = _disk_inside(G, cls)
        interior = inside_v - set(K)
        if not interior:
            continue
        trace.append((3, g, n, f"contractible 4-cycle {'-'.join(map(str, K))} with {len(interior)} vertices inside"))
        outside = set(range(n)) - interior
        X, col = [], [0] * n
        for H, vl in _sub(G, outside):
            Xh, ch = _solve(H, trace, depth + 1)
            X += [vl[x] for x in Xh]
            for i, c in enumerate(ch):
                col[vl[i]] = c
        # choose a proper coloring of K agreeing with col off X, then extend inside
        Xs = set(X)
        psi = None
        for c0 in range(1, 4):
            for c1 in range(1, 4):
                for c2 in range(1, 4):
                    for c3 in range(1, 4):
                        cand = (c0, c1, c2, c3)
                        if any(K[i] not in Xs and col[K[i]] != cand[i] for i in range(4)):
                            continue
                        if any(cand[i] == cand[(i + 1) % 4] for i in range(4)):
                            continue
                        psi = cand
                        break
                    if psi:
                        break
                if psi:
                    break
            if psi:
                break
        hv = sorted(inside_v)
        hidx = {v: i for i, v in enumerate(hv)}
        hes = [(hidx[G.edges[e][0]], hidx[G.edges[e][1]]) for e in sorted(inside_e)]
        dom = [ALL] * len(hv)
        for v, c in zip(K, psi):
            dom[hidx[v]] = 1 << (c - 1)
        ext = kernels.solve(masks(len(hv), hes), dom)
        if ext is None:
            raise AssertionError("a precoloring of a 4-cycle did not extend into its disk")
        for v in interior:
            col[v] = ext[hidx[v]]
        return sorted(X), col
    if is_4_critical((n, edges)):
        trace.append((4, g, n, "4-critical, X = {0}"))
        col = _color_minus(n, edges, [0])
        if col is None:
            raise ColoringFailed("G - v is not 3-colorable for a 4-critical G")
        return [0], col
    packing = max_4critical_packing((n, edges))
    X = set()
    for verts, pes in packing:
        vs = set(verts)
        es = [e for e, (u, v, _) in enumerate(G.edges) if (min(u, v), max(u, v)) in {(min(a, b), max(a, b)) for a, b in pes}]
        R = restrict(G, vs, es, rings=())
        inv = {b: a for a, b in R.vmap.items()}
        for H, vl in cellularize(R.graph):
            for w_id, w in enumerate(H.walks):
                if len(w) > 4:
                    X.update(inv[vl[x]] for x in H.walk_vertices(w_id))
    X = sorted(X)
    trace.append((5, g, n, f"packing of {len(packing)} 4-critical subgraphs, {len(X)} vertices on long faces"))
    col = _color_minus(n, edges, X)
    if col is None:
        raise ColoringFailed("G - X is not 3-colorable after the packing rule")
    return X, col


def deletion_set(G: EmbeddedGraph, kappa=None) -> DeletionResult:
    """Find ``X`` such that ``G - X`` is 3-colorable, following the case analysis of the
    linear bound; ``|X| <= beta * g`` with ``beta = max(5 kappa, 4)`` is reported, and the
    certificate coloring is always checked.
    """
    if triangles(G):
        raise HasTriangle("the graph contains a triangle")
    kappa = default_kappa() if kappa is None else Fraction(kappa)
    beta = max(5 * kappa, Fraction(4))
    g = euler_genus(G)
    trace = []
    X, col = [], [0] * G.n
    if any(f.genus or len(f.walks) > 1 for f in G.faces):
        pieces = cellularize(G)
    else:
        pieces = [(G, list(range(G.n)))]
    for H, vl in pieces:
        Xh, ch = _solve(H, trace)
        X += [vl[x] for x in Xh]
        for i, c in enumerate(ch):
            col[vl[i]] = c
    X = sorted(X)
    Xs = set(X)
    for u, v, _ in G.edges:
        if u not in Xs and v not in Xs and col[u] == col[v]:
            raise ColoringFailed(f"certificate coloring is improper on edge {u}{v}")
    if any(col[v] not in (1, 2, 3) for v in range(G.n) if v not in Xs):
        raise ColoringFailed("certificate leaves a vertex uncolored")
    if len(X) > beta * g:
        raise AssertionError(f"|X| = {len(X)} exceeds beta*g = {fmt(beta * g)}")
    return DeletionResult(X, trace, col, g, beta)
