"""3-coloring extension with ring semantics, and criticality tests."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .surface_map import EmbeddedGraph, restrict

ALL = 7


class ImproperPrecoloring(ValueError):
    pass


class PrecoloringExtends(ValueError):
    pass


# ---------------------------------------------------------------------------
# plain graphs given as (n, edge list)

def masks(n, edges):
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def three_color(n, edges):
    """A proper 3-coloring as a list, or None."""
    return kernels.solve(masks(n, edges), [ALL] * n)


def is_3_colorable(n, edges) -> bool:
    return three_color(n, edges) is not None


def all_colorings(n, edges):
    """Every proper 3-coloring, in lexicographic order."""
    nb = [[] for _ in range(n)]
    for u, v in edges:
        nb[max(u, v)].append(min(u, v))
    col = [0] * n

    def rec(i):
        if i == n:
            yield tuple(col)
            return
        for c in (1, 2, 3):
            if all(col[u] != c for u in nb[i]):
                col[i] = c
                yield from rec(i + 1)
        col[i] = 0

    yield from rec(0)


def _as_plain(graph):
    """Accept a networkx graph, an EmbeddedGraph or ``(n, edges)``."""
    if isinstance(graph, EmbeddedGraph):
        return graph.n, [(u, v) for u, v, _ in graph.edges]
    if isinstance(graph, tuple):
        return graph
    nodes = sorted(graph.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return len(nodes), [(idx[u], idx[v]) for u, v in graph.edges()]


def is_4_critical(graph) -> bool:
    n, edges = _as_plain(graph)
    if n == 0 or is_3_colorable(n, edges):
        return False
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if min(deg) == 0:
        return False
    for i in range(len(edges)):
        if not is_3_colorable(n, edges[:i] + edges[i + 1:]):
            return False
    return True


def critical_core(n, edges):
    """Greedy edge deletion down to a 4-critical subgraph of a non-3-colorable graph.

    Returns ``(vertices, edges)`` of the core.
    """
    if is_3_colorable(n, edges):
        raise PrecoloringExtends("graph is 3-colorable")
    keep = list(edges)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if not is_3_colorable(n, trial):
            keep = trial
        else:
            i += 1
    verts = sorted({v for e in keep for v in e})
    return verts, keep


# ---------------------------------------------------------------------------
# precolorings of rings

def ring_structure(G: EmbeddedGraph):
    """Ring vertices in canonical order, ring edges, and weak flags."""
    order = []
    weak = []
    for r, vs in zip(G.rings, G.ring_vertex_lists()):
        for v in vs:
            order.append(v)
            weak.append(r.kind == "vertex" and r.weak)
    redges = [(G.edges[e][0], G.edges[e][1]) for e in sorted(G.ring_edges())]
    return order, redges, weak


def precolorings(G: EmbeddedGraph, quotient: bool = True):
    """Proper colorings of the union of the rings, as tuples aligned with ``ring_structure``.

    With ``quotient`` only colorings in first-appearance normal form are
    produced (one per orbit of the color permutations).
    """
    order, redges, _ = ring_structure(G)
    pos = {v: i for i, v in enumerate(order)}
    nb = [[] for _ in order]
    for u, v in redges:
        a, b = pos[u], pos[v]
        nb[max(a, b)].append(min(a, b))
    k = len(order)
    col = [0] * k

    def rec(i, used):
        if i == k:
            yield tuple(col)
            return
        top = min(used + 1, 3) if quotient else 3
        for c in range(1, top + 1):
            if all(col[j] != c for j in nb[i]):
                col[i] = c
                yield from rec(i + 1, max(used, c))
        col[i] = 0

    yield from rec(0, 0)


def _domains(G, order, weak, phi, n=None):
    n = G.n if n is None else n
    dom = [ALL] * n
    for v, w, c in zip(order, weak, phi):
        bit = 1 << (c - 1)
        dom[v] = (ALL & ~bit) if w else bit
    return dom


def _phi_tuple(G, phi):
    order, redges, _ = ring_structure(G)
    if isinstance(phi, dict):
        try:
            t = tuple(int(phi[v]) for v in order)
        except KeyError as exc:
            raise ImproperPrecoloring(f"ring vertex {exc.args[0]} is not precolored") from exc
    else:
        t = tuple(int(c) for c in phi)
        if len(t) != len(order):
            raise ImproperPrecoloring(f"expected {len(order)} colors, got {len(t)}")
    if any(c not in (1, 2, 3) for c in t):
        raise ImproperPrecoloring("colors must be 1, 2 or 3")
    pos = {v: i for i, v in enumerate(order)}
    for u, v in redges:
        if t[pos[u]] == t[pos[v]]:
            raise ImproperPrecoloring(f"ring edge {u}{v} is monochromatic")
    return t


def extend(G: EmbeddedGraph, phi, edges=None):
    """Extend a precoloring of the rings to all of ``G`` (or to the spanning subgraph ``edges``).

    ``phi`` is a dict ring-vertex -> color or a tuple in ``ring_structure`` order.
    Returns the coloring as a list indexed by vertex, or None.
    """
    t = _phi_tuple(G, phi)
    order, _, weak = ring_structure(G)
    es = [(u, v) for u, v, _ in G.edges] if edges is None else [G.edges[e][:2] for e in edges]
    return kernels.solve(masks(G.n, es), _domains(G, order, weak, t))


def extends_many(G: EmbeddedGraph, phis, edges=None):
    order, _, weak = ring_structure(G)
    es = [(u, v) for u, v, _ in G.edges] if edges is None else [G.edges[e][:2] for e in edges]
    res = kernels.extends_batch(masks(G.n, es), [ALL] * G.n, order, weak, list(phis))
    return [bool(b) for b in res]


def non_extending(G: EmbeddedGraph, edges=None, quotient=True):
    phis = list(precolorings(G, quotient))
    ok = extends_many(G, phis, edges)
    return [p for p, e in zip(phis, ok) if not e]


# ---------------------------------------------------------------------------
# criticality

@dataclass
class CriticalityCertificate:
    verdict: bool
    witnesses: dict = field(default_factory=dict)  # ("edge", e) / ("vertex", v) -> precoloring tuple
    counterexample: tuple | None = None  # the subgraph without a witness
    reason: str = ""

    def __bool__(self):
        return self.verdict


def _deletions(G: EmbeddedGraph):
    ring_e = G.ring_edges()
    ring_v = G.ring_vertices()
    out = [("edge", e) for e in range(G.m) if e not in ring_e]
    out += [("vertex", v) for v in range(G.n) if v not in ring_v and not G.rot[v]]
    return out


def is_R_critical(G: EmbeddedGraph) -> CriticalityCertificate:
    if not G.rings:
        raise ValueError("criticality with respect to rings needs at least one ring")
    dels = _deletions(G)
    if not dels:
        return CriticalityCertificate(False, reason="G equals the union of its rings")
    bad = non_extending(G)
    witnesses = {}
    for d in dels:
        if d[0] == "vertex":
            # an isolated vertex never stops an extension
            return CriticalityCertificate(False, witnesses, d, f"isolated internal vertex {d[1]}")
        edges = [e for e in range(G.m) if e != d[1]]
        ok = extends_many(G, bad, edges) if bad else []
        hit = next((p for p, e in zip(bad, ok) if e), None)
        if hit is None:
            return CriticalityCertificate(False, witnesses, d, f"no precoloring separates G from G-e{d[1]}")
        witnesses[d] = hit
    return CriticalityCertificate(True, witnesses)


def verify_certificate(G: EmbeddedGraph, cert: CriticalityCertificate) -> bool:
    """Replay every witness through ``extend``."""
    if not cert.verdict:
        return True
    if set(cert.witnesses) != set(_deletions(G)):
        return False
    for d, phi in cert.witnesses.items():
        if extend(G, phi) is not None:
            return False
        edges = [e for e in range(G.m) if not (d[0] == "edge" and e == d[1])]
        if extend(G, phi, edges) is None:
            return False
    return True


def is_R_critical_literal(G: EmbeddedGraph) -> bool:
    """Definition check over every proper subgraph containing the rings (tiny graphs only)."""
    from itertools import combinations

    ring_e = G.ring_edges()
    ring_v = G.ring_vertices()
    free_e = [e for e in range(G.m) if e not in ring_e]
    free_v = [v for v in range(G.n) if v not in ring_v]
    if not free_e and not free_v:
        return False
    bad = non_extending(G, quotient=False)
    for r in range(len(free_e) + 1):
        for drop in combinations(free_e, r):
            edges = [e for e in range(G.m) if e not in drop]
            ok = extends_many(G, bad, edges) if bad else []
            # proper subgraph: drop an edge, or keep all edges and drop a vertex
            if drop and not any(ok):
                return False
    if any(not G.rot[v] for v in free_v):
        return False
    return True


def phi_critical_edges(G: EmbeddedGraph, phi):
    """Edge set of a phi-critical subgraph found by greedy deletion in edge order."""
    t = _phi_tuple(G, phi)
    if extend(G, t) is not None:
        raise PrecoloringExtends("the precoloring extends to G")
    ring_e = G.ring_edges()
    keep = list(range(G.m))
    for e in range(G.m):
        if e in ring_e:
            continue
        trial = [x for x in keep if x != e]
        if extend(G, t, trial) is None:
            keep = trial
    return keep


def phi_critical_restriction(G: EmbeddedGraph, phi):
    keep = phi_critical_edges(G, phi)
    ring_v = G.ring_vertices()
    verts = {v for e in keep for v in G.edges[e][:2]} | ring_v
    return restrict(G, verts, keep)


def phi_critical_subgraph(G: EmbeddedGraph, phi) -> EmbeddedGraph:
    return phi_critical_restriction(G, phi).graph
