"""Reducing 4-faces: ring-bound tests, collapsing, covers with elasticity, flips."""
from __future__ import annotations

from dataclasses import dataclass, field

from .coloring import (
    is_R_critical,
    non_extending,
    phi_critical_restriction,
    ring_structure,
)
from .surface_map import EmbeddedGraph, Ring, assemble, face_class, is_omnipresent, restrict
from .topology import (
    PropertyViolated,
    classify_cycle,
    g_expansion,
    min_essential_edges,
    subgraph_embedding,
)
from .weights import four_cycles, s, total_weight, triangles


class NotA4Face(ValueError):
    pass


class RingBound(ValueError):
    pass


class Adjacent(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


class NoNonExtendingPrecoloring(ValueError):
    pass


class NotFlippable(ValueError):
    pass


class PostconditionFailed(AssertionError):
    pass


# ---------------------------------------------------------------------------
# helpers

def quad_vertices(G: EmbeddedGraph, f: int) -> list[int]:
    rec = G.faces[f]
    if rec.is_ring_face or rec.genus != 0 or len(rec.walks) != 1:
        raise NotA4Face(f"face {f} is not an internal 2-cell face")
    w = rec.walks[0]
    if len(G.walks[w]) != 4 or not G.walk_is_cycle(w):
        raise NotA4Face(f"face {f} is not bounded by a 4-cycle")
    return G.walk_vertices(w)


def internal_quads(G: EmbeddedGraph) -> list[int]:
    out = []
    for f in G.internal_faces():
        try:
            quad_vertices(G, f)
        except NotA4Face:
            continue
        out.append(f)
    return out


def simple_paths(G: EmbeddedGraph, a: int, b: int, max_len: int, avoid=()):
    """Simple paths from ``a`` to ``b`` with at most ``max_len`` edges."""
    adj = G.adjacency()
    avoid = set(avoid)
    stack = [(a, [a])]
    while stack:
        u, path = stack.pop()
        for v in sorted(adj[u]):
            if v == b:
                yield path + [b]
            elif v not in path and v not in avoid and len(path) < max_len:
                stack.append((v, path + [v]))


def _ring_of_vertex(G: EmbeddedGraph):
    out = {}
    for i, vs in enumerate(G.ring_vertex_lists()):
        for v in vs:
            out[v] = i
    return out


def is_ring_bound(G: EmbeddedGraph, f: int):
    """Return ``(verdict, reason)`` for an internal 4-face."""
    q = quad_vertices(G, f)
    owner = _ring_of_vertex(G)
    rings_on = {owner[v] for v in q if v in owner}
    if len(rings_on) >= 2:
        return True, "incident with two distinct rings"
    for i in range(2):
        if q[i] in owner and q[i + 2] in owner:
            return True, f"opposite vertices {q[i]} and {q[i + 2]} are ring vertices"
    for i in range(4):
        w1, w2, w3, w4 = q[i], q[(i + 1) % 4], q[(i + 2) % 4], q[(i + 3) % 4]
        r = G.vertex_ring_at(w1)
        if r is None:
            continue
        ri = G.rings.index(r)
        for p in simple_paths(G, w4, w2, 4, avoid=(w3,)):
            if len(p) < 3:
                continue
            cyc = [w3] + p
            if len(cyc) > 6 or len(set(cyc)) != len(cyc):
                continue
            cls = classify_cycle(G, cyc)
            if cls.tag == "surrounds" and ri in cls.surrounded:
                return True, f"cycle {cyc} of length {len(cyc)} surrounds vertex ring {w1}"
    return False, "not ring-bound"


# ---------------------------------------------------------------------------
# collapsing a 4-face

@dataclass
class Collapse:
    graph: EmbeddedGraph
    quad: tuple  # (v1, v2, v3, v4) with v1 and v3 identified
    z: int  # the new vertex in ``graph``
    vmap: dict  # host vertex -> vertex of ``graph``
    emap: dict  # host edge -> edge of ``graph`` (suppressed edges go to the kept parallel edge)
    flagmap: dict  # host flag -> flag of ``graph`` (flags of suppressed edges are absent)
    facemap: dict  # host face -> face of ``graph``; the collapsed face maps to a tuple of two faces

    def lift(self, coloring):
        return [coloring[self.vmap[v]] for v in range(len(self.vmap))]


def collapse_4face(G: EmbeddedGraph, f: int, v1: int | None = None, *, check_ring_bound=True) -> Collapse:
    """Identify two opposite vertices of a 4-face and suppress the parallel edges."""
    q = quad_vertices(G, f)
    i = 0 if v1 is None else q.index(v1)
    quad = tuple(q[(i + k) % 4] for k in range(4))
    a, c = quad[0], quad[2]
    if G.edge_between(a, c) is not None:
        raise Adjacent(f"{a} and {c} are adjacent")
    if check_ring_bound:
        rb, why = is_ring_bound(G, f)
        if rb:
            raise RingBound(why)
    wk = G.walks[G.faces[f].walks[0]]
    flags = list(wk.flags)
    j = [G.vertex_of_flag(x) for x in flags].index(a)
    x = [flags[(j + k) % 4] for k in range(4)]
    y = [G.t0[x[(k - 1) % 4]] for k in range(4)]
    t0, t1, t2 = list(G.t0), list(G.t1), list(G.t2)
    t1[y[0]], t1[x[2]] = x[2], y[0]
    t1[y[2]], t1[x[0]] = x[0], y[2]
    zkey = min(a, c)

    def key(v):
        return zkey if v in (a, c) else v

    nf = len(t0)
    vkey = [key(G.vertex_of_flag(k)) for k in range(nf)]
    ekey = [k >> 2 for k in range(nf)]
    isolated = [v for v in range(G.n) if not G.rot[v]]
    groups = []
    for fid, rec in enumerate(G.faces):
        if fid == f:
            continue
        fl, iso = [], []
        for w in rec.walks:
            if G.walks[w].vertex is None:
                fl.append(G.walks[w].flags[0])
            else:
                iso.append(G.walks[w].vertex)
        groups.append((rec.genus, fl, iso))
    gidx = {fid: k for k, fid in enumerate(fid for fid in range(len(G.faces)) if fid != f)}
    dig_a, dig_b = len(groups), len(groups) + 1
    groups.append((0, [x[0]], []))
    groups.append((0, [x[2]], []))
    rings = []
    for r in G.rings:
        if r.kind == "facial":
            rings.append(("facial", gidx[r.face]))
        else:
            g = gidx.get(r.face)
            if g is None:
                g = dig_b if r.vertex == quad[3] else dig_a
            rings.append(("vertex", key(r.vertex), r.weak, g))
    G0m, fm, vm = assemble(t0, t1, t2, vkey, ekey, isolated, groups, rings, check=False)
    kept = {}
    for e, (u, v, _) in enumerate(G0m.edges):
        kept.setdefault((u, v), e)
    keep_edges = sorted(kept.values())
    R = restrict(G0m, range(G0m.n), keep_edges)
    G0 = R.graph
    vmap = {v: R.vmap[vm[key(v)]] for v in range(G.n)}
    emap = {}
    flagmap = {}
    for e in range(G.m):
        e0 = fm[4 * e] >> 2
        u, v, _ = G0m.edges[e0]
        emap[e] = R.emap[kept[(u, v)]]
        for k in range(4):
            if fm[4 * e + k] in R.flagmap:
                flagmap[4 * e + k] = R.flagmap[fm[4 * e + k]]
    facemap = {}
    for fid in range(len(G.faces)):
        if fid == f:
            continue
        g0 = G0m.walk_face[G0m.flag_walk[fm[groups[gidx[fid]][1][0]]]] if groups[gidx[fid]][1] else \
            G0m.walk_face[G0m.isolated_walk[vm[key(groups[gidx[fid]][2][0])]]]
        facemap[fid] = R.facemap[g0]
    digs = tuple(R.facemap[G0m.walk_face[G0m.flag_walk[fm[groups[d][1][0]]]]] for d in (dig_a, dig_b))
    facemap[f] = digs
    return Collapse(G0, quad, vmap[a], vmap, emap, flagmap, facemap)


# ---------------------------------------------------------------------------
# flips

@dataclass(frozen=True)
class FlipWitness:
    cycle: tuple  # (w1, w2, w3, w4)
    ring: int
    f1: int  # face containing w1 w2 w3, inside the disk around ``ring``
    f2: int  # face containing w1 w4 w3, on the other side


def _walk_has_path(G, fid, p):
    """Does some boundary walk of face ``fid`` traverse the path ``p`` (either direction)?"""
    k = len(p)
    for w in G.faces[fid].walks:
        vs = G.walk_vertices(w)
        L = len(vs)
        if L < k:
            continue
        for seq in (vs, vs[::-1]):
            for st in range(L):
                if all(seq[(st + i) % L] == p[i] for i in range(k)):
                    return True
    return False


def flip_conditions(G: EmbeddedGraph, cycle, f1=None, f2=None):
    """Check the flip conditions for ``cycle = (w1, w2, w3, w4)``; return a witness or raise."""
    w1, w2, w3, w4 = cycle
    if len(set(cycle)) != 4:
        raise NotFlippable("not a 4-cycle")
    cls = classify_cycle(G, cycle)
    if cls.tag == "contractible":
        raise NotFlippable("the cycle is contractible")
    if cls.tag != "surrounds":
        raise NotFlippable("the cycle does not surround a ring")
    adj = G.adjacency()
    if w3 in adj[w1] or (adj[w1] & adj[w3]) != {w2, w4}:
        raise NotFlippable(f"paths of length at most two between {w1} and {w3} are not only via {w2} and {w4}")
    c1 = [f for f in range(len(G.faces)) if _walk_has_path(G, f, (w1, w2, w3))] if f1 is None else [f1]
    c2 = [f for f in range(len(G.faces)) if _walk_has_path(G, f, (w1, w4, w3))] if f2 is None else [f2]
    fp = cls.cut.face_piece
    for a in c1:
        for b in c2:
            if a == b or fp.get(a) == fp.get(b):
                continue
            piece = cls.cut.pieces[fp[a]]
            if piece.genus == 0 and len(piece.ring_ids) == 1:
                return FlipWitness(tuple(cycle), piece.ring_ids[0], a, b)
    raise NotFlippable("no pair of faces along the two paths is separated by the cycle with a ring disk on the first side")


def find_flippable(G: EmbeddedGraph):
    for q in four_cycles(G):
        if classify_cycle(G, q).tag == "contractible":
            continue
        for k in range(4):
            for cyc in (q[k:] + q[:k], tuple(reversed(q[k:] + q[:k]))):
                if cyc[0] > cyc[2]:
                    continue
                try:
                    return flip_conditions(G, cyc)
                except NotFlippable:
                    continue
    return None


def _flag_at(G, e, v, face):
    u = G.edges[e][0]
    end = 0 if u == v else 1
    for side in (0, 1):
        x = 4 * e + 2 * end + side
        if G.face_of_flag(x) == face:
            return x
    raise NotFlippable(f"edge {e} at {v} does not touch face {face}")


@dataclass
class FlipResult:
    graph: EmbeddedGraph
    vmap: dict
    quad_face: int


def flip(G: EmbeddedGraph, wit: FlipWitness) -> FlipResult:
    """Mirror the part of the disk side hanging on ``w1 w4 w3`` so that the cycle bounds a 4-face."""
    wit = flip_conditions(G, wit.cycle, wit.f1, wit.f2)
    w1, w2, w3, w4 = wit.cycle
    cls = classify_cycle(G, wit.cycle)
    disk = cls.cut.face_piece[wit.f1]
    inside = {fid for fid, p in cls.cut.face_piece.items() if p == disk}
    cyc_e = {G.edge_between(w1, w2), G.edge_between(w2, w3)}
    block = set()
    for e in range(G.m):
        if e in cyc_e:
            continue
        if G.face_of_flag(4 * e) in inside or G.face_of_flag(4 * e + 1) in inside:
            block.add(e)
    t0, t1, t2 = list(G.t0), list(G.t1), list(G.t2)
    merged = None
    for a, b in ((w1, w2), (w3, w2)):
        u = _flag_at(G, G.edge_between(a, b), a, wit.f1)
        r = t1[u]
        p = _flag_at(G, G.edge_between(a, w4), a, wit.f2)
        q = t1[p]
        if (r >> 2) not in block or (q >> 2) in block:
            raise NotFlippable("the part inside the disk is not attached at a single corner")
        t1[u], t1[p] = p, u
        t1[r], t1[q] = q, r
        if merged is None:
            merged = r
    new_quad = _flag_at(G, G.edge_between(w1, w2), w1, wit.f1)
    nf = len(t0)
    vkey = [G.vertex_of_flag(x) for x in range(nf)]
    ekey = [x >> 2 for x in range(nf)]
    groups = []
    f2rec = G.faces[wit.f2]
    for fid, rec in enumerate(G.faces):
        if fid == wit.f1:
            groups.append((0, [new_quad], []))
            continue
        fl, iso = [], []
        for w in rec.walks:
            wk = G.walks[w]
            if wk.vertex is not None:
                iso.append(wk.vertex)
            elif fid == wit.f2 and any(G.vertex_of_flag(x) == w4 for x in wk.flags):
                fl.append(merged)
            else:
                fl.append(wk.flags[0])
        groups.append((rec.genus if fid != wit.f2 else f2rec.genus, fl, iso))
    rings = []
    for r in G.rings:
        if r.kind == "facial":
            rings.append(("facial", r.face))
        else:
            face = r.face
            if face == wit.f1 and r.vertex != w2:
                face = wit.f2
            rings.append(("vertex", r.vertex, r.weak, face))
    isolated = [v for v in range(G.n) if not G.rot[v]]
    G0, fm, vm = assemble(t0, t1, t2, vkey, ekey, isolated, groups, rings)
    if G0.genus != G.genus:
        raise PostconditionFailed("flip changed the genus")
    quad_face = G0.face_of_flag(fm[new_quad])
    qv = [vm[v] for v in wit.cycle]
    rec = G0.faces[quad_face]
    if len(rec.walks) != 1 or sorted(G0.walk_vertices(rec.walks[0])) != sorted(qv):
        raise PostconditionFailed("the cycle does not bound a face after the flip")
    return FlipResult(G0, {v: vm[v] for v in range(G.n)}, quad_face)


def noncontractible_four_cycles(G: EmbeddedGraph):
    return [q for q in four_cycles(G) if classify_cycle(G, q).tag != "contractible"]


# ---------------------------------------------------------------------------
# the reduction

@dataclass
class CoverEntry:
    face: int  # face of the reduced graph
    J_vertices: tuple
    J_edges: tuple
    S: tuple  # faces of the embedded J
    el: int
    pieces: list
    nontrivial: bool
    face_class: str
    omnipresent: bool


@dataclass
class Cover:
    entries: dict = field(default_factory=dict)

    def total_elasticity(self) -> int:
        return sum(e.el for e in self.entries.values())

    def text(self) -> str:
        lines = []
        for f in sorted(self.entries):
            e = self.entries[f]
            lines.append(f"face {f} class={e.face_class} el={e.el} nontrivial={int(e.nontrivial)} "
                         f"J_edges={','.join(map(str, e.J_edges))} S={','.join(map(str, e.S))}")
        lines.append(f"total_el = {self.total_elasticity()}")
        return "\n".join(lines) + "\n"


@dataclass
class ReduceResult:
    graph: EmbeddedGraph
    cover: Cover
    flip: FlipWitness | None
    psi: tuple
    quad: tuple
    collapse: Collapse
    checks: dict


def check_reduce_hypotheses(G: EmbeddedGraph, f: int, *, certify=True):
    """Raise PreconditionFailed naming the first hypothesis that fails."""
    if not G.rings:
        raise PreconditionFailed("the graph has no rings")
    if triangles(G):
        raise PreconditionFailed("triangle-free")
    if noncontractible_four_cycles(G):
        raise PreconditionFailed("no non-contractible 4-cycles")
    if not min_essential_edges(G, 13):
        raise PreconditionFailed("every connected essential subgraph has at least 13 edges")
    try:
        quad_vertices(G, f)
    except NotA4Face as exc:
        raise PreconditionFailed(f"internal 4-face: {exc}") from exc
    rb, why = is_ring_bound(G, f)
    if rb:
        raise PreconditionFailed(f"not ring-bound: {why}")
    if certify and not is_R_critical(G).verdict:
        raise PreconditionFailed("R-critical")


def _problematic(G, quad, i):
    vi, vmid, vj = quad[i], quad[(i + 3) % 4], quad[i + 2]
    if G.vertex_ring_at(vi) is not None:
        return True
    for p in simple_paths(G, vi, vj, 4, avoid=(vmid,)):
        if len(p) < 3:
            continue
        cyc = p + [vmid]
        if classify_cycle(G, cyc).tag != "contractible":
            return True
    return False


def choose_labelling(G: EmbeddedGraph, f: int):
    q = quad_vertices(G, f)
    ring_v = G.ring_vertices()
    cands = []
    for k in range(4):
        for seq in (q[k:] + q[:k], list(reversed(q[k + 1:] + q[:k + 1]))):
            if seq[2] not in ring_v and seq[3] not in ring_v:
                cands.append(tuple(seq))
    if not cands:
        raise PreconditionFailed("no labelling leaves two consecutive vertices internal")
    quad = min(cands)
    if _problematic(G, quad, 0) and not _problematic(G, quad, 1):
        quad = (quad[1], quad[0], quad[3], quad[2])
    return quad


def _rewrite_walk(G, seq, z, quad):
    """Turn a closed walk of the collapsed graph (host labels, ``z`` marked) into a host walk."""
    v1, _, v3, v4 = quad
    adj = G.adjacency()
    out = []
    L = len(seq)
    for k, v in enumerate(seq):
        if v != z:
            out.append(v)
            continue
        x, y = seq[k - 1], seq[(k + 1) % L]
        if x in adj[v1] and y in adj[v1]:
            out.append(v1)
        elif x in adj[v3] and y in adj[v3]:
            out.append(v3)
        elif x in adj[v1]:
            out += [v1, v4, v3]
        else:
            out += [v3, v4, v1]
    return out


def reduce_4face(G: EmbeddedGraph, f: int, *, certify=True, check_hypotheses=True) -> ReduceResult:
    if check_hypotheses:
        check_reduce_hypotheses(G, f, certify=certify)
    quad = choose_labelling(G, f)
    v1, v2, v3, v4 = quad
    if G.vertex_ring_at(v1) is not None or G.vertex_ring_at(v3) is not None:
        raise PreconditionFailed("an identified vertex is a vertex ring")
    col = collapse_4face(G, f, v1, check_ring_bound=False)
    G0 = col.graph
    bad = non_extending(G)
    if not bad:
        raise NoNonExtendingPrecoloring("every precoloring extends; the graph is not critical")
    psi = bad[0]
    order, _, _ = ring_structure(G)
    psi0 = {col.vmap[v]: c for v, c in zip(order, psi)}
    R2 = phi_critical_restriction(G0, psi0)
    Gp = R2.graph
    inv_v2 = {b: a for a, b in R2.vmap.items()}
    inv_v0 = {}
    for v, v0 in col.vmap.items():
        inv_v0.setdefault(v0, v)
    z = col.z
    ZMARK = -1

    def host(vp):
        v0 = inv_v2[vp]
        return ZMARK if v0 == z else inv_v0[v0]

    # which reduced face each host face ends up in
    to_gp = {}
    for h, g0 in col.facemap.items():
        if h == f:
            continue
        to_gp[h] = R2.facemap[g0]
    cover = Cover()
    checks = {}
    for F in range(len(Gp.faces)):
        rec = Gp.faces[F]
        if rec.is_ring_face:
            continue
        walks = []
        for w in rec.walks:
            seq = [host(v) for v in Gp.walk_vertices(w)]
            walks.append(_rewrite_walk(G, seq, ZMARK, quad) if ZMARK in seq else seq)
        Jv, Je = set(), set()
        for seq in walks:
            Jv.update(seq)
            if len(seq) == 1:
                continue
            for k in range(len(seq)):
                e = G.edge_between(seq[k], seq[(k + 1) % len(seq)])
                if e is None:
                    raise PostconditionFailed(f"rewritten walk of face {F} uses a non-edge")
                Je.add(e)
        RJ = subgraph_embedding(G, Jv, Je)
        S = sorted({RJ.facemap[h] for h, F2 in to_gp.items() if F2 == F})
        if not S:
            raise PostconditionFailed(f"face {F} of the reduced graph corresponds to no face of J")
        for sf in S:
            for h, jf in RJ.facemap.items():
                if jf == sf and h != f and to_gp[h] != F:
                    raise PostconditionFailed(f"face {sf} of J mixes host faces of different reduced faces")
        pieces = g_expansion(G, Jv, Je, S)
        el = sum(RJ.graph.face_length(h) for h in S) - Gp.face_length(F)
        nontrivial = not (len(pieces) == 1 and pieces[0].is_single_cycle())
        fc = face_class(Gp, F)
        omni = fc == "neither" and is_omnipresent(Gp, F)
        if set(Je) == G.ring_edges() and set(Jv) == G.ring_vertices():
            raise PostconditionFailed(f"the boundary of S for face {F} equals the union of the rings")
        if sum(p.graph.genus for p in pieces) > rec.genus:
            raise PostconditionFailed(f"expansion of face {F} has more genus than the face")
        cover.entries[F] = CoverEntry(F, tuple(sorted(Jv)), tuple(sorted(Je)), tuple(S), el, pieces,
                                      nontrivial, fc, omni)
    # postconditions
    if not Gp.m < G.m:
        raise PostconditionFailed("the reduced graph does not have fewer edges")
    count = {}
    for e in cover.entries.values():
        for p in e.pieces:
            for h in p.host_faces:
                count[h] = count.get(h, 0) + 1
    for h in G.internal_faces():
        quad_2cell = face_class(G, h) != "neither" and G.face_length(h) == 4
        if not quad_2cell and count.get(h, 0) != 1:
            raise PostconditionFailed(f"host face {h} is covered {count.get(h, 0)} times")
    total = cover.total_elasticity()
    if total > 4:
        raise PostconditionFailed(f"total elasticity {total} exceeds 4")
    for e in cover.entries.values():
        if e.face_class == "closed-2-cell" or e.omnipresent:
            if e.el not in (0, 2):
                raise PostconditionFailed(f"face {e.face} has elasticity {e.el}")
        if e.face_class == "closed-2-cell" and e.el == 2 and not e.nontrivial:
            raise PostconditionFailed(f"face {e.face} has elasticity 2 but a trivial cover")
    if triangles(Gp):
        raise PostconditionFailed("the reduced graph has a triangle")
    nc = noncontractible_four_cycles(Gp)
    wit = None
    if len(nc) > 1:
        raise PostconditionFailed(f"{len(nc)} non-contractible 4-cycles in the reduced graph")
    if nc:
        wit = find_flippable(Gp)
        if wit is None:
            raise PostconditionFailed("the non-contractible 4-cycle cannot be flipped")
    if certify and not is_R_critical(Gp).verdict:
        raise PostconditionFailed("the reduced graph is not critical")
    if len(Gp.rings) != len(G.rings) or Gp.genus != G.genus:
        raise PostconditionFailed("rings or surface changed")
    checks.update(total_el=total, edges_before=G.m, edges_after=Gp.m, noncontractible_4cycles=len(nc))
    return ReduceResult(Gp, cover, wit, psi, quad, col, checks)


def flip_weight_gain(G: EmbeddedGraph, res: FlipResult):
    """w(G0) - w(G'), which must be non-negative."""
    return total_weight(res.graph) - total_weight(G)
