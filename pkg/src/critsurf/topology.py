"""Cutting surfaces along cycles, classifying cycles and subgraphs, G-expansions."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .surface_map import (
    EmbeddedGraph,
    EmbeddingError,
    Ring,
    assemble_pieces,
    restrict,
)


class NotACycle(ValueError):
    pass


class PropertyViolated(ValueError):
    """A subgraph/face selection fails the boundary, isolated-vertex or cuff clause."""


# ---------------------------------------------------------------------------
# cutting along a cycle

@dataclass
class CutPiece:
    graph: EmbeddedGraph
    cut_faces: tuple[int, ...]  # faces of ``graph`` capping the cut
    ring_ids: tuple[int, ...]  # rings of the host lying in this piece
    host_faces: tuple[int, ...]  # host faces lying in this piece

    @property
    def genus(self) -> int:
        return self.graph.genus

    @property
    def rings(self) -> tuple[int, ...]:
        return self.ring_ids


@dataclass
class CutResult:
    pieces: list[CutPiece]
    one_sided: bool
    face_piece: dict = field(default_factory=dict)  # host face -> piece index


def _cycle_darts(G: EmbeddedGraph, cycle):
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise NotACycle(f"{list(cycle)} is not a cycle")
    out = []
    for i in range(k):
        u, v = cycle[i], cycle[(i + 1) % k]
        e = G.edge_between(u, v)
        if e is None:
            raise NotACycle(f"{u} and {v} are not adjacent")
        out.append(2 * e + (0 if G.edges[e][0] == u else 1))
    return out


def _side_labels(G: EmbeddedGraph, cycle, outs):
    """Label every flag at a cycle vertex with side 1 (left) or 2 (right)."""
    k = len(cycle)
    frame = [1] * k
    for i in range(k - 1):
        frame[i + 1] = frame[i] * G.edges[outs[i] >> 1][2]
    label = {}
    for i, v in enumerate(cycle):
        r = G.rot[v]
        out_d, in_d = outs[i], outs[i - 1] ^ 1
        p0 = r.index(out_d)
        seq = r[p0:] + r[:p0]
        j = seq.index(in_d)
        deg = len(seq)
        for a in range(deg):
            corner_left = a < j
            side = 1 if corner_left == (frame[i] == 1) else 2
            label[2 * seq[a] + 1] = side
            label[2 * seq[(a + 1) % deg]] = side
    return frame, label


def cut_along(G: EmbeddedGraph, cycle) -> CutResult:
    """Cut the surface along a cycle of ``G`` and cap the new boundary.

    Each cycle vertex is split into a left and a right copy.  A two-sided
    cycle yields two new boundary walks, a one-sided one a single walk of
    double length.  Every new boundary walk is capped by a disk face.
    """
    cycle = list(cycle)
    outs = _cycle_darts(G, cycle)
    k = len(cycle)
    frame, label = _side_labels(G, cycle, outs)
    t0, t1, t2 = list(G.t0), list(G.t1), list(G.t2)
    N = len(t0)
    cyc_edges = {d >> 1 for d in outs}
    on_cycle = set(cycle)
    one_sided = frame[-1] * G.edges[outs[-1] >> 1][2] == -1
    # consistency of the left/right labels along every cycle edge
    for i in range(k):
        for s in (0, 1):
            x = 2 * outs[i] + s
            same = label[x] == label[t0[x]]
            if i < k - 1 or not one_sided:
                if not same:
                    raise EmbeddingError("inconsistent sides along the cycle")
            elif same:
                raise EmbeddingError("inconsistent sides at a one-sided wrap")
    new_of = {}
    for e in sorted(cyc_edges):
        for q in range(4):
            x = 4 * e + q
            new_of[x] = N + len(new_of)
    total = N + len(new_of)
    t0 += [0] * len(new_of)
    t1 += [0] * len(new_of)
    t2 += [0] * len(new_of)
    for x, xn in new_of.items():
        t2[x], t2[xn] = xn, x
        t0[xn] = new_of[G.t0[x]]
    for i in range(k):
        out_d, in_d = outs[i], outs[i - 1] ^ 1
        for side in (1, 2):
            a = next(2 * out_d + s for s in (0, 1) if label[2 * out_d + s] == side)
            b = next(2 * in_d + s for s in (0, 1) if label[2 * in_d + s] == side)
            t1[new_of[a]], t1[new_of[b]] = new_of[b], new_of[a]
    vkey, ekey = [None] * total, [None] * total
    for x in range(N):
        v = G.vertex_of_flag(x)
        vkey[x] = (v, label[x]) if v in on_cycle else (v, 0)
        e = x >> 2
        if e in cyc_edges:
            at_tail = 2 * e + ((x >> 1) & 1)
            anchor = x if at_tail in outs else G.t0[x]
            ekey[x] = (e, label[anchor])
        else:
            ekey[x] = (e, 0)
    for x, xn in new_of.items():
        vkey[xn], ekey[xn] = vkey[x], ekey[x]
    isolated = [(v, 0) for v in range(G.n) if not G.rot[v]]
    groups = []
    for f in G.faces:
        flags, iso = [], []
        for w in f.walks:
            wk = G.walks[w]
            if wk.vertex is None:
                flags.append(wk.flags[0])
            else:
                iso.append((wk.vertex, 0))
        groups.append((f.genus, flags, iso))
    seen = set()
    cut_groups = []
    for xn in sorted(new_of.values()):
        if xn in seen:
            continue
        orb = [xn]
        y = t0[xn]
        while True:
            orb.append(y)
            z = t1[y]
            if z == xn:
                break
            orb.append(z)
            y = t0[z]
        seen.update(orb)
        cut_groups.append(len(groups))
        groups.append((0, [xn], []))
    rings = []
    for r in G.rings:
        if r.kind == "facial":
            rings.append(("facial", r.face))
        else:
            key = (r.vertex, 0)
            if r.vertex in on_cycle:
                key = None
                for w in G.faces[r.face].walks:
                    for f in G.walks[w].flags:
                        for y in (f, G.t0[f]):
                            if G.vertex_of_flag(y) == r.vertex:
                                key = (r.vertex, label[y])
                                break
                        if key:
                            break
                    if key:
                        break
            rings.append(("vertex", key, r.weak, r.face))
    out = assemble_pieces(t0, t1, t2, vkey, ekey, isolated, groups, rings)
    pieces = []
    face_piece = {}
    for idx, (P, _fm, _vm, gids, rids) in enumerate(out):
        host = tuple(g for g in gids if g < len(G.faces))
        for g in host:
            face_piece[g] = idx
        cut_local = tuple(sorted(
            P.walk_face[P.flag_walk[_fm[groups[g][1][0]]]] for g in gids if g in cut_groups))
        pieces.append(CutPiece(P, cut_local, tuple(rids), host))
    return CutResult(pieces, one_sided, face_piece)


# ---------------------------------------------------------------------------
# classification

@dataclass
class CycleClass:
    tag: str  # "contractible", "surrounds" or "essential"
    sidedness: str  # "one-sided" or "two-sided"
    separating: bool
    surrounded: tuple[int, ...] = ()
    cut: CutResult | None = None

    def side_without_face(self, fid: int):
        """For a separating cycle, the piece not containing host face ``fid``."""
        if not self.separating or self.cut is None:
            return None
        p = self.cut.face_piece.get(fid)
        others = [i for i in range(len(self.cut.pieces)) if i != p]
        return self.cut.pieces[others[0]] if len(others) == 1 else None


def classify_cycle(G: EmbeddedGraph, cycle) -> CycleClass:
    res = cut_along(G, cycle)
    if res.one_sided:
        return CycleClass("essential", "one-sided", False, (), res)
    if len(res.pieces) == 1:
        return CycleClass("essential", "two-sided", False, (), res)
    if any(p.genus == 0 and not p.ring_ids for p in res.pieces):
        return CycleClass("contractible", "two-sided", True, (), res)
    surrounded = tuple(sorted(p.ring_ids[0] for p in res.pieces if p.genus == 0 and len(p.ring_ids) == 1))
    if surrounded:
        return CycleClass("surrounds", "two-sided", True, surrounded, res)
    return CycleClass("essential", "two-sided", True, (), res)


def is_contractible_cycle(G: EmbeddedGraph, cycle) -> bool:
    return classify_cycle(G, cycle).tag == "contractible"


def _cuff_face(G: EmbeddedGraph, r: Ring) -> int:
    return r.face


def subgraph_class(G: EmbeddedGraph, vertices, edges) -> tuple[str, tuple[int, ...]]:
    """Classify a connected subgraph as contractible, surrounding rings, or essential.

    A connected subgraph lies in a closed disk of the surface exactly when
    one of its faces carries all of the genus and has a single walk, every
    other face is an open disk, and no cuff lies outside that one face.
    """
    R = restrict(G, vertices, edges, rings=())
    H = R.graph
    cuff_at = [R.facemap[_cuff_face(G, r)] for r in G.rings]

    def contractible(active):
        for star, f in enumerate(H.faces):
            if len(f.walks) != 1 or f.genus != G.genus:
                continue
            ok = True
            for fid, h in enumerate(H.faces):
                if fid == star:
                    continue
                if h.genus != 0 or len(h.walks) != 1:
                    ok = False
                    break
            if not ok:
                continue
            if all(cuff_at[i] == star for i in active):
                return True
        return False

    everything = list(range(len(G.rings)))
    if contractible(everything):
        return "contractible", ()
    sur = tuple(i for i in everything if contractible([j for j in everything if j != i]))
    if sur:
        return "surrounds", sur
    return "essential", ()


# ---------------------------------------------------------------------------
# G-expansion

@dataclass
class ExpansionPiece:
    graph: EmbeddedGraph
    natural_rings: tuple[Ring, ...]
    origin_vertex: tuple[int, ...]  # piece vertex -> host vertex
    origin_edge: tuple[int, ...]  # piece edge -> host edge
    host_faces: tuple[int, ...]  # host faces lying inside
    source_face: int  # face of J this piece came from

    def is_single_cycle(self) -> bool:
        G = self.graph
        return (len(G.rings) == 1 and G.rings[0].kind == "facial"
                and G.m == len(G.walks[G.faces[G.rings[0].face].walks[0]]) and G.n == G.m)


def subgraph_embedding(G: EmbeddedGraph, vertices, edges):
    """The embedding of a subgraph ``J``; its faces are what ``S`` refers to."""
    return restrict(G, vertices, edges, rings=())


def g_expansion(G: EmbeddedGraph, J_vertices, J_edges, S) -> list[ExpansionPiece]:
    """Cut out the faces ``S`` of the subgraph ``J`` and re-close them.

    Every boundary walk of an ``S`` face becomes a facial ring (or a vertex
    ring for a lone vertex ring of ``J``) of the piece built from that face.
    """
    R = subgraph_embedding(G, J_vertices, J_edges)
    H = R.graph
    inv_v = {nv: v for v, nv in R.vmap.items()}
    inv_flag = {nf: f for f, nf in R.flagmap.items()}
    S = sorted(set(S))
    _check_sj(G, R, S)
    region_of_face = R.facemap
    pieces = []
    for f in S:
        pieces.append(_expand_face(G, R, H, f, inv_v, inv_flag, region_of_face))
    return pieces


def _check_sj(G, R, S):
    H = R.graph
    on_boundary_e, on_boundary_v = set(), set()
    for f in S:
        if not 0 <= f < len(H.faces):
            raise PropertyViolated(f"face {f} is not a face of J")
        for w in H.faces[f].walks:
            on_boundary_v.update(H.walk_vertices(w))
            on_boundary_e.update(H.walk_edges(w))
    if len(on_boundary_e) != H.m or len(on_boundary_v) != H.n:
        raise PropertyViolated("boundary clause: J is not the union of the boundaries of the faces in S")
    inv_v = {nv: v for v, nv in R.vmap.items()}
    for v in range(H.n):
        if not H.rot[v]:
            r = G.vertex_ring_at(inv_v[v])
            if r is None:
                raise PropertyViolated(f"isolated-vertex clause: vertex {inv_v[v]} of J is not a vertex ring")
    Sset = set(S)
    for r in G.rings:
        region = R.facemap[r.face]
        if region not in Sset:
            continue
        if r.kind == "facial":
            raise PropertyViolated("cuff clause: a face of S meets the cuff of a facial ring")
        if r.vertex not in R.vmap:
            raise PropertyViolated(f"cuff clause: the cuff of vertex ring {r.vertex} meets S but the ring is not in J")


def _expand_face(G, R, H, f, inv_v, inv_flag, region_of_face):
    rec = H.faces[f]
    J_vert_host = set(R.vmap)
    # vertices / edges of G strictly inside this face
    host_faces = tuple(sorted(g for g, h in region_of_face.items() if h == f))
    hf = set(host_faces)
    inner_v = sorted(v for v in range(G.n) if v not in J_vert_host and (
        (G.rot[v] and G.face_of_flag(2 * G.rot[v][0]) in hf)
        or (not G.rot[v] and G.walk_face[G.isolated_walk[v]] in hf)))
    J_edges_host = set(R.emap)
    inner_e = sorted(e for e in range(G.m) if e not in J_edges_host and G.face_of_flag(4 * e) in hf)

    vert_origin = []
    rot = []
    home = {}  # host dart -> (new vertex, frame)
    flag_to_new = {}  # host flag -> (new vertex, slot index or marker, side)
    ring_specs = []
    ring_walk_first = []  # (new vertex of copy 0) for each ring walk
    edges_new = []
    edge_origin = []
    pending = []  # (copy vertex, list of ('arrive', j) / host darts / ('leave', j))

    walk_infos = []
    for w in rec.walks:
        wk = H.walks[w]
        if wk.vertex is not None:
            v_host = inv_v[wk.vertex]
            c = len(vert_origin)
            vert_origin.append(v_host)
            r = G.vertex_ring_at(v_host)
            ring_specs.append(("vertex", c, r.weak if r is not None else False))
            for d in G.rot[v_host]:
                home[d] = (c, 1)
            pending.append((c, [("host", d) for d in G.rot[v_host]]))
            continue
        L = len(wk)
        if L < 3:
            raise PropertyViolated(f"a boundary walk of face {f} has length {L}; it cannot become a ring")
        xs = [inv_flag[x] for x in wk.flags]  # host flags leaving each visit
        ys = [G.t0[x] for x in xs]  # host flags arriving at the next visit
        base = len(vert_origin)
        ring_edge_base = len(edges_new)
        for j in range(L):
            vert_origin.append(G.vertex_of_flag(xs[j]))
        for j in range(L):
            edges_new.append((base + j, base + (j + 1) % L, 1))
            edge_origin.append(xs[j] >> 2)
        for j in range(L):
            c = base + j
            y = ys[j - 1]
            x = xs[j]
            dy, dx = y >> 1, x >> 1
            r = G.rot[G.vertex_of_flag(x)]
            pos = r.index(dy)
            inside = []
            if y & 1:
                frame = 1
                p = (pos + 1) % len(r)
                while r[p] != dx:
                    inside.append(r[p])
                    p = (p + 1) % len(r)
            else:
                frame = -1
                p = (pos - 1) % len(r)
                while r[p] != dx:
                    inside.append(r[p])
                    p = (p - 1) % len(r)
            for d in inside:
                home[d] = (c, frame)
            arrive = 2 * (ring_edge_base + (j - 1) % L) + 1
            leave = 2 * (ring_edge_base + j)
            pending.append((c, [("new", arrive)] + [("host", d) for d in inside] + [("new", leave)]))
            flag_to_new[x] = ("newflag", 2 * leave)
            flag_to_new[y] = ("newflag", 2 * arrive + 1)
        ring_specs.append(("facial", base, L))
        walk_infos.append((base, L))
    for v in inner_v:
        c = len(vert_origin)
        vert_origin.append(v)
        for d in G.rot[v]:
            home[d] = (c, 1)
        pending.append((c, [("host", d) for d in G.rot[v]]))
    new_dart = {}
    for e in inner_e:
        d0, d1 = 2 * e, 2 * e + 1
        if d0 not in home or d1 not in home:
            raise PropertyViolated(f"edge {e} inside face {f} has an end outside the face")
        (a, fa), (b, fb) = home[d0], home[d1]
        if a == b:
            raise PropertyViolated(f"edge {e} becomes a loop in the expansion")
        idx = len(edges_new)
        edges_new.append((a, b, G.edges[e][2] * fa * fb))
        edge_origin.append(e)
        new_dart[d0], new_dart[d1] = 2 * idx, 2 * idx + 1
    n_new = len(vert_origin)
    rot_new = [[] for _ in range(n_new)]
    for c, items in pending:
        rot_new[c] = [d if kind == "new" else new_dart[d] for kind, d in items]
    for d, (c, frame) in home.items():
        if (d >> 1) not in set(inner_e):
            continue
        for s in (0, 1):
            flag_to_new[2 * d + s] = ("newflag", 2 * new_dart[d] + (s if frame == 1 else 1 - s))
    try:
        bare = EmbeddedGraph(n_new, edges_new, rot_new, None, (), None)
    except EmbeddingError as exc:
        raise PropertyViolated(f"expansion of face {f} is not a simple embedding: {exc}") from exc
    faces = []
    used = set()
    for g in host_faces:
        ws = set()
        for w in G.faces[g].walks:
            wk = G.walks[w]
            if wk.vertex is not None:
                c = vert_origin.index(wk.vertex) if wk.vertex in vert_origin else None
                ws.add(bare.isolated_walk[c])
                continue
            images = {bare.flag_walk[flag_to_new[x][1]] for x in wk.flags}
            if len(images) != 1:
                raise EmbeddingError("a host walk split while expanding")
            nw = images.pop()
            if len(bare.walks[nw]) != len(wk):
                raise EmbeddingError("a host walk changed length while expanding")
            ws.add(nw)
        faces.append((G.faces[g].genus, tuple(sorted(ws))))
        used.update(ws)
    rings = []
    for spec in ring_specs:
        if spec[0] == "facial":
            base, L = spec[1], spec[2]
            leave0 = rot_new[base][-1]
            nw = bare.flag_walk[2 * leave0 + 1]
            if len(bare.walks[nw]) != L or nw in used:
                raise EmbeddingError("ring walk of an expansion piece was not traced as expected")
            used.add(nw)
            rings.append(("facial", len(faces)))
            faces.append((0, (nw,)))
    if len(used) != len(bare.walks):
        # isolated J-vertex copies whose host vertex had no edges
        for i, wk in enumerate(bare.walks):
            if i not in used:
                faces.append((0, (i,)))
                used.add(i)
    ring_objs = []
    face_of_walk = {}
    for fi, (_, ws) in enumerate(faces):
        for w in ws:
            face_of_walk[w] = fi
    for spec in ring_specs:
        if spec[0] == "vertex":
            c = spec[1]
            if rot_new[c]:
                w = bare.flag_walk[2 * rot_new[c][0]]
            else:
                w = bare.isolated_walk[c]
            ring_objs.append(Ring.at_vertex(c, face_of_walk[w], spec[2]))
    for r in rings:
        ring_objs.append(Ring.facial(r[1]))
    P = EmbeddedGraph(n_new, edges_new, rot_new, faces, ring_objs, None)
    return ExpansionPiece(P, P.rings, tuple(vert_origin), tuple(edge_origin), host_faces, f)


# ---------------------------------------------------------------------------
# essential subgraphs

def _cycles_upto(G: EmbeddedGraph, maxlen: int):
    """All cycles with at most ``maxlen`` edges, each once, as vertex tuples."""
    adj = G.adjacency()
    out = []
    for s in range(G.n):
        stack = [(s, [s])]
        while stack:
            u, path = stack.pop()
            for v in adj[u]:
                if v == s and len(path) >= 3:
                    if path[1] < path[-1]:
                        out.append(tuple(path))
                elif v > s and v not in path and len(path) < maxlen:
                    stack.append((v, path + [v]))
    return out


def _edges_of_cycle(G, cyc):
    k = len(cyc)
    return {G.edge_between(cyc[i], cyc[(i + 1) % k]) for i in range(k)}


def _paths_between(G, a_set, b_set, avoid, maxlen):
    """Paths with both ends in the given sets and interior avoiding ``avoid``."""
    adj = G.adjacency()
    for s in sorted(a_set):
        stack = [(s, [s])]
        while stack:
            u, path = stack.pop()
            for v in adj[u]:
                if v in path:
                    continue
                if v in b_set and (len(path) >= 2 or v != s):
                    yield path + [v]
                if v not in avoid and len(path) < maxlen:
                    stack.append((v, path + [v]))


def min_essential_edges(G: EmbeddedGraph, threshold: int) -> bool:
    """True iff every connected essential subgraph has at least ``threshold`` edges.

    The search covers cycles, two cycles sharing one vertex, two disjoint
    cycles joined by a path, and theta graphs.
    """
    if G.genus == 0 and len(G.rings) <= 2:
        return True
    lim = threshold - 1
    cycles = _cycles_upto(G, lim)
    cyc_e = [_edges_of_cycle(G, c) for c in cycles]

    def essential(vs, es):
        return subgraph_class(G, vs, es)[0] == "essential"

    for c, es in zip(cycles, cyc_e):
        if essential(c, es):
            return False
    # theta graphs: a cycle plus an ear
    for c, es in zip(cycles, cyc_e):
        cs = set(c)
        for p in _paths_between(G, cs, cs, cs, lim - len(c)):
            pe = {G.edge_between(p[i], p[i + 1]) for i in range(len(p) - 1)}
            if pe & es:
                continue
            if len(es) + len(pe) <= lim and essential(cs | set(p), es | pe):
                return False
    for (c1, e1), (c2, e2) in combinations(list(zip(cycles, cyc_e)), 2):
        if len(e1) + len(e2) > lim or e1 & e2:
            continue
        common = set(c1) & set(c2)
        if len(common) == 1:
            if essential(set(c1) | set(c2), e1 | e2):
                return False
        elif not common:
            s1, s2 = set(c1), set(c2)
            for p in _paths_between(G, s1, s2, s1 | s2, lim - len(e1) - len(e2)):
                pe = {G.edge_between(p[i], p[i + 1]) for i in range(len(p) - 1)}
                if essential(s1 | s2 | set(p), e1 | e2 | pe):
                    return False
    return True
