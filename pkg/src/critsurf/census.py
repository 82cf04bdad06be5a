"""Exhaustive enumeration of small critical graphs, catalogs and refinement checks."""
from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass, field

from . import kernels
from .coloring import is_R_critical
from .surface_map import EmbeddedGraph, Ring, flag_system, write_emg


class CatalogIncomplete(ValueError):
    pass


# ---------------------------------------------------------------------------
# plane maps inside a ring

class PlaneMap:
    """A plane graph whose outer face is the ring ``0, 1, ..., k-1``.

    ``rot[v]`` lists the neighbours of ``v`` in cyclic order; the face to
    the right of ``u -> v`` continues to ``rot[v][rot[v].index(u) + 1]``.
    The ring face is the one containing ``1 -> 0``.
    """

    __slots__ = ("k", "rot")

    def __init__(self, k, rot):
        self.k = k
        self.rot = rot

    @classmethod
    def ring(cls, k):
        return cls(k, [[(i + 1) % k, (i - 1) % k] for i in range(k)])

    @property
    def n(self):
        return len(self.rot)

    def next(self, u, v):
        r = self.rot[v]
        return v, r[(r.index(u) + 1) % len(r)]

    def faces(self):
        """Internal faces as vertex cycles, in a deterministic order."""
        seen = set()
        out = []
        ring_face = None
        for v in range(self.n):
            for u in self.rot[v]:
                if (v, u) in seen:
                    continue
                cyc = []
                a, b = v, u
                while (a, b) not in seen:
                    seen.add((a, b))
                    cyc.append(a)
                    a, b = self.next(a, b)
                if (1, 0) in seen and ring_face is None:
                    ring_face = cyc
                    continue
                out.append(cyc)
        return out

    def edges(self):
        return sorted((u, v) for u in range(self.n) for v in self.rot[u] if u < v)

    def distances(self):
        n = self.n
        dist = []
        for s in range(n):
            d = [-1] * n
            d[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for v in self.rot[u]:
                    if d[v] < 0:
                        d[v] = d[u] + 1
                        q.append(v)
            dist.append(d)
        return dist

    def add_ear(self, face, i, j, length):
        """Add a path of ``length`` edges inside ``face`` between positions ``i < j``."""
        L = len(face)
        u, w = face[i], face[j]
        rot = [list(r) for r in self.rot]
        n = len(rot)
        new = list(range(n, n + length - 1))
        path = [u] + new + [w]
        for t, x in enumerate(new):
            rot.append([path[t], path[t + 2]])
        pu = face[(i - 1) % L]
        ru = rot[u]
        ru.insert(ru.index(pu) + 1, path[1])
        pw = face[(j - 1) % L]
        rw = rot[w]
        rw.insert(rw.index(pw) + 1, path[-2])
        return PlaneMap(self.k, rot)

    def flags(self):
        edges = self.edges()
        eid = {e: i for i, e in enumerate(edges)}

        def dart(u, v):
            return 2 * eid[(u, v)] if u < v else 2 * eid[(v, u)] + 1

        rot = [[dart(v, u) for u in r] for v, r in enumerate(self.rot)]
        return edges, rot, flag_system([(u, v, 1) for u, v in edges], rot), dart

    def code(self) -> bytes:
        edges, rot, (t0, t1, t2), dart = self.flags()
        start = 2 * dart(1, 0)
        ring = [start]
        y = t0[start]
        while True:
            ring.append(y)
            z = t1[y]
            if z == start:
                break
            ring.append(z)
            y = t0[z]
        color = bytearray(len(t0))
        for x in ring:
            color[x] = 1
        return kernels.canonical_code(t0, t1, t2, color, sorted(ring))

    def to_embedded(self) -> EmbeddedGraph:
        edges, rot, _, dart = self.flags()
        G = EmbeddedGraph(self.n, [(u, v, 1) for u, v in edges], rot)
        ring_face = G.face_of_flag(2 * dart(1, 0))
        return G.with_rings([Ring.facial(ring_face)])


def internal_face_lengths(G: EmbeddedGraph):
    return sorted(G.face_length(f) for f in G.internal_faces())


def big_faces(G: EmbeddedGraph):
    """The multiset of internal face lengths of at least five, as a sorted tuple."""
    return tuple(l for l in internal_face_lengths(G) if l >= 5)


# ---------------------------------------------------------------------------
# catalogs

@dataclass
class Catalog:
    r: int
    k: int
    exhaustive_up_to: int
    entries: dict = field(default_factory=dict)  # multiset -> witness index into ``graphs``
    graphs: list = field(default_factory=list)  # every critical graph found, canonical order
    stats: dict = field(default_factory=dict)

    def multisets(self):
        return sorted(self.entries)

    def lines(self, witness_dir=None):
        out = []
        for ms in self.multisets():
            name = f"r{self.r}_k{self.k}_{'_'.join(map(str, ms)) or 'empty'}.emg"
            path = os.path.join(witness_dir, name) if witness_dir else name
            out.append(f"{{{','.join(map(str, ms))}}} | {path} | {self.exhaustive_up_to}")
        return out

    def write(self, path, witness_dir=None):
        if witness_dir:
            os.makedirs(witness_dir, exist_ok=True)
            for ms in self.multisets():
                name = f"r{self.r}_k{self.k}_{'_'.join(map(str, ms)) or 'empty'}.emg"
                with open(os.path.join(witness_dir, name), "w") as fh:
                    fh.write(write_emg(self.graphs[self.entries[ms]]))
        with open(path, "w") as fh:
            fh.write("\n".join(self.lines(witness_dir)) + ("\n" if self.entries else ""))

    @staticmethod
    def read(path, r, k):
        entries = {}
        up_to = 0
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                ms, _, n = (x.strip() for x in line.split("|"))
                body = ms.strip("{}")
                key = tuple(sorted(int(x) for x in body.split(",") if x))
                entries[key] = None
                up_to = int(n)
        return Catalog(r, k, up_to, entries)


def enumerate_plane_maps(r: int, k: int, n_max: int):
    """Every 2-connected plane graph of girth at least ``r`` inside the ring ``C_k``.

    Graphs are produced once per map isomorphism class fixing the ring face,
    in breadth-first order of edge count.
    """
    start = PlaneMap.ring(k)
    seen = {start.code()}
    level = [start]
    while level:
        nxt = []
        for M in level:
            yield M
            n = M.n
            dist = M.distances()
            for face in M.faces():
                L = len(face)
                for i in range(L):
                    for j in range(i + 1, L):
                        u, w = face[i], face[j]
                        d = dist[u][w]
                        for length in range(1, n_max - n + 2):
                            if d + length < r or (length == 1 and d == 1):
                                continue
                            if length + j - i < r or length + L - (j - i) < r:
                                continue
                            child = M.add_ear(face, i, j, length)
                            c = child.code()
                            if c not in seen:
                                seen.add(c)
                                nxt.append(child)
        level = nxt


def _min_internal_degree_ok(M: PlaneMap) -> bool:
    return all(len(M.rot[v]) >= 3 for v in range(M.k, M.n))


def enumerate_disk(r: int, k: int, n_max: int) -> Catalog:
    """Catalog of the critical graphs of girth at least ``r`` in the disk with ring ``C_k``."""
    if k < 3 or n_max < k:
        raise ValueError("need k >= 3 and n_max >= k")
    cat = Catalog(r, k, n_max)
    maps = candidates = 0
    for M in enumerate_plane_maps(r, k, n_max):
        maps += 1
        if M.n == k and len(M.rot[0]) == 2 and all(len(x) == 2 for x in M.rot):
            continue
        if not _min_internal_degree_ok(M):
            continue
        candidates += 1
        G = M.to_embedded()
        if not is_R_critical(G).verdict:
            continue
        ms = big_faces(G)
        cat.graphs.append(G)
        cat.entries.setdefault(ms, len(cat.graphs) - 1)
    cat.stats = {"maps": maps, "candidates": candidates, "critical": len(cat.graphs)}
    return cat


# ---------------------------------------------------------------------------
# refinements

@dataclass
class RefinementResult:
    verdict: bool
    chain: list  # list of (multiset, replaced element, substituted multiset)
    caveat: str = ""

    def __bool__(self):
        return self.verdict


def _msub(S, a):
    lst = list(S)
    lst.remove(a)
    return lst


def is_refinement(S2, S1, catalogs, *, max_extra: int = 2) -> RefinementResult:
    """Decide whether ``S2`` arises from ``S1`` by one-step refinements.

    ``catalogs`` maps ``k`` to the girth-4 catalog for ring length ``k``.
    The search keeps multisets of size at most ``len(S2) + max_extra``.
    """
    S1 = tuple(sorted(S1))
    S2 = tuple(sorted(S2))
    bound = len(S2) + max_extra
    used = set()
    prev = {S1: None}
    q = deque([S1])
    while q:
        cur = q.popleft()
        if cur == S2:
            chain = []
            x = cur
            while prev[x] is not None:
                p, a, Z = prev[x]
                chain.append((p, a, Z))
                x = p
            chain.reverse()
            ups = sorted({catalogs[k].exhaustive_up_to for k in used if k in catalogs})
            return RefinementResult(True, chain, f"catalogs exhaustive up to n={ups}" if ups else "")
        for a in sorted(set(cur)):
            for kk in (a, a + 2):
                if kk not in catalogs:
                    raise CatalogIncomplete(f"the girth-4 catalog for ring length {kk} is missing")
                used.add(kk)
                for Z in catalogs[kk].multisets():
                    new = tuple(sorted(_msub(cur, a) + list(Z)))
                    if len(new) > bound or new in prev:
                        continue
                    prev[new] = (cur, a, Z)
                    q.append(new)
    return RefinementResult(False, [])


def check_disk_lemma(k: int, catalogs4, catalogs5):
    """Every entry of the girth-4 catalog for ``k`` other than ``{k-2}`` refines an entry
    of the girth-4 catalog for ``k-2`` or the girth-5 catalog for ``k``.

    Returns a list of ``(entry, source, RefinementResult)``; ``source`` is None on failure.
    """
    out = []
    sources = list(catalogs4[k - 2].multisets()) + list(catalogs5[k].multisets())
    for S in catalogs4[k].multisets():
        if S == (k - 2,):
            continue
        found = None
        for Z in sources:
            res = is_refinement(S, Z, catalogs4)
            if res.verdict:
                found = (Z, res)
                break
        out.append((S, found[0] if found else None, found[1] if found else RefinementResult(False, [])))
    return out


def face_length_census(cat: Catalog):
    return Counter(tuple(internal_face_lengths(G)) for G in cat.graphs)


# ---------------------------------------------------------------------------
# closed surfaces

SURFACES = {
    "sphere": (0, True),
    "projective-plane": (1, False),
    "torus": (2, True),
    "klein-bottle": (2, False),
}


class SurfaceMap:
    """A signed rotation system given by neighbour lists; ``neg`` holds twisted edges."""

    __slots__ = ("rot", "neg")

    def __init__(self, rot, neg=frozenset()):
        self.rot = rot
        self.neg = neg

    @classmethod
    def cycle(cls, k, twisted=False):
        return cls([[(i + 1) % k, (i - 1) % k] for i in range(k)], frozenset({(0, k - 1)}) if twisted else frozenset())

    @property
    def n(self):
        return len(self.rot)

    def flags(self):
        edges = sorted((u, v) for u in range(self.n) for v in self.rot[u] if u < v)
        eid = {e: i for i, e in enumerate(edges)}

        def dart(u, v):
            return 2 * eid[(u, v)] if u < v else 2 * eid[(v, u)] + 1

        rot = [[dart(v, u) for u in r] for v, r in enumerate(self.rot)]
        signed = [(u, v, -1 if (u, v) in self.neg else 1) for u, v in edges]
        return signed, rot, flag_system(signed, rot), dart

    def face_labels(self, t0, t1):
        lab = [-1] * len(t0)
        nf = 0
        for x in range(len(t0)):
            if lab[x] < 0:
                y = x
                while lab[y] < 0:
                    lab[y] = nf
                    lab[t0[y]] = nf
                    y = t1[t0[y]]
                nf += 1
        return lab, nf

    def distances(self):
        return PlaneMap.distances(self)

    def to_embedded(self) -> EmbeddedGraph:
        signed, rot, _, _ = self.flags()
        return EmbeddedGraph(self.n, signed, rot)


def _code_all(t0, t1, t2):
    return kernels.canonical_code(t0, t1, t2, bytearray(len(t0)), list(range(len(t0))))


def enumerate_surface(surface: str, n_max: int, *, girth: int = 4, quadrangulation: bool = False,
                      stats: dict | None = None):
    """Every 2-connected map of girth at least ``girth`` on ``surface`` with at most ``n_max`` vertices.

    Maps are grown from cycles by adding ears; the Euler genus never drops
    along such a sequence, so the search prunes at the target genus.  Each
    map is produced once per map isomorphism class, in order of edge count
    and then canonical code.
    """
    if surface not in SURFACES:
        raise ValueError(f"unknown surface {surface!r}; choose from {', '.join(SURFACES)}")
    eg_max, orientable = SURFACES[surface]
    seen = set()
    level = {}
    for k in range(max(girth, 3), n_max + 1):
        for tw in ((False,) if orientable or eg_max == 0 else (False, True)):
            M = SurfaceMap.cycle(k, tw)
            _, _, (t0, t1, t2), _ = M.flags()
            c = _code_all(t0, t1, t2)
            if c not in seen:
                seen.add(c)
                level.setdefault(k, []).append((c, M))
    maps = 0
    m = min(level) if level else 0
    while level:
        batch = sorted(level.pop(m), key=lambda cm: cm[0])
        for _, M in batch:
            maps += 1
            signed, rot, (t0, t1, t2), dart = M.flags()
            lab, nf = M.face_labels(t0, t1)
            eg = 2 - M.n + len(signed) - nf
            if eg == eg_max and (not orientable or not M.neg):
                G = M.to_embedded()
                if orientable or not G.is_orientable():
                    if not quadrangulation or all(len(w) == 4 for w in G.walks):
                        yield G
            dist = M.distances()
            corners = [(v, i, lab[2 * dart(v, M.rot[v][i]) + 1]) for v in range(M.n) for i in range(len(M.rot[v]))]
            for a, (u, i, fu) in enumerate(corners):
                for w, j, fw in corners[a + 1:]:
                    if w == u or (fu != fw and eg + 2 > eg_max):
                        continue
                    d = dist[u][w]
                    for length in range(1, n_max - M.n + 2):
                        if d + length < girth or (length == 1 and d == 1):
                            continue
                        for sign in ((1,) if orientable else (1, -1)):
                            child = _add_ear(M, u, i, w, j, length, sign)
                            _, _, (c0, c1, c2), _ = child.flags()
                            _, cf = child.face_labels(c0, c1)
                            ceg = 2 - child.n + len(c0) // 4 - cf
                            if ceg > eg_max:
                                continue
                            code = _code_all(c0, c1, c2)
                            if code in seen:
                                continue
                            seen.add(code)
                            level.setdefault(len(c0) // 4, []).append((code, child))
        m += 1
        while level and m not in level:
            m += 1
    if stats is not None:
        stats["maps"] = maps


def _add_ear(M: SurfaceMap, u, i, w, j, length, sign) -> SurfaceMap:
    rot = [list(r) for r in M.rot]
    n = len(rot)
    new = list(range(n, n + length - 1))
    path = [u] + new + [w]
    for t in range(len(new)):
        rot.append([path[t], path[t + 2]])
    rot[u].insert(i + 1, path[1])
    rot[w].insert(j + 1, path[-2])
    neg = M.neg
    if sign < 0:
        a, b = path[-2], w
        neg = neg | {(min(a, b), max(a, b))}
    return SurfaceMap(rot, neg)


# ---------------------------------------------------------------------------
# verification suites

_CATALOGS: dict = {}


def disk_catalog(r: int, k: int, n_max: int) -> Catalog:
    """Memoised ``enumerate_disk``."""
    key = (r, k, n_max)
    if key not in _CATALOGS:
        _CATALOGS[key] = enumerate_disk(r, k, n_max)
    return _CATALOGS[key]


def _enumerate_spec(spec):
    return spec, enumerate_disk(*spec)


def prefetch_catalogs(specs, jobs: int = 1):
    """Fill the catalog cache, using ``jobs`` worker processes; results do not depend on ``jobs``."""
    todo = sorted({tuple(s) for s in specs} - set(_CATALOGS))
    if jobs <= 1 or len(todo) <= 1:
        for spec in todo:
            disk_catalog(*spec)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for spec, cat in ex.map(_enumerate_spec, todo):
            _CATALOGS[spec] = cat


def disk_code(G: EmbeddedGraph) -> bytes:
    """Canonical code of a disk graph with its ring face marked."""
    fid = G.rings[0].face
    ring = set()
    for w in G.faces[fid].walks:
        for x in G.walks[w].flags:
            ring.add(x)
            ring.add(G.t0[x])
    color = bytearray(len(G.t0))
    for x in ring:
        color[x] = 1
    return kernels.canonical_code(G.t0, G.t1, G.t2, color, sorted(ring))


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)  # (name, ok, detail)

    @property
    def verdict(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    def text(self) -> str:
        lines = [f"suite = {self.suite}"]
        for name, ok, detail in self.checks:
            lines.append(f"{name} = {'pass' if ok else 'fail'}" + (f" ({detail})" if detail else ""))
        lines.append(f"verdict = {'pass' if self.verdict else 'fail'}")
        return "\n".join(lines) + "\n"


def _fmt_ms(ms):
    return "{" + ",".join(map(str, ms)) + "}"


def suite_disk_bounds(max_n: int = 10, max_ring: int = 8) -> VerificationReport:
    """No long faces for rings up to six, nothing at all below six, and w <= s(l-2)."""
    from .samples import hexagon_tripod
    from .weights import fmt, s, total_weight

    rep = VerificationReport("disk-bounds")
    tripod = disk_code(hexagon_tripod())
    for k in range(4, max_ring + 1):
        cat = disk_catalog(4, k, max_n)
        if k <= 5:
            rep.add(f"empty[k={k}]", not cat.graphs, f"{len(cat.graphs)} critical graphs, n<={max_n}")
        elif k == 6:
            quads = all(not big_faces(G) for G in cat.graphs)
            rep.add("quads-only[k=6]", quads and cat.graphs, f"{len(cat.graphs)} critical graphs, n<={max_n}")
            rep.add("hexagon-tripod[k=6]", any(disk_code(G) == tripod for G in cat.graphs))
        bad = [G for G in cat.graphs if total_weight(G) > s(k - 2)]
        worst = max((total_weight(G) for G in cat.graphs), default=0)
        rep.add(f"weight[k={k}]", not bad, f"max w = {fmt(worst)}, s(l-2) = {fmt(s(k - 2))}")
    return rep


def suite_girth5(max_n: int = 12, rings=(5, 6, 7, 8, 9)) -> VerificationReport:
    from .weights import fmt, s, total_weight

    rep = VerificationReport("girth5")
    for k in rings:
        cat = disk_catalog(5, k, max_n)
        if k <= 7:
            rep.add(f"empty[k={k}]", not cat.graphs, f"{len(cat.graphs)} critical graphs, n<={max_n}")
            continue
        bound = s(k - 3) + s(5)
        ok = all(total_weight(G) <= bound for G in cat.graphs)
        worst = max((total_weight(G) for G in cat.graphs), default=0)
        rep.add(f"weight[k={k}]", ok, f"max w = {fmt(worst)}, bound = {fmt(bound)}")
        shape = True
        for G in cat.graphs:
            b = big_faces(G)
            if b and max(b) > k - 3:
                shape = False
            if b and max(b) == k - 3 and b != tuple(sorted((5, k - 3))):
                shape = False
        rep.add(f"longest-face[k={k}]", shape, "catalog " + " ".join(_fmt_ms(x) for x in cat.multisets()))
    return rep


def suite_refinement(max_n: int = 10, max_ring: int = 8) -> VerificationReport:
    rep = VerificationReport("refinement")
    cats4 = {k: disk_catalog(4, k, max_n) for k in range(4, max_ring + 3)}
    cats5 = {k: disk_catalog(5, k, max_n) for k in range(5, max_ring + 1)}
    for k in range(4, max_ring + 1):
        ok = all(not S or (max(S) <= k - 2 and (max(S) < k - 2 or S == (k - 2,))) for S in cats4[k].multisets())
        rep.add(f"max-face[k={k}]", ok, "catalog " + (" ".join(_fmt_ms(x) for x in cats4[k].multisets()) or "empty"))
    for k in range(7, max_ring + 1):
        for S, Z, res in check_disk_lemma(k, cats4, cats5):
            chain = " -> ".join(_fmt_ms(p) + f" [{a}:{_fmt_ms(z)}]" for p, a, z in res.chain)
            detail = (f"from {_fmt_ms(Z)} " + (f"via {chain} " if chain else "") if Z is not None else "") \
                + f"catalogs exhaustive up to n={max_n}"
            rep.add(f"refines[k={k},S={_fmt_ms(S)}]", Z is not None, detail)
    rep.add("caveat", True, f"catalogs are exhaustive only up to n={max_n}")
    return rep


def has_nonbipartite_quadrangulation(G: EmbeddedGraph):
    """A subgraph whose induced embedding is a non-bipartite quadrangulation, or None.

    Only vertex sets of size at least nine are examined: a triangle-free
    non-bipartite graph on n vertices has at most (n-1)^2/4 + 1 edges, which is
    below the 2n - 2 edges of a projective quadrangulation for n <= 8.
    """
    import networkx as nx
    from itertools import combinations

    from .surface_map import restrict

    n = G.n
    for size in range(n, 8, -1):
        need = 2 * size - 2
        for vs in combinations(range(n), size):
            vset = set(vs)
            es = [e for e, (u, v, _) in enumerate(G.edges) if u in vset and v in vset]
            if len(es) < need:
                continue
            for sub in combinations(es, need):
                H = restrict(G, vset, sub, rings=(), check=False).graph
                if H.genus != 1 or len(H.faces) != need // 2:
                    continue
                if any(len(w) != 4 for w in H.walks) or len(H.components()) != 1:
                    continue
                g = nx.Graph([(u, v) for u, v, _ in H.edges])
                if not nx.is_bipartite(g):
                    return vs, sub
    return None


def suite_gimbel_thomassen(max_n: int = 10) -> VerificationReport:
    from .coloring import is_3_colorable
    from .samples import groetzsch_projective

    rep = VerificationReport("gimbel-thomassen")
    plane = list(enumerate_surface("sphere", max_n))
    ok = all(is_3_colorable(G.n, [(u, v) for u, v, _ in G.edges]) for G in plane)
    rep.add("sphere-colorable", ok, f"{len(plane)} triangle-free plane maps, n<={max_n}")
    count = 0
    mismatches = []
    for G in enumerate_surface("projective-plane", max_n):
        count += 1
        col = is_3_colorable(G.n, [(u, v) for u, v, _ in G.edges])
        quad = has_nonbipartite_quadrangulation(G) is not None
        if col == quad:
            mismatches.append(write_emg(G))
    rep.add("projective-equivalence", not mismatches, f"{count} triangle-free projective maps, n<={max_n}")
    W = groetzsch_projective()
    col = is_3_colorable(W.n, [(u, v) for u, v, _ in W.edges])
    quad = has_nonbipartite_quadrangulation(W) is not None
    rep.add("projective-witness", (not col) and quad, "Grötzsch graph as a projective quadrangulation")
    return rep


def suite_surfineq() -> VerificationReport:
    from .weights import surfineq_audit

    audit = surfineq_audit(6, 8)
    rep = VerificationReport("surfineq")
    for key in "abcd":
        fails = [f for f in audit.failures if f[0] == key]
        rep.add(f"inequality-{key}", not fails, f"{audit.values['checked_' + key]} tuples")
    return rep


def suite_reduce(max_n: int = 10, max_ring: int = 8) -> VerificationReport:
    from .reduce import PreconditionFailed, check_reduce_hypotheses, internal_quads, reduce_4face

    rep = VerificationReport("reduce")
    tried = 0
    failures = []
    for k in range(4, max_ring + 1):
        for gi, G in enumerate(disk_catalog(4, k, max_n).graphs):
            for f in internal_quads(G):
                try:
                    check_reduce_hypotheses(G, f, certify=False)
                except PreconditionFailed:
                    continue
                tried += 1
                try:
                    reduce_4face(G, f)
                except Exception as exc:  # noqa: BLE001 - every failure is reported
                    failures.append(f"k={k} graph={gi} face={f}: {type(exc).__name__}: {exc}")
    rep.add("postconditions", not failures and tried > 0, f"{tried} reductions" + ("; " + failures[0] if failures else ""))
    return rep


SUITES = {
    "disk-bounds": suite_disk_bounds,
    "girth5": suite_girth5,
    "refinement": suite_refinement,
    "surfineq": suite_surfineq,
    "gimbel-thomassen": suite_gimbel_thomassen,
    "reduce": suite_reduce,
}


def run_verification(suite: str, **kw) -> VerificationReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return SUITES[suite](**kw)
