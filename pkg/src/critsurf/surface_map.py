"""Graphs embedded in surfaces with rings.

An embedding is stored as a signed rotation system plus an explicit
partition of the traced facial walks into faces, each face carrying a genus
label.  Faces therefore need not be disks.

Darts and flags
---------------
Edge ``e = (u, v, sign)`` has darts ``2e`` (leaving ``u``) and ``2e + 1``
(leaving ``v``).  Each dart has two flags ``2d`` and ``2d + 1``: the corner
just before the dart and the corner just after it in the rotation at its
tail.  Three fixed-point-free involutions act on flags:

* ``t0`` moves to the other end of the edge (sign ``-1`` flips the side),
* ``t1`` moves across a corner to the neighbouring dart,
* ``t2`` swaps the two sides of a dart.

Facial walks are the orbits of ``<t0, t1>``; each has ``2 * len(walk)`` flags.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class EmbeddingError(ValueError):
    """Base class for invalid embeddings."""


class NotSimple(EmbeddingError):
    pass


class NotNormal(EmbeddingError):
    pass


class EulerMismatch(EmbeddingError):
    pass


class DanglingReference(EmbeddingError):
    pass


class RingFace(ValueError):
    """Raised when an operation defined only for internal faces gets a ring face."""


@dataclass(frozen=True)
class Walk:
    darts: tuple[int, ...]
    flags: tuple[int, ...]
    vertex: int | None = None  # set only for a lone isolated vertex

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


@dataclass(frozen=True)
class FaceRecord:
    walks: tuple[int, ...]
    genus: int
    is_ring_face: bool = False


@dataclass(frozen=True)
class Ring:
    kind: str  # "facial" or "vertex"
    face: int
    vertex: int | None = None
    weak: bool = False

    @staticmethod
    def facial(face: int) -> "Ring":
        return Ring("facial", face)

    @staticmethod
    def at_vertex(v: int, face: int, weak: bool = False) -> "Ring":
        return Ring("vertex", face, v, weak)


def flag_system(edges, rot):
    """Return the three flag involutions of a signed rotation system."""
    nf = 4 * len(edges)
    t0 = [0] * nf
    t1 = [0] * nf
    t2 = [0] * nf
    for d in range(2 * len(edges)):
        t2[2 * d] = 2 * d + 1
        t2[2 * d + 1] = 2 * d
    for e, (_, _, sign) in enumerate(edges):
        a, b = 4 * e, 4 * e + 2  # flags (2e, 0) and (2e+1, 0)
        if sign > 0:
            t0[a], t0[b + 1] = b + 1, a
            t0[a + 1], t0[b] = b, a + 1
        else:
            t0[a], t0[b] = b, a
            t0[a + 1], t0[b + 1] = b + 1, a + 1
    for r in rot:
        k = len(r)
        for i in range(k):
            a, b = r[i], r[(i + 1) % k]
            t1[2 * a + 1] = 2 * b
            t1[2 * b] = 2 * a + 1
    return t0, t1, t2


def _orbit2(x, p, q):
    """Orbit of ``x`` under two involutions, as the alternating cycle x, p(x), q(p(x)), ..."""
    out = [x]
    y = p[x]
    while True:
        out.append(y)
        z = q[y]
        if z == x:
            return out
        out.append(z)
        y = p[z]


def _canonical_reading(orbit, dart_of):
    """Least dart sequence among all readings of a face orbit.

    Readings made of side-0 flags are preferred, so that on an orientable map
    with positive signs every dart is read exactly once over all walks.
    Returns (darts, flags) where ``flags`` are the forward flags of the
    chosen reading.
    """
    size = len(orbit)
    L = size // 2
    best = None
    for i in range(size):
        step = 2 if i % 2 == 0 else -2
        fl = tuple(orbit[(i + step * j) % size] for j in range(L))
        key = (any(f & 1 for f in fl), tuple(dart_of(f) for f in fl))
        if best is None or key < best[0]:
            best = (key, fl)
    return best[0][1], best[1]


class EmbeddedGraph:
    """A graph embedded in a surface with rings; immutable after construction."""

    def __init__(self, n, edges, rot, faces=None, rings=(), genus=None, *, check=True):
        self.n = int(n)
        self.edges = tuple((int(u), int(v), int(s)) for u, v, s in edges)
        self.rot = tuple(tuple(int(d) for d in r) for r in rot)
        if check:
            self._check_structure()
        self.t0, self.t1, self.t2 = flag_system(self.edges, self.rot)
        self._trace()
        if faces is None:
            faces = [(0, (i,)) for i in range(len(self.walks))]
        self._set_faces(faces, rings, genus, check)
        self._cache = {}

    # -- construction ---------------------------------------------------
    def _check_structure(self):
        n, m = self.n, len(self.edges)
        seen = set()
        for e, (u, v, s) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise DanglingReference(f"edge {e} has an endpoint outside 0..{n - 1}")
            if s not in (1, -1):
                raise EmbeddingError(f"edge {e} has sign {s}")
            if u == v:
                raise NotSimple(f"edge {e} is a loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise NotSimple(f"edge {e} repeats the pair {key}")
            seen.add(key)
        if len(self.rot) != n:
            raise DanglingReference(f"expected {n} rotations, got {len(self.rot)}")
        placed = [False] * (2 * m)
        for v, r in enumerate(self.rot):
            for d in r:
                if not 0 <= d < 2 * m:
                    raise DanglingReference(f"rotation of {v} names dart {d}")
                if placed[d]:
                    raise DanglingReference(f"dart {d} appears twice in rotations")
                if self.edges[d >> 1][d & 1] != v:
                    raise DanglingReference(f"dart {d} does not leave vertex {v}")
                placed[d] = True
        if not all(placed):
            missing = placed.index(False)
            raise DanglingReference(f"dart {missing} is not in any rotation")

    def _trace(self):
        def dart_of(f):
            return f >> 1

        nf = len(self.t0)
        flag_walk = [-1] * nf
        raw = []
        for x in range(nf):
            if flag_walk[x] != -1:
                continue
            orbit = _orbit2(x, self.t0, self.t1)
            for y in orbit:
                flag_walk[y] = -2
            ds, fl = _canonical_reading(orbit, dart_of)
            raw.append(((0, ds), Walk(ds, fl), orbit))
        for v in range(self.n):
            if not self.rot[v]:
                raw.append(((1, (v,)), Walk((), (), v), ()))
        raw.sort(key=lambda item: item[0])
        self.walks = tuple(w for _, w, _ in raw)
        for i, (_, _, orbit) in enumerate(raw):
            for y in orbit:
                flag_walk[y] = i
        self.flag_walk = flag_walk
        iso = {}
        for i, w in enumerate(self.walks):
            if w.vertex is not None:
                iso[w.vertex] = i
        self.isolated_walk = iso

    def _set_faces(self, faces, rings, genus, check):
        nw = len(self.walks)
        owner = [-1] * nw
        recs = []
        for fid, (g, ws) in enumerate(faces):
            ws = tuple(sorted(int(w) for w in ws))
            if not ws:
                raise EulerMismatch(f"face {fid} has no walks")
            if g < 0:
                raise EulerMismatch(f"face {fid} has negative genus")
            for w in ws:
                if not 0 <= w < nw:
                    raise DanglingReference(f"face {fid} names walk {w}; there are {nw}")
                if owner[w] >= 0:
                    raise EulerMismatch(f"walk {w} lies in faces {owner[w]} and {fid}")
                owner[w] = fid
            recs.append((int(g), ws))
        if -1 in owner:
            raise EulerMismatch(f"walk {owner.index(-1)} is in no face")
        self.walk_face = tuple(owner)
        ring_faces = set()
        rlist = []
        for r in rings:
            if not 0 <= r.face < len(recs):
                raise DanglingReference(f"ring refers to face {r.face}")
            if r.kind == "facial":
                ring_faces.add(r.face)
            elif r.kind == "vertex":
                if r.vertex is None or not 0 <= r.vertex < self.n:
                    raise DanglingReference(f"vertex ring at {r.vertex}")
            else:
                raise EmbeddingError(f"unknown ring kind {r.kind!r}")
            rlist.append(r)
        self.faces = tuple(FaceRecord(ws, g, fid in ring_faces) for fid, (g, ws) in enumerate(recs))
        self.rings = tuple(rlist)
        chi = self.n - len(self.edges) + sum(2 - f.genus - len(f.walks) for f in self.faces)
        computed = 2 - chi
        if genus is not None and genus != computed:
            raise EulerMismatch(f"declared genus {genus} but Euler's formula gives {computed}")
        if computed < 0:
            raise EulerMismatch(f"Euler's formula gives negative genus {computed}")
        self.genus = computed
        if check:
            self._check_rings()

    def _check_rings(self):
        seen_v = {}
        for i, r in enumerate(self.rings):
            f = self.faces[r.face]
            if r.kind == "facial":
                if len(f.walks) != 1 or f.genus != 0:
                    raise NotNormal(f"ring {i}: a ring face must be a disk with one walk")
                vs = self.walk_vertices(f.walks[0])
                if len(vs) < 3 or len(set(vs)) != len(vs):
                    raise NotNormal(f"ring {i}: facial ring walk is not a cycle")
                verts = vs
            else:
                if f.is_ring_face:
                    raise NotNormal(f"ring {i}: cuff face of a vertex ring cannot be a ring face")
                if not any(r.vertex in self.walk_vertices(w) for w in f.walks):
                    raise NotNormal(f"ring {i}: vertex {r.vertex} is not on its cuff face")
                verts = [r.vertex]
            for v in verts:
                if v in seen_v:
                    raise NotNormal(f"rings {seen_v[v]} and {i} share vertex {v}")
                seen_v[v] = i

    # -- basic queries --------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def vertex_of_flag(self, f: int) -> int:
        return self.edges[f >> 2][(f >> 1) & 1]

    def walk_vertices(self, w: int) -> list[int]:
        wk = self.walks[w]
        if wk.vertex is not None:
            return [wk.vertex]
        return [self.tail(d) for d in wk.darts]

    def walk_edges(self, w: int) -> list[int]:
        return [d >> 1 for d in self.walks[w].darts]

    def walk_is_cycle(self, w: int) -> bool:
        vs = self.walk_vertices(w)
        return len(vs) >= 3 and len(set(vs)) == len(vs) and self.walks[w].vertex is None

    def face_of_flag(self, f: int) -> int:
        return self.walk_face[self.flag_walk[f]]

    def adjacency(self) -> list[set[int]]:
        if "adj" not in self._cache:
            adj = [set() for _ in range(self.n)]
            for u, v, _ in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._cache["adj"] = adj
        return self._cache["adj"]

    def adj_masks(self) -> list[int]:
        return [sum(1 << u for u in nb) for nb in self.adjacency()]

    def edge_between(self, u: int, v: int) -> int | None:
        if "eidx" not in self._cache:
            self._cache["eidx"] = {frozenset((a, b)): e for e, (a, b, _) in enumerate(self.edges)}
        return self._cache["eidx"].get(frozenset((u, v)))

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    # -- rings ----------------------------------------------------------
    def ring_vertex_lists(self) -> list[list[int]]:
        out = []
        for r in self.rings:
            if r.kind == "facial":
                out.append(self.walk_vertices(self.faces[r.face].walks[0]))
            else:
                out.append([r.vertex])
        return out

    def ring_vertices(self) -> set[int]:
        return {v for vs in self.ring_vertex_lists() for v in vs}

    def ring_edges(self) -> set[int]:
        out = set()
        for r in self.rings:
            if r.kind == "facial":
                out.update(self.walk_edges(self.faces[r.face].walks[0]))
        return out

    def ring_length(self, i: int) -> int:
        r = self.rings[i]
        if r.kind == "facial":
            return len(self.walks[self.faces[r.face].walks[0]])
        return 0 if r.weak else 1

    def vertex_ring_at(self, v: int):
        for r in self.rings:
            if r.kind == "vertex" and r.vertex == v:
                return r
        return None

    def internal_faces(self) -> list[int]:
        return [i for i, f in enumerate(self.faces) if not f.is_ring_face]

    def lone_vertex_ring(self, w: int):
        """The vertex ring forming walk ``w`` by itself, if any."""
        wk = self.walks[w]
        if wk.vertex is None:
            return None
        return self.vertex_ring_at(wk.vertex)

    def face_length(self, fid: int) -> int:
        total = 0
        for w in self.faces[fid].walks:
            r = self.lone_vertex_ring(w)
            if r is not None:
                total += 0 if r.weak else 1
            else:
                total += len(self.walks[w])
        return total

    # -- derived embeddings ---------------------------------------------
    def with_rings(self, rings: Iterable[Ring]) -> "EmbeddedGraph":
        return EmbeddedGraph(self.n, self.edges, self.rot, self.face_spec(), tuple(rings), self.genus)

    def face_spec(self):
        return [(f.genus, f.walks) for f in self.faces]

    def is_orientable(self) -> bool:
        frame = [0] * self.n
        adj = [[] for _ in range(self.n)]
        for u, v, s in self.edges:
            adj[u].append((v, s))
            adj[v].append((u, s))
        for s0 in range(self.n):
            if frame[s0]:
                continue
            frame[s0] = 1
            stack = [s0]
            while stack:
                u = stack.pop()
                for v, s in adj[u]:
                    want = frame[u] * s
                    if not frame[v]:
                        frame[v] = want
                        stack.append(v)
                    elif frame[v] != want:
                        return False
        return all(f.genus % 2 == 0 for f in self.faces)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        adj = self.adjacency()
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def __eq__(self, other):
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (self.n, self.edges, self.rot, self.faces, self.rings, self.genus) == (
            other.n, other.edges, other.rot, other.faces, other.rings, other.genus)

    def __hash__(self):
        return hash((self.n, self.edges, self.rot))

    def __repr__(self):
        return f"EmbeddedGraph(n={self.n}, m={self.m}, faces={len(self.faces)}, genus={self.genus}, rings={len(self.rings)})"


# ---------------------------------------------------------------------------
# Public operations

def facial_walks(G: EmbeddedGraph) -> tuple[Walk, ...]:
    return G.walks


def euler_genus(G: EmbeddedGraph) -> int:
    return G.genus


def face_class(G: EmbeddedGraph, fid: int) -> str:
    f = G.faces[fid]
    if f.is_ring_face:
        raise RingFace(f"face {fid} is a ring face")
    if f.genus != 0 or len(f.walks) != 1:
        return "neither"
    if G.walk_is_cycle(f.walks[0]):
        return "closed-2-cell"
    return "open-2-cell"


def is_omnipresent(G: EmbeddedGraph, fid: int) -> bool:
    from .topology import classify_cycle

    if face_class(G, fid) != "neither":
        raise ValueError(f"face {fid} is open 2-cell; omnipresence is defined for other faces")
    for w in G.faces[fid].walks:
        if G.lone_vertex_ring(w) is not None:
            continue
        if not G.walk_is_cycle(w):
            return False
        cls = classify_cycle(G, G.walk_vertices(w))
        if not cls.separating or cls.sidedness != "two-sided":
            return False
        side = cls.side_without_face(fid)
        if side is None or side.genus != 0 or len(side.rings) != 1:
            return False
    return True


def build_from_neighbors(rot_nbrs: Sequence[Sequence[int]], signs=None, faces=None, rings=(), genus=None):
    """Build an embedding from cyclic neighbour lists.

    ``signs`` maps ``frozenset({u, v})`` to ``-1`` for twisted edges.
    Edges are numbered by sorted ``(min, max)`` pairs.
    """
    signs = signs or {}
    pairs = sorted({(min(u, v), max(u, v)) for u, nb in enumerate(rot_nbrs) for v in nb})
    index = {p: i for i, p in enumerate(pairs)}
    edges = [(u, v, signs.get(frozenset((u, v)), 1)) for u, v in pairs]
    rot = []
    for u, nb in enumerate(rot_nbrs):
        r = []
        for v in nb:
            e = index[(min(u, v), max(u, v))]
            r.append(2 * e + (0 if edges[e][0] == u else 1))
        rot.append(r)
    return EmbeddedGraph(len(rot_nbrs), edges, rot, faces, rings, genus)


def find_cycle_walk(G: EmbeddedGraph, cycle: Sequence[int]) -> int:
    """Index of the walk whose vertex sequence is the given cycle (either direction)."""
    k = len(cycle)
    target = list(cycle)
    for i, wk in enumerate(G.walks):
        if len(wk) != k or wk.vertex is not None:
            continue
        vs = G.walk_vertices(i)
        for seq in (vs, vs[::-1]):
            for s in range(k):
                if seq[s:] + seq[:s] == target:
                    return i
    raise DanglingReference(f"no facial walk traces {list(cycle)}")


def facial_ring(G: EmbeddedGraph, cycle: Sequence[int]) -> Ring:
    return Ring.facial(G.walk_face[find_cycle_walk(G, cycle)])


def build_embedded_graph(spec) -> EmbeddedGraph:
    """Build and validate an embedding from EMG text or a mapping."""
    if isinstance(spec, str):
        return parse_emg(spec)
    rings = []
    for r in spec.get("rings", ()):
        rings.append(r if isinstance(r, Ring) else Ring(**r))
    return EmbeddedGraph(spec["n"], spec["edges"], spec["rot"], spec.get("faces"), rings, spec.get("genus"))


# ---------------------------------------------------------------------------
# EMG text format

def write_emg(G: EmbeddedGraph) -> str:
    lines = ["EMG 1", f"V {G.n}", f"E {G.m}"]
    for e, (u, v, s) in enumerate(G.edges):
        lines.append(f"edge {e} {u} {v} {'+' if s > 0 else '-'}")
    for v, r in enumerate(G.rot):
        lines.append(" ".join([f"rot {v}"] + [f"{d >> 1}.{d & 1}" for d in r]))
    for i, f in enumerate(G.faces):
        lines.append(f"face {i} genus {f.genus} walks {','.join(str(w) for w in f.walks)}")
    for r in G.rings:
        if r.kind == "facial":
            lines.append(f"ring facial {r.face}")
        else:
            lines.append(f"ring vertex {r.vertex}{' weak' if r.weak else ''} face {r.face}")
    lines.append(f"genus {G.genus}")
    return "\n".join(lines) + "\n"


def parse_emg(text: str) -> EmbeddedGraph:
    n = m = None
    genus = None
    edges = {}
    rot = {}
    faces = {}
    rings = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if not header:
                if tok != ["EMG", "1"]:
                    raise EmbeddingError("missing 'EMG 1' header")
                header = True
            elif tok[0] == "V":
                n = int(tok[1])
            elif tok[0] == "E":
                m = int(tok[1])
            elif tok[0] == "edge":
                sign = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}[tok[4]]
                edges[int(tok[1])] = (int(tok[2]), int(tok[3]), sign)
            elif tok[0] == "rot":
                darts = []
                for t in tok[2:]:
                    e, end = t.split(".")
                    darts.append(2 * int(e) + int(end))
                rot[int(tok[1])] = darts
            elif tok[0] == "face":
                if tok[2] != "genus" or tok[4] != "walks":
                    raise EmbeddingError("expected 'face id genus g walks ...'")
                ws = [int(x) for x in tok[5].split(",")] if len(tok) > 5 else []
                faces[int(tok[1])] = (int(tok[3]), ws)
            elif tok[0] == "ring":
                if tok[1] == "facial":
                    rings.append(Ring.facial(int(tok[2])))
                elif tok[1] == "vertex":
                    weak = tok[3] == "weak"
                    rest = tok[4:] if weak else tok[3:]
                    if rest[0] != "face":
                        raise EmbeddingError("expected 'face' in vertex ring line")
                    rings.append(Ring.at_vertex(int(tok[2]), int(rest[1]), weak))
                else:
                    raise EmbeddingError(f"unknown ring kind {tok[1]!r}")
            elif tok[0] == "genus":
                genus = int(tok[1])
            else:
                raise EmbeddingError(f"unknown keyword {tok[0]!r}")
        except (IndexError, KeyError, ValueError) as exc:
            if isinstance(exc, EmbeddingError):
                raise
            raise EmbeddingError(f"line {lineno}: cannot parse {raw!r}") from exc
    if n is None or m is None:
        raise EmbeddingError("missing V or E line")
    if sorted(edges) != list(range(m)):
        raise DanglingReference("edge ids must be exactly 0..E-1")
    if any(not 0 <= v < n for v in rot):
        raise DanglingReference("rotation for a vertex out of range")
    face_list = None
    if faces:
        if sorted(faces) != list(range(len(faces))):
            raise DanglingReference("face ids must be contiguous from 0")
        face_list = [faces[i] for i in range(len(faces))]
    return EmbeddedGraph(n, [edges[e] for e in range(m)], [rot.get(v, []) for v in range(n)],
                         face_list, rings, genus)


# ---------------------------------------------------------------------------
# Building from flags, restriction and cellularization

def assemble(t0, t1, t2, vkey, ekey, isolated, groups, rings, *, check=True):
    """Build an embedding from flag involutions.

    ``vkey[f]`` / ``ekey[f]`` give sortable keys; vertices and edges are
    numbered by the least key among their flags.  ``isolated`` lists keys of
    vertices without flags.  ``groups`` lists faces as ``(genus, flags,
    isolated_keys)`` where each walk of the face is named by one of its flags
    (or the key of an isolated vertex).  ``rings`` entries are
    ``("facial", group)`` or ``("vertex", vertex_key, weak, group)``.

    Returns ``(G, flagmap, vmap)``: ``flagmap[f]`` is the new flag for input
    flag ``f`` and ``vmap`` sends vertex keys to new vertex ids.
    """
    nf = len(t0)
    vorb = [-1] * nf
    vreps = []
    for x in range(nf):
        if vorb[x] < 0:
            orb = _orbit2(x, t2, t1)
            idx = len(vreps)
            for y in orb:
                vorb[y] = idx
            vreps.append((min(vkey[y] for y in orb), orb))
    keys = [k for k, _ in vreps] + list(isolated)
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    newid = [0] * len(keys)
    for rank, i in enumerate(order):
        newid[i] = rank
    if len(set(keys)) != len(keys):
        raise EmbeddingError("vertex keys are not distinct")
    vmap = {keys[i]: newid[i] for i in range(len(keys))}
    # edges
    eorb = [-1] * nf
    ereps = []
    for x in range(nf):
        if eorb[x] < 0:
            orb = [x, t2[x], t0[x], t2[t0[x]]]
            if len(set(orb)) != 4 or t0[t2[x]] != t2[t0[x]]:
                raise EmbeddingError("malformed edge in flag system")
            idx = len(ereps)
            for y in orb:
                eorb[y] = idx
            ereps.append((min(ekey[y] for y in orb), orb))
    eorder = sorted(range(len(ereps)), key=lambda i: ereps[i][0])
    enew = [0] * len(ereps)
    for rank, i in enumerate(eorder):
        enew[i] = rank
    m = len(ereps)
    ends = [None] * m
    for i, (_, orb) in enumerate(ereps):
        a, b = newid[vorb[orb[0]]], newid[vorb[orb[2]]]
        ends[enew[i]] = (min(a, b), max(a, b))
    flagmap = [-1] * nf

    def dart_for(x):
        e = enew[eorb[x]]
        u, v = ends[e]
        w = newid[vorb[x]]
        if u == v:
            raise NotSimple(f"loop at vertex {u}")
        return 2 * e + (0 if w == u else 1)

    n = len(keys)
    rot = [[] for _ in range(n)]
    for i, (_, orb) in enumerate(vreps):
        x0 = min(orb)
        seq = []
        x = x0
        while True:
            d = dart_for(x)
            seq.append(d)
            flagmap[x] = 2 * d
            flagmap[t2[x]] = 2 * d + 1
            x = t1[t2[x]]
            if x == x0:
                break
        rot[newid[i]] = seq
    edges = [None] * m
    for i, (_, orb) in enumerate(ereps):
        e = enew[i]
        u, v = ends[e]
        # find the flag of dart 2e side 0
        f0 = next(y for y in orb if flagmap[y] == 4 * e)
        partner = flagmap[t0[f0]]
        sign = 1 if partner == 4 * e + 3 else -1
        edges[e] = (u, v, sign)
    bare = EmbeddedGraph(n, edges, rot, None, (), None, check=False)
    faces = []
    for g, flags, iso in groups:
        ws = {bare.flag_walk[flagmap[f]] for f in flags}
        ws.update(bare.isolated_walk[vmap[k]] for k in iso)
        faces.append((g, tuple(sorted(ws))))
    order_f = sorted(range(len(faces)), key=lambda i: faces[i][1])
    fnew = {old: new for new, old in enumerate(order_f)}
    faces = [faces[i] for i in order_f]
    ring_objs = []
    for r in rings:
        if r[0] == "facial":
            ring_objs.append(Ring.facial(fnew[r[1]]))
        else:
            ring_objs.append(Ring.at_vertex(vmap[r[1]], fnew[r[3]], r[2]))
    G = EmbeddedGraph(n, edges, rot, faces, ring_objs, None, check=check)
    return G, flagmap, vmap


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        p = self.p
        p.setdefault(x, x)
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra


@dataclass
class Restriction:
    """An embedded subgraph together with the maps from its host."""

    graph: EmbeddedGraph
    flagmap: dict  # host flag -> subgraph flag (kept darts only)
    vmap: dict  # host vertex -> subgraph vertex
    emap: dict  # host edge -> subgraph edge
    facemap: dict  # host face -> subgraph face containing it


def restrict(G: EmbeddedGraph, keep_vertices, keep_edges, *, rings=None, check=True):
    """Embedded subgraph induced by the given vertices and edges.

    Faces of the subgraph are unions of faces of ``G`` glued along deleted
    edges and vertices; their genus labels follow from Euler characteristic.
    Rings are carried over and must survive; pass ``rings=()`` to drop them.
    """
    kv = sorted(set(keep_vertices))
    vmap = {v: i for i, v in enumerate(kv)}
    ke = sorted(set(keep_edges))
    for e in ke:
        u, v, _ = G.edges[e]
        if u not in vmap or v not in vmap:
            raise DanglingReference(f"kept edge {e} has a deleted endpoint")
    emap = {e: i for i, e in enumerate(ke)}
    edges = []
    for e in ke:
        u, v, s = G.edges[e]
        edges.append((vmap[u], vmap[v], s))
    rot = []
    for v in kv:
        rot.append([2 * emap[d >> 1] + (d & 1) for d in G.rot[v] if (d >> 1) in emap])
    bare = EmbeddedGraph(len(kv), edges, rot, None, (), None, check=False)
    flagmap = {}
    for e in ke:
        for k in range(4):
            flagmap[4 * e + k] = 4 * emap[e] + k
    uf = _UF()
    for fid in range(len(G.faces)):
        uf.find(("F", fid))
    removed_e = [e for e in range(G.m) if e not in emap]
    removed_v = [v for v in range(G.n) if v not in vmap]
    for e in removed_e:
        for k in range(4):
            uf.union(("E", e), ("F", G.face_of_flag(4 * e + k)))
    for v in removed_v:
        if G.rot[v]:
            for d in G.rot[v]:
                uf.union(("V", v), ("E", d >> 1))
        else:
            uf.union(("V", v), ("F", G.walk_face[G.isolated_walk[v]]))
    for old, new in flagmap.items():
        uf.union(("W", bare.flag_walk[new]), ("F", G.face_of_flag(old)))
    for v in kv:
        w = bare.isolated_walk.get(vmap[v])
        if w is None:
            continue
        if G.rot[v]:
            for d in G.rot[v]:
                uf.union(("W", w), ("E", d >> 1))
        else:
            uf.union(("W", w), ("F", G.walk_face[G.isolated_walk[v]]))
    classes = {}
    for w in range(len(bare.walks)):
        classes.setdefault(uf.find(("W", w)), []).append(w)
    chi = {}
    for fid, f in enumerate(G.faces):
        r = uf.find(("F", fid))
        chi[r] = chi.get(r, 0) + 2 - f.genus - len(f.walks)
    for e in removed_e:
        r = uf.find(("E", e))
        chi[r] = chi.get(r, 0) - 1
    for v in removed_v:
        r = uf.find(("V", v))
        chi[r] = chi.get(r, 0) + 1
    for r in chi:
        if r not in classes:
            raise EmbeddingError("a region of the surface meets no walk of the subgraph")
    faces = []
    root_face = {}
    for root in sorted(classes, key=lambda r: min(classes[r])):
        ws = classes[root]
        g = 2 - len(ws) - chi[root]
        root_face[root] = len(faces)
        faces.append((g, tuple(ws)))
    new_rings = []
    src = G.rings if rings is None else rings
    for r in src:
        fid = root_face[uf.find(("F", r.face))]
        if r.kind == "facial":
            new_rings.append(Ring.facial(fid))
        else:
            if r.vertex not in vmap:
                raise DanglingReference(f"vertex ring {r.vertex} was deleted")
            new_rings.append(Ring.at_vertex(vmap[r.vertex], fid, r.weak))
    H = EmbeddedGraph(len(kv), edges, rot, faces, new_rings, None, check=check)
    if H.genus != G.genus:
        raise EulerMismatch(f"restriction changed the surface genus from {G.genus} to {H.genus}")
    facemap = {fid: root_face[uf.find(("F", fid))] for fid in range(len(G.faces))}
    return Restriction(H, flagmap, vmap, emap, facemap)


def cellularize(G: EmbeddedGraph):
    """Cap every facial walk by its own disk and split into connected pieces.

    Returns a list of ``(H, vertex_list)`` pairs, where ``vertex_list[i]`` is
    the vertex of ``G`` that became vertex ``i`` of ``H``.  Rings whose
    vertices lie in a piece are carried into it.
    """
    out = []
    for comp in G.components():
        cset = set(comp)
        ke = [e for e, (u, v, _) in enumerate(G.edges) if u in cset]
        vmap = {v: i for i, v in enumerate(comp)}
        emap = {e: i for i, e in enumerate(ke)}
        edges = [(vmap[G.edges[e][0]], vmap[G.edges[e][1]], G.edges[e][2]) for e in ke]
        rot = [[2 * emap[d >> 1] + (d & 1) for d in G.rot[v]] for v in comp]
        H0 = EmbeddedGraph(len(comp), edges, rot, None, (), None, check=False)
        rings = []
        for r in G.rings:
            if r.kind == "facial":
                w0 = G.faces[r.face].walks[0]
                if G.walks[w0].vertex is None and G.tail(G.walks[w0].darts[0]) in cset:
                    f0 = G.walks[w0].flags[0]
                    rings.append(Ring.facial(H0.walk_face[H0.flag_walk[4 * emap[f0 >> 2] + (f0 & 3)]]))
            elif r.vertex in cset:
                v = vmap[r.vertex]
                if not H0.rot[v]:
                    w = H0.isolated_walk[v]
                else:
                    # the walk of the old cuff face passing through v
                    w = None
                    for wo in G.faces[r.face].walks:
                        for f in G.walks[wo].flags:
                            if G.vertex_of_flag(f) == r.vertex:
                                w = H0.flag_walk[4 * emap[f >> 2] + (f & 3)]
                                break
                        if w is not None:
                            break
                    if w is None:
                        w = H0.flag_walk[2 * H0.rot[v][0]]
                rings.append(Ring.at_vertex(v, H0.walk_face[w], r.weak))
        H = EmbeddedGraph(len(comp), edges, rot, None, rings, None)
        out.append((H, comp))
    return out


def assemble_pieces(t0, t1, t2, vkey, ekey, isolated, groups, rings):
    """Split a flag system into surface pieces and assemble each one.

    Pieces are connected components of the flags, where the flags of one
    face group are also considered connected.  Returns a list of
    ``(G, flagmap, vmap, group_ids, ring_ids)`` with ``flagmap`` a dict over
    the input flags of that piece.
    """
    nf = len(t0)
    uf = _UF()
    for x in range(nf):
        uf.union(("f", x), ("f", t0[x]))
        uf.union(("f", x), ("f", t1[x]))
        uf.union(("f", x), ("f", t2[x]))
    for k in isolated:
        uf.find(("v", k))
    for gi, (_, flags, iso) in enumerate(groups):
        members = [("f", x) for x in flags] + [("v", k) for k in iso]
        for a in members:
            uf.union(("g", gi), a)
    roots = {}
    for x in range(nf):
        roots.setdefault(uf.find(("f", x)), ([], []))[0].append(x)
    for k in isolated:
        roots.setdefault(uf.find(("v", k)), ([], []))[1].append(k)
    out = []
    for root, (flags, iso) in roots.items():
        local = {x: i for i, x in enumerate(flags)}
        lt0 = [local[t0[x]] for x in flags]
        lt1 = [local[t1[x]] for x in flags]
        lt2 = [local[t2[x]] for x in flags]
        lv = [vkey[x] for x in flags]
        le = [ekey[x] for x in flags]
        gids = [gi for gi in range(len(groups)) if uf.find(("g", gi)) == root]
        gpos = {gi: i for i, gi in enumerate(gids)}
        lgroups = [(groups[gi][0], [local[x] for x in groups[gi][1]], list(groups[gi][2])) for gi in gids]
        rids, lrings = [], []
        for ri, r in enumerate(rings):
            gi = r[1] if r[0] == "facial" else r[3]
            if gi in gpos:
                rids.append(ri)
                lrings.append((r[0], gpos[gi]) if r[0] == "facial" else (r[0], r[1], r[2], gpos[gi]))
        G, fm, vmap = assemble(lt0, lt1, lt2, lv, le, iso, lgroups, lrings)
        flagmap = {x: fm[local[x]] for x in flags}
        out.append((G, flagmap, vmap, gids, rids))
    out.sort(key=lambda item: min(item[2]))
    return out
