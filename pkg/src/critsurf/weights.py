"""Exact weight calculus: s, face weights, gen/surf and the inequality checkers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .surface_map import EmbeddedGraph, face_class

DEN = 4113
_S_SMALL = {5: 4, 6: 72, 7: 540, 8: 2184}


class DomainError(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class NotCritical(ValueError):
    pass


def fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def s(l: int) -> Fraction:
    if l < 2:
        raise DomainError(f"s is defined for l >= 2, got {l}")
    if l <= 4:
        return Fraction(0)
    if l <= 8:
        return Fraction(_S_SMALL[l], DEN)
    return Fraction(l - 8)


def s_multiset(Z) -> Fraction:
    return sum((s(z) for z in Z), Fraction(0))


def face_weight(G: EmbeddedGraph, fid: int) -> Fraction:
    cls = face_class(G, fid)
    length = G.face_length(fid)
    if cls == "neither":
        return Fraction(length)
    return s(length) if length >= 2 else Fraction(0)


def total_weight(G: EmbeddedGraph) -> Fraction:
    return sum((face_weight(G, f) for f in G.internal_faces()), Fraction(0))


def ring_params(G: EmbeddedGraph):
    """``(|R|, t0, t1, l(R))`` for the rings of ``G``."""
    t0 = sum(1 for r in G.rings if r.kind == "vertex" and r.weak)
    t1 = sum(1 for r in G.rings if r.kind == "vertex" and not r.weak)
    ell = sum(G.ring_length(i) for i in range(len(G.rings)))
    return len(G.rings), t0, t1, ell


def _domain(g, t, t0, t1):
    if min(g, t, t0, t1) < 0 or t < t0 + t1:
        raise DomainError(f"({g}, {t}, {t0}, {t1}) is outside the domain t >= t0 + t1 >= 0")


def gen(g: int, t: int, t0: int, t1: int) -> int:
    _domain(g, t, t0, t1)
    return 120 * g + 48 * t - 4 * t1 - 5 * t0 - 120


def surf(g: int, t: int, t0: int, t1: int) -> int:
    base = gen(g, t, t0, t1)
    if g == 0 and t == 2 and t0 + t1 == 2:
        return base + 116 - 42 * t
    if g == 0 and t <= 2 and t0 + t1 < 2:
        return base + 114 - 42 * t
    return base


def face_surf_args(G: EmbeddedGraph, fid: int):
    """``(g(Pi_f), a, a0, a1)`` for an internal face; the face genus label is g(Pi_f)."""
    f = G.faces[fid]
    a0 = a1 = 0
    for w in f.walks:
        r = G.lone_vertex_ring(w)
        if r is not None:
            if r.weak:
                a0 += 1
            else:
                a1 += 1
    return f.genus, len(f.walks), a0, a1


def surf_face(G: EmbeddedGraph, fid: int) -> int:
    return surf(*face_surf_args(G, fid))


# ---------------------------------------------------------------------------
# reports

@dataclass
class WeightReport:
    values: dict = field(default_factory=dict)
    verdict: bool = True

    def text(self) -> str:
        lines = []
        for k, v in self.values.items():
            if isinstance(v, Fraction):
                v = fmt(v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"{k} = {v}")
        lines.append(f"verdict = {'pass' if self.verdict else 'fail'}")
        return "\n".join(lines) + "\n"


def default_kappa(eta=Fraction(1)) -> Fraction:
    return 1600 * Fraction(eta) / s(5)


def triangles(G: EmbeddedGraph) -> int:
    adj = G.adjacency()
    return sum(1 for u, v, _ in G.edges for w in adj[u] & adj[v] if w > max(u, v))


def four_cycles(G: EmbeddedGraph):
    """Every 4-cycle once, as a vertex tuple starting at its least vertex."""
    adj = G.adjacency()
    out = []
    for a in range(G.n):
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[b]:
                if c <= a or c == a:
                    continue
                for d in adj[c]:
                    if d <= a or d == b or a not in adj[d]:
                        continue
                    if b < d:
                        out.append((a, b, c, d))
    return out


def facial_four_cycles(G: EmbeddedGraph):
    """4-cycles that bound an open 2-cell face, as frozensets of vertices."""
    out = set()
    for fid, f in enumerate(G.faces):
        if f.genus == 0 and len(f.walks) == 1 and G.walk_is_cycle(f.walks[0]) and len(G.walks[f.walks[0]]) == 4:
            out.add(frozenset(G.walk_vertices(f.walks[0])))
    return out


def check_main_inequality(G: EmbeddedGraph, kappa=None, *, certify=True) -> WeightReport:
    from .coloring import is_4_critical

    kappa = default_kappa() if kappa is None else Fraction(kappa)
    if certify and not is_4_critical(G):
        raise NotCritical("the graph is not 4-critical")
    lhs = sum(G.face_length(f) - 4 for f in range(len(G.faces)))
    t = triangles(G)
    fac = facial_four_cycles(G)
    c = sum(1 for q in four_cycles(G) if frozenset(q) not in fac)
    rhs = kappa * (G.genus + t + c - 1)
    rep = WeightReport({"lhs": lhs, "g": G.genus, "t": t, "c": c, "kappa": kappa, "rhs": rhs})
    rep.verdict = lhs <= rhs
    return rep


def check_maingen_inequality(G: EmbeddedGraph, eta=Fraction(1), *, certify=True) -> WeightReport:
    from .coloring import is_R_critical
    from .topology import classify_cycle

    eta = Fraction(eta)
    if triangles(G):
        raise HypothesisViolated("triangle-free: the graph has a triangle")
    for q in four_cycles(G):
        if classify_cycle(G, q).tag != "contractible":
            raise HypothesisViolated(f"no non-contractible 4-cycle: {list(q)} is not contractible")
    if certify and not is_R_critical(G).verdict:
        raise HypothesisViolated("R-critical: the graph is not critical with respect to its rings")
    w = total_weight(G)
    nr, t0, t1, ell = ring_params(G)
    sv = surf(G.genus, nr, t0, t1)
    rhs = eta * sv + ell
    vals = {"w": w, "g": G.genus, "rings": nr, "t0": t0, "t1": t1, "ell": ell, "surf": sv,
            "eta": eta, "rhs": rhs}
    if sv > 0:
        vals["min_eta"] = max(Fraction(0), (w - ell) / sv)
    rep = WeightReport(vals, w <= rhs)
    return rep


# ---------------------------------------------------------------------------
# audit of the surf inequalities

def _ok(g, t, t0, t1):
    return min(g, t, t0, t1) >= 0 and t >= t0 + t1


def surfineq_audit(g_max: int = 6, t_max: int = 8) -> WeightReport:
    """Exhaustively check the four surf inequalities on every admissible tuple."""
    checked = {"a": 0, "b": 0, "c": 0, "d": 0}
    failures = []
    tuples = [(g, t, t0, t1) for g in range(g_max + 1) for t in range(t_max + 1)
              for t0 in range(t + 1) for t1 in range(t + 1 - t0)]
    # (a)
    for g, t, t0, t1 in tuples:
        if g == 0 and t <= 2 and not t0 + t1 < t:
            continue
        if t < 2:
            continue
        for a0 in range(t0 + 1):
            for a1 in range(t1 + 1):
                if a0 + a1 < t0 + t1 - 2 or not _ok(g, t - 1, a0, a1):
                    continue
                checked["a"] += 1
                if surf(g, t - 1, a0, a1) > surf(g, t, t0, t1) - 1:
                    failures.append(("a", (g, t, t0, t1, a0, a1)))
    # (b)
    for g, t, t0, t1 in tuples:
        for gp in range(g):
            if gp > 0 or t >= 2:
                checked["b"] += 1
                if surf(gp, t, t0, t1) > surf(g, t, t0, t1) - 120 * (g - gp) + 32:
                    failures.append(("b", (g, gp, t, t0, t1)))
    # (c)
    for (g1, ta, a0, a1), (g2, tb, b0, b1) in product(tuples, repeat=2):
        if g1 + g2 > g_max or ta + tb > t_max:
            continue
        if not (g2 > 0 or tb >= 1) or not (g1 > 0 or ta >= 2):
            continue
        checked["c"] += 1
        delta = 16 if g2 == 0 and tb == 1 else 56
        if surf(g1, ta, a0, a1) + surf(g2, tb, b0, b1) > surf(g1 + g2, ta + tb, a0 + b0, a1 + b1) - delta:
            failures.append(("c", (g1, ta, a0, a1, g2, tb, b0, b1)))
    # (d)
    for g, t, t0, t1 in tuples:
        if g >= 2:
            checked["d"] += 1
            if surf(g - 2, t, t0, t1) > surf(g, t, t0, t1) - 124:
                failures.append(("d", (g, t, t0, t1)))
    vals = {f"checked_{k}": v for k, v in checked.items()}
    vals["failures"] = len(failures)
    rep = WeightReport(vals, not failures)
    rep.failures = failures
    return rep
