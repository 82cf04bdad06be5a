"""Pure-Python versions of the hot kernels.

These mirror ``_ckernels.pyx`` line for line so both backends return
identical results (same search order, same tie-breaking).
"""
from __future__ import annotations

from array import array

BACKEND = "python"

_POP = (0, 1, 1, 2, 1, 2, 2, 3)


def solve(adj, domains):
    """Find a proper 3-coloring respecting per-vertex color domains.

    ``adj[v]`` is the neighbor bitmask of ``v``; ``domains[v]`` is a 3-bit
    mask of allowed colors (bit ``c-1`` for color ``c``).  Returns a list of
    colors in ``1..3`` or ``None``.  Variable order: smallest domain first,
    ties to the lowest index; values ascending.
    """
    n = len(adj)
    dom = list(domains)
    for v in range(n):
        if dom[v] == 0:
            return None
    col = [0] * n
    if _search(adj, dom, col, n):
        return col
    return None


def _search(adj, dom, col, n):
    best = -1
    best_size = 4
    for v in range(n):
        if col[v] == 0:
            size = _POP[dom[v]]
            if size < best_size:
                best, best_size = v, size
                if size == 1:
                    break
    if best < 0:
        return True
    v = best
    nbrs = adj[v]
    for c in (1, 2, 3):
        bit = 1 << (c - 1)
        if not dom[v] & bit:
            continue
        col[v] = c
        changed = []
        ok = True
        m = nbrs
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            if col[u] == 0 and dom[u] & bit:
                dom[u] &= ~bit
                changed.append(u)
                if dom[u] == 0:
                    ok = False
                    break
        if ok and _search(adj, dom, col, n):
            return True
        for u in changed:
            dom[u] |= bit
        col[v] = 0
    return False


def extends_batch(adj, base, ring, weak, colorings):
    """For each ring coloring, report whether it extends to the whole graph.

    ``ring`` lists the precolored vertices, ``weak[i]`` marks vertices whose
    final color must *differ* from the given one, ``colorings`` is a sequence
    of color tuples aligned with ``ring``.
    """
    out = bytearray(len(colorings))
    dom = list(base)
    for idx, phi in enumerate(colorings):
        for i, v in enumerate(ring):
            bit = 1 << (phi[i] - 1)
            dom[v] = (base[v] & ~bit) if weak[i] else (base[v] & bit)
        out[idx] = solve(adj, dom) is not None
    return bytes(out)


def canonical_code(t0, t1, t2, color, starts):
    """Lexicographically least BFS code of a flag map over the given starts.

    ``t0``, ``t1``, ``t2`` are the three flag involutions, ``color`` a
    per-flag label.  The map must be connected.  Returns ``bytes``.
    """
    nf = len(t0)
    best = None
    lab = [-1] * nf
    order = [0] * nf
    for s in starts:
        for i in range(nf):
            lab[i] = -1
        lab[s] = 0
        order[0] = s
        nxt = 1
        code = array("H")
        worse = False
        decided = best is None
        pos = 0
        for i in range(nf):
            f = order[i]
            for g in (t0[f], t1[f], t2[f]):
                if lab[g] < 0:
                    lab[g] = nxt
                    order[nxt] = g
                    nxt += 1
            row = (lab[t0[f]], lab[t1[f]], lab[t2[f]], color[f])
            for val in row:
                if not decided:
                    b = best[pos]
                    if val > b:
                        worse = True
                        break
                    if val < b:
                        decided = True
                code.append(val)
                pos += 1
            if worse:
                break
        if worse:
            continue
        if best is None or decided:
            best = code
    return best.tobytes() if best is not None else b""
