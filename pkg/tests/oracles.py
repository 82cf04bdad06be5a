"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

from collections import Counter
from itertools import product


def trace_faces(rot_nbrs, signs=None):
    """Face lengths of a signed rotation system by direct edge-walking.

    Each face is found twice (once per direction), so the orbit lengths are halved.
    """
    signs = signs or {}
    seen = set()
    lengths = []
    for v in range(len(rot_nbrs)):
        for u in rot_nbrs[v]:
            for o in (1, -1):
                if (v, u, o) in seen:
                    continue
                a, b, orient = v, u, o
                length = 0
                while (a, b, orient) not in seen:
                    seen.add((a, b, orient))
                    length += 1
                    orient *= signs.get(frozenset((a, b)), 1)
                    r = rot_nbrs[b]
                    nxt = r[(r.index(a) + orient) % len(r)]
                    a, b = b, nxt
                lengths.append(length)
    c = Counter(lengths)
    out = []
    for length, k in sorted(c.items()):
        assert k % 2 == 0
        out += [length] * (k // 2)
    return out


def extends_bruteforce(n, edges, fixed, weak=()):
    """Whether some proper 3-coloring agrees with ``fixed`` (dict) and differs on ``weak`` vertices."""
    weak = set(weak)
    for col in product((1, 2, 3), repeat=n):
        if any((col[v] == c) == (v in weak) for v, c in fixed.items()):
            continue
        if all(col[u] != col[v] for u, v in edges):
            return True
    return False


def colorable_bruteforce(n, edges):
    return extends_bruteforce(n, edges, {})


def map_isomorphic(A, B, colorA=None, colorB=None):
    """Flag-map isomorphism by propagation from every candidate image of flag 0."""
    ta, tb = (A.t0, A.t1, A.t2), (B.t0, B.t1, B.t2)
    n = len(A.t0)
    if n != len(B.t0):
        return False
    ca = colorA or [0] * n
    cb = colorB or [0] * n
    for img in range(n):
        phi = {0: img}
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            if ca[x] != cb[phi[x]]:
                ok = False
                break
            for t, s in zip(ta, tb):
                y, z = t[x], s[phi[x]]
                if y in phi:
                    if phi[y] != z:
                        ok = False
                        break
                else:
                    phi[y] = z
                    stack.append(y)
        if ok and len(set(phi.values())) == n == len(phi):
            return True
    return False
