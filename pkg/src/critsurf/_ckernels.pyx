# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for the contract."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.stdint cimport uint64_t, uint16_t

from . import _pykernels

BACKEND = "cython"

cdef int MAXN = 64
cdef int *POP = [0, 1, 1, 2, 1, 2, 2, 3]


cdef int _search(int n, uint64_t *adj, int *dom, int *col, int *stack) nogil:
    cdef int v, u, c, size, best = -1, best_size = 4, bit, top, ok, k
    cdef uint64_t m, low
    for v in range(n):
        if col[v] == 0:
            size = POP[dom[v]]
            if size < best_size:
                best = v
                best_size = size
                if size == 1:
                    break
    if best < 0:
        return 1
    v = best
    for c in range(1, 4):
        bit = 1 << (c - 1)
        if not (dom[v] & bit):
            continue
        col[v] = c
        top = 0
        ok = 1
        m = adj[v]
        while m:
            low = m & (~m + 1)
            u = 0
            while (low >> u) != 1:
                u += 1
            m ^= low
            if col[u] == 0 and (dom[u] & bit):
                dom[u] &= ~bit
                stack[top] = u
                top += 1
                if dom[u] == 0:
                    ok = 0
                    break
        if ok and _search(n, adj, dom, col, stack + n):
            return 1
        for k in range(top):
            dom[stack[k]] |= bit
        col[v] = 0
    return 0


cdef object _solve_c(int n, uint64_t *adj, int *dom):
    cdef int v
    cdef int *col
    cdef int *stack
    cdef int found
    for v in range(n):
        if dom[v] == 0:
            return None
    col = <int *> malloc(n * sizeof(int))
    stack = <int *> malloc((n * (n + 1) + 1) * sizeof(int))
    try:
        for v in range(n):
            col[v] = 0
        with nogil:
            found = _search(n, adj, dom, col, stack)
        if not found:
            return None
        return [col[v] for v in range(n)]
    finally:
        free(col)
        free(stack)


def solve(adj, domains):
    cdef int n = len(adj), v
    if n > MAXN:
        return _pykernels.solve(adj, domains)
    cdef uint64_t cadj[64]
    cdef int dom[64]
    for v in range(n):
        cadj[v] = adj[v]
        dom[v] = domains[v]
    return _solve_c(n, cadj, dom)


def extends_batch(adj, base, ring, weak, colorings):
    cdef int n = len(adj), v, i, idx, bit, r = len(ring)
    if n > MAXN:
        return _pykernels.extends_batch(adj, base, ring, weak, colorings)
    cdef uint64_t cadj[64]
    cdef int cbase[64]
    cdef int dom[64]
    cdef int cring[64]
    cdef int cweak[64]
    for v in range(n):
        cadj[v] = adj[v]
        cbase[v] = base[v]
    for i in range(r):
        cring[i] = ring[i]
        cweak[i] = 1 if weak[i] else 0
    out = bytearray(len(colorings))
    for idx in range(len(colorings)):
        phi = colorings[idx]
        memcpy(dom, cbase, n * sizeof(int))
        for i in range(r):
            bit = 1 << (<int> phi[i] - 1)
            v = cring[i]
            if cweak[i]:
                dom[v] = cbase[v] & ~bit
            else:
                dom[v] = cbase[v] & bit
        out[idx] = 1 if _solve_c(n, cadj, dom) is not None else 0
    return bytes(out)


def canonical_code(t0, t1, t2, color, starts):
    cdef int nf = len(t0), i, j, s, f, g, nxt, pos, worse, decided, have_best = 0
    cdef int val
    if nf == 0:
        return b""
    cdef int *a0 = <int *> malloc(nf * sizeof(int))
    cdef int *a1 = <int *> malloc(nf * sizeof(int))
    cdef int *a2 = <int *> malloc(nf * sizeof(int))
    cdef int *col = <int *> malloc(nf * sizeof(int))
    cdef int *lab = <int *> malloc(nf * sizeof(int))
    cdef int *order = <int *> malloc(nf * sizeof(int))
    cdef uint16_t *best = <uint16_t *> malloc(4 * nf * sizeof(uint16_t))
    cdef uint16_t *code = <uint16_t *> malloc(4 * nf * sizeof(uint16_t))
    cdef int nb
    cdef int nbrs[3]
    cdef int row[4]
    try:
        for i in range(nf):
            a0[i] = t0[i]
            a1[i] = t1[i]
            a2[i] = t2[i]
            col[i] = color[i]
        for s in starts:
            for i in range(nf):
                lab[i] = -1
            lab[s] = 0
            order[0] = s
            nxt = 1
            worse = 0
            decided = 0 if have_best else 1
            pos = 0
            for i in range(nf):
                f = order[i]
                nbrs[0] = a0[f]
                nbrs[1] = a1[f]
                nbrs[2] = a2[f]
                for j in range(3):
                    g = nbrs[j]
                    if lab[g] < 0:
                        lab[g] = nxt
                        order[nxt] = g
                        nxt += 1
                row[0] = lab[a0[f]]
                row[1] = lab[a1[f]]
                row[2] = lab[a2[f]]
                row[3] = col[f]
                for j in range(4):
                    val = row[j]
                    if not decided:
                        if val > best[pos]:
                            worse = 1
                            break
                        if val < best[pos]:
                            decided = 1
                    code[pos] = <uint16_t> val
                    pos += 1
                if worse:
                    break
            if worse:
                continue
            if not have_best or decided:
                memcpy(best, code, 4 * nf * sizeof(uint16_t))
                have_best = 1
        if not have_best:
            return b""
        return (<char *> best)[:8 * nf]
    finally:
        free(a0); free(a1); free(a2); free(col)
        free(lab); free(order); free(best); free(code)
