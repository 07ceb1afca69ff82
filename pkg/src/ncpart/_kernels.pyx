# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: cyclic crossing scan, refinement matrix, chain DP."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

IMPLEMENTATION = "cython"


def noncrossing(const long[:] labels):
    """True iff the cyclic label sequence has no a<b<c<d crossing."""
    cdef Py_ssize_t m = labels.shape[0], i, top = 0
    cdef long b, nb = 0
    for i in range(m):
        if labels[i] + 1 > nb:
            nb = labels[i] + 1
    cdef cnp.ndarray[long, ndim=1] last = np.full(nb, -1, dtype=np.int_)
    cdef cnp.ndarray[char, ndim=1] seen = np.zeros(nb, dtype=np.int8)
    cdef cnp.ndarray[long, ndim=1] stack = np.empty(nb + 1, dtype=np.int_)
    for i in range(m):
        last[labels[i]] = i
    for i in range(m):
        b = labels[i]
        if top > 0 and stack[top - 1] == b:
            pass
        elif seen[b]:
            return False
        else:
            seen[b] = 1
            stack[top] = b
            top += 1
        if last[b] == i:
            top -= 1
    return True


def refinement_matrix(const long[:, :] labels):
    """leq[i, j] = 1 iff partition i refines partition j.

    Row i of ``labels`` gives the block id of every ground element.
    """
    cdef Py_ssize_t N = labels.shape[0], m = labels.shape[1]
    cdef Py_ssize_t i, j, e
    cdef cnp.ndarray[long, ndim=2] rep = np.empty((N, m), dtype=np.int_)
    cdef cnp.ndarray[long, ndim=1] first
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((N, N), dtype=np.uint8)
    cdef bint ok
    for i in range(N):
        first = np.full(m + 1, -1, dtype=np.int_)
        for e in range(m):
            if first[labels[i, e]] < 0:
                first[labels[i, e]] = e
            rep[i, e] = first[labels[i, e]]
    for i in range(N):
        for j in range(N):
            ok = True
            for e in range(m):
                if labels[j, e] != labels[j, rep[i, e]]:
                    ok = False
                    break
            if ok:
                out[i, j] = 1
    return out


def chain_count(const cnp.uint8_t[:, :] leq, const cnp.uint8_t[:, :] masks):
    """Number of multichains x_1 <= ... <= x_l with masks[t, x_t] set.

    Caller guarantees the result fits in 63 bits.
    """
    cdef Py_ssize_t N = leq.shape[0], L = masks.shape[0], t, a, b, na, nb
    cdef cnp.ndarray[long long, ndim=1] f = np.zeros(N, dtype=np.int64)
    cdef cnp.ndarray[long long, ndim=1] g
    cdef cnp.ndarray[long, ndim=1] act = np.empty(N, dtype=np.int_)
    cdef cnp.ndarray[long, ndim=1] nxt = np.empty(N, dtype=np.int_)
    cdef long long s, total = 0
    na = 0
    for a in range(N):
        if masks[0, a]:
            f[a] = 1
            act[na] = a
            na += 1
    for t in range(1, L):
        g = np.zeros(N, dtype=np.int64)
        nb = 0
        for b in range(N):
            if not masks[t, b]:
                continue
            s = 0
            for a in range(na):
                if leq[act[a], b]:
                    s += f[act[a]]
            if s:
                g[b] = s
                nxt[nb] = b
                nb += 1
        f = g
        act[:nb] = nxt[:nb]
        na = nb
    for a in range(na):
        total += f[act[a]]
    return int(total)
