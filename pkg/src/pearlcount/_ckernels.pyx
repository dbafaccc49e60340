# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels. Same API and results as ``_pykernels``."""

from libc.stdint cimport int64_t
from libc.stdlib cimport calloc, free

cdef int64_t _LIMIT = (<int64_t>1) << 62


def poly_mul(dict a, dict b):
    """Sparse Laurent product; dense int64 convolution when it cannot overflow."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return {}
    cdef object amax = max(abs(c) for c in a.values())
    cdef object bmax = max(abs(c) for c in b.values())
    cdef long lo_a = min(a), hi_a = max(a), lo_b = min(b), hi_b = max(b)
    cdef long span_a = hi_a - lo_a + 1, span_b = hi_b - lo_b + 1
    cdef Py_ssize_t m = na if na < nb else nb
    if amax * bmax * m < _LIMIT and span_a * span_b <= 64 * na * nb + 4096:
        return _dense(a, b, lo_a, span_a, lo_b, span_b)
    return _sparse(a, b)


cdef dict _dense(dict a, dict b, long lo_a, long span_a, long lo_b, long span_b):
    cdef long n = span_a + span_b - 1
    cdef int64_t *A = <int64_t *>calloc(span_a, sizeof(int64_t))
    cdef int64_t *B = <int64_t *>calloc(span_b, sizeof(int64_t))
    cdef int64_t *C = <int64_t *>calloc(n, sizeof(int64_t))
    cdef long i, j
    cdef int64_t ai
    cdef dict out = {}
    if A == NULL or B == NULL or C == NULL:
        free(A); free(B); free(C)
        raise MemoryError()
    try:
        for e, c in a.items():
            A[<long>e - lo_a] = c
        for e, c in b.items():
            B[<long>e - lo_b] = c
        for i in range(span_a):
            ai = A[i]
            if ai == 0:
                continue
            for j in range(span_b):
                C[i + j] += ai * B[j]
        for i in range(n):
            if C[i] != 0:
                out[lo_a + lo_b + i] = C[i]
    finally:
        free(A); free(B); free(C)
    return out


cdef dict _sparse(dict a, dict b):
    cdef dict out = {}
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def echelon_diagonal(rows):
    """Unimodular integer row reduction; returns one pivot per column (0 if none)."""
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols = len(m[0]) if nrows else 0
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list pivots = []
    cdef list mi, mp
    for c in range(ncols):
        while True:
            p = -1
            best = None
            cnt = 0
            for i in range(r, nrows):
                v = (<list>m[i])[c]
                if v:
                    cnt += 1
                    av = abs(v)
                    if best is None or av < best:
                        best = av
                        p = i
            if cnt <= 1:
                break
            mp = m[p]
            pc = mp[c]
            for i in range(r, nrows):
                if i == p:
                    continue
                mi = m[i]
                if not mi[c]:
                    continue
                f = mi[c] // pc
                if f:
                    for j in range(c, ncols):
                        mi[j] = mi[j] - f * mp[j]
        p = -1
        for i in range(r, nrows):
            if (<list>m[i])[c]:
                p = i
                break
        if p < 0:
            pivots.append(0)
            continue
        m[r], m[p] = m[p], m[r]
        pivots.append((<list>m[r])[c])
        r += 1
    return pivots
