# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 versions of the hot loops.  Callers guarantee that no intermediate overflows."""
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

DEF MAXN = 64


cdef inline int64_t _mod(int64_t a, int64_t m) nogil:
    cdef int64_t r = a % m
    return r + m if r < 0 else r


def box_hits(gram, int64_t bound, int64_t target, offset=None, int64_t step=1,
             Py_ssize_t limit=1, bint skip_zero=True):
    cdef Py_ssize_t n = len(gram)
    if n == 0:
        return []
    if n > MAXN:
        raise ValueError("rank too large for the compiled kernel")
    cdef int64_t g[MAXN][MAXN]
    cdef int64_t z[MAXN]
    cdef int64_t y[MAXN]
    cdef int64_t w[MAXN]
    cdef Py_ssize_t i, j, k, nz
    cdef int64_t q, d
    cdef Py_ssize_t cap = limit
    for i in range(n):
        for j in range(n):
            g[i][j] = gram[i][j]
    for i in range(n):
        z[i] = -bound
        y[i] = (offset[i] if offset is not None else 0) - step * bound
    for i in range(n):
        w[i] = 0
        for j in range(n):
            w[i] += g[i][j] * y[j]
    q = 0
    for i in range(n):
        q += y[i] * w[i]
    found = []
    cdef int64_t *buf = <int64_t *> malloc(sizeof(int64_t) * n * (cap if cap > 0 else 1024))
    cdef Py_ssize_t nbuf = 0
    cdef Py_ssize_t bufcap = cap if cap > 0 else 1024
    cdef bint finished = False
    try:
        while not finished:
            with nogil:
                while True:
                    if q == target:
                        nz = 0
                        if skip_zero:
                            for i in range(n):
                                if y[i] != 0:
                                    nz = 1
                                    break
                        else:
                            nz = 1
                        if nz:
                            for i in range(n):
                                buf[nbuf * n + i] = z[i]
                            nbuf += 1
                    k = n - 1
                    while k >= 0 and z[k] == bound:
                        k -= 1
                    if k < 0:
                        finished = True
                        break
                    for i in range(k + 1, n):
                        d = -2 * bound * step
                        q += 2 * d * w[i] + d * d * g[i][i]
                        for j in range(n):
                            w[j] += d * g[j][i]
                        y[i] += d
                        z[i] = -bound
                    d = step
                    q += 2 * d * w[k] + d * d * g[k][k]
                    for j in range(n):
                        w[j] += d * g[j][k]
                    y[k] += d
                    z[k] += 1
                    if nbuf == bufcap:
                        break
            for i in range(nbuf):
                found.append(tuple(buf[i * n + j] for j in range(n)))
            nbuf = 0
            if cap > 0 and len(found) >= cap:
                return found[:cap]
    finally:
        free(buf)
    return found


def affine_values_mod(gram, int64_t m, offset, int64_t step, int64_t span):
    cdef Py_ssize_t k = len(gram)
    mask = bytearray(m)
    if k == 0:
        mask[0] = 1
        return bytes(mask)
    if k > MAXN:
        raise ValueError("rank too large for the compiled kernel")
    cdef int64_t g[MAXN][MAXN]
    cdef int64_t off[MAXN]
    cdef int64_t z[MAXN]
    cdef int64_t y[MAXN]
    cdef Py_ssize_t i, j
    cdef int64_t v, s
    cdef unsigned char[:] out = mask
    for i in range(k):
        off[i] = _mod(offset[i], m)
        z[i] = 0
        for j in range(k):
            g[i][j] = _mod(gram[i][j], m)
    cdef int64_t st = _mod(step, m)
    with nogil:
        while True:
            for i in range(k):
                y[i] = (off[i] + st * z[i]) % m
            v = 0
            for i in range(k):
                if y[i]:
                    s = 0
                    for j in range(k):
                        s = (s + g[i][j] * y[j]) % m
                    v = (v + y[i] * s) % m
            out[v] = 1
            i = k - 1
            while i >= 0 and z[i] == span - 1:
                z[i] = 0
                i -= 1
            if i < 0:
                break
            z[i] += 1
    return bytes(mask)


def sumset_mod(a, b, int64_t m):
    cdef const unsigned char[:] av = a
    cdef const unsigned char[:] bv = b
    res = bytearray(m)
    cdef unsigned char[:] out = res
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(m):
            if av[i]:
                for j in range(m):
                    if bv[j]:
                        out[(i + j) % m] = 1
    return bytes(res)
