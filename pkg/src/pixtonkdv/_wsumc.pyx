# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for mod-r weighting moment sums.

Mirrors weightings._python_kernel exactly; callers must guarantee the
result fits in int64 (the pure-Python path handles the rest).
"""

from libc.stdlib cimport free, malloc


def weight_sum_int64(consts, cyccoefs, exps, int h1, int r):
    cdef int E = len(consts)
    cdef long long total = 0
    cdef long long p, w0, base
    cdef int e, c, t, k
    cdef int done
    cdef long long *cst = <long long *> malloc(E * sizeof(long long))
    cdef long long *coef = <long long *> malloc(E * max(h1, 1) * sizeof(long long))
    cdef long long *ex = <long long *> malloc(E * sizeof(long long))
    cdef long long *ws = <long long *> malloc(max(h1, 1) * sizeof(long long))
    if cst == NULL or coef == NULL or ex == NULL or ws == NULL:
        raise MemoryError
    try:
        for e in range(E):
            cst[e] = consts[e]
            ex[e] = exps[e]
            for c in range(h1):
                coef[e * h1 + c] = cyccoefs[e][c]
        for c in range(h1):
            ws[c] = 0
        while True:
            p = 1
            for e in range(E):
                w0 = cst[e]
                for c in range(h1):
                    w0 += coef[e * h1 + c] * ws[c]
                w0 %= r
                if w0 < 0:
                    w0 += r
                if w0 == 0:
                    p = 0
                    break
                base = w0 * (r - w0)
                for t in range(ex[e]):
                    p *= base
            total += p
            # odometer over {0..r-1}^h1
            done = 1
            for c in range(h1):
                ws[c] += 1
                if ws[c] < r:
                    done = 0
                    break
                ws[c] = 0
            if done:
                break
        return total
    finally:
        free(cst)
        free(coef)
        free(ex)
        free(ws)
