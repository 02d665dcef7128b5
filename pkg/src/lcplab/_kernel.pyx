# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer pivoting kernels (see ``_kernel_py`` for the contract).

Entries that fit in a signed 64-bit word are handled in C with 128-bit
intermediates.  Every division is exact, so C truncation equals floor
division.  A result that leaves the 64-bit range aborts the fast path before
anything is written back, and the call is handed to the pure-Python kernel,
whose list comprehensions beat a typed object loop on big integers.
"""

from cpython.long cimport PyLong_AsLongLongAndOverflow, PyLong_FromLongLong
from libc.stdlib cimport malloc, free

from lcplab import _kernel_py

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef long long LL_MAX = 0x7FFFFFFFFFFFFFFF
cdef long long LL_MIN = -LL_MAX - 1


cdef bint _load(list src, long long *dst, Py_ssize_t n):
    """Copy ``n`` ints into ``dst``; False if any does not fit in 64 bits."""
    cdef int overflow = 0
    cdef Py_ssize_t j
    for j in range(n):
        dst[j] = PyLong_AsLongLongAndOverflow(src[j], &overflow)
        if overflow:
            return False
    return True


cdef bint _pivot_fast(list T, Py_ssize_t r, Py_ssize_t c, object d_obj, long long *out):
    """Compute the pivoted tableau into ``out`` (row-major); False on overflow."""
    cdef Py_ssize_t m = len(T)
    cdef Py_ssize_t n = len(<list>T[0])
    cdef Py_ssize_t i, j
    cdef int overflow = 0
    cdef long long d = PyLong_AsLongLongAndOverflow(d_obj, &overflow)
    cdef long long *pr
    cdef long long *row
    cdef long long p, f
    cdef i128 v
    cdef i128 s
    if overflow:
        return False
    pr = out + r * n
    if not _load(<list>T[r], pr, n):
        return False
    p = pr[c]
    s = -1 if p < 0 else 1
    for i in range(m):
        if i == r:
            continue
        row = out + i * n
        if not _load(<list>T[i], row, n):
            return False
        f = row[c]
        for j in range(n):
            v = (s * ((<i128>p) * row[j] - (<i128>f) * pr[j])) // d
            if v > LL_MAX or v < LL_MIN:
                return False
            row[j] = <long long>v
    if p < 0:
        for j in range(n):
            if pr[j] == LL_MIN:
                return False
            pr[j] = -pr[j]
    return True


def pivot(list T, Py_ssize_t r, Py_ssize_t c, d):
    """Pivot the integer tableau ``T`` in place on ``(r, c)``; return new denominator."""
    cdef Py_ssize_t m = len(T)
    cdef Py_ssize_t n
    cdef Py_ssize_t i, j
    cdef long long *buf
    cdef list row
    p = T[r][c]
    if p == 0:
        raise ZeroDivisionError("zero pivot")
    n = len(<list>T[0])
    buf = <long long *>malloc(m * n * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        if not _pivot_fast(T, r, c, d, buf):
            return _kernel_py.pivot(T, r, c, d)
        for i in range(m):
            row = <list>T[i]
            for j in range(n):
                row[j] = PyLong_FromLongLong(buf[i * n + j])
    finally:
        free(buf)
    return -p if p < 0 else p


cdef bint _det_fast(list M, Py_ssize_t n, long long *A, long long *result):
    cdef Py_ssize_t i, j, k
    cdef long long akk, aik, prev = 1, tmp
    cdef int sign = 1
    cdef i128 v
    for i in range(n):
        if not _load(<list>M[i], A + i * n, n):
            return False
    for k in range(n - 1):
        if A[k * n + k] == 0:
            for i in range(k + 1, n):
                if A[i * n + k] != 0:
                    for j in range(n):
                        tmp = A[k * n + j]
                        A[k * n + j] = A[i * n + j]
                        A[i * n + j] = tmp
                    sign = -sign
                    break
            else:
                result[0] = 0
                return True
        akk = A[k * n + k]
        for i in range(k + 1, n):
            aik = A[i * n + k]
            for j in range(k + 1, n):
                v = ((<i128>akk) * A[i * n + j] - (<i128>aik) * A[k * n + j]) // prev
                if v > LL_MAX or v < LL_MIN:
                    return False
                A[i * n + j] = <long long>v
        prev = akk
    v = (<i128>sign) * A[n * n - 1]
    if v > LL_MAX or v < LL_MIN:
        return False
    result[0] = <long long>v
    return True


def bareiss_det(M):
    """Determinant of a square integer matrix by Bareiss elimination."""
    cdef Py_ssize_t n = len(M)
    cdef long long *A
    cdef long long result = 0
    cdef bint ok
    if n == 0:
        return 1
    A = <long long *>malloc(n * n * sizeof(long long))
    if A == NULL:
        raise MemoryError()
    try:
        ok = _det_fast(list(M), n, A, &result)
    finally:
        free(A)
    if ok:
        return PyLong_FromLongLong(result)
    return _kernel_py.bareiss_det(M)
