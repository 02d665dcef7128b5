"""Pure-Python integer pivoting kernels.

Reference implementation of the compiled ``_kernel`` extension. Both modules
expose the same two functions and must agree bit for bit.

The tableau convention is the fraction-free one: a tableau of Python ints
``T`` together with a positive integer ``d`` stands for the rational tableau
``T / d``.  Starting from an integer tableau in canonical form with ``d = 1``
every later entry is a minor of the initial matrix, so the division in
:func:`pivot` is always exact.
"""


def pivot(T, r, c, d):
    """Pivot the integer tableau ``T`` in place on entry ``(r, c)``.

    Returns the new (positive) common denominator.  When the pivot entry is
    negative the whole tableau is negated so that the denominator stays
    positive and entry signs equal the signs of the rational values.
    """
    prow = T[r]
    p = prow[c]
    if p == 0:
        raise ZeroDivisionError("zero pivot")
    if p < 0:
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[c]
            if f:
                row[:] = [(f * b - p * a) // d for a, b in zip(row, prow)]
            else:
                row[:] = [(-p * a) // d for a in row]
        prow[:] = [-b for b in prow]
        return -p
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f:
            row[:] = [(p * a - f * b) // d for a, b in zip(row, prow)]
        else:
            row[:] = [(p * a) // d for a in row]
    return p


def bareiss_det(M):
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]
