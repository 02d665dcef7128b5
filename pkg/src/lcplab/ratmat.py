"""Exact rational dense linear algebra.

Matrices are immutable :class:`RatMatrix` objects holding
:class:`fractions.Fraction` entries.  Index sets are tuples of 0-based,
strictly increasing indices.  Determinants and inverses go through the
fraction-free integer kernels in :mod:`lcplab.kernel`.
"""

from fractions import Fraction
from math import lcm

from lcplab import kernel
from lcplab.errors import DimensionError, SingularMatrixError


def as_fraction(x):
    """Convert an int, Fraction, or exact literal string such as ``"8/5"`` or ``"1.6"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rational literals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("binary floats are not accepted; pass an exact literal string")
    return Fraction(x)


def vector(values):
    return tuple(as_fraction(v) for v in values)


class RatMatrix:
    """Dense matrix of exact rationals (immutable)."""

    __slots__ = ("_rows", "n_rows", "n_cols")

    def __init__(self, rows):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in rows)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionError("ragged rows")
        self._rows = rows
        self.n_rows = len(rows)
        self.n_cols = width

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n_rows, n_cols=None):
        return cls([[0] * (n_cols or n_rows) for _ in range(n_rows)])

    @classmethod
    def diag(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    @property
    def is_square(self):
        return self.n_rows == self.n_cols

    def rows(self):
        return self._rows

    def row(self, i):
        return self._rows[i]

    def col(self, j):
        return tuple(row[j] for row in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def tolist(self):
        return [list(row) for row in self._rows]

    def entries(self):
        return [x for row in self._rows for x in row]

    def diagonal(self):
        return tuple(self._rows[i][i] for i in range(min(self.shape)))

    def transpose(self):
        return RatMatrix(zip(*self._rows))

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"RatMatrix([{body}])"

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self):
        return RatMatrix([[-a for a in r] for r in self._rows])

    def scale(self, c):
        c = as_fraction(c)
        return RatMatrix([[c * a for a in r] for r in self._rows])

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.n_cols != other.n_rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._rows))
            return RatMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                              for r in self._rows])
        return matvec(self, other)

    def integer_rows(self):
        """Rows scaled to integers: returns ``(int_rows, scales)`` with ``int_rows[i] = scales[i] * row i``."""
        out, scales = [], []
        for row in self._rows:
            s = lcm(*(x.denominator for x in row))
            out.append([x.numerator * (s // x.denominator) for x in row])
            scales.append(s)
        return out, scales


def matvec(M, x):
    if len(x) != M.n_cols:
        raise DimensionError(f"vector of length {len(x)} for matrix {M.shape}")
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in M.rows())


def vecmat(y, M):
    """Row vector times matrix, ``yᵀM``."""
    if len(y) != M.n_rows:
        raise DimensionError(f"vector of length {len(y)} for matrix {M.shape}")
    return tuple(sum((y[i] * M[i, j] for i in range(M.n_rows)), Fraction(0))
                 for j in range(M.n_cols))


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _require_square(M):
    if not M.is_square:
        raise DimensionError(f"square matrix required, got {M.shape}")


def check_index_set(alpha, n):
    """Validate and normalise an index set to a sorted tuple of 0-based indices."""
    alpha = tuple(sorted(set(alpha)))
    for i in alpha:
        if not isinstance(i, int) or not 0 <= i < n:
            raise IndexError(f"index {i!r} out of range for dimension {n}")
    return alpha


def complement(alpha, n):
    members = set(alpha)
    return tuple(i for i in range(n) if i not in members)


def det(M):
    """Exact determinant (Bareiss elimination on the integer-scaled rows)."""
    _require_square(M)
    rows, scales = M.integer_rows()
    d = kernel.bareiss_det(rows)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(d, denom)


def _gauss_jordan(M, rhs_cols):
    """Reduce ``[M | R]`` where ``R`` has integer-scaled columns; returns rational ``M⁻¹R``.

    ``rhs_cols`` is a list of rational columns.  Raises SingularMatrixError.
    """
    n = M.n_rows
    rows, scales = M.integer_rows()
    k = len(rhs_cols)
    # identity block keeps the initial basis canonical with denominator 1
    T = []
    for i in range(n):
        T.append(rows[i] + [int(i == j) for j in range(n)])
    d = 1
    basic_row = [None] * n
    used = [False] * n
    for col in range(n):
        r = next((i for i in range(n) if not used[i] and T[i][col] != 0), None)
        if r is None:
            raise SingularMatrixError("matrix is singular", det=Fraction(0))
        d = kernel.pivot(T, r, col, d)
        used[r] = True
        basic_row[col] = r
    # inverse of the scaled matrix, then undo the row scaling
    inv = [[Fraction(T[basic_row[i]][n + j] * scales[j], d) for j in range(n)] for i in range(n)]
    if k == 0:
        return inv
    return [[sum((inv[i][t] * rhs_cols[c][t] for t in range(n)), Fraction(0)) for c in range(k)]
            for i in range(n)]


def inverse(M):
    """Exact inverse; raises :class:`SingularMatrixError` when ``det(M) == 0``."""
    _require_square(M)
    return RatMatrix(_gauss_jordan(M, []))


def solve(M, b):
    """Solve ``M x = b`` exactly for square nonsingular ``M``."""
    _require_square(M)
    if len(b) != M.n_rows:
        raise DimensionError("right-hand side length mismatch")
    sol = _gauss_jordan(M, [vector(b)])
    return tuple(row[0] for row in sol)


def principal_submatrix(M, rows, cols=None):
    """``M[rows, cols]`` with indices taken in increasing order (``cols`` defaults to ``rows``)."""
    rows = check_index_set(rows, M.n_rows)
    cols = rows if cols is None else check_index_set(cols, M.n_cols)
    if not rows or not cols:
        raise DimensionError("empty submatrix")
    return RatMatrix([[M[i, j] for j in cols] for i in rows])


def submatrix(M, rows, cols):
    """Submatrix with rows and columns in the given (possibly unsorted) order."""
    return RatMatrix([[M[i, j] for j in cols] for i in rows])


def schur_complement(M, beta):
    """``M_β̄β̄ − M_β̄β (M_ββ)⁻¹ M_ββ̄``; returns ``M`` itself for empty ``beta``."""
    _require_square(M)
    n = M.n_rows
    beta = check_index_set(beta, n)
    if not beta:
        return M
    rest = complement(beta, n)
    if not rest:
        raise DimensionError("Schur complement of the full index set is empty")
    Mbb = submatrix(M, beta, beta)
    try:
        Mbb_inv = inverse(Mbb)
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"pivot block {beta} is singular", det=exc.det) from None
    correction = submatrix(M, rest, beta) @ Mbb_inv @ submatrix(M, beta, rest)
    return submatrix(M, rest, rest) - correction


def ppt(M, alpha):
    """Principal pivot transform of ``M`` with respect to ``alpha``.

    With ``w = Mz`` the transform exchanges ``w_α`` and ``z_α``; its blocks are
    ``(M_αα)⁻¹``, ``−(M_αα)⁻¹M_αᾱ``, ``M_ᾱα(M_αα)⁻¹`` and the Schur complement.
    """
    _require_square(M)
    n = M.n_rows
    alpha = check_index_set(alpha, n)
    if not alpha:
        return M
    rest = complement(alpha, n)
    try:
        inv = inverse(submatrix(M, alpha, alpha))
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"pivot block {alpha} is singular", det=exc.det) from None
    out = [[Fraction(0)] * n for _ in range(n)]
    for a, i in enumerate(alpha):
        for b, j in enumerate(alpha):
            out[i][j] = inv[a, b]
    if rest:
        top_right = -(inv @ submatrix(M, alpha, rest))
        bottom_left = submatrix(M, rest, alpha) @ inv
        bottom_right = submatrix(M, rest, rest) - bottom_left @ submatrix(M, alpha, rest)
        for a, i in enumerate(alpha):
            for b, j in enumerate(rest):
                out[i][j] = top_right[a, b]
                out[j][i] = bottom_left[b, a]
        for a, i in enumerate(rest):
            for b, j in enumerate(rest):
                out[i][j] = bottom_right[a, b]
    return RatMatrix(out)


def check_permutation(perm, n):
    perm = tuple(perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{n - 1}")
    return perm


def permutation_matrix(perm):
    """Matrix ``P`` whose row ``i`` is the unit vector ``e_{perm[i]}``."""
    n = len(perm)
    perm = check_permutation(perm, n)
    return RatMatrix([[int(perm[i] == j) for j in range(n)] for i in range(n)])


def principal_permute(M, perm):
    """``P M Pᵀ`` for ``P = permutation_matrix(perm)``, i.e. entry ``(i, j)`` is ``M[perm[i], perm[j]]``."""
    _require_square(M)
    perm = check_permutation(perm, M.n_rows)
    return RatMatrix([[M[perm[i], perm[j]] for j in range(M.n_rows)] for i in range(M.n_rows)])


def permute_vector(v, perm):
    """``P v`` for the same permutation convention."""
    return tuple(v[perm[i]] for i in range(len(v)))
