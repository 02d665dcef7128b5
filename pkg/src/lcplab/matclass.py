"""Decision procedures for the matrix classes used with hidden Z-matrices.

Everything here is exact.  Principal-minor classes (P, P₀, almost P, N, K)
enumerate all ``2ⁿ − 1`` principal minors; the semimonotone classes (E, E₀,
S̄) solve one strict feasibility LP per support set.  Both sweeps are capped
at ``n <= DEFAULT_CAP`` unless the caller raises the cap.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from lcplab.errors import DimensionError, SizeCapError
from lcplab.lpcore import LE, simplex_constraint, strict_feasibility
from lcplab.ratmat import det, submatrix

DEFAULT_CAP = 12


def _require_square(M):
    if not M.is_square:
        raise DimensionError(f"square matrix required, got {M.shape}")


def _check_cap(n, cap):
    if n > cap:
        raise SizeCapError(f"dimension {n} exceeds the exponential-sweep cap {cap}")


def nonempty_subsets(n):
    """All nonempty index sets of ``range(n)``, by size and then lexicographically."""
    for k in range(1, n + 1):
        yield from combinations(range(n), k)


def is_z_matrix(M):
    _require_square(M)
    n = M.n_rows
    return all(M[i, j] <= 0 for i in range(n) for j in range(n) if i != j)


@dataclass(frozen=True)
class MinorProfile:
    n: int
    minors: dict
    is_P: bool
    is_P0: bool
    is_almost_P: bool
    is_almost_P0: bool
    is_N: bool

    @classmethod
    def from_minors(cls, n, minors):
        vals = list(minors.values())
        full = minors[tuple(range(n))]
        proper = [v for a, v in minors.items() if len(a) < n]
        return cls(
            n=n,
            minors=dict(minors),
            is_P=all(v > 0 for v in vals),
            is_P0=all(v >= 0 for v in vals),
            is_almost_P=all(v > 0 for v in proper) and full < 0,
            is_almost_P0=all(v >= 0 for v in proper) and full < 0,
            is_N=all(v < 0 for v in vals),
        )

    def minor(self, alpha):
        return self.minors[tuple(sorted(alpha))]


def minor_profile(M, cap=DEFAULT_CAP):
    """All principal minors of ``M`` keyed by 0-based index tuples, plus class flags."""
    _require_square(M)
    n = M.n_rows
    _check_cap(n, cap)
    minors = {a: det(submatrix(M, a, a)) for a in nonempty_subsets(n)}
    return MinorProfile.from_minors(n, minors)


def is_p_matrix(M, cap=DEFAULT_CAP):
    return minor_profile(M, cap).is_P


def is_p0_matrix(M, cap=DEFAULT_CAP):
    return minor_profile(M, cap).is_P0


def is_k_matrix(M, cap=DEFAULT_CAP):
    return is_z_matrix(M) and minor_profile(M, cap).is_P


def is_k0_matrix(M, cap=DEFAULT_CAP):
    return is_z_matrix(M) and minor_profile(M, cap).is_P0


@dataclass(frozen=True)
class SResult:
    result: bool
    witness: tuple = None

    def __bool__(self):
        return self.result


def is_s_matrix(M):
    """Is there ``x > 0`` with ``Mx > 0``?  The witness is normalised to ``Σx = 1``."""
    _require_square(M)
    n = M.n_rows
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    res = strict_feasibility(n, list(M.rows()) + unit, [simplex_constraint(n)], [0] * n)
    return SResult(res.feasible, res.witness)


def _support_violation(M, alpha, strict_sign):
    """Look for ``x_α > 0`` with ``M_αα x_α < 0`` (strict) or ``<= 0`` (nonstrict)."""
    k = len(alpha)
    sub = submatrix(M, alpha, alpha)
    unit = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    if strict_sign:
        strict = unit + [tuple(-v for v in row) for row in sub.rows()]
        base = []
    else:
        strict = unit
        base = [(row, LE, 0) for row in sub.rows()]
    base.append(simplex_constraint(k))
    res = strict_feasibility(k, strict, base, [0] * k)
    if not res.feasible:
        return None
    x = [Fraction(0)] * M.n_rows
    for i, v in zip(alpha, res.witness):
        x[i] = v
    return tuple(x)


def e0_violation(M, cap=DEFAULT_CAP):
    """A vector ``0 ≠ x ≥ 0`` with ``(Mx)_k < 0`` on every ``k`` in its support, or None."""
    _require_square(M)
    _check_cap(M.n_rows, cap)
    for alpha in nonempty_subsets(M.n_rows):
        x = _support_violation(M, alpha, strict_sign=True)
        if x is not None:
            return x
    return None


def e_violation(M, cap=DEFAULT_CAP):
    """A vector ``0 ≠ x ≥ 0`` with ``(Mx)_k <= 0`` on every ``k`` in its support, or None."""
    _require_square(M)
    _check_cap(M.n_rows, cap)
    for alpha in nonempty_subsets(M.n_rows):
        x = _support_violation(M, alpha, strict_sign=False)
        if x is not None:
            return x
    return None


def is_e0_matrix(M, cap=DEFAULT_CAP):
    """Semimonotone: every ``0 ≠ x ≥ 0`` has ``x_k > 0`` and ``(Mx)_k >= 0`` for some ``k``."""
    return e0_violation(M, cap) is None


def is_e_matrix(M, cap=DEFAULT_CAP):
    """Strictly semimonotone: every ``0 ≠ x ≥ 0`` has ``x_k > 0`` and ``(Mx)_k > 0`` for some ``k``."""
    return e_violation(M, cap) is None


def is_sbar_matrix(M, cap=DEFAULT_CAP):
    """Every principal submatrix is an S-matrix."""
    _require_square(M)
    _check_cap(M.n_rows, cap)
    return all(is_s_matrix(submatrix(M, a, a)).result for a in nonempty_subsets(M.n_rows))


@dataclass(frozen=True)
class TypeDProfile:
    alphas: tuple
    positive: bool


@dataclass(frozen=True)
class TypeDResult:
    result: bool
    profile: TypeDProfile = None

    def __bool__(self):
        return self.result


def is_type_d(M):
    """Detect ``a_ij = α_min(i,j)`` with strictly increasing ``α``."""
    _require_square(M)
    n = M.n_rows
    alphas = M.diagonal()
    if any(alphas[k] >= alphas[k + 1] for k in range(n - 1)):
        return TypeDResult(False)
    for i in range(n):
        for j in range(n):
            if M[i, j] != alphas[min(i, j)]:
                return TypeDResult(False)
    return TypeDResult(True, TypeDProfile(alphas, alphas[0] > 0))


class NCategory(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    NOT_N = "not_n"


def n_category(M, cap=DEFAULT_CAP):
    """First category N-matrices have a positive entry; second category ones do not."""
    if not minor_profile(M, cap).is_N:
        return NCategory.NOT_N
    if any(v > 0 for v in M.entries()):
        return NCategory.FIRST
    return NCategory.SECOND
