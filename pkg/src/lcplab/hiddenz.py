"""Hidden Z-matrix certificates and the LP-based P / P₀ classification.

A certificate for ``A`` is a tuple ``(X, Y, r, s)`` of Z-matrices ``X, Y`` and
nonnegative vectors ``r, s`` with ``AX = Y`` and ``rᵀX + sᵀY > 0``
componentwise.  Certificates are always checked exactly, never assumed.

Index sets are 0-based tuples throughout.
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from lcplab.errors import (ConsistencyError, DimensionError, PreconditionError,
                           SingularMatrixError, SizeCapError)
from lcplab.lpcore import GE, LE, LpProblem, solve_lp
from lcplab.matclass import DEFAULT_CAP, is_e_matrix, is_type_d, is_z_matrix, minor_profile
from lcplab.ratmat import (RatMatrix, check_index_set, complement, inverse, permute_vector,
                           principal_permute, schur_complement, submatrix, vecmat, vector)


@dataclass(frozen=True)
class Certificate:
    X: RatMatrix
    Y: RatMatrix
    r: tuple
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "r", vector(self.r))
        object.__setattr__(self, "s", vector(self.s))

    @property
    def n(self):
        return self.X.n_rows

    def combination(self):
        """``rᵀX + sᵀY``."""
        return tuple(a + b for a, b in zip(vecmat(self.r, self.X), vecmat(self.s, self.Y)))

    def permuted(self, perm):
        """Certificate for ``PAPᵀ``: ``(PXPᵀ, PYPᵀ, Pr, Ps)``."""
        return Certificate(principal_permute(self.X, perm), principal_permute(self.Y, perm),
                           permute_vector(self.r, perm), permute_vector(self.s, perm))


@dataclass(frozen=True)
class Verification:
    valid: bool
    violations: tuple = ()

    def __bool__(self):
        return self.valid


def _first_positive_offdiag(M):
    n = M.n_rows
    for i in range(n):
        for j in range(n):
            if i != j and M[i, j] > 0:
                return i, j
    return None


def _internal_violations(c):
    out = []
    for name, M in (("X", c.X), ("Y", c.Y)):
        hit = _first_positive_offdiag(M)
        if hit:
            i, j = hit
            out.append(f"{name} is not a Z-matrix: {name}[{i},{j}] = {M[i, j]} > 0")
    for name, v in (("r", c.r), ("s", c.s)):
        k = next((k for k, x in enumerate(v) if x < 0), None)
        if k is not None:
            out.append(f"{name} is not nonnegative: {name}[{k}] = {v[k]} < 0")
    comb = c.combination()
    k = next((k for k, x in enumerate(comb) if x <= 0), None)
    if k is not None:
        out.append(f"rᵀX + sᵀY is not positive: component {k} = {comb[k]}")
    return out


def verify_certificate(A, c):
    """Exact check of ``AX = Y``, Z-patterns, sign of ``r, s`` and ``rᵀX + sᵀY > 0``."""
    n = A.n_rows
    if not A.is_square or c.X.shape != (n, n) or c.Y.shape != (n, n) \
            or len(c.r) != n or len(c.s) != n:
        raise DimensionError("certificate dimensions do not match the matrix")
    violations = []
    AX = A @ c.X
    bad = next(((i, j) for i in range(n) for j in range(n) if AX[i, j] != c.Y[i, j]), None)
    if bad:
        i, j = bad
        violations.append(f"AX != Y: (AX)[{i},{j}] = {AX[i, j]} but Y[{i},{j}] = {c.Y[i, j]}")
    violations.extend(_internal_violations(c))
    return Verification(not violations, tuple(violations))


def default_seeds(n):
    e, z = (Fraction(1),) * n, (Fraction(0),) * n
    return [(e, z), (z, e), (e, e)]


def _seed_lp(A, r, s):
    """Find X with X, AX Z-matrices and ``rᵀX + sᵀAX >= 1`` for fixed ``(r, s)``."""
    n = A.n_rows
    nv = n * n

    def var(k, j):
        return k * n + j

    cons = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            row = [Fraction(0)] * nv
            row[var(i, j)] = Fraction(1)
            cons.append((row, LE, 0))
            row = [Fraction(0)] * nv
            for k in range(n):
                row[var(k, j)] = A[i, k]
            cons.append((row, LE, 0))
    # weight on X_kj in column j of rᵀX + sᵀAX
    weight = tuple(a + b for a, b in zip(r, vecmat(s, A)))
    for j in range(n):
        row = [Fraction(0)] * nv
        for k in range(n):
            row[var(k, j)] = weight[k]
        cons.append((row, GE, 1))
    out = solve_lp(LpProblem((0,) * nv, cons, (None,) * nv))
    if not out.optimal:
        return None
    x = out.solution
    return RatMatrix([[x[var(i, j)] for j in range(n)] for i in range(n)])


def find_certificate(A, seeds=None):
    """Search for a certificate with ``(r, s)`` fixed to each seed in turn.

    Returns None when no seed works; that does *not* prove ``A`` is not hidden Z.
    """
    if not A.is_square:
        raise DimensionError("square matrix required")
    n = A.n_rows
    for r, s in (default_seeds(n) if seeds is None else seeds):
        r, s = vector(r), vector(s)
        X = _seed_lp(A, r, s)
        if X is None:
            continue
        cert = Certificate(X, A @ X, r, s)
        if not verify_certificate(A, cert):
            raise ConsistencyError("seed LP returned an invalid certificate")
        return cert
    return None


def mixed_matrix(top, bottom, alpha):
    """Rows in ``alpha`` taken from ``top``, the remaining rows from ``bottom``."""
    members = set(alpha)
    return RatMatrix([top.row(i) if i in members else bottom.row(i) for i in range(top.n_rows)])


def kappa_index_set(X, Y, cap=DEFAULT_CAP):
    """First ``α`` (by size, then lexicographic) making ``mixed_matrix(X, Y, α)`` a K-matrix."""
    n = X.n_rows
    if n > cap:
        raise SizeCapError(f"dimension {n} exceeds cap {cap}")
    if X.shape != Y.shape:
        raise DimensionError("X and Y must have the same shape")
    for k in range(n + 1):
        for alpha in combinations(range(n), k):
            W = mixed_matrix(X, Y, alpha)
            if is_z_matrix(W) and minor_profile(W, cap).is_P:
                return alpha
    return None


def _solve_rs(X, Y):
    """Nonnegative ``(r, s)`` with ``rᵀX + sᵀY >= 1``, or None."""
    n = X.n_rows
    cons = []
    for j in range(n):
        cons.append((X.col(j) + Y.col(j), GE, 1))
    out = solve_lp(LpProblem((1,) * (2 * n), cons))
    if not out.optimal:
        return None
    return out.solution[:n], out.solution[n:]


def certificate_from_xy(A, X, Y):
    """Complete ``(X, Y)`` with LP-chosen ``(r, s)``; None if the pair cannot certify ``A``."""
    rs = _solve_rs(X, Y)
    if rs is None:
        return None
    cert = Certificate(X, Y, *rs)
    return cert if verify_certificate(A, cert) else None


def _schur_certificate(A, c, alpha):
    rest = complement(alpha, A.n_rows)
    Xs = schur_complement(c.X, rest)
    Ys = schur_complement(mixed_matrix(c.Y, c.X, alpha), rest)
    sub = submatrix(A, alpha, alpha)
    cert = certificate_from_xy(sub, Xs, Ys)
    if cert is None:
        raise ConsistencyError(f"Schur construction for {alpha} does not yield a certificate")
    return cert


def submatrix_certificate(A, c, alpha, cap=DEFAULT_CAP):
    """Certificate for ``A_αα`` from ``c`` via Schur complements in ``X`` and ``W̄``.

    Requires the mixed matrices ``W = [X_α·; Y_ᾱ·]`` and ``W̄ = [Y_α·; X_ᾱ·]`` to
    be E-matrices and ``X_ᾱᾱ`` nonsingular.  ``(r', s')`` come from an LP on
    the reduced pair.
    """
    n = A.n_rows
    alpha = check_index_set(alpha, n)
    if not alpha:
        raise DimensionError("alpha must be nonempty")
    if len(alpha) == n:
        return c
    if not verify_certificate(A, c):
        raise PreconditionError("certificate does not verify for A")
    W = mixed_matrix(c.X, c.Y, alpha)
    Wbar = mixed_matrix(c.Y, c.X, alpha)
    if not is_e_matrix(W, cap):
        raise PreconditionError(f"W = [X_α; Y_ᾱ] is not an E-matrix for alpha={alpha}")
    if not is_e_matrix(Wbar, cap):
        raise PreconditionError(f"W̄ = [Y_α; X_ᾱ] is not an E-matrix for alpha={alpha}")
    rest = complement(alpha, n)
    try:
        inverse(submatrix(c.X, rest, rest))
    except SingularMatrixError:
        raise SingularMatrixError(f"X block on {rest} is singular") from None
    return _schur_certificate(A, c, alpha)


@dataclass(frozen=True)
class CompletenessReport:
    completely: bool
    gate: bool
    certificates: dict
    methods: dict
    failures: tuple = ()
    theorem_violations: tuple = ()


def completely_hidden_check(A, c, cap=DEFAULT_CAP):
    """Produce and verify a certificate for every principal submatrix of ``A``.

    The gate is "X and Y are both E-matrices".  Under the gate every
    submatrix certificate is built constructively from Schur complements;
    a construction failure under the gate is recorded as a theorem violation.
    Without the gate (or after a failure) a direct seed search is tried.
    """
    n = A.n_rows
    if not verify_certificate(A, c):
        raise PreconditionError("certificate does not verify for A")
    gate = is_e_matrix(c.X, cap) and is_e_matrix(c.Y, cap)
    certs, methods, failures, violations = {}, {}, [], []
    full = tuple(range(n))
    certs[full], methods[full] = c, "given"
    for k in range(1, n):
        for beta in combinations(range(n), k):
            sub = submatrix(A, beta, beta)
            cert = None
            try:
                cert = _schur_certificate(A, c, beta)
                methods[beta] = "schur"
            except (ConsistencyError, SingularMatrixError) as exc:
                if gate:
                    violations.append((beta, str(exc)))
            if cert is None:
                cert = find_certificate(sub)
                methods[beta] = "search"
            if cert is None:
                failures.append((beta, "no certificate found"))
                methods.pop(beta, None)
                continue
            if not verify_certificate(sub, cert):
                raise ConsistencyError(f"certificate for {beta} failed verification")
            certs[beta] = cert
    return CompletenessReport(not failures, gate, certs, methods, tuple(failures), tuple(violations))


class NotTypeDError(PreconditionError):
    """The matrix is not a positive type D matrix."""


def type_d_certificate(A):
    """``(A⁻¹, I, 0, e)`` for a positive type D matrix ``A``."""
    res = is_type_d(A)
    if not res.result or not res.profile.positive:
        raise NotTypeDError("matrix is not a positive type D matrix")
    n = A.n_rows
    cert = Certificate(inverse(A), RatMatrix.identity(n), (0,) * n, (1,) * n)
    if not verify_certificate(A, cert):
        raise ConsistencyError("type D certificate failed verification")
    return cert


def epsilon_bound(c):
    """``min(rᵀX + sᵀY) / max|sᵀX|``; ``math.inf`` when ``sᵀX = 0``."""
    problems = _internal_violations(c)
    if problems:
        raise PreconditionError("invalid certificate: " + "; ".join(problems))
    sx = vecmat(c.s, c.X)
    top = max(abs(v) for v in sx)
    if top == 0:
        return math.inf
    return min(c.combination()) / top


@dataclass(frozen=True)
class PerturbationResult:
    bound_l: object
    epsilon_used: Fraction
    A_eps: RatMatrix
    cert_eps: Certificate


def perturb(A, c, eps):
    """Certificate ``(X, Y + εX, r, s)`` for ``A + εI`` with ``0 < ε < l``."""
    eps = Fraction(eps)
    if not verify_certificate(A, c):
        raise PreconditionError("certificate does not verify for A")
    bound = epsilon_bound(c)
    if not 0 < eps < bound:
        raise ValueError(f"epsilon {eps} outside the open interval (0, {bound})")
    n = A.n_rows
    A_eps = A + RatMatrix.identity(n).scale(eps)
    cert = Certificate(c.X, c.Y + c.X.scale(eps), c.r, c.s)
    if not verify_certificate(A_eps, cert):
        raise ConsistencyError("perturbed certificate failed verification")
    return PerturbationResult(bound, eps, A_eps, cert)


@dataclass(frozen=True)
class ClassifyParams:
    epsilon: Fraction = Fraction(1)
    delta: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")


class Verdict(enum.Enum):
    P_CERTIFIED = "P"
    P0_CERTIFIED = "P0"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    step: int = None
    x: tuple = None
    s: Fraction = None
    conditional: bool = True
    certificate: Certificate = field(default=None, repr=False)


def positivity_lp(A, epsilon, delta):
    """``min s`` subject to ``Ax − s e >= 0``, ``x >= δ e``, ``s >= ε``."""
    n = A.n_rows
    cons = [(row + (Fraction(-1),), GE, 0) for row in A.rows()]
    lower = (Fraction(delta),) * n + (Fraction(epsilon),)
    return solve_lp(LpProblem((0,) * n + (1,), cons, lower))


def classify_hidden(A, params=None, certificate=None):
    """Step I (``ε > 0``) certifies P; Step II (``ε = 0``) certifies P₀.

    The verdict carries that meaning only for hidden Z-matrices, so it is
    marked ``conditional`` unless a verifying certificate is attached.
    """
    params = params or ClassifyParams()
    if not A.is_square:
        raise DimensionError("square matrix required")
    conditional = True
    if certificate is not None:
        if not verify_certificate(A, certificate):
            raise PreconditionError("attached certificate does not verify")
        conditional = False
    steps = [(1, params.epsilon)] if params.epsilon > 0 else []
    steps.append((2, Fraction(0)))
    for step, eps in steps:
        out = positivity_lp(A, eps, params.delta)
        if out.optimal:
            verdict = Verdict.P_CERTIFIED if step == 1 else Verdict.P0_CERTIFIED
            return Classification(verdict, step, out.solution[:-1], out.solution[-1],
                                  conditional, certificate)
    return Classification(Verdict.INCONCLUSIVE, None, conditional=conditional,
                          certificate=certificate)
