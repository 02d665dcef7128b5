"""Solvers and checks for LCP(q, A): find z >= 0 with w = q + Az >= 0 and zᵀw = 0.

Four independent routes are provided: brute-force support enumeration (the
ground-truth oracle), Lemke's complementary pivoting, the least-index
criss-cross method, and the LP reformulation available for hidden
Z-matrices.  Every solver output is revalidated exactly.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

from lcplab import kernel
from lcplab.errors import ConsistencyError, DimensionError, PreconditionError, SizeCapError
from lcplab.hiddenz import verify_certificate
from lcplab.lpcore import GE, LpProblem, solve_lp
from lcplab.matclass import is_e0_matrix
from lcplab.ratmat import (RatMatrix, SingularMatrixError, complement, det, matvec, solve,
                           submatrix, vecmat, vector)

ENUM_CAP = 10
AUDIT_CAP = 6


@dataclass(frozen=True)
class LcpInstance:
    A: RatMatrix
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", vector(self.q))
        if not self.A.is_square or self.A.n_rows != len(self.q):
            raise DimensionError(f"A is {self.A.shape} but q has length {len(self.q)}")

    @property
    def n(self):
        return len(self.q)


@dataclass(frozen=True)
class LcpSolution:
    z: tuple
    w: tuple
    degenerate: bool
    support: tuple
    from_singular_support: bool = False


class InvalidSolution(DimensionError):
    """A candidate vector violates nonnegativity, feasibility or complementarity."""

    def __init__(self, condition, index, value):
        super().__init__(f"{condition} violated at index {index} (value {value})")
        self.condition = condition
        self.index = index
        self.value = value


def validate_solution(inst, z):
    """Exact check of ``z >= 0``, ``w = q + Az >= 0`` and ``zᵀw = 0``."""
    z = vector(z)
    if len(z) != inst.n:
        raise DimensionError("solution length mismatch")
    for i, v in enumerate(z):
        if v < 0:
            raise InvalidSolution("z >= 0", i, v)
    w = tuple(a + b for a, b in zip(inst.q, matvec(inst.A, z)))
    for i, v in enumerate(w):
        if v < 0:
            raise InvalidSolution("q + Az >= 0", i, v)
    for i in range(inst.n):
        if z[i] * w[i] != 0:
            raise InvalidSolution("complementarity", i, z[i] * w[i])
    degenerate = any(z[i] == 0 and w[i] == 0 for i in range(inst.n))
    support = tuple(i for i in range(inst.n) if z[i] > 0)
    return LcpSolution(z, w, degenerate, support)


def is_solution(inst, z):
    try:
        validate_solution(inst, z)
    except InvalidSolution:
        return False
    return True


def _support_vertex(inst, alpha):
    """A vertex of {z: z_ᾱ = 0, z_α >= 0, w_α = 0, w_ᾱ >= 0}, or None."""
    n = inst.n
    rest = complement(alpha, n)
    cons = []
    for i in range(n):
        row = tuple(inst.A[i, j] if j in alpha else Fraction(0) for j in range(n))
        rel = "==" if i in alpha else GE
        cons.append((row, rel, -inst.q[i]))
    for j in rest:
        cons.append((tuple(Fraction(int(k == j)) for k in range(n)), "==", 0))
    out = solve_lp(LpProblem((0,) * n, cons))
    return out.solution if out.optimal else None


def enumerate_solutions(inst, cap=ENUM_CAP):
    """All complementary solutions found by sweeping the ``2ⁿ`` supports.

    Nonsingular supports contribute their unique candidate; singular ones
    contribute one vertex representative, flagged ``from_singular_support``
    (the flag sticks even when a nonsingular support reached the same point).
    Output is deduplicated and ordered by support enumeration order.
    """
    n = inst.n
    if n > cap:
        raise SizeCapError(f"dimension {n} exceeds enumeration cap {cap}")
    found = {}
    for k in range(n + 1):
        for alpha in combinations(range(n), k):
            singular = False
            if not alpha:
                z = (Fraction(0),) * n
            else:
                sub = submatrix(inst.A, alpha, alpha)
                try:
                    za = solve(sub, tuple(-inst.q[i] for i in alpha))
                except SingularMatrixError:
                    singular = True
                    z = _support_vertex(inst, alpha)
                    if z is None:
                        continue
                else:
                    z = [Fraction(0)] * n
                    for i, v in zip(alpha, za):
                        z[i] = v
                    z = tuple(z)
            try:
                sol = validate_solution(inst, z)
            except InvalidSolution:
                continue
            if singular:
                sol = LcpSolution(sol.z, sol.w, sol.degenerate, sol.support, True)
            if z not in found or singular:
                found[z] = sol
    return list(found.values())


class SolveStatus(enum.Enum):
    SOLVED = "solved"
    RAY_TERMINATION = "ray_termination"
    ITERATION_CAP = "iteration_cap"
    INFEASIBLE = "infeasible"
    BREAKDOWN = "breakdown"


@dataclass(frozen=True)
class SolveOutcome:
    status: SolveStatus
    solution: LcpSolution = None
    pivots: int = 0
    method: str = ""
    objective: Fraction = None

    @property
    def solved(self):
        return self.status is SolveStatus.SOLVED


def default_iteration_cap(n):
    return 10 * 2 ** n


class _ComplementaryTableau:
    """Integer tableau of ``I w − A z [− e z0] = q``.

    Row ``i`` is scaled by the lcm of its denominators and ``w_i`` is rescaled
    to keep the initial basis an identity.  Columns: ``w`` (0..n-1),
    ``z`` (n..2n-1), optionally ``z0`` (2n), then the right-hand side.
    """

    def __init__(self, inst, with_z0):
        n = inst.n
        self.n = n
        self.T = []
        for i in range(n):
            vals = [-a for a in inst.A.row(i)] + ([Fraction(-1)] if with_z0 else []) + [inst.q[i]]
            s = lcm(*(v.denominator for v in vals))
            self.T.append([int(i == k) for k in range(n)] + [int(v * s) for v in vals])
        self.rhs = len(self.T[0]) - 1
        self.d = 1
        self.basis = list(range(n))
        self.pivots = 0

    def pivot(self, r, c):
        self.d = kernel.pivot(self.T, r, c, self.d)
        self.basis[r] = c
        self.pivots += 1

    def value(self, r):
        return Fraction(self.T[r][self.rhs], self.d)

    def z(self):
        n = self.n
        z = [Fraction(0)] * n
        for r, b in enumerate(self.basis):
            if n <= b < 2 * n:
                z[b - n] = self.value(r)
        return tuple(z)

    def complement(self, var):
        return var + self.n if var < self.n else var - self.n


def _finish(inst, z, pivots, method):
    try:
        sol = validate_solution(inst, z)
    except InvalidSolution as exc:
        raise ConsistencyError(f"{method} produced an invalid solution: {exc}") from None
    return SolveOutcome(SolveStatus.SOLVED, sol, pivots, method)


def _lex_less(T, i, k, c, cols):
    """Is row ``i`` lexicographically smaller than row ``k`` after dividing by column ``c``?"""
    for j in cols:
        a = T[i][j] * T[k][c]
        b = T[k][j] * T[i][c]
        if a != b:
            return a < b
    return False


def lemke_solve(inst, max_pivots=None):
    """Lemke's method with covering vector ``e`` and a lexicographic ratio test."""
    n = inst.n
    cap = default_iteration_cap(n) if max_pivots is None else max_pivots
    if all(v >= 0 for v in inst.q):
        return _finish(inst, (Fraction(0),) * n, 0, "lemke")
    tab = _ComplementaryTableau(inst, with_z0=True)
    T, rhs, z0 = tab.T, tab.rhs, 2 * n
    lex_cols = [rhs] + list(range(n))
    # z0 enters at the most negative q (smallest index among ties)
    r = min(range(n), key=lambda i: (Fraction(T[i][rhs], 1) / Fraction(abs(T[i][z0])), i))
    leaving = tab.basis[r]
    tab.pivot(r, z0)
    while True:
        if tab.pivots >= cap:
            return SolveOutcome(SolveStatus.ITERATION_CAP, pivots=tab.pivots, method="lemke")
        entering = tab.complement(leaving)
        rows = [i for i in range(n) if T[i][entering] > 0]
        if not rows:
            return SolveOutcome(SolveStatus.RAY_TERMINATION, pivots=tab.pivots, method="lemke")
        # minimum ratio on the rhs; prefer the z0 row when it ties
        best = rows[0]
        for i in rows[1:]:
            a = T[i][rhs] * T[best][entering]
            b = T[best][rhs] * T[i][entering]
            if a < b:
                best = i
        ties = [i for i in rows
                if T[i][rhs] * T[best][entering] == T[best][rhs] * T[i][entering]]
        z0_row = next((i for i in ties if tab.basis[i] == z0), None)
        if z0_row is not None:
            best = z0_row
        else:
            best = ties[0]
            for i in ties[1:]:
                if _lex_less(T, i, best, entering, lex_cols):
                    best = i
        leaving = tab.basis[best]
        tab.pivot(best, entering)
        if leaving == z0:
            return _finish(inst, tab.z(), tab.pivots, "lemke")


def crisscross_solve(inst, max_pivots=None):
    """Least-index criss-cross method on the complementary tableau.

    Finite for sufficient matrices (in particular P-matrices).  Outside that
    class a zero second pivot in an exchange step is reported as BREAKDOWN.
    """
    n = inst.n
    cap = default_iteration_cap(n) if max_pivots is None else max_pivots
    tab = _ComplementaryTableau(inst, with_z0=False)
    T, rhs = tab.T, tab.rhs

    def row_of_pair(k):
        return next(r for r, b in enumerate(tab.basis) if b % n == k)

    while True:
        infeasible_pairs = [k for k in range(n) if T[row_of_pair(k)][rhs] < 0]
        if not infeasible_pairs:
            return _finish(inst, tab.z(), tab.pivots, "crisscross")
        if tab.pivots >= cap:
            return SolveOutcome(SolveStatus.ITERATION_CAP, pivots=tab.pivots, method="crisscross")
        k = infeasible_pairs[0]
        r = row_of_pair(k)
        comp = tab.complement(tab.basis[r])
        if T[r][comp] < 0:
            tab.pivot(r, comp)
            continue
        # exchange: least pair index s whose nonbasic variable has a negative entry in row r
        s = next((j for j in range(n) if j != k
                  and T[r][tab.complement(tab.basis[row_of_pair(j)])] < 0), None)
        if s is None:
            return SolveOutcome(SolveStatus.INFEASIBLE, pivots=tab.pivots, method="crisscross")
        rs = row_of_pair(s)
        col_s = tab.complement(tab.basis[rs])
        tab.pivot(r, col_s)
        if T[rs][comp] == 0:
            return SolveOutcome(SolveStatus.BREAKDOWN, pivots=tab.pivots, method="crisscross")
        tab.pivot(rs, comp)


def lp_reformulation_program(inst, c):
    """The joint LP in ``(z₁, z₂)`` whose optimal ``z₁`` solves the LCP.

    minimize ``(r + Aᵀs)ᵀz₁ + qᵀz₂`` subject to ``Aᵀs + r − Aᵀz₂ >= 0``,
    ``Az₁ + q >= 0``, ``z₁, z₂ >= 0``.
    """
    n, A, q = inst.n, inst.A, inst.q
    p = tuple(a + b for a, b in zip(c.r, vecmat(c.s, A)))
    zero = (Fraction(0),) * n
    cons = []
    for j in range(n):
        # (Aᵀz₂)_j <= p_j
        cons.append((zero + tuple(-v for v in A.col(j)), GE, -p[j]))
    for i in range(n):
        cons.append((A.row(i) + zero, GE, -q[i]))
    return LpProblem(p + q, cons)


def lp_reformulation_solve(inst, c):
    """Solve LCP(q, A) through the LP reformulation for a certified hidden Z-matrix."""
    if not verify_certificate(inst.A, c):
        raise PreconditionError("certificate does not verify for A")
    out = solve_lp(lp_reformulation_program(inst, c))
    if not out.optimal:
        status = SolveStatus.INFEASIBLE
        return SolveOutcome(status, pivots=out.pivots, method="lp")
    z1 = out.solution[:inst.n]
    res = _finish(inst, z1, out.pivots, "lp")
    return SolveOutcome(res.status, res.solution, res.pivots, "lp", out.objective_value)


@dataclass(frozen=True)
class AuditReport:
    all_nondegenerate: bool
    offenders: tuple
    feasible_bases: int
    complementary_all_nondegenerate: bool
    complementary_offenders: tuple
    complementary_feasible_bases: int


def basis_nondegeneracy_audit(inst, cap=AUDIT_CAP):
    """Check every feasible basis of ``(I | −A)`` for a strictly positive basic solution.

    Columns ``0..n-1`` are ``w``, ``n..2n-1`` are ``z``.  Counts for the
    complementary bases alone are reported alongside.
    """
    n = inst.n
    if n > cap:
        raise SizeCapError(f"dimension {n} exceeds audit cap {cap}")
    cols = [tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n)]
    cols += [tuple(-inst.A[i, j] for i in range(n)) for j in range(n)]
    offenders, comp_offenders = [], []
    feasible = comp_feasible = 0
    for B in combinations(range(2 * n), n):
        M = RatMatrix([[cols[b][i] for b in B] for i in range(n)])
        if det(M) == 0:
            continue
        x = solve(M, inst.q)
        if any(v < 0 for v in x):
            continue
        complementary = len({b % n for b in B}) == n
        feasible += 1
        comp_feasible += complementary
        if any(v == 0 for v in x):
            offenders.append(B)
            if complementary:
                comp_offenders.append(B)
    return AuditReport(not offenders, tuple(offenders), feasible,
                       not comp_offenders, tuple(comp_offenders), comp_feasible)


class CheckStatus(enum.Enum):
    PASSED = "passed"
    SKIPPED = "skipped"
    VIOLATED = "violated"


@dataclass(frozen=True)
class UniquenessReport:
    status: CheckStatus
    reason: str = ""
    solutions: tuple = ()
    audit: AuditReport = field(default=None, repr=False)


def unique_nondegenerate_check(inst, c):
    """Check uniqueness and non-degeneracy of the LCP solution when the hypotheses hold.

    Hypotheses: verifying certificate, ``A`` in E₀, every feasible basis
    non-degenerate, and at least one solution.  A failing hypothesis gives
    SKIPPED with its name; a failing conclusion gives VIOLATED.
    """
    if not verify_certificate(inst.A, c):
        return UniquenessReport(CheckStatus.SKIPPED, "certificate does not verify")
    if not is_e0_matrix(inst.A):
        return UniquenessReport(CheckStatus.SKIPPED, "A is not an E0-matrix")
    audit = basis_nondegeneracy_audit(inst)
    if not audit.all_nondegenerate:
        return UniquenessReport(CheckStatus.SKIPPED, "a feasible basis is degenerate", audit=audit)
    sols = enumerate_solutions(inst)
    if not sols:
        return UniquenessReport(CheckStatus.SKIPPED, "LCP has no solution", audit=audit)
    if len(sols) != 1:
        return UniquenessReport(CheckStatus.VIOLATED, f"{len(sols)} solutions", tuple(sols), audit)
    if sols[0].degenerate:
        return UniquenessReport(CheckStatus.VIOLATED, "unique solution is degenerate",
                                tuple(sols), audit)
    return UniquenessReport(CheckStatus.PASSED, "", tuple(sols), audit)


def homogeneous_rays(A, cap=ENUM_CAP):
    """Nonzero solutions of LCP(0, A), one per support, normalised to ``Σz = 1``."""
    n = A.n_rows
    if n > cap:
        raise SizeCapError(f"dimension {n} exceeds enumeration cap {cap}")
    inst = LcpInstance(A, (0,) * n)
    rays = []
    for k in range(1, n + 1):
        for alpha in combinations(range(n), k):
            cons = []
            for i in range(n):
                row = tuple(A[i, j] if j in alpha else Fraction(0) for j in range(n))
                cons.append((row, "==" if i in alpha else GE, 0))
            cons.append((tuple(Fraction(int(j in alpha)) for j in range(n)), "==", 1))
            for j in complement(alpha, n):
                cons.append((tuple(Fraction(int(k == j)) for k in range(n)), "==", 0))
            out = solve_lp(LpProblem((0,) * n, cons))
            if out.optimal and out.solution not in rays:
                validate_solution(inst, out.solution)
                rays.append(out.solution)
    return rays


def homogeneous_scaling_holds(A, z, scalars=(0, Fraction(1, 2), 2, 7)):
    """For a solution ``z`` of LCP(0, A), check ``λz`` is a solution for each ``λ``."""
    inst = LcpInstance(A, (0,) * A.n_rows)
    return all(is_solution(inst, tuple(Fraction(lam) * v for v in z)) for lam in scalars)


__all__ = [
    "LcpInstance", "LcpSolution", "InvalidSolution", "validate_solution", "is_solution",
    "enumerate_solutions", "SolveStatus", "SolveOutcome", "lemke_solve", "crisscross_solve",
    "lp_reformulation_program", "lp_reformulation_solve", "AuditReport",
    "basis_nondegeneracy_audit", "CheckStatus", "UniquenessReport",
    "unique_nondegenerate_check", "homogeneous_rays", "homogeneous_scaling_holds", "default_iteration_cap",
]
