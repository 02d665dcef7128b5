"""Exact rational linear programming.

A two-phase tableau simplex with Bland's least-index rule, run on the
fraction-free integer tableau of :mod:`lcplab.kernel`.  Optimal outcomes are
always basic (vertex) solutions.  Strict inequality systems are decided with
an auxiliary program (:func:`strict_feasibility`).
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from lcplab import kernel
from lcplab.errors import DimensionError
from lcplab.ratmat import as_fraction, dot

GE, LE, EQ = ">=", "<=", "=="
_RELATIONS = (GE, LE, EQ)


@dataclass(frozen=True)
class Constraint:
    row: tuple
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in _RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "row", tuple(as_fraction(v) for v in self.row))
        object.__setattr__(self, "rhs", as_fraction(self.rhs))

    def satisfied_by(self, x):
        lhs = dot(self.row, x)
        if self.rel == GE:
            return lhs >= self.rhs
        if self.rel == LE:
            return lhs <= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LpProblem:
    """Minimize ``objective · x`` subject to ``constraints`` and ``x_j >= lower[j]``.

    ``lower[j] = None`` makes variable ``j`` free.  ``lower`` defaults to all zeros.
    """

    objective: tuple
    constraints: tuple = ()
    lower: tuple = None

    def __post_init__(self):
        obj = tuple(as_fraction(v) for v in self.objective)
        object.__setattr__(self, "objective", obj)
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)
        object.__setattr__(self, "constraints", cons)
        n = len(obj)
        for k, c in enumerate(cons):
            if len(c.row) != n:
                raise DimensionError(f"constraint {k} has {len(c.row)} coefficients, expected {n}")
        lower = (Fraction(0),) * n if self.lower is None else tuple(
            None if v is None else as_fraction(v) for v in self.lower)
        if len(lower) != n:
            raise DimensionError("lower bounds length mismatch")
        object.__setattr__(self, "lower", lower)

    @property
    def n_vars(self):
        return len(self.objective)

    def is_feasible_point(self, x):
        if any(lo is not None and xi < lo for xi, lo in zip(x, self.lower)):
            return False
        return all(c.satisfied_by(x) for c in self.constraints)


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    solution: tuple = None
    objective_value: Fraction = None
    basis: tuple = None
    duals: tuple = None
    pivots: int = 0

    @property
    def optimal(self):
        return self.status is LpStatus.OPTIMAL


def _int_scale(values):
    return lcm(*(v.denominator for v in values)) if values else 1


class _Simplex:
    """Integer two-phase simplex over a standard-form tableau.

    Columns are laid out as ``[structural | slack | artificial | rhs]``; the
    artificial block is an identity, so the initial denominator is 1.
    """

    def __init__(self, rows, rhs, cost, n_art_free_cols):
        m = len(rows)
        self.m = m
        self.n_cols = n_art_free_cols
        self.art0 = n_art_free_cols
        width = n_art_free_cols + m
        self.rhs_col = width
        self.T = []
        for i in range(m):
            self.T.append(rows[i] + [int(i == k) for k in range(m)] + [rhs[i]])
        self.basis = [self.art0 + i for i in range(m)]
        self.d = 1
        self.pivots = 0
        phase2 = cost + [0] * m + [0]
        phase1 = [-sum(self.T[i][j] for i in range(m)) for j in range(n_art_free_cols)]
        phase1 += [0] * m + [-sum(rhs)]
        self.T.append(phase2)
        self.T.append(phase1)

    def _pivot(self, r, c):
        self.d = kernel.pivot(self.T, r, c, self.d)
        self.basis[r] = c
        self.pivots += 1

    def _run(self, obj_row):
        T, m, rc = self.T, self.m, self.rhs_col
        while True:
            z = T[obj_row]
            entering = next((j for j in range(self.n_cols) if z[j] < 0), None)
            if entering is None:
                return LpStatus.OPTIMAL
            best = None
            for i in range(m):
                a = T[i][entering]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                # compare T[i][rc]/a with T[best][rc]/T[best][entering]
                lhs = T[i][rc] * T[best][entering]
                rhs = T[best][rc] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return LpStatus.UNBOUNDED
            self._pivot(best, entering)

    def solve(self):
        m = self.m
        self._run(m + 1)
        if self.T[m + 1][self.rhs_col] != 0:
            return LpStatus.INFEASIBLE
        # drive zero-level artificials out of the basis where possible
        for i in range(m):
            if self.basis[i] >= self.art0:
                j = next((j for j in range(self.n_cols) if self.T[i][j] != 0), None)
                if j is not None:
                    self._pivot(i, j)
        self.T.pop()
        return self._run(m)

    def values(self):
        x = [Fraction(0)] * self.rhs_col
        for i, b in enumerate(self.basis):
            x[b] = Fraction(self.T[i][self.rhs_col], self.d)
        return x


def solve_lp(problem):
    """Solve ``problem`` exactly; returns an :class:`LpOutcome`."""
    if not isinstance(problem, LpProblem):
        raise TypeError("expected an LpProblem")
    # variable substitution: x_j = lower_j + u_j, or x_j = u+ - u- when free
    col_of = []
    n_struct = 0
    for lo in problem.lower:
        if lo is None:
            col_of.append((n_struct, n_struct + 1))
            n_struct += 2
        else:
            col_of.append((n_struct,))
            n_struct += 1
    cons = problem.constraints
    n_slack = sum(1 for c in cons if c.rel != EQ)
    n_cols = n_struct + n_slack
    rows, rhs, signs, scales = [], [], [], []
    slack = n_struct
    for c in cons:
        row = [Fraction(0)] * n_cols
        b = c.rhs
        for j, a in enumerate(c.row):
            if not a:
                continue
            cols = col_of[j]
            row[cols[0]] += a
            if len(cols) == 2:
                row[cols[1]] -= a
            else:
                b -= a * problem.lower[j]
        if c.rel != EQ:
            row[slack] = Fraction(1) if c.rel == LE else Fraction(-1)
            slack += 1
        sign = -1 if b < 0 else 1
        s = _int_scale(row + [b])
        rows.append([int(sign * s * a) for a in row])
        rhs.append(int(sign * s * b))
        signs.append(sign)
        scales.append(s)
    cost = [Fraction(0)] * n_cols
    for j, cj in enumerate(problem.objective):
        cols = col_of[j]
        cost[cols[0]] += cj
        if len(cols) == 2:
            cost[cols[1]] -= cj
    cscale = _int_scale(cost)
    icost = [int(cscale * v) for v in cost]

    sx = _Simplex(rows, rhs, icost, n_cols)
    status = sx.solve()
    if status is not LpStatus.OPTIMAL:
        return LpOutcome(status, pivots=sx.pivots)
    u = sx.values()
    x = []
    for j, lo in enumerate(problem.lower):
        cols = col_of[j]
        if len(cols) == 2:
            x.append(u[cols[0]] - u[cols[1]])
        else:
            x.append(lo + u[cols[0]])
    x = tuple(x)
    z = sx.T[len(cons)]
    duals = tuple(
        Fraction(-z[sx.art0 + i], sx.d * cscale) * signs[i] * scales[i] for i in range(len(cons)))
    basis = tuple(sorted(b for b in sx.basis if b < sx.art0))
    return LpOutcome(LpStatus.OPTIMAL, solution=x, objective_value=dot(problem.objective, x),
                     basis=basis, duals=duals, pivots=sx.pivots)


@dataclass(frozen=True)
class StrictResult:
    feasible: bool
    witness: tuple = None
    margin: Fraction = None
    outcome: LpOutcome = field(default=None, repr=False)


def strict_feasibility(n, strict, base=(), lower=None):
    """Decide whether some ``x`` satisfies ``base`` and ``f · x > 0`` for every form ``f`` in ``strict``.

    Solves ``maximize t`` subject to ``f · x >= t``, ``t <= 1`` and ``base``;
    the system is feasible iff the optimum ``t*`` is positive.  ``lower``
    gives bounds on ``x`` (default: all variables free).
    """
    strict = [tuple(as_fraction(v) for v in f) for f in strict]
    for f in strict:
        if len(f) != n:
            raise DimensionError("strict form length mismatch")
    cons = []
    for f in strict:
        cons.append(Constraint(f + (Fraction(-1),), GE, 0))
    cons.append(Constraint((Fraction(0),) * n + (Fraction(1),), LE, 1))
    for c in base:
        c = c if isinstance(c, Constraint) else Constraint(*c)
        if len(c.row) != n:
            raise DimensionError("base constraint length mismatch")
        cons.append(Constraint(c.row + (Fraction(0),), c.rel, c.rhs))
    lo = (None,) * n if lower is None else tuple(lower)
    problem = LpProblem((Fraction(0),) * n + (Fraction(-1),), cons, lo + (None,))
    out = solve_lp(problem)
    if not out.optimal:
        # the auxiliary objective is bounded by t <= 1, so only infeasibility is possible
        return StrictResult(False, outcome=out)
    t = out.solution[-1]
    if t > 0:
        return StrictResult(True, witness=out.solution[:-1], margin=t, outcome=out)
    return StrictResult(False, margin=t, outcome=out)


def simplex_constraint(n):
    """``Σ x = 1`` as a constraint on ``n`` variables."""
    return Constraint((Fraction(1),) * n, EQ, 1)
