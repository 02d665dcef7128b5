"""Value of the zero-sum matrix game with a square payoff matrix.

Convention: the maximizing player picks the right-hand mixed strategy ``x``,

    v(A) = max_{x ∈ Δ} min_i (A x)_i = min_{y ∈ Δ} max_j (yᵀ A)_j,

so ``v(A) > 0`` exactly when some ``0 ≠ x ≥ 0`` has ``Ax > 0``.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from lcplab.errors import ConsistencyError, DimensionError
from lcplab.lpcore import GE, LE, LpProblem, simplex_constraint, solve_lp, strict_feasibility
from lcplab.ratmat import matvec, vecmat


class Sign(enum.Enum):
    POSITIVE = 1
    ZERO = 0
    NEGATIVE = -1

    @classmethod
    def of(cls, v):
        return cls.POSITIVE if v > 0 else cls.NEGATIVE if v < 0 else cls.ZERO


@dataclass(frozen=True)
class GameValueReport:
    value: Fraction
    x_star: tuple
    y_star: tuple
    sign: Sign


def _square(A):
    if not A.is_square:
        raise DimensionError(f"square payoff matrix required, got {A.shape}")
    return A.n_rows


def game_value(A):
    """Exact value and optimal strategies of both players (two LPs)."""
    n = _square(A)
    # maximizer: max v s.t. A x >= v e, x in simplex
    cons = [(row + (Fraction(-1),), GE, 0) for row in A.rows()]
    cons.append(((Fraction(1),) * n + (Fraction(0),), "==", 1))
    primal = solve_lp(LpProblem((Fraction(0),) * n + (Fraction(-1),), cons, (0,) * n + (None,)))
    # minimizer: min u s.t. yᵀA <= u e, y in simplex
    cols = [A.col(j) for j in range(n)]
    cons = [(col + (Fraction(-1),), LE, 0) for col in cols]
    cons.append(((Fraction(1),) * n + (Fraction(0),), "==", 1))
    dual = solve_lp(LpProblem((Fraction(0),) * n + (Fraction(1),), cons, (0,) * n + (None,)))
    if not (primal.optimal and dual.optimal):
        raise ConsistencyError("game LP not solved to optimality")
    x = primal.solution[:n]
    y = dual.solution[:n]
    v = min(matvec(A, x))
    if v != max(vecmat(y, A)):
        raise ConsistencyError("minimax equality failed")
    return GameValueReport(v, x, y, Sign.of(v))


@dataclass(frozen=True)
class SignQueries:
    positive: bool
    nonnegative: bool
    negative: bool
    nonpositive: bool
    positive_witness: tuple = None
    nonnegative_witness: tuple = None
    negative_witness: tuple = None
    nonpositive_witness: tuple = None


def value_sign_queries(A):
    """Four feasibility checks over the simplex, independent of :func:`game_value`.

    positive: ``Ax > 0``; nonnegative: ``Ax >= 0``; negative: ``yᵀA < 0``;
    nonpositive: ``yᵀA <= 0`` (``x``, ``y`` nonnegative with unit sum).
    """
    n = _square(A)
    norm = [simplex_constraint(n)]
    zeros = [0] * n
    cols = [A.col(j) for j in range(n)]

    pos = strict_feasibility(n, list(A.rows()), norm, zeros)
    neg = strict_feasibility(n, [tuple(-v for v in c) for c in cols], norm, zeros)
    nonneg = solve_lp(LpProblem((0,) * n, [(r, GE, 0) for r in A.rows()] + norm))
    nonpos = solve_lp(LpProblem((0,) * n, [(c, LE, 0) for c in cols] + norm))
    return SignQueries(
        positive=pos.feasible,
        nonnegative=nonneg.optimal,
        negative=neg.feasible,
        nonpositive=nonpos.optimal,
        positive_witness=pos.witness,
        nonnegative_witness=nonneg.solution,
        negative_witness=neg.witness,
        nonpositive_witness=nonpos.solution,
    )
