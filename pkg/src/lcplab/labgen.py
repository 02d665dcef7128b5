"""Random instance generators and the theorem-suite harness.

Each suite draws hypothesis-satisfying instances from a per-trial seed,
checks the theorem's conclusion exactly, and records counterexamples with
the seed needed to replay them.  Draws that miss a hypothesis are counted
as skipped, never as passes.
"""

import hashlib
import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from lcplab.errors import ConsistencyError, LcplabError, PreconditionError, SingularMatrixError
from lcplab.gameval import game_value, value_sign_queries
from lcplab.hiddenz import (Certificate, Verdict, classify_hidden, completely_hidden_check,
                            find_certificate, mixed_matrix, positivity_lp, submatrix_certificate,
                            type_d_certificate, verify_certificate)
from lcplab.lcpsolve import (CheckStatus, LcpInstance, SolveStatus, enumerate_solutions,
                             homogeneous_rays, homogeneous_scaling_holds, lp_reformulation_solve,
                             unique_nondegenerate_check)
from lcplab.lpcore import GE, LpProblem, solve_lp
from lcplab.matclass import (NCategory, is_e_matrix, is_p_matrix, is_s_matrix, is_sbar_matrix,
                             minor_profile, n_category)
from lcplab.ratmat import (RatMatrix, complement, det, inverse, ppt, principal_permute,
                           schur_complement, submatrix)

SCHEMA = "lcplab/1"
DEFAULT_ENTRY_BOUND = 9
KINDS = ("Z", "K", "P", "HiddenZ", "HiddenZWeak", "SingularHiddenZ", "TypeD", "Singular",
         "General")


class GeneratorError(LcplabError, RuntimeError):
    """A generated certificate failed its own verification."""


class UnknownTheoremError(LcplabError, ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    seed: int
    entry_bound: int = DEFAULT_ENTRY_BOUND

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.entry_bound < 1:
            raise ValueError("entry_bound must be at least 1")


@dataclass(frozen=True)
class Generated:
    A: RatMatrix
    certificate: Certificate = None


def _z_entries(rng, n, b):
    return [[0 if i == j else -rng.randint(0, b) for j in range(n)] for i in range(n)]


def _k_matrix(rng, n, b):
    rows = _z_entries(rng, n, b)
    for i in range(n):
        rows[i][i] = -sum(rows[i]) + rng.randint(1, b)
    return RatMatrix(rows)


def _hidden_z_rs(Y):
    """``s`` with ``sᵀY >= 1`` for a K-matrix ``Y`` (r is zero)."""
    n = Y.n_rows
    out = solve_lp(LpProblem((1,) * n, [(Y.col(j), GE, 1) for j in range(n)]))
    return out.solution if out.optimal else None


def _certified(A, X, Y, r, s):
    cert = Certificate(X, Y, r, s)
    if not verify_certificate(A, cert):
        raise GeneratorError("generated certificate does not verify")
    return Generated(A, cert)


def _x_only_certificate(rng, n, b, Y):
    """``A = Y X⁻¹`` for a K-matrix ``X``; ``r`` with ``rᵀX >= 1`` always exists."""
    X = _k_matrix(rng, n, b)
    A = Y @ inverse(X)
    out = solve_lp(LpProblem((1,) * n, [(X.col(j), GE, 1) for j in range(n)]))
    return _certified(A, X, Y, out.solution, (0,) * n)


def generate(spec):
    """Draw one matrix of ``spec.kind``; hidden-Z kinds come with a verified certificate."""
    rng = random.Random(spec.seed)
    n, b, kind = spec.n, spec.entry_bound, spec.kind
    if kind == "Z":
        rows = _z_entries(rng, n, b)
        for i in range(n):
            rows[i][i] = rng.randint(-b, b)
        return Generated(RatMatrix(rows))
    if kind == "K":
        return Generated(_k_matrix(rng, n, b))
    if kind == "P":
        # strictly diagonally dominant with a positive diagonal
        rows = [[rng.randint(-b, b) if i != j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            rows[i][i] = sum(abs(v) for v in rows[i]) + rng.randint(1, b)
        return Generated(RatMatrix(rows))
    if kind == "HiddenZ":
        X = _k_matrix(rng, n, b)
        Y = _k_matrix(rng, n, b)
        s = _hidden_z_rs(Y)
        if s is None:
            raise GeneratorError("K-matrix draw admits no positive row combination")
        return _certified(Y @ inverse(X), X, Y, (0,) * n, s)
    if kind == "HiddenZWeak":
        rows = _z_entries(rng, n, b)
        for i in range(n):
            rows[i][i] = rng.randint(-b, b)
        return _x_only_certificate(rng, n, b, RatMatrix(rows))
    if kind == "SingularHiddenZ":
        # Y has zero row sums, so Ye = 0
        rows = _z_entries(rng, n, b)
        for i in range(n):
            rows[i][i] = -sum(rows[i])
        return _x_only_certificate(rng, n, b, RatMatrix(rows))
    if kind == "TypeD":
        alphas, a = [], Fraction(0)
        for _ in range(n):
            a += Fraction(rng.randint(1, b), rng.randint(1, 3))
            alphas.append(a)
        A = RatMatrix([[alphas[min(i, j)] for j in range(n)] for i in range(n)])
        cert = type_d_certificate(A)
        if not verify_certificate(A, cert):
            raise GeneratorError("type D certificate does not verify")
        return Generated(A, cert)
    if kind == "Singular":
        if n == 1:
            return Generated(RatMatrix([[0]]))
        rows = [[rng.randint(-b, b) for _ in range(n)] for _ in range(n - 1)]
        coef = [rng.randint(-2, 2) for _ in range(n - 1)]
        dep = [sum(c * r[j] for c, r in zip(coef, rows)) for j in range(n)]
        rows.insert(rng.randrange(n), dep)
        return Generated(RatMatrix(rows))
    rows = [[rng.randint(-b, b) for _ in range(n)] for _ in range(n)]
    return Generated(RatMatrix(rows))


def trial_seed(theorem_id, seed, index):
    """64-bit seed for one trial, independent of execution order."""
    digest = hashlib.blake2b(f"{theorem_id}|{seed}|{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclass(frozen=True)
class TrialResult:
    outcome: str  # "pass", "skip" or "violation"
    detail: str = ""
    notes: tuple = ()


PASS = TrialResult("pass")


def _skip(reason):
    return TrialResult("skip", reason)


def _violation(detail):
    return TrialResult("violation", detail)


def _fmt(M):
    return json.dumps([[str(v) for v in row] for row in M.tolist()])


def _draw(rng, kind, lo, n_max, b=DEFAULT_ENTRY_BOUND):
    n = rng.randint(lo, max(lo, n_max))
    return generate(GenSpec(kind, n, rng.getrandbits(64), b))


def _hidden_draw(rng, n_max, lo=1, kinds=("HiddenZ", "HiddenZWeak")):
    return _draw(rng, rng.choice(kinds), lo, n_max)


def _t22(rng, n_max):
    g = _hidden_draw(rng, n_max)
    p = is_p_matrix(g.A)
    s = is_s_matrix(g.A).result
    if p != s:
        return _violation(f"is_P={p} is_S={s} A={_fmt(g.A)}")
    return TrialResult("pass", notes=(("P", p),))


def _t25(rng, n_max):
    kind = rng.choice(("General", "Z", "P", "HiddenZWeak"))
    b = rng.choice((1, 2, 3, DEFAULT_ENTRY_BOUND))
    g = _draw(rng, kind, 1, n_max, b)
    e, sbar = is_e_matrix(g.A), is_sbar_matrix(g.A)
    if e != sbar:
        return _violation(f"is_E={e} is_Sbar={sbar} A={_fmt(g.A)}")
    return TrialResult("pass", notes=(("E", e),))


def _t31(rng, n_max):
    g = _hidden_draw(rng, n_max, kinds=("HiddenZ", "HiddenZWeak", "TypeD"))
    perm = list(range(g.A.n_rows))
    rng.shuffle(perm)
    B = principal_permute(g.A, perm)
    if not verify_certificate(B, g.certificate.permuted(perm)):
        return _violation(f"perm={perm} A={_fmt(g.A)}")
    return PASS


def _t32(rng, n_max):
    g = _hidden_draw(rng, n_max, kinds=("HiddenZ", "HiddenZWeak", "SingularHiddenZ"))
    A = g.A
    if not positivity_lp(A, 0, 1).optimal:
        return _skip("no x > 0 with Ax >= 0")
    if not minor_profile(A).is_P0:
        return _violation(f"Step II feasible but not P0: A={_fmt(A)}")
    n = A.n_rows
    unknown = 0
    for k in range(1, n):
        for beta in combinations(range(n), k):
            if det(submatrix(A, beta, beta)) == 0:
                continue
            S = schur_complement(A, beta)
            if not minor_profile(S).is_P0:
                return _violation(f"Schur complement on {beta} not P0: A={_fmt(A)}")
            if find_certificate(S) is None:
                unknown += 1
    return TrialResult("pass", notes=(("schur_certificate_unknown", unknown),))


def _t33(rng, n_max):
    kind = rng.choice(("Singular", "SingularHiddenZ"))
    g = _draw(rng, kind, 1, n_max)
    A = g.A
    if det(A) != 0:
        raise GeneratorError("singular draw is nonsingular")
    cert = g.certificate or find_certificate(A)
    certified = cert is not None and verify_certificate(A, cert).valid
    positive = value_sign_queries(A).positive
    if certified and positive:
        return _violation(f"singular, certified and value-positive: A={_fmt(A)}")
    return TrialResult("pass", notes=(("certified", certified),))


def _t34(rng, n_max):
    g = _hidden_draw(rng, n_max)
    cls = classify_hidden(g.A, certificate=g.certificate)
    if cls.verdict is not Verdict.P_CERTIFIED:
        return _skip("Step I infeasible")
    if not minor_profile(g.A).is_P:
        return _violation(f"Step I succeeded but not P: A={_fmt(g.A)}")
    return PASS


def _t35(rng, n_max):
    g = _draw(rng, "TypeD", 1, n_max)
    c = g.certificate
    if not verify_certificate(g.A, c) or det(c.X) == 0:
        return _violation(f"type D certificate invalid: A={_fmt(g.A)}")
    return PASS


def _almost_p_hidden(rng, n_max, attempts=200):
    for _ in range(attempts):
        n = rng.randint(2, max(2, n_max))
        rows = _z_entries(rng, n, DEFAULT_ENTRY_BOUND)
        for i in range(n):
            rows[i][i] = rng.randint(1, DEFAULT_ENTRY_BOUND)
        g = _x_only_certificate(rng, n, DEFAULT_ENTRY_BOUND, RatMatrix(rows))
        if minor_profile(g.A).is_almost_P:
            return g
    return None


def _t36(rng, n_max):
    g = _almost_p_hidden(rng, n_max)
    if g is None:
        return _skip("no almost-P hidden Z draw")
    cat = n_category(inverse(g.A))
    if cat is not NCategory.SECOND:
        return _violation(f"inverse category {cat.value}: A={_fmt(g.A)}")
    return PASS


def _random_q(rng, n, b=DEFAULT_ENTRY_BOUND):
    return tuple(rng.randint(-b, b) for _ in range(n))


def _t37(rng, n_max, attempts=20):
    last = "no draw"
    for _ in range(attempts):
        g = _hidden_draw(rng, n_max, kinds=("HiddenZ", "HiddenZWeak", "SingularHiddenZ"))
        inst = LcpInstance(g.A, _random_q(rng, g.A.n_rows))
        rep = unique_nondegenerate_check(inst, g.certificate)
        if rep.status is CheckStatus.PASSED:
            return PASS
        if rep.status is CheckStatus.VIOLATED:
            return _violation(f"{rep.reason}: A={_fmt(g.A)} q={list(map(str, inst.q))}")
        last = rep.reason
    return _skip(last)


def _t38(rng, n_max):
    g = _hidden_draw(rng, n_max, lo=2, kinds=("HiddenZ", "HiddenZWeak", "TypeD"))
    A, c = g.A, g.certificate
    n = A.n_rows
    alpha = tuple(sorted(rng.sample(range(n), rng.randint(1, n - 1))))
    if not (is_e_matrix(mixed_matrix(c.X, c.Y, alpha))
            and is_e_matrix(mixed_matrix(c.Y, c.X, alpha))):
        return _skip("W or W̄ is not an E-matrix")
    for part in (alpha, complement(alpha, n)):
        try:
            cert = submatrix_certificate(A, c, part)
        except SingularMatrixError:
            return _skip("complementary X block singular")
        except (ConsistencyError, PreconditionError) as exc:
            return _violation(f"alpha={part}: {exc}; A={_fmt(A)}")
        if not verify_certificate(submatrix(A, part, part), cert):
            return _violation(f"alpha={part}: certificate does not verify; A={_fmt(A)}")
    return PASS


def _t39(rng, n_max):
    g = _hidden_draw(rng, n_max, kinds=("HiddenZ", "HiddenZWeak", "TypeD"))
    rep = completely_hidden_check(g.A, g.certificate)
    if not rep.gate:
        return _skip("X or Y is not an E-matrix")
    if rep.theorem_violations or not rep.completely:
        return _violation(f"{rep.theorem_violations or rep.failures}; A={_fmt(g.A)}")
    return PASS


def _t310(rng, n_max, attempts=20):
    for _ in range(attempts):
        g = _hidden_draw(rng, n_max, kinds=("HiddenZ", "HiddenZWeak", "SingularHiddenZ"))
        inst = LcpInstance(g.A, _random_q(rng, g.A.n_rows))
        oracle = enumerate_solutions(inst)
        try:
            out = lp_reformulation_solve(inst, g.certificate)
        except ConsistencyError as exc:
            return _violation(f"{exc}; A={_fmt(g.A)} q={list(map(str, inst.q))}")
        if not oracle:
            if out.status is not SolveStatus.INFEASIBLE:
                return _violation(f"unsolvable instance gave {out.status.value}")
            continue
        if not out.solved:
            return _violation(f"solvable instance gave {out.status.value}; A={_fmt(g.A)}")
        if out.objective != 0:
            return _violation(f"optimum objective {out.objective}")
        # enumeration keeps one vertex per singular support, so a continuum may hold z1
        continuum = any(s.from_singular_support for s in oracle)
        if out.solution.z not in {s.z for s in oracle} and not continuum:
            return _violation("z1 not among enumerated solutions")
        return PASS
    return _skip("no solvable draw")


def _ppt_sign(rng, n_max):
    g = _draw(rng, "General", 1, n_max)
    A, n = g.A, g.A.n_rows
    alpha = tuple(sorted(rng.sample(range(n), rng.randint(1, n))))
    if det(submatrix(A, alpha, alpha)) == 0:
        return _skip("singular pivot block")
    v, vp = game_value(A).value, game_value(ppt(A, alpha)).value
    if (v > 0) - (v < 0) != (vp > 0) - (vp < 0):
        return _violation(f"v={v} v_ppt={vp} alpha={alpha} A={_fmt(A)}")
    return TrialResult("pass", notes=(("exact_value_equal", v == vp),))


def _cone(rng, n_max):
    kind = rng.choice(("General", "Singular", "HiddenZWeak", "SingularHiddenZ"))
    g = _draw(rng, kind, 1, n_max, rng.choice((1, 2, DEFAULT_ENTRY_BOUND)))
    rays = homogeneous_rays(g.A)
    for z in rays:
        if not homogeneous_scaling_holds(g.A, z):
            return _violation(f"z={list(map(str, z))} A={_fmt(g.A)}")
    return TrialResult("pass", notes=(("nonzero_solutions", len(rays)),))


SUITES = {
    "T2.2": _t22,
    "T2.5": _t25,
    "T3.1": _t31,
    "T3.2": _t32,
    "T3.3": _t33,
    "T3.4": _t34,
    "T3.5": _t35,
    "T3.6": _t36,
    "T3.7": _t37,
    "T3.8": _t38,
    "T3.9": _t39,
    "T3.10": _t310,
    "PPT-sign": _ppt_sign,
    "cone-homogeneous": _cone,
}


def run_trial(theorem_id, seed, n_max):
    """Run one trial from its own seed; this is also the replay entry point."""
    if theorem_id not in SUITES:
        raise UnknownTheoremError(
            f"unknown theorem id {theorem_id!r}; registered: {', '.join(SUITES)}")
    return SUITES[theorem_id](random.Random(seed), n_max)


def _run_indexed(args):
    theorem_id, seed, n_max = args
    return run_trial(theorem_id, seed, n_max)


@dataclass(frozen=True)
class SuiteReport:
    theorem_id: str
    trials: int
    n_max: int
    seed: int
    passed: int
    violations: tuple
    skipped: int
    skip_reasons: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "theorem_id": self.theorem_id,
            "trials": self.trials,
            "n_max": self.n_max,
            "seed": self.seed,
            "passed": self.passed,
            "skipped": self.skipped,
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "violations": [dict(v) for v in self.violations],
            "notes": dict(sorted(self.notes.items())),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def run_suite(theorem_id, trials, n_max=4, seed=0, jobs=1):
    """Run ``trials`` independent trials; the report does not depend on ``jobs``."""
    if theorem_id not in SUITES:
        raise UnknownTheoremError(
            f"unknown theorem id {theorem_id!r}; registered: {', '.join(SUITES)}")
    if trials < 0 or n_max < 1:
        raise ValueError("trials must be >= 0 and n_max >= 1")
    seeds = [trial_seed(theorem_id, seed, i) for i in range(trials)]
    work = [(theorem_id, s, n_max) for s in seeds]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_indexed, work, chunksize=max(1, trials // (4 * jobs))))
    else:
        results = [_run_indexed(w) for w in work]
    violations, reasons, notes = [], Counter(), Counter()
    passed = 0
    for i, (s, res) in enumerate(zip(seeds, results)):
        if res.outcome == "pass":
            passed += 1
        elif res.outcome == "skip":
            reasons[res.detail] += 1
        else:
            violations.append((("trial", i), ("seed", s), ("detail", res.detail)))
        for key, val in res.notes:
            # booleans are tallied per value, counts are summed
            if isinstance(val, bool):
                notes[f"{key}={str(val).lower()}"] += 1
            else:
                notes[key] += val
    return SuiteReport(theorem_id, trials, n_max, seed, passed, tuple(violations),
                       sum(reasons.values()), dict(reasons), dict(notes))


__all__ = [
    "SCHEMA", "KINDS", "GenSpec", "Generated", "GeneratorError", "UnknownTheoremError",
    "generate", "trial_seed", "TrialResult", "SUITES", "run_trial", "SuiteReport", "run_suite",
]
