from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcplab.errors import DimensionError, PreconditionError, SizeCapError
from lcplab.hiddenz import Certificate, classify_hidden, Verdict
from lcplab.labgen import GenSpec, generate
from lcplab.lcpsolve import (CheckStatus, InvalidSolution, LcpInstance, SolveStatus,
                             basis_nondegeneracy_audit, crisscross_solve, enumerate_solutions,
                             homogeneous_rays, homogeneous_scaling_holds, lemke_solve,
                             lp_reformulation_solve, unique_nondegenerate_check,
                             validate_solution)
from lcplab.ratmat import RatMatrix
from conftest import SING3, UNIT3, NONP0

I2 = RatMatrix.identity(2)
NEG3 = (-1, -1, -1)


def test_validate_unit3():
    sol = validate_solution(LcpInstance(UNIT3, NEG3), (0, 1, 1))
    assert sol.w == (1, 0, 0) and not sol.degenerate and sol.support == (1, 2)


def test_validate_reports_condition_and_index():
    with pytest.raises(InvalidSolution) as exc:
        validate_solution(LcpInstance(I2, (-1, -1)), (1, 0))
    assert exc.value.condition == "q + Az >= 0" and exc.value.index == 1 and exc.value.value == -1
    with pytest.raises(DimensionError):
        validate_solution(LcpInstance(I2, (1, 1)), (0, 0, 0))
    with pytest.raises(DimensionError):
        LcpInstance(I2, (1,))


@given(st.lists(st.integers(0, 9), min_size=3, max_size=3))
def test_zero_solves_nonnegative_q(q):
    assert validate_solution(LcpInstance(SING3, q), (0, 0, 0)).z == (0, 0, 0)


def test_enumeration_examples():
    sols = enumerate_solutions(LcpInstance(UNIT3, NEG3))
    assert [s.z for s in sols] == [(0, 1, 1)]
    assert [s.z for s in enumerate_solutions(LcpInstance(I2, (1, 1)))] == [(0, 0)]
    # worked by hand over the four supports
    sols = enumerate_solutions(LcpInstance(NONP0, (1, -1)))
    assert sorted(s.z for s in sols) == [(0, Fraction(1, 2)), (1, 1)]
    with pytest.raises(SizeCapError):
        enumerate_solutions(LcpInstance(RatMatrix.identity(3), NEG3), cap=2)


def test_enumeration_flags_continua():
    # solutions are z1 + z2 = 1, z3 = 1
    sols = enumerate_solutions(LcpInstance(SING3, (-1, 1, -1)))
    assert sols and any(s.from_singular_support for s in sols)
    for s in sols:
        assert s.z[0] + s.z[1] == 1 and s.z[2] == 1


@pytest.mark.parametrize("solver", [lemke_solve, crisscross_solve])
def test_pivoting_examples(solver):
    assert solver(LcpInstance(I2, (-1, -1))).solution.z == (1, 1)
    assert solver(LcpInstance(UNIT3, NEG3)).solution.z == (0, 1, 1)
    assert solver(LcpInstance(UNIT3, (1, 1, 1))).solution.z == (0, 0, 0)


def test_lemke_on_sing3():
    out = lemke_solve(LcpInstance(SING3, (-1, 1, -1)))
    assert out.status in (SolveStatus.SOLVED, SolveStatus.RAY_TERMINATION)
    if out.solved:
        z = out.solution.z
        assert z[0] + z[1] == 1 and z[2] == 1


def test_lemke_ray_on_empty_feasible_set():
    A = RatMatrix([[1, -2], [0, 0]])
    inst = LcpInstance(A, (0, -1))
    assert enumerate_solutions(inst) == []
    assert lemke_solve(inst).status is SolveStatus.RAY_TERMINATION
    cert = Certificate(I2, A, (1, 1), (0, 0))
    assert lp_reformulation_solve(inst, cert).status is SolveStatus.INFEASIBLE


def test_lemke_iteration_cap():
    out = lemke_solve(LcpInstance(UNIT3, NEG3), max_pivots=0)
    assert out.status is SolveStatus.ITERATION_CAP


def test_lp_reformulation_unit3(unit3_cert):
    out = lp_reformulation_solve(LcpInstance(UNIT3, NEG3), unit3_cert)
    assert out.solution.z == (0, 1, 1) and out.objective == 0
    out = lp_reformulation_solve(LcpInstance(UNIT3, (1, 1, 1)), unit3_cert)
    assert out.solution.z == (0, 0, 0) and out.objective == 0
    bad = Certificate(I2, I2, (1, 1), (0, 0))
    with pytest.raises(PreconditionError):
        lp_reformulation_solve(LcpInstance(NONP0, (1, 1)), bad)


def test_audit_examples():
    assert basis_nondegeneracy_audit(LcpInstance(I2, (1, 1))).all_nondegenerate
    rep = basis_nondegeneracy_audit(LcpInstance(I2, (1, 0)))
    assert not rep.all_nondegenerate and (0, 1) in rep.offenders
    rep = basis_nondegeneracy_audit(LcpInstance(UNIT3, NEG3))
    assert rep.complementary_feasible_bases <= rep.feasible_bases
    assert set(rep.complementary_offenders) <= set(rep.offenders)


def test_uniqueness_check(unit3_cert):
    rep = unique_nondegenerate_check(LcpInstance(UNIT3, NEG3), unit3_cert)
    assert rep.status in (CheckStatus.PASSED, CheckStatus.SKIPPED)
    if rep.status is CheckStatus.PASSED:
        assert [s.z for s in rep.solutions] == [(0, 1, 1)]
    else:
        assert rep.reason == "a feasible basis is degenerate"
    ident = Certificate(I2, I2, (1, 1), (0, 0))
    rep = unique_nondegenerate_check(LcpInstance(I2, (1, 1)), ident)
    assert rep.status is CheckStatus.PASSED and not rep.solutions[0].degenerate
    rep = unique_nondegenerate_check(LcpInstance(NONP0, (1, 1)),
                                     Certificate(I2, NONP0, (1, 1), (0, 0)))
    assert rep.status is CheckStatus.SKIPPED and "E0" in rep.reason


def test_homogeneous_rays():
    A = RatMatrix([[1, -1], [-1, 1]])
    rays = homogeneous_rays(A)
    assert rays == [(Fraction(1, 2), Fraction(1, 2))]
    assert homogeneous_scaling_holds(A, rays[0])
    # z1 = 0 is forced, then 2 z2^2 = 0
    assert homogeneous_rays(NONP0) == []
    assert homogeneous_rays(RatMatrix.identity(3)) == []


def _check_agreement(A, q, cert):
    inst = LcpInstance(A, q)
    sols = enumerate_solutions(inst)
    oracle = {s.z for s in sols}
    continuum = any(s.from_singular_support for s in sols)
    outs = [lemke_solve(inst), crisscross_solve(inst), lp_reformulation_solve(inst, cert)]
    for k, out in enumerate(outs):
        if out.solved:
            validate_solution(inst, out.solution.z)
            # basic solutions sit on nonsingular supports; an LP vertex may not
            assert out.solution.z in oracle or (k == 2 and continuum)
        if out.status is SolveStatus.INFEASIBLE and out.method == "lp":
            assert not oracle
    if oracle:
        assert outs[2].solved and outs[2].objective == 0
    return oracle, outs


@given(st.integers(1, 4), st.integers(0, 2 ** 32), st.data())
def test_oracle_agreement_on_p_hidden_z(n, seed, data):
    g = generate(GenSpec("HiddenZ", n, seed))
    q = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    oracle, outs = _check_agreement(g.A, q, g.certificate)
    # these draws are value-positive P-matrices: unique solution, all methods solve
    assert classify_hidden(g.A, certificate=g.certificate).verdict is Verdict.P_CERTIFIED
    assert len(oracle) == 1
    assert all(out.solved for out in outs)


@given(st.sampled_from(["HiddenZWeak", "SingularHiddenZ"]), st.integers(1, 4),
       st.integers(0, 2 ** 32), st.data())
def test_oracle_agreement_on_weak_hidden_z(kind, n, seed, data):
    g = generate(GenSpec(kind, n, seed))
    q = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    _check_agreement(g.A, q, g.certificate)


@given(st.sampled_from(["P", "General", "Singular", "Z"]), st.integers(1, 4),
       st.integers(0, 2 ** 32), st.data())
def test_pivoting_never_emits_invalid_solutions(kind, n, seed, data):
    A = generate(GenSpec(kind, n, seed)).A
    q = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    inst = LcpInstance(A, q)
    oracle = {s.z for s in enumerate_solutions(inst)}
    for out in (lemke_solve(inst), crisscross_solve(inst)):
        if out.solved:
            validate_solution(inst, out.solution.z)
            # a complementary basic solution solves a nonsingular support system
            assert out.solution.z in oracle
    if kind == "P":
        assert len(oracle) == 1 and lemke_solve(inst).solution.z in oracle


@given(st.sampled_from(["General", "Singular", "HiddenZWeak"]), st.integers(1, 3),
       st.integers(0, 2 ** 32))
def test_homogeneous_cone_property(kind, n, seed):
    A = generate(GenSpec(kind, n, seed)).A
    for z in homogeneous_rays(A):
        assert homogeneous_scaling_holds(A, z)
