from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given

from lcplab.errors import DimensionError, SizeCapError
from lcplab.matclass import (NCategory, e0_violation, e_violation, is_e0_matrix, is_e_matrix,
                             is_k_matrix, is_p0_matrix, is_p_matrix, is_s_matrix,
                             is_sbar_matrix, is_type_d, is_z_matrix, minor_profile, n_category,
                             nonempty_subsets)
from lcplab.ratmat import RatMatrix, inverse, matvec
from conftest import UNIT3, NONP0, leibniz_det, square_matrices


def test_subset_order():
    assert list(nonempty_subsets(3)) == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]


def test_identity_profile():
    prof = minor_profile(RatMatrix.identity(3))
    assert prof.is_P and prof.is_P0 and not prof.is_N
    assert is_z_matrix(RatMatrix.identity(3)) and is_k_matrix(RatMatrix.identity(3))


def test_unit3_minors_all_one():
    prof = minor_profile(UNIT3)
    assert set(prof.minors.values()) == {1}
    assert prof.is_P


def test_nonp0_not_p0():
    prof = minor_profile(NONP0)
    assert prof.minor((0,)) == -1 and prof.minor((1,)) == 2 and prof.minor((0, 1)) == -2
    assert not prof.is_P0


def test_almost_p_and_first_category_inverse():
    A = RatMatrix([[1, 2], [1, 1]])
    assert minor_profile(A).is_almost_P
    Ainv = inverse(A)
    assert Ainv == RatMatrix([[-1, 2], [1, -1]])
    assert minor_profile(Ainv).is_N
    assert n_category(Ainv) is NCategory.FIRST
    assert n_category(RatMatrix([[-1, -2], [-1, -1]])) is NCategory.SECOND
    assert n_category(RatMatrix.identity(2)) is NCategory.NOT_N


def test_s_matrix_witness():
    res = is_s_matrix(UNIT3)
    assert res and all(v > 0 for v in res.witness) and all(v > 0 for v in matvec(UNIT3, res.witness))
    assert not is_s_matrix(NONP0)


def test_semimonotone_examples():
    assert is_e_matrix(RatMatrix.identity(2))
    assert is_e0_matrix(RatMatrix([[0, 0], [0, 0]])) and not is_e_matrix(RatMatrix([[0, 0], [0, 0]]))
    x = e0_violation(NONP0)
    assert x is not None and x[0] > 0 and matvec(NONP0, x)[0] < 0


def test_type_d():
    A = RatMatrix([[1, 1, 1], [1, 2, 2], [1, 2, 3]])
    res = is_type_d(A)
    assert res and res.profile.alphas == (1, 2, 3) and res.profile.positive
    assert not is_type_d(RatMatrix([[1, 1], [1, 1]]))
    assert not is_type_d(RatMatrix([[1, 2], [1, 2]]))


def test_caps_and_shapes():
    with pytest.raises(SizeCapError):
        minor_profile(RatMatrix.identity(3), cap=2)
    with pytest.raises(DimensionError):
        is_z_matrix(RatMatrix([[1, 2]]))


@given(square_matrices(max_n=4))
def test_profile_matches_leibniz(M):
    prof = minor_profile(M)
    for alpha, v in prof.minors.items():
        assert v == leibniz_det([[M[i, j] for j in alpha] for i in alpha])
    assert is_p_matrix(M) == all(v > 0 for v in prof.minors.values())
    assert is_p0_matrix(M) == all(v >= 0 for v in prof.minors.values())


@given(square_matrices(max_n=4, bound=3))
def test_e_equals_sbar(M):
    assert is_e_matrix(M) == is_sbar_matrix(M)


@given(square_matrices(max_n=4))
def test_z_and_s_implies_p(M):
    if is_z_matrix(M) and is_s_matrix(M):
        assert is_p_matrix(M)


@given(square_matrices(max_n=3, bound=3))
def test_semimonotone_witnesses_and_grid(M):
    n = M.n_rows
    for finder, strict in ((e0_violation, True), (e_violation, False)):
        x = finder(M)
        if x is not None:
            y = matvec(M, x)
            assert any(x) and all(v >= 0 for v in x)
            assert all((y[k] < 0) if strict else (y[k] <= 0) for k in range(n) if x[k] > 0)
        else:
            # a membership claim must survive a grid search for violations
            for x in product(range(4), repeat=n):
                if not any(x):
                    continue
                y = matvec(M, tuple(Fraction(v) for v in x))
                supp = [k for k in range(n) if x[k] > 0]
                assert not all((y[k] < 0) if strict else (y[k] <= 0) for k in supp)
