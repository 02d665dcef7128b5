import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lcplab.errors import DimensionError
from lcplab.gameval import Sign, game_value, value_sign_queries
from lcplab.ratmat import RatMatrix, det, matvec, ppt, submatrix, vecmat
from conftest import SING3, ONES2, square_matrices


def _check_saddle(A, rep):
    x, y = rep.x_star, rep.y_star
    assert sum(x) == 1 and sum(y) == 1
    assert all(v >= 0 for v in x + y)
    assert min(matvec(A, x)) == rep.value == max(vecmat(y, A))


def test_identity_value():
    rep = game_value(RatMatrix.identity(2))
    assert rep.value == Fraction(1, 2) and rep.sign is Sign.POSITIVE
    assert rep.x_star == (Fraction(1, 2), Fraction(1, 2))


def test_singular_ones_matrix_is_value_positive():
    q = value_sign_queries(ONES2)
    assert q.positive and min(matvec(ONES2, q.positive_witness)) > 0
    assert game_value(ONES2).value == 1


def test_sing3_signs():
    q = value_sign_queries(SING3)
    assert not q.positive and q.nonnegative
    assert all(v >= 0 for v in matvec(SING3, q.nonnegative_witness))
    assert game_value(SING3).value == 0


def test_negative_identity():
    q = value_sign_queries(-RatMatrix.identity(2))
    assert q.negative and not q.nonnegative


def test_non_square_rejected():
    with pytest.raises(DimensionError):
        game_value(RatMatrix([[1, 2]]))


@given(square_matrices(max_n=4))
def test_saddle_point_certificate(A):
    _check_saddle(A, game_value(A))


def test_sign_queries_consistent_on_many_random_3x3():
    rng = random.Random(20240521)
    for _ in range(500):
        A = RatMatrix([[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)])
        v = game_value(A).value
        q = value_sign_queries(A)
        assert q.positive == (v > 0)
        assert q.nonnegative == (v >= 0)
        assert q.negative == (v < 0)
        assert q.nonpositive == (v <= 0)
        if q.positive:
            assert all(t > 0 for t in matvec(A, q.positive_witness))
        if q.negative:
            assert all(t < 0 for t in vecmat(q.negative_witness, A))


@given(square_matrices(max_n=3), st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_scale_invariance(A, c):
    assert game_value(c * A).value == c * game_value(A).value


@given(square_matrices(min_n=3, max_n=3), st.data())
def test_ppt_preserves_value_sign(A, data):
    k = data.draw(st.integers(1, 3))
    alpha = tuple(sorted(data.draw(st.permutations(range(3)))[:k]))
    assume(det(submatrix(A, alpha, alpha)) != 0)
    assert game_value(ppt(A, alpha)).sign is game_value(A).sign
