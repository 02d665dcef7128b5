from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lcplab.ratmat import RatMatrix

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def leibniz_det(rows):
    """Determinant by permutation expansion; an oracle independent of Bareiss."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= Fraction(rows[i][perm[i]])
        total += term
    return total


def small_ints(bound=5):
    return st.integers(min_value=-bound, max_value=bound)


def square_matrices(min_n=1, max_n=4, bound=5):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.lists(small_ints(bound), min_size=n, max_size=n),
                           min_size=n, max_size=n)).map(RatMatrix)


def rationals(bound=5, max_den=4):
    return st.builds(Fraction, small_ints(bound), st.integers(1, max_den))


SING3 = RatMatrix([[1, 1, 0], [-1, -1, 0], [0, 0, 1]])
UNIT3 = RatMatrix([[1, 2, 0], [0, 1, 0], [-1, 0, 1]])
NONP0 = RatMatrix([[-1, 0], [-1, 2]])
ONES2 = RatMatrix([[1, 1], [1, 1]])


@pytest.fixture
def sing3_cert():
    from lcplab.hiddenz import Certificate
    return Certificate(
        RatMatrix([[2, -1, 0], [-1, 1, 0], [0, -1, 3]]),
        RatMatrix([[1, 0, 0], [-1, 0, 0], [0, -1, 3]]),
        ("1.6", 4, 2), (4, 0, "0.1"),
    )


@pytest.fixture
def unit3_cert():
    from lcplab.hiddenz import Certificate
    return Certificate(
        RatMatrix([[1, -2, 0], [0, 1, 0], [-1, -2, 1]]),
        RatMatrix([[1, 0, 0], [0, 1, 0], [-2, 0, 1]]),
        (3, 8, 0), (0, 0, 1),
    )


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
