import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverforge.errors import InputError
from quiverforge.linalg import (
    GF,
    Mat,
    QQ,
    hstack,
    image_complement,
    inverse,
    kernel_basis,
    mat_solve,
    pivot_columns,
    rank,
    solve,
    vstack,
)


def test_rank_empty_matrix():
    assert rank(Mat.zeros(0, 5)) == 0
    assert rank(Mat.zeros(5, 0)) == 0


def test_rank_identity():
    assert rank(Mat.identity(2)) == 2


def test_rank_one_zero_row():
    assert rank(Mat(1, 2, [[1, 0]])) == 1


def test_kernel_of_identity_is_empty():
    k = kernel_basis(Mat.identity(3))
    assert (k.rows, k.cols) == (3, 0)


def test_kernel_of_zero_map_is_identity():
    k = kernel_basis(Mat.zeros(2, 3))
    assert k == Mat.identity(3)


def test_kernel_normalization_free_variable_one():
    # x1 + x2 = 0 with x2 free and set to one gives (-1, 1)
    k = kernel_basis(Mat(1, 2, [[1, 1]]))
    assert k == Mat(2, 1, [[-1], [1]])


def test_image_complement_already_spanning():
    c = image_complement(Mat.identity(2), 2)
    assert (c.rows, c.cols) == (2, 0)


def test_image_complement_of_zero_subspace():
    assert image_complement(Mat.zeros(3, 0), 3) == Mat.identity(3)


def test_image_complement_greedy_scan():
    # span (1,1,0): e1 enlarges the span, e2 = (1,1,0) - e1 does not,
    # e3 completes it
    span = Mat(3, 1, [[1], [1], [0]])
    c = image_complement(span, 3)
    assert c == Mat(3, 2, [[1, 0], [0, 0], [0, 1]])
    assert rank(hstack([span, c])) == 3


def test_solve_identity():
    assert solve(Mat.identity(2), [3, 4]) == Mat(2, 1, [[3], [4]])


def test_solve_inconsistent():
    assert solve(Mat.zeros(2, 2), [1, 0]) is None


def test_solve_free_variables_zero():
    assert solve(Mat(1, 2, [[1, 1]]), [3]) == Mat(2, 1, [[3], [0]])


def test_mat_solve_multiple_columns():
    m = Mat(2, 2, [[1, 2], [0, 1]])
    b = Mat(2, 2, [[1, 0], [0, 1]])
    x = mat_solve(m, b)
    assert m.mul(x) == b


def test_inverse_and_singular():
    m = Mat(2, 2, [[1, 1], [0, 1]])
    assert m.mul(inverse(m)) == Mat.identity(2)
    with pytest.raises(InputError):
        inverse(Mat(2, 2, [[1, 1], [1, 1]]))


def test_stack_shapes_and_empty_lists():
    a = Mat(2, 1, [[1], [2]])
    b = Mat(2, 2, [[0, 1], [1, 0]])
    assert hstack([a, b]).cols == 3
    assert vstack([a.transpose(), b]).rows == 3
    assert hstack([], rows=4).rows == 4
    assert vstack([], cols=4).cols == 4
    with pytest.raises(InputError):
        hstack([])


def test_pivot_columns_deterministic():
    m = Mat(2, 3, [[0, 1, 1], [0, 1, 2]])
    assert pivot_columns(m) == [1, 2]


def test_prime_field_arithmetic():
    f3 = GF(3)
    two = f3.of(2)
    assert two + two == f3.one()
    assert two * two == f3.one()
    assert (f3.one() / two) == two
    assert f3.of(Fraction(1, 2)) == two
    with pytest.raises(InputError):
        GF(4)


def test_rational_parse_fmt_roundtrip():
    x = QQ.parse("-3/2")
    assert x == Fraction(-3, 2)
    assert QQ.fmt(x) == "-3/2"


def _random_mat(rng, rows, cols, field=QQ):
    return Mat(rows, cols, [[field.of(rng.randint(-3, 3)) for _ in range(cols)]
                            for _ in range(rows)], field)


@pytest.mark.parametrize("field", [QQ, GF(2), GF(5)])
def test_rank_kernel_dimension_identity(field):
    rng = random.Random(11)
    for _ in range(40):
        m = _random_mat(rng, rng.randint(0, 5), rng.randint(0, 5), field)
        k = kernel_basis(m)
        assert rank(m) + k.cols == m.cols
        assert rank(m) <= min(m.rows, m.cols)
        if k.cols:
            assert m.mul(k).is_zero()


def test_solve_is_exact_when_consistent():
    rng = random.Random(5)
    for _ in range(40):
        m = _random_mat(rng, rng.randint(1, 5), rng.randint(1, 5))
        x0 = _random_mat(rng, m.cols, 1)
        b = m.mul(x0)
        x = mat_solve(m, b)
        assert x is not None and m.mul(x) == b


def test_image_complement_completes_basis():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 6)
        span = _random_mat(rng, n, rng.randint(0, n))
        c = image_complement(span, n)
        assert c.cols == n - rank(span)
        assert rank(hstack([span, c], rows=n)) == n


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_determinism_and_rank_transpose(rows):
    m = Mat(len(rows), 3, rows)
    assert rank(m) == rank(m.transpose())
    assert kernel_basis(m) == kernel_basis(Mat(len(rows), 3, rows))
