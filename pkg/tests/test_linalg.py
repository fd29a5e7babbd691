from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from leibnizlab.linalg import (Inconsistent, Matrix, ShapeError, det, inverse, kernel_basis,
                               mat_mul, mat_vec, rank, solve_affine)

entry = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows, cols):
    return st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_identity_and_units():
    i3 = Matrix.identity(3)
    assert mat_mul(i3, i3) == i3
    assert Matrix.unit(3, 1, 2)[0, 1] == 1          # 1-based constructor


def test_shape_error():
    with pytest.raises(ShapeError):
        mat_mul(Matrix.zeros(2, 3), Matrix.zeros(2, 3))


def test_known_rank_and_det():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    assert det(m) == 0
    assert det(Matrix([[2, 1], [1, 1]])) == 1


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_nullity(r, c, data):
    m = Matrix(data.draw(matrices(r, c)))
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == c
    for v in ker:
        assert all(x == 0 for x in mat_vec(m, v))


@given(st.integers(1, 4), st.data())
def test_inverse(n, data):
    m = Matrix(data.draw(matrices(n, n)))
    if det(m) == 0:
        return
    assert mat_mul(m, inverse(m)) == Matrix.identity(n)


@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_solve_affine(r, c, data):
    a = data.draw(matrices(r, c))
    b = data.draw(st.lists(entry, min_size=r, max_size=r))
    try:
        x, ker = solve_affine(a, b)
    except Inconsistent as err:
        assert 0 <= err.row < r
        aug = Matrix([row + [v] for row, v in zip(a, b)])
        assert rank(aug) > rank(Matrix(a))
        return
    assert mat_vec(Matrix(a), x) == b
    assert len(ker) == c - rank(Matrix(a))


def test_inconsistent_reports_original_row():
    with pytest.raises(Inconsistent) as info:
        solve_affine([[1, 0], [0, 0], [0, 1]], [F(1), F(5), F(2)])
    assert info.value.row == 1


def test_json_round_trip():
    m = Matrix([[F(1, 2), 0], [F(-3), F(7, 5)]])
    assert Matrix.from_json(m.to_json()) == m
