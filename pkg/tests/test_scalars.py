from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qksl.scalars import (I, SQRT2, ExactMatrix, LabelError, Scalar, kernel_matrix, kron, rank,
                          rref, solve)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, fracs, fracs, fracs, fracs)
nonzero = scalars.filter(lambda x: not x.is_zero())
small = st.builds(Scalar, st.integers(-3, 3), st.integers(-2, 2), st.integers(-2, 2), st.integers(-1, 1))


def matrices(m, k, elem=small):
    return st.lists(st.lists(elem, min_size=k, max_size=k), min_size=m, max_size=m).map(ExactMatrix.from_rows)


def shaped(max_dim=4, elem=small):
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(lambda s: matrices(*s, elem=elem))


def to_sympy(x: Scalar):
    a, b, c, d = x.coords
    r2 = sympy.sqrt(2)
    return sympy.Rational(a.numerator, a.denominator) + sympy.I * sympy.Rational(b.numerator, b.denominator) \
        + r2 * sympy.Rational(c.numerator, c.denominator) + sympy.I * r2 * sympy.Rational(d.numerator, d.denominator)


def sympy_matrix(m: ExactMatrix):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m.entries()])


# field axioms ---------------------------------------------------------------

@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == Scalar(0)


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == Scalar(1)
    assert (1 / x) * x == Scalar(1)


@given(scalars, scalars)
def test_conjugation_is_an_involutive_automorphism(x, y):
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert (x * x.conj()).is_real()


@settings(max_examples=50, deadline=None)
@given(scalars, nonzero)
def test_matches_sympy(x, y):
    assert sympy.expand(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0
    assert sympy.radsimp(to_sympy(x / y) - to_sympy(x) / to_sympy(y)) == 0


def test_generators():
    assert I * I == Scalar(-1)
    assert SQRT2 * SQRT2 == Scalar(2)
    assert (I * SQRT2) ** 2 == Scalar(-2)
    assert Scalar(3, 0, 2).sign() == 1 and Scalar(1, 0, -1).sign() == -1
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()


def test_scalars_are_immutable():
    x = Scalar(1, 2)
    with pytest.raises(AttributeError):
        x.a = Fraction(3)


# exact matrices ---------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(shaped())
def test_rank_against_sympy(m):
    assert rank(m) == sympy_matrix(m).rank(simplify=True)


@settings(max_examples=40, deadline=None)
@given(shaped(5))
def test_kernel_is_kernel(m):
    K, free = kernel_matrix(m)
    assert K.cols == m.cols - rank(m) == len(free)
    if K.cols:
        assert (m @ K).is_zero()
        assert rank(K) == K.cols


@settings(max_examples=30, deadline=None)
@given(shaped(4), st.data())
def test_solve_roundtrip(a, data):
    x = data.draw(matrices(a.cols, 1))
    b = a @ x
    sol = solve(a, b)
    assert sol is not None and a @ sol == b


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_rank_of_product(data):
    m, k, p = (data.draw(st.integers(1, 4)) for _ in range(3))
    a = data.draw(matrices(m, k))
    b = data.draw(matrices(k, p))
    assert rank(a @ b) <= min(rank(a), rank(b))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_kron_mixed_product(data):
    a = data.draw(matrices(2, 3))
    b = data.draw(matrices(2, 2))
    c = data.draw(matrices(3, 2))
    d = data.draw(matrices(2, 1))
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@settings(max_examples=25, deadline=None)
@given(shaped(4), shaped(4))
def test_adjoint_reverses_products(a, b):
    b = ExactMatrix.from_rows(b.entries()[:1] * a.cols) if b.rows != a.cols else b
    assert (a @ b).adjoint() == b.adjoint() @ a.adjoint()


def test_rref_pivots():
    m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, SQRT2, I]])
    red, piv = rref(m)
    assert piv == [0, 1]
    assert red[0, 0] == Scalar(1) and red[1, 1] == Scalar(1)


def test_labels_are_checked():
    a = ExactMatrix.identity(2, "A")
    b = ExactMatrix.identity(2, "B")
    with pytest.raises(LabelError):
        a @ b
    with pytest.raises(LabelError):
        a + b


def test_rational_numerators():
    m = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [0, 1]])
    arr, den = m.rational_numerators()
    assert den == 6 and arr.tolist() == [[3, 2], [0, 6]]
