import random
from fractions import Fraction as F

import numpy as np
import pytest

from qksl import killing as K


@pytest.fixture
def restore_A():
    yield
    K.A_unit.cache_clear()


@pytest.mark.parametrize("n", [2, 3])
def test_flat_quartic_gives_hyper_curvature(n):
    rep = K.check_killing_curvature(n)
    assert rep.ok and rep.check.ok


@pytest.mark.parametrize("seed", range(1, 4))
def test_random_quartic(seed):
    q = K.random_quartic(2, random.Random(seed))
    assert K.is_symmetric_quartic(q)
    assert K.check_killing_curvature(2, kappa=F(seed, 2), quartic=q).ok


def test_asymmetric_quartic_rejected():
    q = K.zero_quartic(2).copy()
    q[0, 1, 2, 3] = 1
    with pytest.raises(ValueError):
        K.CurvatureModel(2, 1, q)


def test_quartic_extraction():
    m = K.CurvatureModel(2, 1, K.random_quartic(2, random.Random(7)))
    assert K.check_quartic_extraction(m).ok


def test_lambda_and_scale():
    assert K.lambda_squared(2) == F(5, 16)
    assert K.curvature_scale(3) == F(-1, 120)
    assert K.modified_weights(2) == (F(5, 8), 1, F(12, 5))


@pytest.mark.parametrize("n", [2, 3])
def test_sym0_annihilation(n):
    assert K.check_sym0_annihilation(n).ok


@pytest.mark.parametrize("n", range(2, 9))
def test_laplace_eigenvalues(n):
    res = K.check_laplace(n, derive=n <= 3)
    assert res.ok
    expected = {F(0), F(n + 1, 2 * n * (n + 2)), F(2 * n + 3, 2 * n * (n + 2))}
    assert set(K.expected_eigenvalues(n)) == expected


@pytest.mark.parametrize("n", [2, 3])
def test_skew_hermitian(n):
    res = K.check_skew_hermitian(n)
    assert res.ok
    # the plain product does not make A_X skew: the weights are needed
    assert res.details["unweighted_skew"] is False


@pytest.mark.parametrize("n,r,s", [(2, 0, 2), (2, 2, 2), (3, 1, 2), (3, 1, 3)])
def test_curvature_terms_vanish(n, r, s):
    assert K.check_curvature_term_vanishing(n, r, s).ok


@pytest.mark.parametrize("n", [2, 3])
def test_killing_equation_consequences(n):
    assert K.check_killing_equation_consequences(n).ok


def test_wrong_connection_coefficient_is_caught(monkeypatch, restore_A):
    kind, coef = K.KILLING_COEFFS[(1, 2)]
    monkeypatch.setitem(K.KILLING_COEFFS, (1, 2), (kind, lambda n: 2 * coef(n)))
    K.A_unit.cache_clear()
    assert not K.check_killing_curvature(2).ok
