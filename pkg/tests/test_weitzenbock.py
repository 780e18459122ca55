from fractions import Fraction as F

import pytest

from qksl import weitzenbock as W


@pytest.mark.parametrize("n,r", [(n, r) for n in range(2, 7) for r in range(1, n)])
def test_min_identity(n, r):
    m = W.derive_min_identity(n, r)
    assert m.ok and m.coefficients == m.targets and m.kappa_coefficient == m.target_kappa


@pytest.mark.parametrize("n", range(2, 9))
def test_limiting_system(n):
    ls = W.solve_limiting_system(n)
    assert ls.ok
    assert ls.D_minus_minus == F((n + 4) * (n - 1), 2 * n * (n + 2))
    assert ls.T_minus == 0


@pytest.mark.parametrize("n", range(2, 9))
def test_psi_minus_row(n):
    pm = W.solve_psi_minus_row(n)
    assert pm.ok and pm.residual_kappa == 0


@pytest.mark.parametrize("n,r,s", [(n, r, s) for n in (2, 3, 4) for r in range(4) for s in range(2, n + 1)])
def test_twistor_corollary(n, r, s):
    t = W.check_twistor_corollary(n, r, s)
    assert t.ok and t.kron_matches and not t.trivial


def test_twistor_trivial_at_s1():
    assert W.check_twistor_corollary(3, 1, 1).trivial


def test_norm_dictionary_unique():
    m = W.derive_min_identity(3, 1, scan_dictionaries=True)
    assert W.NORM_DICTIONARY in m.passing_dictionaries
