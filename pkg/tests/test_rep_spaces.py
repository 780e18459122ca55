from math import comb

import pytest

from qksl import rep_spaces as R
from qksl.scalars import ExactMatrix, LabelError


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symplectic_space(n):
    E = R.build_E(n)
    assert R.check_symplectic(E) == []
    assert R.check_symplectic(R.build_H()) == []


@pytest.mark.parametrize("n,s", [(n, s) for n in (2, 3) for s in range(n + 1)])
def test_kom1_and_sl2(n, s):
    assert R.check_kom1(n, s).ok
    assert R.check_sl2(n, s).ok
    assert R.check_primitive_stability(n, s).ok
    assert R.check_wedge_circ(n, s).ok


@pytest.mark.parametrize("n,s", [(2, 2), (3, 2), (3, 3)])
def test_operator_identity(n, s):
    assert R.check_operator_identity(n, s).ok


@pytest.mark.parametrize("r", range(5))
def test_kom2(r):
    res = R.check_kom2(r)
    assert res.ok
    # the contraction identities degenerate on Sym^0 H
    assert bool(res.skipped) == (r == 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_primitive_dimensions(n):
    for s in range(n + 1):
        expected = comb(2 * n, s) - (comb(2 * n, s - 2) if s >= 2 else 0)
        assert R.dim_prim(n, s) == expected == R.prim_embedding(n, s).cols


def test_pr_tilde_K_rank():
    res = R.check_pr_tilde_K(2, 1)
    assert res.ok and res.details["rank"] == 10


@pytest.mark.parametrize("n,s", [(2, 2), (3, 2), (3, 3)])
def test_pr_tilde_K_projector(n, s):
    P = R.pr_tilde_K_matrix(n, s)
    assert P @ P == P
    assert R.check_pr_tilde_K(n, s).ok


@pytest.mark.parametrize("r", range(4))
def test_projector_relations_H(r):
    assert R.check_projector_relations_H(r).ok


@pytest.mark.parametrize("n,s", [(2, 2), (3, 2), (3, 3)])
def test_projector_relations_E(n, s):
    assert R.check_projector_relations_E(n, s).ok


def test_wedge_circ_rejects_wrong_degree():
    with pytest.raises(ValueError):
        R.check_kom1(2, 5)


def test_check_result_records_witness():
    res = R.CheckResult("demo", True)
    a = ExactMatrix.identity(2)
    res.record("id = 0", a, a.scale(0))
    assert not res.ok and res.first_failure()["identity"] == "id = 0"


def test_wedge_circ_rejects_top_degree():
    E = R.build_E(2)
    e = E.unit(0)
    assert R.wedge_circ(e, R.primitive_basis(E, 1)).cols == R.dim_prim(2, 1)
    with pytest.raises(ValueError):
        R.wedge_circ(e, R.primitive_basis(E, 2))
