import pytest

from qksl import clifford as C


@pytest.mark.parametrize("n,ranks", [(1, [2, 2]), (2, [5, 8, 3]), (3, [14, 28, 18, 4]), (4, [42, 96, 81, 32, 5])])
def test_spinor_ranks(n, ranks):
    assert [C.spinor_rank(n, r) for r in range(n + 1)] == ranks
    assert sum(ranks) == 4 ** n
    assert C.check_dimensions(n).ok


@pytest.mark.parametrize("n", [2, 3])
def test_frame_and_clifford_relation(n):
    assert C.check_frame(n).ok
    assert C.check_clifford_relation(n).ok


@pytest.mark.parametrize("n,r,s", [(n, r, s) for n in (2, 3) for r in range(4) for s in range(n + 1)])
def test_number_operator_sums(n, r, s):
    assert C.check_summe(n, r, s).ok


def test_summe_constants_example():
    c = C.summe_constants(2, 1, 1)
    assert c[("++", "--")] == 2
    assert c[("+-", "-+")] == -5
    assert c[("-+", "+-")] == -3
    assert c[("--", "++")] == C.F(15, 2)


@pytest.mark.parametrize("kind,n,r", [(k, n, r) for k in C.KINDS for n in (2, 3) for r in C.iota_range(k, n)])
def test_right_inverses(kind, n, r):
    assert C.check_iota(kind, n, r).ok


@pytest.mark.parametrize("n,r,s", [(2, 1, 1), (3, 2, 1)])
def test_adjointness(n, r, s):
    assert C.check_adjointness(n, r, s).ok


@pytest.mark.parametrize("n", [2, 3])
def test_wedge_identities(n):
    assert C.check_wedge_identities(n).ok


def test_wrong_summe_constant_is_caught(monkeypatch):
    orig = C.summe_constants

    def off(n, r, s):
        c = dict(orig(n, r, s))
        c[("++", "--")] += 1
        return c
    monkeypatch.setattr(C, "summe_constants", off)
    assert not C.check_summe(2, 1, 1).ok
