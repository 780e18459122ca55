from fractions import Fraction as F

import pytest

from qksl import wolf as W


@pytest.mark.parametrize("family,n", [(f, n) for f in W.FAMILIES for n in (2, 3)])
def test_classical_family(family, n):
    res = W.check_classical_family(family, n)
    assert res.ok
    assert res.details["dim p"] == 4 * n
    assert res.details["2 tr rho"] == str(2 * n)


def test_jacobi_mutant():
    model, _ = W.build_classical_wolf("HPn", 2)
    assert W.check_jacobi(model).ok
    c = model.c_num.copy()
    a, b, d = next(zip(*c.nonzero()))
    c[a, b, d] += 1
    c[b, a, d] -= 1
    model.c_num = c
    assert not W.check_jacobi(model).ok


def test_unknown_family():
    with pytest.raises(ValueError):
        W.build_classical_wolf("Sp", 2)
    with pytest.raises(ValueError):
        W.build_classical_wolf("HPn", 1)


def test_table_l_values():
    rows = {r.name.split("/")[0]: r for r in W.evaluate_table(3)}
    assert len(rows) == 8 and all(r.ok for r in rows.values())
    assert rows["F4"].l_values["sp(3)"] == F(4, 9)
    assert rows["E6"].l_values["su(6)"] == F(1, 2)
    assert rows["E7"].l_values["so(12)"] == F(5, 9)
    assert rows["E8"].l_values["e7"] == F(3, 5)
    assert rows["G2"].l_values["sp~(1)"] == F(1, 6)


def test_exactly_hpn_degenerate():
    verdicts = {r.name: r.verdict for r in W.evaluate_table(3)}
    assert [k for k, v in verdicts.items() if v == "DEGENERATE"] == ["Sp(n+1)/Sp(1)Sp(n)"]


def test_trace_identity_detects_wrong_value():
    e = W.wolf_table(3)[0]
    e.l_values[e.ideals[1][0]] += F(1, 7)
    assert not W.check_trace_identity(e).ok
