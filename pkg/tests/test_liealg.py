import pytest

import affvir.liealg as la
from affvir.liealg import (C, AlgebraElement, EnvelopingElement, Gen, basis, bracket,
                           check_antisymmetry, check_jacobi, d, e, f, h, jacobiator, word_mul)
from affvir.parsing import parse_algebra
from affvir.scalars import L, Scalar


def test_bracket_examples():
    assert str(bracket(e(1), f(-1))) == "h[0] + c"
    assert str(bracket(d(2), d(-2))) == "-4*d[0] + (1/2)*c"
    assert bracket(e(3), e(-3)) == 0


@pytest.mark.parametrize("x,y,expected", [
    (h(2), e(-1), "2*e[1]"),
    (h(1), f(3), "-2*f[4]"),
    (d(3), h(-1), "-h[2]"),
    (d(-1), e(2), "2*e[1]"),
    (d(1), f(-2), "-2*f[-1]"),
    (h(2), h(-2), "4*c"),
    (d(3), d(-3), "-6*d[0] + 2*c"),
    (f(2), e(-2), "-h[0] + 2*c"),
])
def test_table_entries(x, y, expected):
    assert str(bracket(x, y)) == expected


def test_bilinear():
    x = parse_algebra("2*e[1] - (1/L)*d[-2] + c")
    y = parse_algebra("f[-1] + h[3]")
    expected = AlgebraElement()
    for gx, cx in x.terms.items():
        for gy, cy in y.terms.items():
            expected = expected + bracket(gx, gy) * (cx * cy)
    assert bracket(x, y) == expected


@pytest.mark.parametrize("window", [0, 3, 5])
def test_antisymmetry(window):
    rep = check_antisymmetry(window)
    assert rep.ok and rep.checked == (8 * window + 5) ** 2


def test_jacobi_window_3():
    rep = check_jacobi(3)
    assert rep.ok and rep.checked == 29 ** 3


@pytest.mark.slow
def test_jacobi_window_5():
    assert check_jacobi(5).ok


@pytest.mark.parametrize("triple", [(e(1), f(-1), h(0)), (d(1), d(-1), d(0)), (C, e(2), f(1))])
def test_jacobi_examples(triple):
    assert jacobiator(*triple) == 0


def test_center_and_grading():
    gens = basis(3)
    for x in gens:
        assert bracket(C, x) == 0 and bracket(x, C) == 0
        for y in gens:
            for z in bracket(x, y).terms:
                assert z.kind == "c" or z.index == x.index + y.index


def test_printed_hh_sign_breaks_jacobi(monkeypatch):
    """With [h_i, h_j] = -2i delta C the identity fails on (e_i, f_j, h_k) by 4k*C."""
    table = la._table

    def printed(x, y):
        if x.kind == "h" and y.kind == "h":
            return {C: -2 * x.index * la._delta(x.index + y.index)}
        return table(x, y)

    monkeypatch.setattr(la, "_table", printed)
    monkeypatch.setattr(la, "_BRACKET_CACHE", {})
    for i, j, k in [(1, -2, 1), (2, -4, 2), (1, 1, -2), (0, 3, -3)]:
        assert jacobiator(e(i), f(j), h(k)) == AlgebraElement({C: 4 * k})
    assert not check_jacobi(1).ok


def test_gen_validation():
    with pytest.raises(ValueError):
        Gen("x", 1)
    with pytest.raises(ValueError):
        Gen("c", 2)


def test_word_mul():
    one = EnvelopingElement.unit()
    e0 = EnvelopingElement(e(0))
    assert word_mul(one, e0) == e0
    assert word_mul(e0 * L, e0 * L) == EnvelopingElement.word(e(0), e(0), coeff=L * L)
    lhs = word_mul(e0 - EnvelopingElement(f(0)), EnvelopingElement(h(1)))
    assert str(lhs) == "e[0]*h[1] - f[0]*h[1]"


def test_word_printing():
    u = EnvelopingElement.word(e(0), e(0), f(1), coeff=Scalar("1/2")) + 3
    assert str(u) == "3 + (1/2)*e[0]^2*f[1]"
