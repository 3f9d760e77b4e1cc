from hypothesis import given

from itercalc.ncalgebra import NcPoly, e, in_A1, is_admissible, nc_add, nc_mul, nc_scale, word
from itercalc.products import all_words
from itercalc.ratfield import ONE, Z, ZERO
from strategies import ncpolys, words


def test_add_and_scale():
    assert e(0) + nc_scale(-1, e(0)) == 0
    assert nc_add(e(Z), e(Z)) == 2 * e(Z)
    assert (e(1, 0) - e(0, 1)) + e(0, 1) == e(1, 0)
    assert nc_scale(0, e(1)) == NcPoly.zero()


def test_no_zero_coefficients_stored():
    a = NcPoly({word(1): 2, word(0): 0})
    assert len(a) == 1
    assert len(e(1) - e(1)) == 0 and not (e(1) - e(1))


def test_mul_examples():
    assert nc_mul(e(1), e(0)) == e(1, 0)
    assert (e(Z) - e(1)) * (e(Z) - e(0)) == e(Z, Z) - e(Z, 0) - e(1, Z) + e(1, 0)
    w = e(Z, 0, 1)
    assert NcPoly.one() * w == w == w * NcPoly.one()


def test_admissibility_examples():
    assert is_admissible(word(1, 0), 0, 1)
    assert is_admissible(word(Z), 0, 1)
    assert not is_admissible(word(0, 1), 0, 1)
    assert is_admissible((), 0, 1)
    assert not is_admissible(word(0), 0, 1) and not is_admissible(word(1), 0, 1)


def test_in_A1_examples():
    assert in_A1(())
    assert in_A1(word(1, 0))
    assert not in_A1(word(0, 1))


def test_A0_inside_A1_exhaustive():
    for w in all_words((ZERO, ONE, Z), 4):
        if is_admissible(w, ZERO, ONE):
            assert in_A1(w)


@given(words, words)
def test_degree_additive(u, v):
    assert (e(*u) * e(*v)).degree() == len(u) + len(v)


@given(ncpolys(), ncpolys(), ncpolys())
def test_mul_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert NcPoly.one() * a == a == a * NcPoly.one()


@given(ncpolys(), ncpolys())
def test_equality_and_hash(a, b):
    assert (a + b) - b == a
    assert hash((a + b) - b) == hash(a)
    assert a + b == b + a


def test_display_order_and_coeff():
    a = e(1, 0) + 3 * e(Z) - e(Z, Z) + 2
    assert str(a) == "-e[z]e[z] + e[1]e[0] + 3*e[z] + 2"
    assert a.coeff(word(Z)) == 3 and a.coeff(()) == 2
    assert str(NcPoly.zero()) == "0"
