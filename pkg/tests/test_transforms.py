import pytest
from hypothesis import given
from hypothesis import strategies as st

from itercalc.errors import UnsupportedLetter
from itercalc.ncalgebra import NcPoly, e
from itercalc.products import all_words
from itercalc.ratfield import GAMMA_Z, IDENTITY, INFINITY, ONE, Z, ZERO, GradingMap, MobiusMap, mobius_apply
from itercalc.transforms import epsilon_gamma, gamma_star, phi, tau_z, tau_z_inverse, tau_z_mobius
from strategies import integer_mobius, ncpolys, words

SHIFT = MobiusMap(1, 1, 0, 1)
WORDS6 = all_words((ZERO, ONE, Z), 6)


def test_gamma_star_examples():
    assert gamma_star(IDENTITY, e(Z)) == e(Z)
    assert gamma_star(GAMMA_Z, e(0)) == e(1) - e(Z)
    assert gamma_star(SHIFT, e(0, 1)) == e(1, 2)
    assert gamma_star(GAMMA_Z, NcPoly.one()) == 1


def test_letter_mapped_to_infinity():
    # gamma_z(z) = inf, so e_z -> 0 - e_{gamma(inf)} = -e_z
    assert gamma_star(GAMMA_Z, e(Z)) == -e(Z)


def test_phi_examples():
    assert phi(e(1, 0)) == e(0, 1)
    assert phi(e(Z)) == -e(Z)
    assert phi(NcPoly.one()) == 1


def test_tau_examples():
    assert tau_z(e(1)) == e(Z) - e(0)
    assert tau_z(e(0)) == e(Z) - e(1)
    assert tau_z(e(Z)) == e(Z)
    assert tau_z(e(1, 0)) == e(Z, Z) - e(Z, 0) - e(1, Z) + e(1, 0)


def test_tau_rejects_other_letters():
    with pytest.raises(UnsupportedLetter):
        tau_z(e(2))
    with pytest.raises(UnsupportedLetter):
        tau_z_mobius(e(Z * Z))


def test_tau_factorization_and_involution_exhaustive():
    for w in WORDS6:
        a = NcPoly.monomial(w)
        t = tau_z(a)
        assert t == tau_z_mobius(a)
        assert tau_z(t) == a
        assert tau_z_inverse(t) == a


@given(words, words)
def test_tau_anti_multiplicative(u, v):
    assert tau_z(e(*u) * e(*v)) == tau_z(e(*v)) * tau_z(e(*u))


def test_epsilon_examples():
    assert epsilon_gamma(GAMMA_Z, GradingMap.at(0), ZERO) == -1
    assert epsilon_gamma(IDENTITY, GradingMap.infinity(), Z) == 0
    assert epsilon_gamma(GAMMA_Z, GradingMap.trivial(), ZERO) == 0


@given(integer_mobius(), integer_mobius(), ncpolys(3))
def test_functoriality(g1, g2, a):
    # pullbacks compose covariantly with the matrix product
    assert gamma_star(g1, gamma_star(g2, a)) == gamma_star(g1 @ g2, a)


def test_functoriality_through_infinity():
    # the identity also holds when intermediate letters pass through infinity
    g1, g2 = MobiusMap(0, 1, 1, 0), MobiusMap(1, -1, 0, 1)
    assert mobius_apply(g2, ONE) == ZERO and mobius_apply(g1, ZERO) is INFINITY
    for w in all_words((ZERO, ONE, Z), 3):
        a = NcPoly.monomial(w)
        assert gamma_star(g1, gamma_star(g2, a)) == gamma_star(g1 @ g2, a)


@given(integer_mobius(), ncpolys(3), ncpolys(3))
def test_gamma_star_multiplicative(g, a, b):
    assert gamma_star(g, a * b) == gamma_star(g, a) * gamma_star(g, b)


@given(ncpolys(3), ncpolys(3))
def test_phi_anti_multiplicative_involution(a, b):
    assert phi(a * b) == phi(b) * phi(a)
    assert phi(phi(a)) == a


@given(st.integers(-3, 3).filter(bool))
def test_scalar_matrix_acts_trivially(k):
    a = e(Z, 0, 1) - 2 * e(1)
    assert gamma_star(MobiusMap(k, 0, 0, k), a) == a
