import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from itercalc.derivations import partial, partial_with_f, partial_zc
from itercalc.errors import InvalidF, UnsupportedLetter
from itercalc.ncalgebra import NcPoly, e, word
from itercalc.products import all_words
from itercalc.ratfield import ONE, Z, ZERO, GradingMap, bracket_diff
from itercalc.transforms import phi
from strategies import ncpolys, words

AT0 = GradingMap.at(0)
GRADINGS = [GradingMap.at(0), GradingMap.at(1), GradingMap.infinity(), GradingMap.trivial()]


def test_partial_examples():
    assert partial(AT0, 0, 1, e(Z, 0)) == -e(Z)
    assert partial(AT0, 0, 1, e(Z)) == -1
    assert partial(GradingMap.trivial(), Z, 3, e(Z, 1, 0, 2)) == 0
    assert partial(AT0, 0, 1, NcPoly.one()) == 0


def test_partial_zc_examples():
    assert partial_zc(0, e(Z)) == -1
    assert partial_zc(1, e(Z)) == 1
    assert partial_zc(0, e(1, 0)) == 0


def test_partial_zc_rejects_other_letters():
    with pytest.raises(UnsupportedLetter):
        partial_zc(0, e(2))
    with pytest.raises(ValueError):
        partial_zc(2, e(Z))


def test_specialization_small():
    for w in all_words((ZERO, ONE, Z), 4):
        for c in (0, 1):
            assert partial_zc(c, NcPoly.monomial(w)) == partial(GradingMap.at(c), 0, 1, NcPoly.monomial(w))


def test_vanishes_on_z_free_words():
    for w in all_words((ZERO, ONE), 5):
        for c in (0, 1):
            assert partial(GradingMap.at(c), 0, 1, NcPoly.monomial(w)) == 0


@given(st.lists(st.sampled_from((ZERO, ONE, Z, ONE + ONE)), min_size=1, max_size=5).map(tuple),
       st.sampled_from(GRADINGS))
def test_degree_drop(w, g):
    for v in partial(g, 0, 1, NcPoly.monomial(w)):
        assert len(v) == len(w) - 1


class TestLift:
    def test_exact_f(self):
        w = word(Z, 0, 0, 1)
        a = (ZERO,) + w + (ONE,)
        f = [bracket_diff(AT0, a[i + 1], a[i]) for i in range(len(w) + 1)]
        assert partial_with_f(AT0, 0, 1, w, f) == partial(AT0, 0, 1, NcPoly.monomial(w))

    def test_free_slots(self):
        # e_z e_0 with (s,t) = (0,1): no repeated adjacent letters, f is forced everywhere
        assert partial_with_f(AT0, 0, 1, word(Z, 0), [1, 1, 0]) == -e(Z)
        # e_0 e_0: the slot between the two zeros is free
        w = word(Z, 0, 0)
        for free in (-3, 0, 7):
            assert partial_with_f(AT0, 0, 1, w, [1, 1, free, 0]) == partial(AT0, 0, 1, NcPoly.monomial(w))

    def test_boundary_equal_letters(self):
        # w = e_1 with s = t = 1: every slot is free
        for f0, f1 in ((0, 0), (2, -1), (5, 5)):
            assert partial_with_f(AT0, 1, 1, word(1), [f0, f1]) == partial(AT0, 1, 1, e(1))

    def test_callable_and_mapping(self):
        w = word(Z, 0)
        assert partial_with_f(AT0, 0, 1, w, {0: 1, 1: 1, 2: 0}) == -e(Z)
        assert partial_with_f(AT0, 0, 1, w, lambda i: (1, 1, 0)[i]) == -e(Z)

    def test_invalid_f(self):
        with pytest.raises(InvalidF):
            partial_with_f(AT0, 0, 1, word(Z, 0), [0, 1, 0])

    def test_random_f(self):
        rng = random.Random(5)
        for w in all_words((ZERO, ONE, Z), 4, min_len=1):
            a = (ZERO,) + w + (ONE,)
            expected = partial(AT0, 0, 1, NcPoly.monomial(w))
            for _ in range(5):
                f = [bracket_diff(AT0, a[i + 1], a[i]) if a[i] != a[i + 1] else rng.randint(-5, 5)
                     for i in range(len(w) + 1)]
                assert partial_with_f(AT0, 0, 1, w, f) == expected


@given(ncpolys(3), st.sampled_from((ZERO, ONE, Z)), st.sampled_from((ZERO, ONE, Z)), st.sampled_from(GRADINGS))
def test_phi_intertwines(a, x, yy, g):
    assert phi(partial(g, x, yy, a)) == partial(g, yy, x, phi(a))


@given(ncpolys(3), ncpolys(3), st.integers(-3, 3))
def test_linear(a, b, n):
    assert partial(AT0, 0, 1, a + n * b) == partial(AT0, 0, 1, a) + n * partial(AT0, 0, 1, b)
    assert partial_zc(1, a + n * b) == partial_zc(1, a) + n * partial_zc(1, b)


@given(words)
def test_zc_matches_valuation_form(w):
    for c in (0, 1):
        assert partial_zc(c, e(*w)) == partial(GradingMap.at(c), 0, 1, e(*w))
