from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherical_hecke.exactalg import (
    Cyclotomic,
    LaurentScalar,
    QValue,
    TruncatedSeries,
    VirtualCharacter,
    adams,
    char_product,
)

ints = st.integers(-5, 5)
laurent = st.dictionaries(st.integers(-4, 4), ints, max_size=4).map(LaurentScalar)
cyclo3 = st.lists(ints, min_size=2, max_size=2).map(lambda c: Cyclotomic(3, c))
weights = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
chars = st.dictionaries(weights, ints, max_size=4).map(lambda m: VirtualCharacter(2, m))


def test_difference_of_squares():
    u = LaurentScalar.v(2)
    assert (1 + u) * (1 - u) == 1 - LaurentScalar.v(4)


def test_zeta2_degenerates_to_sign():
    z = Cyclotomic.zeta(2)
    assert z + z == -2
    assert Cyclotomic.zeta(2, 2) == 1


def test_cyclotomic_relation():
    z = Cyclotomic.zeta(3)
    assert 1 + z + z * z == 0


def test_canonical_form_idempotent():
    c = Cyclotomic(5, [1, 2, 3, 4, 5])
    assert Cyclotomic(5, c.coeffs) == c
    assert Cyclotomic(5, list(c.coeffs) + [0]) == c


def test_mismatched_primes():
    with pytest.raises(ValueError):
        Cyclotomic.zeta(2) + Cyclotomic.zeta(3)


def test_char_product_examples():
    std = VirtualCharacter(2, {(1, 0): 1, (0, 1): 1})
    sq = char_product(std, std)
    assert dict(sq.items()) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert (std * VirtualCharacter(2)).is_zero()
    assert dict(adams(std, 2).items()) == {(2, 0): 1, (0, 2): 1}


def test_laurent_negative_power_and_at_q():
    v = LaurentScalar.v(1)
    assert v ** -2 == LaurentScalar.v(-2)
    assert LaurentScalar.v(-2).at_q(4) == 4
    assert LaurentScalar.v(1).at_q(4) == QValue(4, 0, 1)


def test_qvalue_exact_inverse():
    x = QValue(2, 1, 1)
    assert x * x.inverse() == 1


def test_series_inverse_and_truncation():
    s = TruncatedSeries([1, 1], 3)
    assert s.inverse() == TruncatedSeries([1, -1, 1, -1], 3)
    prod = TruncatedSeries([1, 1], 3) * TruncatedSeries([1, 2, 3], 2)
    assert prod.order == 2


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@settings(max_examples=60, deadline=None)
@given(cyclo3, cyclo3, cyclo3)
def test_cyclotomic_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(chars, chars, chars)
def test_character_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(st.lists(ints, min_size=1, max_size=5), st.lists(ints, min_size=1, max_size=5),
       st.integers(1, 4), st.integers(1, 4))
def test_series_product_truncates_to_min(a, b, n, m):
    x, y = TruncatedSeries(a, n), TruncatedSeries(b, m)
    full = [0] * (len(a) + len(b))
    for i, s in enumerate(a):
        for j, t in enumerate(b):
            full[i + j] += s * t
    k = min(n, m)
    assert (x * y) == TruncatedSeries((full + [0] * k)[: k + 1], k)


def test_rational_coefficients_allowed():
    assert (LaurentScalar.const(Fraction(1, 2)) * 2) == 1


def test_qvalue_square_q_is_reduced():
    assert QValue(4, 0, 1) == Fraction(1, 2)
    assert LaurentScalar.v(1).at_q(4) == Fraction(1, 2)
    assert QValue(4, 1, 2).b == 0
