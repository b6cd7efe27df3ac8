import json
from fractions import Fraction

import pytest

from spherical_hecke.charring import weyl_character
from spherical_hecke.exactalg import LaurentScalar, QValue, VirtualCharacter
from spherical_hecke.hecke import (
    POLE,
    HeckeElement,
    L_gamma_series,
    SatakeParameter,
    a_factor,
    a_inverse_series,
    c_basis,
    c_in_H_basis,
    character,
    chi_eval,
    fourier_symbolic,
    from_H_basis,
    local_Lfactor,
    orbit_count,
    satake_H,
    spherical_value,
    to_H_basis,
    whittaker_model_criterion,
    whittaker_value,
)
from spherical_hecke.rootdata import build_root_system

A1, GL2, GL3, B2 = (build_root_system(x) for x in ("A1", "GL2", "GL3", "B2"))


def test_satake_gl2_minuscule():
    h = satake_H(GL2, (1, 0))
    assert h.coeffs == {(1, 0): LaurentScalar.v(1)}
    assert h.value_at((0, 1)) == LaurentScalar.v(1)


def test_satake_gl2_square():
    h = satake_H(GL2, (2, 0))
    assert h.value_at((2, 0)) == LaurentScalar.v(2)
    assert h.value_at((1, 1)) == LaurentScalar.v(2)


def test_satake_rejects_non_dominant():
    with pytest.raises(ValueError):
        satake_H(GL2, (0, 1))


def test_character_of_satake_basis():
    for rs, lam in [(GL2, (2, 0)), (GL3, (2, 1, 0)), (B2, (0, 2))]:
        assert character(satake_H(rs, lam)) == weyl_character(rs, lam)


def test_multiply_pieri():
    h = satake_H(GL2, (1, 0))
    assert h * h == satake_H(GL2, (2, 0)) + satake_H(GL2, (1, 1))
    one = c_basis(GL2, (0, 0))
    assert one * h == h


def test_multiplication_is_associative_and_commutative():
    a, b, c = satake_H(GL3, (1, 0, 0)), c_basis(GL3, (1, 1, 0)), c_basis(GL3, (1, 0, 0))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


def test_c_in_H_example():
    assert c_in_H_basis(A1, (2,)) == {(2,): LaurentScalar.v(-2), (0,): LaurentScalar.const(-1)}
    assert from_H_basis(A1, c_in_H_basis(A1, (2,))) == c_basis(A1, (2,))


def test_chi_numeric_and_galois():
    g = SatakeParameter(GL2, (1, 1), "unitary", 2)
    assert chi_eval(satake_H(GL2, (1, 0)), g) == 2
    gal = g.to_galois()
    assert gal.values == (QValue(2, 0, 2), QValue(2, 0, 2))
    assert chi_eval(satake_H(GL2, (1, 0)), gal) == 2


def test_galois_on_simple_type_rejected():
    with pytest.raises(ValueError):
        SatakeParameter(B2, None, "galois")


def test_orbit_counts():
    assert orbit_count(GL2, (1, 0)).q_coeffs() == [1, 1]
    assert orbit_count(GL2, (2, 0)).at_q(2) == 6
    assert orbit_count(GL3, (1, 0, 0)).at_q(2) == 7


def test_spherical_value_at_identity():
    s = spherical_value(GL2, (0, 0)).series(3)
    assert s.coeffs[0] == VirtualCharacter(2, {(0, 0): 1})
    assert all(c == 0 for c in s.coeffs[1:])


def test_a_factor():
    g = SatakeParameter(GL2, (1, 1), "unitary", 2)
    assert a_factor(GL2, g) == Fraction(1, 6)
    assert whittaker_model_criterion(GL2, g)
    assert not whittaker_model_criterion(GL2, SatakeParameter(GL2, (2, 1), "unitary", 2))


def test_a_inverse_series_a1():
    s = a_inverse_series(A1, 2)
    assert s.coeffs[0] == 1
    assert s.coeffs[1] == VirtualCharacter(1, {(2,): 1, (0,): 1, (-2,): 1})


def test_whittaker_values():
    assert whittaker_value(GL2, (0, 1)).is_zero()
    assert whittaker_value(GL2, (1, 0)) == weyl_character(GL2, (1, 0)) * LaurentScalar.v(1)
    assert whittaker_value(GL2, (1, 1), "galois") == weyl_character(GL2, (1, 1)) * LaurentScalar.v(-2)
    with pytest.raises(ValueError):
        whittaker_value(B2, (1, 0), "galois")


def test_fourier_symbolic():
    w = fourier_symbolic(satake_H(GL2, (2, 0)))
    assert w.coeffs == {(2, 0): 1}
    assert w.value_at((2, 0)) == LaurentScalar.v(2)
    assert fourier_symbolic(c_basis(GL2, (2, 0))).coeffs == to_H_basis(c_basis(GL2, (2, 0)))


def test_local_lfactor():
    std = VirtualCharacter(2, {(1, 0): 1, (0, 1): 1})
    assert local_Lfactor((1, 1), VirtualCharacter(2), Fraction(1, 2)) == 1
    assert local_Lfactor((1, 1), std, Fraction(1, 2)) == 4
    assert local_Lfactor((2, 1), std, Fraction(1, 2)) is POLE


def test_L_gamma_series_leading_term():
    s = L_gamma_series(GL2, (0, 0), 2)
    assert s.coeffs[0] == VirtualCharacter(2, {(0, 0): 1})
    assert s.coeffs[1] == VirtualCharacter(2, {(1, -1): 1, (0, 0): 1, (-1, 1): 1})


@pytest.mark.parametrize("basis", ["c", "H"])
def test_json_round_trip(basis):
    h = satake_H(GL3, (2, 1, 0)) + c_basis(GL3, (1, 1, 1)).scale(Fraction(1, 3))
    data = json.loads(json.dumps(h.to_json(basis)))
    assert HeckeElement.from_json(GL3, data) == h
