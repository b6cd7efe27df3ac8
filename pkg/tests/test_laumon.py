import pytest

from spherical_hecke.charring import weyl_character
from spherical_hecke.exactalg import LaurentScalar, QValue, VirtualCharacter
from spherical_hecke.laumon import (
    a_from_h,
    b_from_h,
    global_value,
    laumon_local_value,
    laumon_terms,
    n_lambda,
    stalk_table,
)
from spherical_hecke.rootdata import build_root_system

GL2, GL3 = build_root_system("GL2"), build_root_system("GL3")
q = LaurentScalar.v(-2)


def test_n_lambda():
    assert n_lambda((2, 1, 0)) == 1
    assert n_lambda((1, 1)) == 1
    assert n_lambda((0, 0, 3)) == 6


def test_terms():
    assert laumon_terms(GL2, (1, 1)) == [(2, 0), (1, 1)]
    assert laumon_terms(GL3, (2, 1, 0)) == [(3, 0, 0), (2, 1, 0)]
    with pytest.raises(ValueError):
        laumon_terms(GL2, (1, -1))
    with pytest.raises(ValueError):
        laumon_terms(build_root_system("A1"), (1,))


def test_values_gl2():
    assert laumon_local_value(GL2, (0, 0)) == VirtualCharacter(2, {(0, 0): 1})
    assert laumon_local_value(GL2, (1, 0)) == weyl_character(GL2, (1, 0))
    expected = weyl_character(GL2, (2, 0)) + weyl_character(GL2, (1, 1)) * q
    assert laumon_local_value(GL2, (1, 1)) == expected


def test_a_and_b():
    assert a_from_h(GL2, (1, 0), (1, 0)) == -LaurentScalar.v(1)
    assert b_from_h(GL2, (1, 0), (1, 0)) == 1
    assert b_from_h(GL2, (2, 0), (1, 1)) == 1
    with pytest.raises(ValueError):
        b_from_h(GL2, (1, 1), (2, 0))


def test_stalk_tables():
    t = stalk_table(GL3, (2, 1, 0))
    assert t.rows == {(2, 1, 0): [(-4, 1)], (1, 1, 1): [(-4, 1), (-2, 1)]}
    assert t.to_json()["lambda"] == [2, 1, 0]
    assert t.to_csv().splitlines()[0] == "mu,degree,dimension"


@pytest.mark.parametrize("rs,lam", [(GL2, (3, 0)), (GL3, (2, 2, 0)), (build_root_system("B2"), (0, 4))])
def test_stalks_sit_in_allowed_degrees(rs, lam):
    top = rs.two_pairing_rho(lam)
    t = stalk_table(rs, lam)
    assert t.rows[tuple(lam)] == [(-top, 1)]
    for mu, rows in t.rows.items():
        # odd vanishing and the support condition deg < -dim orbit for mu != lam
        assert all((d + top) % 2 == 0 for d, _ in rows)
        if mu != tuple(lam):
            assert all(d < -rs.two_pairing_rho(mu) for d, _ in rows)


def test_global_value():
    one = global_value(GL2, [((0, 0), (1, 1)), ((1, 0), (2, 3))], 4)
    assert one == QValue(4, 5)
    assert global_value(GL2, [], 4) == 1
