from fractions import Fraction
from itertools import product

import pytest

from spherical_hecke.rootdata import (
    SUPPORTED,
    build_root_system,
    dominance_leq,
    dominant_weights_up_to,
    pairing,
)


def test_gl2_basics():
    rs = build_root_system("GL2")
    assert rs.rho == (Fraction(1, 2), Fraction(-1, 2))
    assert rs.positive_roots == ((1, -1),)
    assert rs.order == 2


def test_exponents():
    assert build_root_system("A1").exponents == (1,)
    b2 = build_root_system("B2")
    assert b2.exponents == (1, 3) and b2.order == 8


def test_unsupported():
    with pytest.raises(ValueError):
        build_root_system("E8")
    with pytest.raises(ValueError):
        build_root_system("GL9")


@pytest.mark.parametrize("label", SUPPORTED)
def test_invariants(label):
    rs = build_root_system(label)
    assert len(rs.positive_roots) == sum(rs.exponents)
    prod_ = 1
    for m in rs.exponents:
        prod_ *= m + 1
    assert rs.order == prod_
    assert tuple(map(sum, zip(*rs.positive_roots))) == tuple(rs.two_rho) if rs.positive_roots else True
    for ac in rs.simple_coroots:
        assert sum(r * a for r, a in zip(rs.rho, ac)) == 1


def test_dominance():
    gl2, gl3 = build_root_system("GL2"), build_root_system("GL3")
    assert dominance_leq(gl2, (1, 1), (2, 0))
    assert not dominance_leq(gl2, (2, 0), (1, 1))
    assert dominance_leq(gl3, (1, 1, 1), (2, 1, 0))
    assert not dominance_leq(gl2, (1, 0), (1, 1)) and not dominance_leq(gl2, (1, 1), (1, 0))


def test_pairing():
    assert pairing(build_root_system("GL2"), (2, 0)) == 1
    for n in (2, 3, 4):
        rs = build_root_system(f"GL{n}")
        assert 2 * pairing(rs, (1,) + (0,) * (n - 1)) == n - 1
    gl3 = build_root_system("GL3")
    assert pairing(gl3, (2, 1, 0)) == 2
    assert pairing(gl3, (2, 1, 0), (1, 0, -1)) == 2


def test_dominant_weights_up_to():
    gl2, gl3 = build_root_system("GL2"), build_root_system("GL3")
    assert dominant_weights_up_to(gl2, (2, 0)) == [(2, 0), (1, 1)]
    assert dominant_weights_up_to(gl3, (2, 1, 0)) == [(2, 1, 0), (1, 1, 1)]
    assert dominant_weights_up_to(gl2, (3, 0)) == [(3, 0), (2, 1)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_n_lambda_rho_identity(n):
    from spherical_hecke.laumon import n_lambda

    rs = build_root_system(f"GL{n}")
    for lam in product(range(-2, 3), repeat=n):
        assert n_lambda(lam) + pairing(rs, lam) == Fraction(sum(lam) * (n - 1), 2)


@pytest.mark.parametrize("label", ["GL3", "B2", "G2", "A3"])
def test_orbits_meet_dominant_cone_once(label):
    rs = build_root_system(label)
    lam = (2, 1, 0) if label == "GL3" else tuple([1] + [0] * (rs.dim - 1))
    orbit = rs.orbit(lam)
    assert sum(1 for w in orbit if rs.is_dominant(w)) == 1
    stab = sum(1 for g, _ in rs.weyl if rs.act(g, lam) == lam)
    assert len(orbit) == rs.order // stab
