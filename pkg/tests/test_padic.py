from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from spherical_hecke.exactalg import Cyclotomic, QValue
from spherical_hecke.hecke import orbit_count
from spherical_hecke.padic import FpLaurent, SeriesMatrix, cartan_invariant, iwasawa
from spherical_hecke.padic.enumerate import default_bounds, hnf_count, tally
from spherical_hecke.padic.matrix import hermite_form, psi_exponent, psi_value
from spherical_hecke.padic.oracles import (
    convolution_oracle,
    fourier_oracle,
    oracle_H,
    satake_transform_oracle,
    specialize,
)
from spherical_hecke.rootdata import build_root_system

P = 3


def pi(e=1, p=P):
    return FpLaurent.monomial(p, e)


def poly(p, coeffs, val=0):
    return FpLaurent(p, coeffs, val)


def test_fp_arithmetic():
    a = poly(3, [1, 2], -1)
    assert (a - a).is_zero()
    assert a.residue() == 1
    u = poly(3, [1, 1])
    assert (u * u.unit_inverse(5)).truncate(5) == 1


def test_cartan_examples():
    assert cartan_invariant(SeriesMatrix(P, ((pi(), 1), (0, pi())))) == (2, 0)
    assert cartan_invariant(SeriesMatrix(P, ((pi(), 0), (0, pi())))) == (1, 1)
    assert cartan_invariant(SeriesMatrix(P, ((pi(), 1), (0, pi(2))))) == (3, 0)
    assert cartan_invariant(SeriesMatrix.diag(P, (0, 3, 1))) == (3, 1, 0)
    assert cartan_invariant(SeriesMatrix(P, ((pi(-1), 0), (0, pi(-1))))) == (-1, -1)


entries = st.lists(st.integers(0, P - 1), min_size=1, max_size=3).map(lambda c: poly(P, c))


def matrices(n):
    return st.lists(entries, min_size=n * n, max_size=n * n).map(
        lambda xs: SeriesMatrix(P, tuple(tuple(xs[i * n:(i + 1) * n]) for i in range(n))))


def _unimodular(n, xs):
    # upper unipotent with integral entries, times a lower unipotent
    up = [[1 if i == j else (xs[i * n + j] if j > i else 0) for j in range(n)] for i in range(n)]
    lo = [[1 if i == j else (xs[i * n + j] if j < i else 0) for j in range(n)] for i in range(n)]
    U = SeriesMatrix(P, tuple(tuple(FpLaurent(P, [x]) if isinstance(x, int) else x for x in r) for r in up))
    L = SeriesMatrix(P, tuple(tuple(FpLaurent(P, [x]) if isinstance(x, int) else x for x in r) for r in lo))
    return U @ L


@settings(max_examples=40, deadline=None)
@given(matrices(2), st.lists(entries, min_size=4, max_size=4), st.lists(entries, min_size=4, max_size=4))
def test_cartan_bi_invariant(g, xs, ys):
    assume(not g.det().is_zero())
    k1, k2 = _unimodular(2, xs), _unimodular(2, ys)
    assert cartan_invariant(k1 @ g @ k2) == cartan_invariant(g)


@settings(max_examples=30, deadline=None)
@given(matrices(3))
def test_cartan_of_inverse(g):
    d = g.det()
    assume(not d.is_zero())
    lam = cartan_invariant(g)
    dv = d.valuation()
    assert cartan_invariant(g.adjugate()) == tuple(dv - x for x in reversed(lam))


@settings(max_examples=30, deadline=None)
@given(matrices(2), st.lists(entries, min_size=4, max_size=4))
def test_hermite_form_depends_on_coset(g, xs):
    assume(not g.det().is_zero())
    h1, a1, s1 = hermite_form(g)
    h2, a2, s2 = hermite_form(g @ _unimodular(2, xs))
    assert (h1.rows, a1, s1) == (h2.rows, a2, s2)
    assert sum(a1) == g.det().valuation()


def test_iwasawa_examples():
    assert iwasawa(SeriesMatrix(3, ((pi(), 1), (0, pi())))).weight == (1, 1)
    data = iwasawa(SeriesMatrix(3, ((pi(), pi(-1)), (0, 1))))
    assert data.weight == (1, 0) and data.psi == 1
    assert iwasawa(SeriesMatrix.diag(3, (2, 0))).psi == 0


def test_psi_is_a_character():
    u = SeriesMatrix(P, ((1, poly(P, [2], -1)), (0, 1)))
    w = SeriesMatrix(P, ((1, poly(P, [1, 1], -2)), (0, 1)))
    assert psi_exponent(u @ w) == (psi_exponent(u) + psi_exponent(w)) % P
    assert psi_value(u) * psi_value(w) == psi_value(u @ w)
    assert psi_value(SeriesMatrix.identity(P, 2)) == Cyclotomic.zeta(P, 0)


def test_psi_rejects_non_unipotent():
    with pytest.raises(ValueError):
        psi_exponent(SeriesMatrix.diag(P, (1, 0)))


@pytest.mark.parametrize("n,p,mu,count", [(2, 2, (1, 0), 3), (2, 2, (2, 0), 6), (2, 2, (1, 1), 1),
                                          (2, 3, (2, 0), 12), (3, 2, (1, 0, 0), 7), (3, 2, (2, 1, 0), 42)])
def test_hnf_counts(n, p, mu, count):
    assert hnf_count(n, p, mu) == count
    assert orbit_count(build_root_system(f"GL{n}"), mu).at_q(p) == count


def test_default_bounds():
    assert default_bounds((2, 0)) == ((2, 0), 3)
    assert default_bounds((1, 1)) == ((1, 1), 1)
    assert default_bounds((2, 1, 0)) == ((2, 1, 0), 3)


def test_tally_parallel_matches_serial():
    assert tally((2, 1), 2, jobs=2).counts == tally((2, 1), 2, jobs=1).counts


def test_satake_transform_example():
    assert specialize(satake_transform_oracle((1, 0), (1, 0), 2), 2) == QValue(2, 0, 2)


def test_oracle_H_gl2():
    h = oracle_H((2, 0), 2)
    assert h[(2, 0)] == Fraction(1, 2)
    assert h[(1, 1)] == Fraction(1, 2)


def test_fourier_examples():
    assert specialize(fourier_oracle((1, 0), (1, 0), 2), 2) == QValue(2, 0, 1)
    assert specialize(fourier_oracle((2, 0), (1, 1), 2), 2) == 0
    assert specialize(fourier_oracle((1, 1), (1, 1), 3), 3) == 1


def test_convolution_examples():
    # c_(1,0) * c_(1,0) = c_(2,0) + (q + 1) c_(1,1)
    assert convolution_oracle((1, 0), (1, 0), (2, 0), 2) == 1
    assert convolution_oracle((1, 0), (1, 0), (1, 1), 2) == 3
    assert convolution_oracle((1, 0), (1, 0), (1, 1), 3) == 4


@pytest.mark.parametrize("mu", [(1, 0), (2, 1), (1, 1)])
def test_convolution_unit(mu):
    zero = (0,) * len(mu)
    assert convolution_oracle(mu, zero, mu, 2) == 1
    assert convolution_oracle(zero, mu, mu, 2) == 1
