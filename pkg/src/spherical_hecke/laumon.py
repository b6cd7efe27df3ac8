"""Laumon's local function and IC stalks for ``GL_n``.

On ``GL_n(K)^+ / GL_n(O)`` the local factor of Laumon's function is

    L(mu(pi)) = sum_{lam in P^{++}, lam >= mu, |lam| = |mu|}
                q^{(lam,rho) + n(lam)} Tr(gamma, E(lam)) H_lam(mu(pi))

with ``gamma`` in the galois normalisation.  The sign ``(-1)^{2(lam,rho)}``
that relates the IC function ``A_lam`` to ``H_lam`` equals
``(-1)^{|lam|(n-1)}`` and cancels against the sign in ``B_lam``, so only
``H_lam`` appears above.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .charring import lusztig_kato, weyl_character
from .exactalg import LaurentScalar, QValue, VirtualCharacter
from .hecke import _evaluate, n_of, satake_H
from .rootdata import RootSystem, dominance_leq

__all__ = [
    "n_lambda",
    "laumon_local_value",
    "laumon_terms",
    "StalkTable",
    "stalk_table",
    "a_from_h",
    "b_from_h",
    "global_value",
]


def n_lambda(lam: Sequence[int]) -> int:
    """``n(lam) = sum_i (i - 1) lam_i``.

    >>> n_lambda((2, 1, 0)), n_lambda((1, 1))
    (1, 1)
    """
    return n_of(lam)


def _require_gl(rs: RootSystem) -> None:
    if rs.family != "GL":
        raise ValueError(f"Laumon's function is defined for GL_n, not {rs.label}")


def _partitions(total: int, parts: int, cap: int) -> Iterable[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for x in range(min(total, cap), -1, -1):
        for rest in _partitions(total - x, parts - 1, x):
            yield (x,) + rest


def laumon_terms(rs: RootSystem, mu: Sequence[int]) -> list[tuple]:
    """The ``lam`` contributing to ``L(mu(pi))``, largest first."""
    _require_gl(rs)
    mu = rs.check_weight(mu)
    if not rs.is_dominant(mu) or (mu and mu[-1] < 0):
        raise ValueError(f"{mu} is not in P^++")
    return [lam for lam in _partitions(sum(mu), rs.dim, sum(mu)) if dominance_leq(rs, mu, lam)]


def laumon_local_value(rs: RootSystem, mu: Sequence[int]) -> VirtualCharacter:
    """``L(mu(pi))`` as a character of ``t_gal`` with ``LaurentScalar`` coefficients.

    >>> from spherical_hecke.rootdata import build_root_system
    >>> gl2 = build_root_system("GL2")
    >>> sorted(laumon_local_value(gl2, (1, 1)).items())
    [((0, 2), LaurentScalar({0: 1})), ((1, 1), LaurentScalar({-2: 1, 0: 1})), ((2, 0), LaurentScalar({0: 1}))]
    """
    mu = tuple(mu)
    out = VirtualCharacter(rs.dim)
    for lam in laumon_terms(rs, mu):
        h = satake_H(rs, lam).value_at(mu)
        if h.is_zero():
            continue
        out = out + weyl_character(rs, lam) * b_from_h(rs, lam, mu)
    return out


def a_from_h(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> LaurentScalar:
    """Value of the IC function ``A_lam`` at ``mu(pi)``: ``(-1)^{2(lam,rho)} H_lam(mu(pi))``."""
    lam = tuple(lam)
    h = satake_H(rs, lam).value_at(mu)
    return -h if rs.two_pairing_rho(lam) % 2 else h


def b_from_h(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> LaurentScalar:
    """Value of ``B_lam`` at ``mu(pi)``:
    ``(-1)^{|lam|(n-1)} q^{(lam,rho) + n(lam)} A_lam = q^{(lam,rho) + n(lam)} H_lam``."""
    _require_gl(rs)
    lam = tuple(lam)
    if not dominance_leq(rs, tuple(mu), lam):
        raise ValueError(f"{tuple(mu)} is not below {lam}")
    sign = -1 if (sum(lam) * (rs.dim - 1)) % 2 else 1
    q_pow = LaurentScalar.v(-rs.two_pairing_rho(lam) - 2 * n_of(lam))
    return a_from_h(rs, lam, mu) * q_pow * sign


@dataclass(frozen=True)
class StalkTable:
    """Stalk cohomology of ``A_lam``: ``rows[mu] = [(degree, dimension), ...]``."""

    lam: tuple
    rows: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "rows": [{"mu": list(mu), "stalks": [list(e) for e in r]} for mu, r in self.rows.items()],
        }

    def to_csv(self) -> str:
        lines = ["mu,degree,dimension"]
        for mu, r in self.rows.items():
            key = " ".join(map(str, mu))
            lines.extend(f"{key},{d},{k}" for d, k in r)
        return "\n".join(lines) + "\n"


def stalk_table(rs: RootSystem, lam: Sequence[int]) -> StalkTable:
    """Read the stalks off ``H_lam(mu(pi)) = (-1)^{2(lam,rho)} sum_i dim H^i q^{i/2}``.

    With ``P_{mu lam}(q) = sum_k a_k q^k`` the stalk at ``mu`` has dimension
    ``a_k`` in degree ``2k - 2(lam,rho)``.

    >>> from spherical_hecke.rootdata import build_root_system
    >>> stalk_table(build_root_system("GL3"), (2, 1, 0)).rows[(1, 1, 1)]
    [(-4, 1), (-2, 1)]
    """
    lam = rs.check_weight(lam)
    top = rs.two_pairing_rho(lam)
    rows = {}
    for mu in satake_H(rs, lam).support():
        P = lusztig_kato(rs, lam, mu).q_coeffs()
        rows[mu] = [(2 * k - top, a) for k, a in enumerate(P) if a]
    return StalkTable(lam, rows)


def global_value(rs: RootSystem, places: Iterable[tuple[Sequence[int], Sequence[Any]]], q: int) -> QValue:
    """Product of local values ``L_x(mu_x(pi_x))`` over finitely many places of
    degree one (residue field ``F_q``), each with its own numeric galois
    Satake parameter."""
    total = QValue(q, 1)
    for mu, gamma in places:
        total = total * _evaluate(laumon_local_value(rs, mu), [Fraction(x) for x in gamma], q)
    return total
