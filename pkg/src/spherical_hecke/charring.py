"""Characters, the q-analogue of Kostant's partition function, and
Lusztig-Kato polynomials.

Two independent routes to the polynomials ``m^lambda_mu(u)`` live here:

* the alternating sum over the Weyl group of the q-Kostant partition
  function (:func:`lusztig_q_mult`);
* Kostant's harmonic polynomials, obtained from the graded symmetric algebra
  of the adjoint representation (:func:`harmonic_multiplicities`), which give
  ``m^lambda_0(u)`` through the generalised exponents.

Polynomials in ``u = q^{-1}`` and ``q`` are returned as ``LaurentScalar``
values (``u = v^2``, ``q = v^-2``).
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Any, Sequence

from .exactalg import LaurentScalar, VirtualCharacter, adams
from .rootdata import RootSystem, dominance_leq, dominant_weights_above, dominant_weights_up_to

__all__ = [
    "weyl_character",
    "weyl_dimension",
    "decompose_virtual",
    "multiplicity",
    "q_kostant_partition",
    "lusztig_q_mult",
    "lusztig_kato",
    "adjoint_character",
    "sym_adjoint_graded",
    "harmonic_series",
    "harmonic_multiplicities",
    "generalized_exponents",
    "kostant_check",
    "TruncationError",
    "PCache",
]


# ---------------------------------------------------------------------------
# Weyl characters
# ---------------------------------------------------------------------------


def weyl_character(rs: RootSystem, lam: Sequence[int]) -> VirtualCharacter:
    """Character of ``V(lam)`` by Freudenthal's recursion.

    >>> from spherical_hecke.rootdata import build_root_system
    >>> chi = weyl_character(build_root_system("GL3"), (2, 1, 0))
    >>> sum(c for _, c in chi.items()), chi[(1, 1, 1)]
    (8, 2)
    """
    return _weyl_character(rs, tuple(lam))


@lru_cache(maxsize=None)
def _weyl_character(rs: RootSystem, lam: tuple) -> VirtualCharacter:
    rs.check_weight(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant for {rs.label}")
    dom = dominant_weights_up_to(rs, lam)  # largest first
    mult: dict[tuple, int] = {}
    lr = tuple(a + b for a, b in zip(lam, rs.rho_int))
    top = rs.form(lr, lr)

    def m_of(w):
        return mult.get(rs.to_dominant(w), 0)

    for mu in dom:
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rs.rho_int))
        denom = top - rs.form(mr, mr)
        acc = 0
        for alpha in rs.positive_roots:
            k = 1
            while True:
                w = tuple(a + k * b for a, b in zip(mu, alpha))
                mw = m_of(w)
                if mw == 0:
                    break
                acc += rs.form(w, alpha) * mw
                k += 1
        value = Fraction(2 * acc, denom)
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity at {mu} in V({lam})")
        if value:
            mult[mu] = int(value)
    full = {}
    for mu, c in mult.items():
        for w in rs.orbit(mu):
            full[w] = c
    return VirtualCharacter(rs.dim, full)


def weyl_dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    """``prod_{beta > 0} <lam + rho, beta^vee> / <rho, beta^vee>``."""
    num = Fraction(1)
    for bc in rs.positive_coroots:
        r = sum(x * y for x, y in zip(rs.rho_int, bc))
        num *= Fraction(sum(x * y for x, y in zip(lam, bc)) + r, r)
    assert num.denominator == 1
    return int(num)


def multiplicity(rs: RootSystem, chi: VirtualCharacter, lam: Sequence[int]) -> Any:
    """Multiplicity of ``V(lam)`` in ``chi``, by the Weyl alternating sum
    ``sum_w eps(w) chi[lam + rho - w rho]``.  Independent of Freudenthal."""
    out: Any = 0
    for g, length in rs.weyl:
        wr = rs.act(g, rs.rho_int)
        w = tuple(a + b - c for a, b, c in zip(lam, rs.rho_int, wr))
        c = chi[w]
        if c != 0:
            out = out + c if length % 2 == 0 else out - c
    return out


def decompose_virtual(rs: RootSystem, chi: VirtualCharacter, check: bool = True) -> dict:
    """Write a W-invariant ``chi`` as ``sum m_lam [V(lam)]``.

    Peels off the highest dominant weight repeatedly; coefficients may lie in
    any ring (e.g. ``LaurentScalar``).
    """
    if check and not chi.is_weyl_invariant(rs):
        raise ValueError("character is not Weyl-invariant")
    out: dict[tuple, Any] = {}
    rest = chi
    while not rest.is_zero():
        dom = [w for w in rest if rs.is_dominant(w)]
        lam = max(dom, key=rs.order_key)
        c = rest[lam]
        out[lam] = c
        rest = rest - weyl_character(rs, lam) * c
    return dict(sorted(out.items(), key=lambda kv: rs.order_key(kv[0]), reverse=True))


# ---------------------------------------------------------------------------
# q-Kostant partition function
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _kostant_table(rs: RootSystem, box: tuple) -> dict:
    """``P_u(beta)`` for all ``beta`` with simple coordinates in ``[0, box]``,
    as coefficient lists in ``u``."""
    roots = [rs.simple_coords(b) for b in rs.positive_roots]
    cells = sorted(product(*(range(b + 1) for b in box)), key=sum)
    table: dict[tuple, list] = {c: [] for c in cells}
    table[tuple(0 for _ in box)] = [1]
    for r in roots:
        if any(x > b for x, b in zip(r, box)):
            continue
        # unbounded knapsack: each use of r adds one to the u-degree
        for c in cells:
            prev = tuple(a - b for a, b in zip(c, r))
            if min(prev) < 0:
                continue
            src = table[prev]
            if not src:
                continue
            dst = table[c]
            need = len(src) + 1
            if len(dst) < need:
                dst.extend([0] * (need - len(dst)))
            for j, a in enumerate(src):
                dst[j + 1] += a
    return table


def _kostant_coeffs(rs: RootSystem, beta: Sequence[int], box: tuple | None = None) -> list:
    c = rs.simple_coords(beta)
    if c is None or min(c, default=0) < 0:
        return []
    return list(_kostant_table(rs, box or c)[c])


def q_kostant_partition(rs: RootSystem, beta: Sequence[int]) -> LaurentScalar:
    """Generating polynomial in ``u`` of multisets of positive roots summing to ``beta``.

    >>> from spherical_hecke.rootdata import build_root_system
    >>> rs = build_root_system("A2")
    >>> q_kostant_partition(rs, (1, 1)).u_coeffs()
    [0, 1, 1]
    """
    return LaurentScalar.from_u_coeffs(_kostant_coeffs(rs, beta))


def lusztig_q_mult(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> LaurentScalar:
    """``m^lam_mu(u) = sum_w eps(w) P_u(w(lam + rho) - (mu + rho))``."""
    return LaurentScalar.from_u_coeffs(_lusztig_coeffs(rs, tuple(lam), tuple(mu)))


@lru_cache(maxsize=None)
def _lusztig_coeffs(rs: RootSystem, lam: tuple, mu: tuple) -> tuple:
    rs.check_weight(lam)
    rs.check_weight(mu)
    if not (rs.is_dominant(lam) and rs.is_dominant(mu)):
        raise ValueError("lusztig_q_mult needs dominant weights")
    box = rs.simple_coords(tuple(a - b for a, b in zip(lam, mu)))
    if box is None or min(box, default=0) < 0:
        return ()
    lr = tuple(a + b for a, b in zip(lam, rs.rho_int))
    mr = tuple(a + b for a, b in zip(mu, rs.rho_int))
    acc: list[int] = []
    for g, length in rs.weyl:
        beta = tuple(a - b for a, b in zip(rs.act(g, lr), mr))
        part = _kostant_coeffs(rs, beta, box)
        sign = -1 if length % 2 else 1
        if len(acc) < len(part):
            acc.extend([0] * (len(part) - len(acc)))
        for j, a in enumerate(part):
            acc[j] += sign * a
    while acc and acc[-1] == 0:
        acc.pop()
    return tuple(acc)


def lusztig_kato(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> LaurentScalar:
    """``P_{mu lam}(q) = q^{(lam - mu, rho)} m^lam_mu(q^{-1})``, a polynomial in ``q``.

    >>> from spherical_hecke.rootdata import build_root_system
    >>> lusztig_kato(build_root_system("GL3"), (2, 1, 0), (1, 1, 1)).q_coeffs()
    [1, 1]
    """
    lam, mu = tuple(lam), tuple(mu)
    if not dominance_leq(rs, mu, lam):
        raise ValueError(f"{mu} is not below {lam} in {rs.label}")
    d = rs.two_pairing_rho(lam) - rs.two_pairing_rho(mu)
    return lusztig_q_mult(rs, lam, mu).shift(-d)


# ---------------------------------------------------------------------------
# Kostant's harmonic polynomials
# ---------------------------------------------------------------------------


def adjoint_character(rs: RootSystem) -> VirtualCharacter:
    """Roots plus ``dim`` copies of the zero weight (the Lie algebra of the torus)."""
    m = {b: 1 for b in rs.roots}
    m[(0,) * rs.dim] = rs.dim
    return VirtualCharacter(rs.dim, m)


@lru_cache(maxsize=None)
def _sym_adjoint(rs: RootSystem, J: int) -> tuple:
    adj = adjoint_character(rs)
    psi = [None] + [adams(adj, k) for k in range(1, J + 1)]
    sym = [VirtualCharacter.const(rs.dim, 1)]
    for j in range(1, J + 1):
        acc = VirtualCharacter(rs.dim)
        for k in range(1, j + 1):
            acc = acc + psi[k] * sym[j - k]
        divided = {}
        for w, c in acc.items():
            if c % j:
                raise ArithmeticError(f"Newton recursion not exact at degree {j}")
            divided[w] = c // j
        sym.append(VirtualCharacter(rs.dim, divided))
    return tuple(sym)


def sym_adjoint_graded(rs: RootSystem, J: int) -> list[VirtualCharacter]:
    """Characters of ``Sym^j`` of the adjoint representation, ``j = 0..J``."""
    return list(_sym_adjoint(rs, J))


def _invariant_degree_poly(rs: RootSystem) -> list[int]:
    """Coefficients of ``prod_i (1 - u^{m_i + 1})``."""
    poly = [1]
    for m in rs.exponents:
        d = m + 1
        new = poly + [0] * d
        for i, a in enumerate(poly):
            new[i + d] -= a
        poly = new
    return poly


def harmonic_series(rs: RootSystem, J: int) -> list[VirtualCharacter]:
    """Graded character of the harmonic polynomials through degree ``J``:
    the symmetric algebra series times ``prod_i (1 - u^{m_i+1})``."""
    sym = _sym_adjoint(rs, J)
    poly = _invariant_degree_poly(rs)
    out = []
    for j in range(J + 1):
        acc = VirtualCharacter(rs.dim)
        for i, a in enumerate(poly[: j + 1]):
            if a:
                acc = acc + sym[j - i] * a
        out.append(acc)
    return out


@lru_cache(maxsize=None)
def _harmonic_decomposed(rs: RootSystem, J: int) -> tuple:
    return tuple(decompose_virtual(rs, h, check=False) for h in harmonic_series(rs, J))


def harmonic_multiplicities(rs: RootSystem, lam: Sequence[int], J: int) -> list[int]:
    """``[mult(V(lam), H_j) for j in 0..J]``."""
    lam = tuple(lam)
    return [d.get(lam, 0) for d in _harmonic_decomposed(rs, J)]


class TruncationError(ValueError):
    """Raised when a truncation degree is too small to capture a finite answer."""


def generalized_exponents(rs: RootSystem, lam: Sequence[int], J: int) -> list[int]:
    """Degrees in which ``V(lam)`` occurs in the harmonics, with multiplicity.

    Their number must equal the zero-weight multiplicity of ``V(lam)``;
    otherwise ``J`` was too small and :class:`TruncationError` is raised.
    """
    lam = tuple(lam)
    mults = harmonic_multiplicities(rs, lam, J)
    out = [j for j, m in enumerate(mults) for _ in range(m)]
    expected = weyl_character(rs, lam)[(0,) * rs.dim]
    if len(out) != expected:
        raise TruncationError(
            f"found {len(out)} of {expected} generalized exponents of V({lam}) through degree {J}")
    return out


def kostant_check(rs: RootSystem, max_height: int = 4, J: int = 10) -> dict:
    """Compare ``P_{0 lam}(q)`` with ``q^{(lam,rho)} sum_i q^{-m_i(lam)}``.

    The left side comes from the alternating Kostant sum, the right side from
    the generalised exponents read off the harmonic polynomials.  All
    dominant ``lam >= 0`` with ``ht(lam) <= max_height`` are tested.  For the
    adjoint representation (``lam`` the highest root) the right side reduces
    to ``sum_i q^{(lam,rho) - m_i}`` over the exponents.
    """
    zero = (0,) * rs.dim
    rows = []
    for lam in dominant_weights_above(rs, zero, max_height):
        P = lusztig_kato(rs, lam, zero)
        row: dict[str, Any] = {"lambda": list(lam), "P": P.q_coeffs()}
        try:
            exps = generalized_exponents(rs, lam, J)
        except TruncationError as exc:
            row.update(pass_=False, error=str(exc))
            rows.append(row)
            continue
        other = LaurentScalar()
        for m in exps:
            other = other + LaurentScalar.v(2 * m - rs.two_pairing_rho(lam))
        row["exponents"] = exps
        row["from_exponents"] = other.q_coeffs() if not other.is_zero() else []
        row["pass_"] = other == P
        rows.append(row)
    theta = rs.highest_root
    adjoint = None
    if theta is not None and rs.height(theta) <= max_height:
        want = LaurentScalar()
        for m in rs.exponents:
            if m > 0:  # a central torus contributes exponent 0 but not to V(theta)
                want = want + LaurentScalar.v(2 * m - rs.two_pairing_rho(theta))
        got = lusztig_kato(rs, theta, zero)
        adjoint = {"theta": list(theta), "P": got.q_coeffs(), "expected": want.q_coeffs(), "pass": got == want}
    for row in rows:
        row["pass"] = row.pop("pass_")
    ok = bool(rows) and all(r["pass"] for r in rows) and (adjoint is None or adjoint["pass"])
    return {
        "claim": f"P_(0,lam) = q^(lam,rho) sum_i q^-m_i(lam) for {rs.label}, ht(lam) <= {max_height}, J={J}",
        "pass": ok,
        "rows": rows,
        "adjoint": adjoint,
        "enumerated": len(rows),
    }


# ---------------------------------------------------------------------------
# on-disk cache of P-polynomials
# ---------------------------------------------------------------------------


class PCache:
    """JSON file cache of ``P_{mu lam}`` coefficient lists, one file per entry,
    named by a content hash of the key.  Reads may happen concurrently; writes
    are serialised by a lock and performed by atomic rename."""

    ENV = "SPHERICAL_HECKE_CACHE"

    def __init__(self, directory: str | os.PathLike | None = None):
        directory = directory or os.environ.get(self.ENV)
        self.directory = Path(directory) if directory else None
        self._lock = threading.Lock()

    @staticmethod
    def key(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> str:
        raw = json.dumps([rs.label, list(lam), list(mu)])
        return hashlib.sha256(raw.encode()).hexdigest()[:32]

    def _path(self, rs, lam, mu) -> Path:
        assert self.directory is not None
        return self.directory / f"{self.key(rs, lam, mu)}.json"

    def get(self, rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> list[int]:
        if self.directory is not None:
            path = self._path(rs, lam, mu)
            if path.exists():
                data = json.loads(path.read_text())
                if (data["root_system"], data["lambda"], data["mu"]) == (rs.label, list(lam), list(mu)):
                    return list(data["P_coeffs"])
        coeffs = lusztig_kato(rs, lam, mu).q_coeffs()
        if self.directory is not None:
            self.put(rs, lam, mu, coeffs)
        return coeffs

    def put(self, rs: RootSystem, lam: Sequence[int], mu: Sequence[int], coeffs: list[int]) -> None:
        if self.directory is None:
            return
        payload = {"root_system": rs.label, "lambda": list(lam), "mu": list(mu), "P_coeffs": list(coeffs)}
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            path = self._path(rs, lam, mu)
            tmp = path.with_suffix(f".{os.getpid()}.tmp")
            tmp.write_text(json.dumps(payload, sort_keys=True))
            tmp.replace(path)
