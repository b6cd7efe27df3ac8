"""Matrices over ``F_p((pi))`` with finitely supported entries.

Cartan invariants come from the valuations of minors (the ``k``-th
determinantal divisor ``d_k`` is the minimal valuation of a ``k x k``
minor).  Iwasawa data come from the column Hermite normal form, computed
exactly in ``(O / pi^P)^n`` where ``pi^(P-1) O^n`` already lies in the
lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from ..exactalg import Cyclotomic
from .fpoly import FpLaurent

__all__ = [
    "SeriesMatrix",
    "cartan_invariant",
    "hermite_form",
    "iwasawa",
    "IwasawaData",
    "psi_value",
    "psi_exponent",
]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


_PERMS: dict[int, list] = {}


def _perms(k: int) -> list:
    if k not in _PERMS:
        _PERMS[k] = [(perm, _perm_sign(perm)) for perm in permutations(range(k))]
    return _PERMS[k]


def _det(rows: Sequence[Sequence[FpLaurent]], p: int) -> FpLaurent:
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = FpLaurent(p)
    for perm, sign in _perms(k):
        term = rows[0][perm[0]]
        for i in range(1, k):
            if term.is_zero():
                break
            term = term * rows[i][perm[i]]
        if not term.is_zero():
            total = total + term if sign > 0 else total - term
    return total


@dataclass(frozen=True)
class SeriesMatrix:
    """An ``n x n`` matrix of ``FpLaurent`` entries."""

    p: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(x if isinstance(x, FpLaurent) else _const(self.p, x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        for r in rows:
            for x in r:
                if x.p != self.p:
                    raise ValueError("entries over different primes")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, p: int, n: int) -> "SeriesMatrix":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, p: int, exps: Sequence[int]) -> "SeriesMatrix":
        """``diag(pi^e_1, ..., pi^e_n)``."""
        n = len(exps)
        return cls(p, tuple(tuple(FpLaurent.monomial(p, exps[i]) if i == j else FpLaurent(p)
                                  for j in range(n)) for i in range(n)))

    @classmethod
    def from_terms(cls, p: int, rows: Iterable[Iterable]) -> "SeriesMatrix":
        """Entries given as ints, ``FpLaurent`` or dicts ``{exponent: coeff}``."""
        out = []
        for r in rows:
            out.append(tuple(FpLaurent.from_dict(p, x) if isinstance(x, dict) else x for x in r))
        return cls(p, tuple(out))

    def __getitem__(self, ij) -> FpLaurent:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        if other.p != self.p or other.n != self.n:
            raise ValueError("incompatible matrices")
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = FpLaurent(self.p)
                for k in range(n):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    b = other.rows[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return SeriesMatrix(self.p, tuple(out))

    def shift(self, k: int) -> "SeriesMatrix":
        """Multiply every entry by ``pi^k``."""
        return SeriesMatrix(self.p, tuple(tuple(x.shift(k) for x in r) for r in self.rows))

    def det(self) -> FpLaurent:
        return _det(self.rows, self.p)

    def min_valuation(self) -> int | None:
        vals = [x.val for r in self.rows for x in r if x.coeffs]
        return min(vals) if vals else None

    def is_integral(self) -> bool:
        v = self.min_valuation()
        return v is None or v >= 0

    def adjugate(self) -> "SeriesMatrix":
        n = self.n
        if n == 1:
            return SeriesMatrix(self.p, ((FpLaurent(self.p, (1,)),),))
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                sub = [[self.rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
                cof = _det(sub, self.p)
                out[j][i] = cof if (i + j) % 2 == 0 else -cof
        return SeriesMatrix(self.p, tuple(tuple(r) for r in out))

    def determinantal_divisors(self) -> list[int]:
        """``[d_1, ..., d_n]``: minimal valuation of the ``k x k`` minors."""
        n, p = self.n, self.p
        out = []
        for k in range(1, n + 1):
            best = None
            for rs in combinations(range(n), k):
                for cs in combinations(range(n), k):
                    if k == 1:
                        m = self.rows[rs[0]][cs[0]]
                    else:
                        m = _det([[self.rows[r][c] for c in cs] for r in rs], p)
                    if m.coeffs and (best is None or m.val < best):
                        best = m.val
            if best is None:
                raise ValueError("singular matrix")
            out.append(best)
        return out

    def __repr__(self):
        return "SeriesMatrix(" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + ")"


def _const(p: int, x: int) -> FpLaurent:
    return FpLaurent(p, (x,))


def cartan_invariant(m: SeriesMatrix) -> tuple:
    """The dominant ``lam`` with ``m`` in ``K lam(pi) K``.

    >>> from .fpoly import FpLaurent
    >>> pi = FpLaurent.monomial(2, 1)
    >>> cartan_invariant(SeriesMatrix(2, ((pi, 1), (0, pi))))
    (2, 0)
    """
    d = m.determinantal_divisors()
    inv = [d[0]] + [d[k] - d[k - 1] for k in range(1, len(d))]
    return tuple(sorted(inv, reverse=True))


# ---------------------------------------------------------------------------
# Hermite normal form and Iwasawa data
# ---------------------------------------------------------------------------


def hermite_form(m: SeriesMatrix) -> tuple[SeriesMatrix, tuple, int]:
    """Column Hermite form of the lattice ``m O^n``.

    Returns ``(h, a, s)`` where ``pi^s m = h k`` with ``k`` in ``GL_n(O)``,
    ``h`` upper triangular with ``h_ii = pi^{a_i}`` and ``deg h_ij < a_i`` for
    ``i < j``.  ``h`` depends only on the coset ``m K``.
    """
    p, n = m.p, m.n
    mv = m.min_valuation()
    if mv is None:
        raise ValueError("singular matrix")
    s = max(0, -mv)
    mi = m.shift(s) if s else m
    dv = mi.det().valuation()
    if dv is None:
        raise ValueError("singular matrix")
    P = dv + 1
    cols = [[mi.rows[r][c].truncate(P) for r in range(n)] for c in range(n)]
    remaining = list(range(n))
    pivots: list = [None] * n
    a = [0] * n
    for r in range(n - 1, -1, -1):
        best, best_v = None, None
        for c in remaining:
            x = cols[c][r]
            if x.coeffs and (best_v is None or x.val < best_v):
                best, best_v = c, x.val
        if best is None:
            raise ValueError("singular matrix")
        remaining.remove(best)
        piv = cols[best]
        unit = piv[r].shift(-best_v)
        uinv = unit.unit_inverse(P)
        for c in remaining:
            x = cols[c][r]
            if not x.coeffs:
                continue
            f = (x.shift(-best_v) * uinv).truncate(P)
            cols[c] = [(y - f * z).truncate(P) for y, z in zip(cols[c], piv)]
        piv = [(z * uinv).truncate(P) for z in piv]
        piv[r] = FpLaurent.monomial(p, best_v)
        pivots[r] = piv
        a[r] = best_v
    # reduce entries above the diagonal modulo the diagonal entry of their row
    for j in range(n):
        for i in range(j - 1, -1, -1):
            f = pivots[j][i].high_part(a[i])
            if f.coeffs:
                pivots[j] = [(y - f * z).truncate(P) for y, z in zip(pivots[j], pivots[i])]
    h = SeriesMatrix(p, tuple(tuple(pivots[c][r] for c in range(n)) for r in range(n)))
    return h, tuple(a), s


@dataclass(frozen=True)
class IwasawaData:
    """``g = u mu(pi) k`` with ``Psi(u) = zeta_p^psi``."""

    weight: tuple
    psi: int
    p: int

    def psi_value(self, sign: int = 1) -> Cyclotomic:
        return Cyclotomic.zeta(self.p, sign * self.psi)


def iwasawa(m: SeriesMatrix) -> IwasawaData:
    """Torus part and ``Psi`` of the unipotent part of ``m``.

    >>> from .fpoly import FpLaurent
    >>> pi = FpLaurent.monomial(3, 1)
    >>> iwasawa(SeriesMatrix(3, ((pi, 1), (0, pi))))
    IwasawaData(weight=(1, 1), psi=1, p=3)
    """
    h, a, s = hermite_form(m)
    psi = 0
    for i in range(m.n - 1):
        psi += h.rows[i][i + 1].coeff(a[i + 1] - 1)
    return IwasawaData(tuple(x - s for x in a), psi % m.p, m.p)


def psi_exponent(u: SeriesMatrix) -> int:
    """``sum_i Res u_{i,i+1}`` modulo ``p`` for a unipotent upper-triangular ``u``."""
    n = u.n
    for i in range(n):
        for j in range(n):
            x = u.rows[i][j]
            if i == j and x != 1:
                raise ValueError("not unipotent")
            if i > j and not x.is_zero():
                raise ValueError("not upper triangular")
    return sum(u.rows[i][i + 1].residue() for i in range(n - 1)) % u.p


def psi_value(u: SeriesMatrix) -> Cyclotomic:
    """``Psi(u) = zeta_p^{sum_i Res u_{i,i+1}}``."""
    return Cyclotomic.zeta(u.p, psi_exponent(u))
