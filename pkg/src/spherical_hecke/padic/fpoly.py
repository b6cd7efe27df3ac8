"""Finite Laurent polynomials in the uniformiser ``pi`` over ``F_p``."""
from __future__ import annotations

from typing import Iterable

__all__ = ["FpLaurent"]


class FpLaurent:
    """``sum_k coeffs[k] pi^(val + k)`` with coefficients in ``F_p``.

    The stored form is normalised: ``coeffs`` has nonzero first and last
    entries, and the zero polynomial has ``coeffs == ()``.

    >>> a = FpLaurent(2, [1, 1], -1)      # pi^-1 + 1
    >>> (a * a)                           # char 2: pi^-2 + 1
    FpLaurent(2, [1, 0, 1], -2)
    """

    __slots__ = ("p", "val", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = (), val: int = 0):
        c = [x % p for x in coeffs]
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        hi = len(c)
        while hi > lo and c[hi - 1] == 0:
            hi -= 1
        self.p = p
        if lo == hi:
            self.val = 0
            self.coeffs = ()
        else:
            self.val = val + lo
            self.coeffs = tuple(c[lo:hi])

    @classmethod
    def monomial(cls, p: int, e: int, c: int = 1) -> "FpLaurent":
        return cls(p, (c,), e)

    @classmethod
    def zero(cls, p: int) -> "FpLaurent":
        return cls(p)

    @classmethod
    def from_dict(cls, p: int, terms: dict) -> "FpLaurent":
        if not terms:
            return cls(p)
        lo, hi = min(terms), max(terms)
        return cls(p, [terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int | None:
        """``None`` for the zero polynomial."""
        return self.val if self.coeffs else None

    def degree(self) -> int | None:
        return self.val + len(self.coeffs) - 1 if self.coeffs else None

    def coeff(self, e: int) -> int:
        k = e - self.val
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def residue(self) -> int:
        """Coefficient of ``pi^-1``."""
        return self.coeff(-1)

    def terms(self) -> dict:
        return {self.val + k: c for k, c in enumerate(self.coeffs) if c}

    def shift(self, k: int) -> "FpLaurent":
        if not self.coeffs:
            return self
        return FpLaurent(self.p, self.coeffs, self.val + k)

    def truncate(self, top: int) -> "FpLaurent":
        """Drop all terms of degree ``>= top``."""
        if not self.coeffs or self.degree() < top:
            return self
        return FpLaurent(self.p, self.coeffs[: max(0, top - self.val)], self.val)

    def high_part(self, a: int) -> "FpLaurent":
        """Terms of degree ``>= a``, divided by ``pi^a``."""
        if not self.coeffs or self.degree() < a:
            return FpLaurent(self.p)
        start = max(0, a - self.val)
        return FpLaurent(self.p, self.coeffs[start:], self.val + start - a)

    def unit_inverse(self, precision: int) -> "FpLaurent":
        """Inverse modulo ``pi^precision`` of a unit of ``F_p[[pi]]``."""
        if self.valuation() != 0:
            raise ValueError("not a unit")
        p = self.p
        c0inv = pow(self.coeffs[0], p - 2, p) if p > 2 else 1
        out = [0] * precision
        for k in range(precision):
            acc = 1 if k == 0 else 0
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc -= self.coeffs[j] * out[k - j]
            out[k] = (acc * c0inv) % p
        return FpLaurent(p, out, 0)

    def _check(self, other: "FpLaurent") -> None:
        if other.p != self.p:
            raise ValueError(f"mismatched primes {self.p} and {other.p}")

    def __add__(self, other: "FpLaurent") -> "FpLaurent":
        if isinstance(other, int):
            other = FpLaurent(self.p, (other,))
        self._check(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        c = [0] * (hi - lo)
        for k, x in enumerate(self.coeffs):
            c[self.val - lo + k] += x
        for k, x in enumerate(other.coeffs):
            c[other.val - lo + k] += x
        return FpLaurent(self.p, c, lo)

    __radd__ = __add__

    def __neg__(self) -> "FpLaurent":
        return FpLaurent(self.p, [-x for x in self.coeffs], self.val)

    def __sub__(self, other: "FpLaurent") -> "FpLaurent":
        if isinstance(other, int):
            other = FpLaurent(self.p, (other,))
        return self + (-other)

    def __mul__(self, other) -> "FpLaurent":
        if isinstance(other, int):
            return FpLaurent(self.p, [other * x for x in self.coeffs], self.val)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return FpLaurent(self.p)
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            x = a[0]
            return FpLaurent(self.p, [x * y for y in b], self.val + other.val)
        if len(b) == 1:
            y = b[0]
            return FpLaurent(self.p, [x * y for x in a], self.val + other.val)
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return FpLaurent(self.p, c, self.val + other.val)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FpLaurent(self.p, (other,))
        if not isinstance(other, FpLaurent):
            return NotImplemented
        return self.p == other.p and self.val == other.val and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.val, self.coeffs))

    def __repr__(self):
        return f"FpLaurent({self.p}, {list(self.coeffs)}, {self.val})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms().items():
            mono = "1" if e == 0 else ("pi" if e == 1 else f"pi^{e}")
            parts.append(mono if c == 1 else (str(c) if e == 0 else f"{c}*{mono}"))
        return " + ".join(parts)
