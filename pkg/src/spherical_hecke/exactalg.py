"""Exact coefficient rings.

Four immutable value types are used throughout the package:

``LaurentScalar``
    Laurent polynomials in a formal variable ``v`` with ``v**2 = q**-1``.
    Every power of ``q`` (including half-integral ones) is a power of ``v``.
``Cyclotomic``
    Elements of ``Z[zeta_p]`` in the power basis ``1, zeta, ..., zeta**(p-2)``.
``VirtualCharacter``
    Finite maps ``weight -> coefficient``, i.e. elements of the group ring of
    the weight lattice.  Coefficients may themselves be ring elements.
``TruncatedSeries``
    Power series in ``u = q**-1`` known through a fixed degree.

``QValue`` is the specialisation of a ``LaurentScalar`` at a numeric ``q``:
``a + b * q**(-1/2)`` with ``a, b`` exact.

Mixed arithmetic follows a fixed nesting.  A value of a lower level acts as a
scalar on a value of a higher level:

    rationals < Cyclotomic < LaurentScalar, QValue < VirtualCharacter
              < TruncatedSeries
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping

__all__ = [
    "LaurentScalar",
    "Cyclotomic",
    "QValue",
    "VirtualCharacter",
    "TruncatedSeries",
    "char_product",
    "adams",
    "normalize_number",
]


def normalize_number(x: Any) -> Any:
    """Turn integral Fractions into ints so that dict keys and printing stay tidy."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def _level(x: Any) -> int:
    if isinstance(x, Rational):
        return 0
    lvl = getattr(type(x), "_level", None)
    if lvl is None:
        raise TypeError(f"unsupported coefficient type {type(x).__name__}")
    return lvl


def _is_zero(x: Any) -> bool:
    return x == 0


# ---------------------------------------------------------------------------
# Z[zeta_p]
# ---------------------------------------------------------------------------


class Cyclotomic:
    """An element of ``Z[zeta_p]`` (coefficients may also be rationals).

    Stored as the coefficient vector on ``1, zeta, ..., zeta**(p-2)``; this is
    the unique reduced form modulo ``1 + zeta + ... + zeta**(p-1) = 0``.

    >>> z = Cyclotomic.zeta(3)
    >>> 1 + z + z * z
    Cyclotomic(3, (0, 0))
    >>> Cyclotomic.zeta(2) + Cyclotomic.zeta(2)
    Cyclotomic(2, (-2,))
    """

    __slots__ = ("p", "coeffs")
    _level = 1

    def __init__(self, p: int, coeffs: Iterable[Any]):
        c = [normalize_number(x) for x in coeffs]
        if len(c) == p:
            top = c.pop()
            c = [normalize_number(x - top) for x in c]
        if len(c) != p - 1:
            raise ValueError(f"Cyclotomic({p}) needs {p - 1} or {p} coefficients, got {len(c)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    @classmethod
    def from_counts(cls, p: int, counts: Iterable[Any]) -> "Cyclotomic":
        """``sum_k counts[k] * zeta**k`` for ``k = 0 .. p-1``."""
        return cls(p, counts)

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "Cyclotomic":
        counts = [0] * p
        counts[k % p] = 1
        return cls(p, counts)

    @classmethod
    def const(cls, p: int, a: Any) -> "Cyclotomic":
        return cls(p, [a] + [0] * (p - 2))

    def is_rational(self) -> bool:
        return all(_is_zero(x) for x in self.coeffs[1:])

    def to_rational(self) -> Any:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> "Cyclotomic":
        """Image under ``zeta -> zeta**-1``."""
        counts = [0] * self.p
        for k, c in enumerate(self.coeffs):
            counts[(-k) % self.p] += c
        return Cyclotomic(self.p, counts)

    def _coerce(self, other: Any) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, Rational):
            return Cyclotomic.const(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return Cyclotomic(self.p, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        counts = [0] * p
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                if not _is_zero(b):
                    counts[(i + j) % p] += a * b
        return Cyclotomic(p, counts)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return any(not _is_zero(x) for x in self.coeffs)

    def __repr__(self):
        return f"Cyclotomic({self.p}, {self.coeffs})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Laurent polynomials in v
# ---------------------------------------------------------------------------


class LaurentScalar:
    """A Laurent polynomial ``sum_e c_e v**e`` with ``v**2 = 1/q``.

    Coefficients are ints, Fractions or ``Cyclotomic`` values.

    >>> v = LaurentScalar.v()
    >>> (1 + v**2) * (1 - v**2)
    LaurentScalar({0: 1, 4: -1})
    >>> LaurentScalar.q_power(Fraction(1, 2))
    LaurentScalar({-1: 1})
    """

    __slots__ = ("_c",)
    _level = 2

    def __init__(self, coeffs: Mapping[int, Any] | None = None):
        c = {}
        if coeffs:
            for e, x in coeffs.items():
                x = normalize_number(x)
                if not _is_zero(x):
                    c[int(e)] = x
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentScalar is immutable")

    # constructors -----------------------------------------------------------
    @classmethod
    def v(cls, e: int = 1) -> "LaurentScalar":
        return cls({e: 1})

    @classmethod
    def const(cls, c: Any) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def q_power(cls, k: Any) -> "LaurentScalar":
        """``q**k`` for integral or half-integral ``k``."""
        e = -2 * Fraction(k)
        if e.denominator != 1:
            raise ValueError(f"q^{k} is not a power of v")
        return cls({int(e): 1})

    @classmethod
    def from_u_coeffs(cls, coeffs: Iterable[Any]) -> "LaurentScalar":
        """``sum_j coeffs[j] u**j`` with ``u = q**-1 = v**2``."""
        return cls({2 * j: c for j, c in enumerate(coeffs)})

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable[Any]) -> "LaurentScalar":
        """``sum_j coeffs[j] q**j``."""
        return cls({-2 * j: c for j, c in enumerate(coeffs)})

    # access -------------------------------------------------------------------
    def items(self) -> list[tuple[int, Any]]:
        return sorted(self._c.items())

    def coeff(self, e: int) -> Any:
        return self._c.get(e, 0)

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_exponent(self) -> int:
        return min(self._c)

    def max_exponent(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def u_coeffs(self) -> list[Any]:
        """Coefficients in ``u = v**2``; requires even, nonnegative exponents."""
        if not self._c:
            return []
        if any(e < 0 or e % 2 for e in self._c):
            raise ValueError(f"{self!r} is not a polynomial in u")
        out = [0] * (max(self._c) // 2 + 1)
        for e, c in self._c.items():
            out[e // 2] = c
        return out

    def q_coeffs(self) -> list[Any]:
        """Coefficients in ``q = v**-2``; requires even, nonpositive exponents."""
        if not self._c:
            return []
        if any(e > 0 or e % 2 for e in self._c):
            raise ValueError(f"{self!r} is not a polynomial in q")
        out = [0] * (-min(self._c) // 2 + 1)
        for e, c in self._c.items():
            out[-e // 2] = c
        return out

    def map_coeffs(self, f: Callable[[Any], Any]) -> "LaurentScalar":
        return LaurentScalar({e: f(c) for e, c in self._c.items()})

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by ``v**k``."""
        return LaurentScalar({e + k: c for e, c in self._c.items()})

    def substitute_v(self, k: int) -> "LaurentScalar":
        """Substitute ``v -> v**k``."""
        return LaurentScalar({e * k: c for e, c in self._c.items()})

    def at_q(self, q: int) -> "QValue":
        """Specialise ``v**2 = 1/q``."""
        a: Any = 0
        b: Any = 0
        for e, c in self._c.items():
            half, odd = divmod(e, 2)
            factor = Fraction(1, q**half) if half >= 0 else q ** (-half)
            if odd:
                b = b + c * factor
            else:
                a = a + c * factor
        return QValue(q, a, b)

    def at_u(self, u: Any) -> Any:
        """Evaluate a polynomial in ``u`` (even exponents only)."""
        total: Any = 0
        for e, c in self._c.items():
            if e % 2:
                raise ValueError("odd v-power cannot be evaluated at u")
            total = total + c * Fraction(u) ** (e // 2)
        return normalize_number(total)

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other: Any) -> "LaurentScalar | None":
        if isinstance(other, LaurentScalar):
            return other
        try:
            lvl = _level(other)
        except TypeError:
            return None
        if lvl < self._level:
            return LaurentScalar.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, x in o._c.items():
            c[e] = c[e] + x if e in c else x
        return LaurentScalar(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentScalar):
            c: dict[int, Any] = {}
            for e1, x1 in self._c.items():
                for e2, x2 in other._c.items():
                    e = e1 + e2
                    c[e] = c[e] + x1 * x2 if e in c else x1 * x2
            return LaurentScalar(c)
        try:
            lvl = _level(other)
        except TypeError:
            return NotImplemented
        if lvl < self._level:
            return LaurentScalar({e: x * other for e, x in self._c.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            (e, c), = self._c.items()
            if not isinstance(c, Rational):
                raise ValueError("coefficient not invertible")
            return LaurentScalar({e * k: Fraction(1, 1) / Fraction(c) ** (-k)})
        result = LaurentScalar.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if not self._c:
            return hash(0)
        if list(self._c) == [0]:
            return hash(self._c[0])
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentScalar({dict(sorted(self._c.items()))})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items()):
            cs = str(c)
            if isinstance(c, Cyclotomic):
                cs = f"({c})"
            if e == 0:
                parts.append(cs)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                parts.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# numeric specialisation
# ---------------------------------------------------------------------------


class QValue:
    """``a + b * s`` where ``s = q**(-1/2)`` for a fixed integer ``q``.

    ``a`` and ``b`` are rationals or ``Cyclotomic`` values (with rational
    coefficients).  When ``q`` is not a perfect square the representation is
    unique, so equality is exact; for square ``q`` the ``s`` part is folded
    into ``a``.

    >>> QValue(4, 0, 1) == QValue(4, Fraction(1, 2))
    True
    """

    __slots__ = ("q", "a", "b")
    _level = 2

    def __init__(self, q: int, a: Any = 0, b: Any = 0):
        r = isqrt(q) if q > 0 else 0
        if r * r == q and b != 0:
            a, b = a + b * Fraction(1, r), 0
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", normalize_number(a))
        object.__setattr__(self, "b", normalize_number(b))

    def __setattr__(self, name, value):
        raise AttributeError("QValue is immutable")

    def _coerce(self, other: Any) -> "QValue | None":
        if isinstance(other, QValue):
            if other.q != self.q:
                raise ValueError(f"mismatched q: {self.q} and {other.q}")
            return other
        if isinstance(other, (Rational, Cyclotomic)):
            return QValue(self.q, other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QValue(self.q, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QValue(self.q, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.a * o.a + self.b * o.b * Fraction(1, self.q)
        b = self.a * o.b + self.b * o.a
        return QValue(self.q, a, b)

    __rmul__ = __mul__

    def inverse(self) -> "QValue":
        """Exact inverse; only for rational ``a`` and ``b``."""
        if not (isinstance(self.a, Rational) and isinstance(self.b, Rational)):
            raise ValueError("inverse only implemented for rational QValue")
        norm = Fraction(self.a) ** 2 - Fraction(self.b) ** 2 / self.q
        if norm == 0:
            raise ZeroDivisionError("QValue not invertible")
        return QValue(self.q, Fraction(self.a) / norm, -Fraction(self.b) / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QValue(self.q, 1, 0)
        for _ in range(k):
            result = result * self
        return result

    def is_rational(self) -> bool:
        def rat(x):
            return isinstance(x, Rational) or (isinstance(x, Cyclotomic) and x.is_rational())

        return rat(self.a) and rat(self.b)

    def to_float(self) -> float:
        def f(x):
            if isinstance(x, Cyclotomic):
                x = x.to_rational()
            return float(x)

        return f(self.a) + f(self.b) * self.q ** -0.5

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.q, self.a, self.b))

    def __bool__(self):
        return not (self.a == 0 and self.b == 0)

    def __repr__(self):
        return f"QValue(q={self.q}, {self.a!r}, {self.b!r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + ({self.b})*q^(-1/2) [q={self.q}]"


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

Weight = tuple


class VirtualCharacter:
    """An element ``sum_w m_w e^w`` of the group ring of a weight lattice.

    ``dim`` is the length of the weight vectors.  Coefficients are ints by
    default but any lower-level ring element is accepted.

    >>> std = VirtualCharacter(2, {(1, 0): 1, (0, 1): 1})
    >>> sorted((std * std).items())
    [((0, 2), 1), ((1, 1), 2), ((2, 0), 1)]
    """

    __slots__ = ("dim", "_m")
    _level = 3

    def __init__(self, dim: int, mult: Mapping[tuple, Any] | None = None):
        m = {}
        if mult:
            for w, c in mult.items():
                w = tuple(int(x) for x in w)
                if len(w) != dim:
                    raise ValueError(f"weight {w} has wrong rank (expected {dim})")
                c = normalize_number(c)
                if not _is_zero(c):
                    m[w] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_m", m)

    def __setattr__(self, name, value):
        raise AttributeError("VirtualCharacter is immutable")

    @classmethod
    def monomial(cls, w: tuple, c: Any = 1) -> "VirtualCharacter":
        return cls(len(w), {tuple(w): c})

    @classmethod
    def const(cls, dim: int, c: Any = 1) -> "VirtualCharacter":
        return cls(dim, {(0,) * dim: c})

    def items(self) -> list[tuple[tuple, Any]]:
        return list(self._m.items())

    def __getitem__(self, w: tuple) -> Any:
        return self._m.get(tuple(w), 0)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._m)

    def __len__(self) -> int:
        return len(self._m)

    def support(self) -> list[tuple]:
        return sorted(self._m)

    def is_zero(self) -> bool:
        return not self._m

    def map_coeffs(self, f: Callable[[Any], Any]) -> "VirtualCharacter":
        return VirtualCharacter(self.dim, {w: f(c) for w, c in self._m.items()})

    def map_weights(self, f: Callable[[tuple], tuple]) -> "VirtualCharacter":
        out: dict[tuple, Any] = {}
        for w, c in self._m.items():
            w2 = tuple(f(w))
            out[w2] = out[w2] + c if w2 in out else c
        return VirtualCharacter(self.dim, out)

    def dual(self) -> "VirtualCharacter":
        """Negate all weights (complex conjugate on the compact torus)."""
        return self.map_weights(lambda w: tuple(-x for x in w))

    def constant_term(self) -> Any:
        return self._m.get((0,) * self.dim, 0)

    def evaluate(self, point: Iterable[Any]) -> Any:
        """Substitute ``e^w -> prod point[i]**w[i]``."""
        pt = list(point)
        total: Any = 0
        for w, c in self._m.items():
            term: Any = c
            for x, k in zip(pt, w):
                if k:
                    term = term * (x**k)
            total = term + total
        return total

    def scale_degree(self, factor: Callable[[tuple], Any]) -> "VirtualCharacter":
        """Multiply the coefficient of ``e^w`` by ``factor(w)``."""
        return VirtualCharacter(self.dim, {w: factor(w) * c for w, c in self._m.items()})

    def is_weyl_invariant(self, rs) -> bool:
        for w, c in self._m.items():
            for g in rs.simple_reflections:
                if self[rs.act(g, w)] != c:
                    return False
        return True

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other: Any) -> "VirtualCharacter | None":
        if isinstance(other, VirtualCharacter):
            if other.dim != self.dim:
                raise ValueError(f"mismatched rank {self.dim} and {other.dim}")
            return other
        try:
            lvl = _level(other)
        except TypeError:
            return None
        if lvl < self._level:
            return VirtualCharacter.const(self.dim, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = dict(self._m)
        for w, c in o._m.items():
            m[w] = m[w] + c if w in m else c
        return VirtualCharacter(self.dim, m)

    __radd__ = __add__

    def __neg__(self):
        return VirtualCharacter(self.dim, {w: -c for w, c in self._m.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, VirtualCharacter):
            if other.dim != self.dim:
                raise ValueError(f"mismatched rank {self.dim} and {other.dim}")
            m: dict[tuple, Any] = {}
            for w1, c1 in self._m.items():
                for w2, c2 in other._m.items():
                    w = tuple(a + b for a, b in zip(w1, w2))
                    m[w] = m[w] + c1 * c2 if w in m else c1 * c2
            return VirtualCharacter(self.dim, m)
        try:
            lvl = _level(other)
        except TypeError:
            return NotImplemented
        if lvl < self._level:
            return VirtualCharacter(self.dim, {w: c * other for w, c in self._m.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = VirtualCharacter.const(self.dim, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._m == o._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __bool__(self):
        return bool(self._m)

    def __repr__(self):
        return f"VirtualCharacter({self.dim}, {dict(sorted(self._m.items()))})"

    def __str__(self):
        if not self._m:
            return "0"
        return " + ".join(f"({c})e^{w}" for w, c in sorted(self._m.items(), reverse=True))


def char_product(a: VirtualCharacter, b: VirtualCharacter) -> VirtualCharacter:
    """Product in the character ring (weight-support convolution)."""
    return a * b


def adams(chi: VirtualCharacter, k: int) -> VirtualCharacter:
    """The Adams operation ``e^w -> e^{k w}``.

    >>> sorted(adams(VirtualCharacter(2, {(1, 0): 1, (0, 1): 1}), 2).items())
    [((0, 2), 1), ((2, 0), 1)]
    """
    return chi.map_weights(lambda w: tuple(k * x for x in w))


# ---------------------------------------------------------------------------
# truncated power series in u
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """``sum_{j <= N} a_j u**j`` known exactly through degree ``N``.

    Coefficients may be any ring elements (ints, ``LaurentScalar``,
    ``VirtualCharacter``...).  Results of binary operations are truncated at
    the smaller of the two orders.

    >>> s = TruncatedSeries([1, -1], 4)       # 1 - u
    >>> s.inverse().coeffs
    (1, 1, 1, 1, 1)
    """

    __slots__ = ("coeffs", "order")
    _level = 4

    def __init__(self, coeffs: Iterable[Any], order: int):
        c = [normalize_number(x) for x in list(coeffs)[: order + 1]]
        c += [0] * (order + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def geometric(cls, x: Any, order: int) -> "TruncatedSeries":
        """``1/(1 - u x) = sum_k x**k u**k``."""
        out: list[Any] = [1]
        cur: Any = 1
        for _ in range(order):
            cur = cur * x
            out.append(cur)
        return cls(out, order)

    def __getitem__(self, j: int) -> Any:
        return self.coeffs[j]

    def map_coeffs(self, f: Callable[[Any], Any]) -> "TruncatedSeries":
        return TruncatedSeries([f(c) for c in self.coeffs], self.order)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def _coerce(self, other: Any) -> "TruncatedSeries | None":
        if isinstance(other, TruncatedSeries):
            return other
        try:
            lvl = _level(other)
        except TypeError:
            return None
        if lvl < self._level:
            return TruncatedSeries([other], self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries([self.coeffs[j] + o.coeffs[j] for j in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            out: list[Any] = []
            for k in range(n + 1):
                acc: Any = 0
                for i in range(k + 1):
                    a, b = self.coeffs[i], other.coeffs[k - i]
                    if _is_zero(a) or _is_zero(b):
                        continue
                    acc = a * b + acc
                out.append(acc)
            return TruncatedSeries(out, n)
        try:
            lvl = _level(other)
        except TypeError:
            return NotImplemented
        if lvl < self._level:
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Inverse when the constant term is an integer unit (``1`` or ``-1``)."""
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise ValueError("constant term must be +1 or -1")
        out: list[Any] = [a0]
        for k in range(1, self.order + 1):
            acc: Any = 0
            for i in range(1, k + 1):
                if not _is_zero(self.coeffs[i]):
                    acc = self.coeffs[i] * out[k - i] + acc
            out.append(-acc * a0)
        return TruncatedSeries(out, self.order)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return all(self.coeffs[j] == o.coeffs[j] for j in range(n + 1))

    __hash__ = None  # equality depends on the comparison order

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r}, {self.order})"
