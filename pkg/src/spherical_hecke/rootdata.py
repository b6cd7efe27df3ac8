"""Root data for GL_n and the small simple types.

Weights are integer tuples.

* ``GL(n)`` uses the native coordinates ``Z^n``.  Simple roots are
  ``e_i - e_{i+1}`` and coroots use the same vectors under the dot product.
* The simple types ``A1 A2 A3 B2 C2 G2`` use Dynkin labels, i.e. coordinates
  in the basis of fundamental weights.  The simple coroots are then the
  coordinate functionals and the simple root ``alpha_j`` is column ``j`` of the
  Cartan matrix ``A[i][j] = <alpha_j, alpha_i^vee>``.  All such weights are
  integral, so no denominators are needed.

The root system is that of the dual group: its weights index the Cartan
cells ``K lambda(pi) K`` and the irreducible representations ``V(lambda)``.
``(lambda, rho)`` always means the pairing of ``lambda`` with half the sum of
the positive coroots, which is a half-integer.
"""
from __future__ import annotations

import re
from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

__all__ = [
    "RootSystem",
    "build_root_system",
    "dominance_leq",
    "pairing",
    "dominant_weights_up_to",
    "positive_dominant",
    "SUPPORTED",
]

Weight = tuple

_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "C2": ((2, -2), (-1, 2)),
    "G2": ((2, -1), (-3, 2)),
}
MAX_GL = 4
SUPPORTED = tuple(f"GL{n}" for n in range(1, MAX_GL + 1)) + tuple(_CARTAN)


def _dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


class RootSystem:
    """Root datum with Weyl group, exponents and the pairing with ``rho``.

    Built through :func:`build_root_system`; instances are cached and treated
    as immutable, and compare by label.
    """

    def __init__(self, label: str, family: str, dim: int,
                 simple_roots: Sequence[Weight], simple_coroots: Sequence[Weight],
                 rho_int: Weight):
        self.label = label
        self.family = family
        self.dim = dim
        self.simple_roots = tuple(tuple(a) for a in simple_roots)
        self.simple_coroots = tuple(tuple(a) for a in simple_coroots)
        self.rank = len(self.simple_roots)
        self.cartan = tuple(tuple(_dot(self.simple_roots[j], self.simple_coroots[i])
                                  for j in range(self.rank)) for i in range(self.rank))
        self.rho_int = tuple(rho_int)

        # positive roots with their coroots, by reflection closure
        pairs = {}
        queue = deque()
        for a, ac in zip(self.simple_roots, self.simple_coroots):
            pairs[a] = ac
            queue.append(a)
        while queue:
            b = queue.popleft()
            bc = pairs[b]
            for a, ac in zip(self.simple_roots, self.simple_coroots):
                nb = tuple(x - _dot(b, ac) * y for x, y in zip(b, a))
                nbc = tuple(x - _dot(a, bc) * y for x, y in zip(bc, ac))
                if nb not in pairs:
                    pairs[nb] = nbc
                    queue.append(nb)
        self._inv_simple = self._simple_solver()
        pos = [b for b in pairs if all(c >= 0 for c in self.simple_coords(b))]
        pos.sort(key=lambda b: (self.height(b), b))
        self.positive_roots = tuple(pos)
        self.positive_coroots = tuple(pairs[b] for b in pos)
        self.roots = tuple(pairs)

        self.two_rho = tuple(sum(b[i] for b in pos) for i in range(dim))
        self.rho = tuple(Fraction(x, 2) for x in self.two_rho)
        self.two_rho_check = tuple(sum(b[i] for b in self.positive_coroots) for i in range(dim))

        self.simple_reflections = tuple(
            tuple(tuple((1 if r == c else 0) - a[r] * ac[c] for c in range(dim)) for r in range(dim))
            for a, ac in zip(self.simple_roots, self.simple_coroots)
        )
        ident = tuple(tuple(int(r == c) for c in range(dim)) for r in range(dim))
        lengths = {ident: 0}
        order = [ident]
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in self.simple_reflections:
                h = _matmul(g, s)
                if h not in lengths:
                    lengths[h] = lengths[g] + 1
                    order.append(h)
                    queue.append(h)
        self.weyl = tuple((g, lengths[g]) for g in order)
        self.exponents = self._exponents()
        self.highest_root = max(pos, key=lambda b: (self.height(b), b)) if pos else None

    # -- coordinates -----------------------------------------------------------
    def _simple_solver(self):
        if self.family == "GL":
            return None
        a = [[Fraction(self.simple_roots[j][i]) for j in range(self.rank)] for i in range(self.rank)]
        n = self.rank
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            f = a[col][col]
            a[col] = [x / f for x in a[col]]
            inv[col] = [x / f for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    g = a[r][col]
                    a[r] = [x - g * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - g * y for x, y in zip(inv[r], inv[col])]
        return inv

    def simple_coords(self, beta: Sequence[int]) -> tuple | None:
        """Coordinates of ``beta`` on the simple roots, or ``None`` if ``beta``
        is not in the root lattice."""
        beta = tuple(beta)
        if self.family == "GL":
            if sum(beta) != 0:
                return None
            out, acc = [], 0
            for x in beta[:-1]:
                acc += x
                out.append(acc)
            return tuple(out)
        c = [sum(row[j] * beta[j] for j in range(self.rank)) for row in self._inv_simple]
        if any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def height(self, beta: Sequence[int]) -> int:
        c = self.simple_coords(beta)
        if c is None:
            raise ValueError(f"{beta} is not in the root lattice")
        return sum(c)

    def from_simple_coords(self, c: Sequence[int]) -> Weight:
        return tuple(sum(ci * a[k] for ci, a in zip(c, self.simple_roots)) for k in range(self.dim))

    # -- pairings ----------------------------------------------------------------
    def pairing_rho(self, lam: Sequence[int]) -> Fraction:
        """``(lambda, rho)``, half-integral in general."""
        return Fraction(_dot(lam, self.two_rho_check), 2)

    def two_pairing_rho(self, lam: Sequence[int]) -> int:
        """``2 (lambda, rho)`` as an integer; this is the v-exponent of ``q^{-(lambda,rho)}``."""
        return _dot(lam, self.two_rho_check)

    def coroot_pairings(self, lam: Sequence[int]) -> tuple:
        return tuple(_dot(lam, ac) for ac in self.simple_coroots)

    def form(self, x: Sequence, y: Sequence):
        """A W-invariant symmetric form, ``sum_{beta > 0} <x,beta^vee><y,beta^vee>``."""
        return sum(_dot(x, bc) * _dot(y, bc) for bc in self.positive_coroots)

    # -- Weyl group --------------------------------------------------------------
    @staticmethod
    def act(g, w: Sequence[int]) -> Weight:
        return tuple(_dot(row, w) for row in g)

    @property
    def order(self) -> int:
        return len(self.weyl)

    def check_weight(self, lam: Sequence[int]) -> tuple:
        lam = tuple(lam)
        if len(lam) != self.dim or not all(isinstance(x, int) for x in lam):
            raise ValueError(f"{lam!r} is not an integral weight of {self.label} (need {self.dim} integers)")
        return lam

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(x >= 0 for x in self.coroot_pairings(lam))

    def to_dominant(self, lam: Sequence[int]) -> Weight:
        lam = tuple(lam)
        while True:
            for i, x in enumerate(self.coroot_pairings(lam)):
                if x < 0:
                    lam = self.act(self.simple_reflections[i], lam)
                    break
            else:
                return lam

    def orbit(self, lam: Sequence[int]) -> list[Weight]:
        lam = tuple(lam)
        seen = {lam}
        queue = deque([lam])
        while queue:
            w = queue.popleft()
            for s in self.simple_reflections:
                x = self.act(s, w)
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return sorted(seen, reverse=True)

    def stabilizer_poincare(self, lam: Sequence[int]) -> list[int]:
        """Length-generating polynomial of the stabiliser of ``lam`` (coefficient list in t)."""
        lam = tuple(lam)
        out = [0] * (max(l for _, l in self.weyl) + 1)
        for g, l in self.weyl:
            if self.act(g, lam) == lam:
                out[l] += 1
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def poincare(self) -> list[int]:
        return self.stabilizer_poincare((0,) * self.dim)

    def _exponents(self) -> tuple:
        f = self.poincare()
        for _ in range(self.rank):  # multiply by (1 - t)^rank
            f = [a - b for a, b in zip(f + [0], [0] + f)]
        degrees = []
        while any(f[1:]):
            k = next(i for i in range(1, len(f)) if f[i])
            if f[k] > 0:
                raise ArithmeticError(f"Poincare polynomial of {self.label} does not factor")
            degrees.append(k)
            # divide by (1 - t^k)
            q = list(f)
            for i in range(k, len(q)):
                q[i] += q[i - k]
            f = q[: len(q) - k]
        exps = [d - 1 for d in degrees] + [0] * (self.dim - self.rank)
        return tuple(sorted(exps))

    # -- order ----------------------------------------------------------------------
    def order_key(self, lam: Sequence[int]):
        """Total order refining dominance: ``2(lambda,rho)`` first, then lexicographic."""
        return (self.two_pairing_rho(lam), tuple(lam))

    def is_positive_dominant(self, lam: Sequence[int]) -> bool:
        """``lambda`` in ``P^{++}`` (GL_n only)."""
        return self.family == "GL" and self.is_dominant(lam) and lam[-1] >= 0

    # -- dunder ----------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.label == self.label

    def __hash__(self):
        return hash(("RootSystem", self.label))

    def __repr__(self):
        return f"RootSystem({self.label!r})"

    def __reduce__(self):
        return (build_root_system, (self.label,))


def _parse_label(spec: str) -> tuple[str, int]:
    s = spec.strip().upper().replace(" ", "")
    m = re.fullmatch(r"GL\(?(\d+)\)?", s)
    if m:
        return "GL", int(m.group(1))
    m = re.fullmatch(r"([ABCG])(\d)", s)
    if m and s in _CARTAN:
        return m.group(1), int(m.group(2))
    raise ValueError(f"unsupported root system {spec!r}; supported: {', '.join(SUPPORTED)}")


@lru_cache(maxsize=None)
def build_root_system(spec: str) -> RootSystem:
    """Build (and cache) the root system named by ``spec``.

    >>> rs = build_root_system("GL(2)")
    >>> rs.rho, rs.positive_roots, rs.order
    ((Fraction(1, 2), Fraction(-1, 2)), ((1, -1),), 2)
    >>> build_root_system("B2").exponents
    (1, 3)
    """
    family, n = _parse_label(spec)
    if family == "GL":
        if not 1 <= n <= MAX_GL:
            raise ValueError(f"GL({n}) outside supported range 1..{MAX_GL}")
        simple = [tuple((1 if k == i else -1 if k == i + 1 else 0) for k in range(n)) for i in range(n - 1)]
        rs = RootSystem(f"GL{n}", "GL", n, simple, simple, tuple(range(n - 1, -1, -1)))
        return rs
    label = f"{family}{n}"
    a = _CARTAN[label]
    simple = [tuple(a[i][j] for i in range(n)) for j in range(n)]
    coroots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return RootSystem(label, family, n, simple, coroots, (1,) * n)


# ---------------------------------------------------------------------------
# module-level helpers
# ---------------------------------------------------------------------------


def dominance_leq(rs: RootSystem, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """``mu <= lam``: ``lam - mu`` is a nonnegative combination of simple roots."""
    c = rs.simple_coords(tuple(a - b for a, b in zip(lam, mu)))
    return c is not None and all(x >= 0 for x in c)


def pairing(rs: RootSystem, lam: Sequence[int], other: Sequence | None = None) -> Fraction:
    """``(lam, rho)`` when ``other`` is omitted, else the dot product of ``lam``
    with the coweight ``other`` (entries may be Fractions)."""
    if other is None:
        return rs.pairing_rho(lam)
    return Fraction(_dot(lam, other))


def _sort_desc(rs: RootSystem, weights: Iterable[Weight]) -> list[Weight]:
    return sorted(weights, key=rs.order_key, reverse=True)


def dominant_weights_up_to(rs: RootSystem, lam: Sequence[int]) -> list[Weight]:
    """All dominant ``mu <= lam``, largest first.

    Uses the fact that below a dominant weight every dominant weight is
    reached by subtracting positive roots one at a time while staying
    dominant.

    >>> dominant_weights_up_to(build_root_system("GL3"), (2, 1, 0))
    [(2, 1, 0), (1, 1, 1)]
    """
    return list(_dominant_below(rs, tuple(lam)))


@lru_cache(maxsize=4096)
def _dominant_below(rs: RootSystem, lam: Weight) -> tuple:
    rs.check_weight(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant for {rs.label}")
    seen = {lam}
    queue = deque([lam])
    while queue:
        w = queue.popleft()
        for b in rs.positive_roots:
            x = tuple(p - q for p, q in zip(w, b))
            if x not in seen and rs.is_dominant(x):
                seen.add(x)
                queue.append(x)
    return tuple(_sort_desc(rs, seen))


def dominant_weights_above(rs: RootSystem, mu: Sequence[int], max_height: int) -> list[Weight]:
    """Dominant ``lam >= mu`` with ``ht(lam - mu) <= max_height``, smallest first."""
    mu = tuple(mu)
    out = []
    for c in product(range(max_height + 1), repeat=rs.rank):
        if sum(c) > max_height:
            continue
        lam = tuple(m + d for m, d in zip(mu, rs.from_simple_coords(c)))
        if rs.is_dominant(lam):
            out.append(lam)
    return sorted(out, key=rs.order_key)


def positive_dominant(n: int, m: int) -> list[Weight]:
    """``P^{++}_{n,m}``: partitions of ``m`` with at most ``n`` parts, as n-tuples.

    >>> positive_dominant(2, 2)
    [(2, 0), (1, 1)]
    """
    out = []

    def rec(prefix, remaining, cap):
        if len(prefix) == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for x in range(min(cap, remaining), -1, -1):
            rec(prefix + [x], remaining - x, x)

    rec([], m, m)
    return out
