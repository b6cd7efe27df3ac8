"""Enumeration of unipotent coset representatives and Hermite forms.

``CosetEnumeration`` walks the cosets ``N_D / N_m``.  ``N_D`` is the set of
upper unitriangular ``u`` with ``val(u_ij) >= -D_j``, and ``N_m`` is the
subgroup with ``val(u_ij) >= m``.  Each coset has exactly one
representative whose entries are supported on the exponents
``-D_j .. m-1``.  Clearing the entries row by row from the bottom shows
this, provided ``m >= D_k - D_j`` for ``k < j``, which makes ``N_D`` stable
under ``N_m``.

The sweep used by all integral checks is :func:`tally`.  For a fixed
``nu`` it buckets the representatives by the Cartan invariant of
``u nu(pi)`` and by the residue ``sum_i Res u_{i,i+1}`` mod ``p``.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .fpoly import FpLaurent
from .matrix import SeriesMatrix, cartan_invariant

__all__ = [
    "CosetEnumeration",
    "Tally",
    "tally",
    "default_bounds",
    "hnf_enumerate",
]


def default_bounds(nu: Sequence[int]) -> tuple[tuple, int]:
    """``D_j = nu_j`` and ``m = max(0, max_{k<j}(nu_k - nu_j)) + 1``.

    ``u nu(pi)`` is integral exactly when ``val(u_ij) >= -nu_j``, so for
    targets inside ``Mat_n(O)`` nothing outside ``N_D`` contributes.  ``m``
    must make the integrand right ``N_m``-invariant, which needs
    ``nu^{-1} N_m nu`` inside ``K``, i.e. ``m >= nu_k - nu_j``.
    """
    nu = tuple(nu)
    n = len(nu)
    gap = max([nu[k] - nu[j] for j in range(n) for k in range(j)], default=0)
    return nu, max(0, gap) + 1


@dataclass(frozen=True)
class CosetEnumeration:
    """Representatives of ``N_D / N_m`` for ``GL_n`` over ``F_p((pi))``."""

    n: int
    p: int
    D: tuple
    m: int

    def __post_init__(self):
        if len(self.D) != self.n:
            raise ValueError("one pole bound per column is required")
        need = max([self.D[k] - self.D[j] for j in range(self.n) for k in range(1, j)], default=0)
        if self.m < max(0, need):
            raise ValueError(f"precision m={self.m} too small for pole bounds {self.D} (need {need})")
        if any(d + self.m < 0 for d in self.D[1:]):
            raise ValueError("empty support window")

    def entries(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in range(j)]

    def window(self, j: int) -> range:
        """Exponents allowed in column ``j``."""
        return range(-self.D[j], self.m)

    def size(self) -> int:
        total = 1
        for i, j in self.entries():
            total *= self.p ** len(self.window(j))
        return total

    def volume_exponent(self) -> int:
        """v-exponent of ``vol(N_m) = q^{-m n(n-1)/2}``."""
        return self.m * self.n * (self.n - 1)

    def region_volume_exponent(self) -> int:
        """v-exponent of ``vol(N_D) = q^{sum_{i<j} D_j}``."""
        return -2 * sum(self.D[j] for _, j in self.entries())

    def entry_values(self, j: int) -> list[FpLaurent]:
        w = self.window(j)
        return [FpLaurent(self.p, c, w.start) for c in product(range(self.p), repeat=len(w))]

    def __iter__(self) -> Iterator[SeriesMatrix]:
        ent = self.entries()
        choices = [self.entry_values(j) for _, j in ent]
        one = FpLaurent(self.p, (1,))
        zero = FpLaurent(self.p)
        for combo in product(*choices):
            rows = [[one if i == j else zero for j in range(self.n)] for i in range(self.n)]
            for (i, j), x in zip(ent, combo):
                rows[i][j] = x
            yield SeriesMatrix(self.p, tuple(tuple(r) for r in rows))

    def __len__(self) -> int:
        return self.size()


@dataclass
class Tally:
    """Counts ``counts[mu][r]`` of representatives ``u`` with
    ``cartan(u nu(pi)) = mu`` and ``sum Res u_{i,i+1} = r`` (mod p)."""

    nu: tuple
    p: int
    D: tuple
    m: int
    counts: dict = field(default_factory=dict)
    enumerated: int = 0
    elapsed: float = 0.0

    @property
    def volume_exponent(self) -> int:
        n = len(self.nu)
        return self.m * n * (n - 1)

    def total(self, mu: Sequence[int]) -> int:
        return sum(self.counts.get(tuple(mu), ()))


def _entry_table(n: int, p: int, nu: tuple, D: tuple, m: int, j: int):
    """For column ``j``: all pairs (entry of ``u nu(pi)``, residue of ``u``)."""
    start = -D[j]
    width = m + D[j]
    out = []
    for c in product(range(p), repeat=width):
        x = FpLaurent(p, c, start)
        out.append((x.shift(nu[j]), x.residue()))
    return out


def _tally_chunk(args) -> tuple[dict, int]:
    n, p, nu, D, m, prefix = args
    ent = [(i, j) for j in range(n) for i in range(j)]
    tables = [_entry_table(n, p, nu, D, m, j) for _, j in ent]
    fixed = len(prefix)
    pools = [[tables[k][prefix[k]]] for k in range(fixed)] + tables[fixed:]
    diag = [FpLaurent.monomial(p, nu[i]) for i in range(n)]
    zero = FpLaurent(p)
    counts: dict = {}
    seen = 0
    super_diag = [k for k, (i, j) in enumerate(ent) if j == i + 1]
    for combo in product(*pools):
        rows = [[diag[i] if i == j else zero for j in range(n)] for i in range(n)]
        for (i, j), (x, _) in zip(ent, combo):
            rows[i][j] = x
        mu = cartan_invariant(SeriesMatrix(p, tuple(tuple(r) for r in rows)))
        r = sum(combo[k][1] for k in super_diag) % p
        bucket = counts.get(mu)
        if bucket is None:
            bucket = counts[mu] = [0] * p
        bucket[r] += 1
        seen += 1
    return counts, seen


def _partition(n: int, p: int, D: tuple, m: int, jobs: int) -> list[tuple]:
    """Fix the leading entries until there are enough chunks for ``jobs`` workers."""
    ent = [(i, j) for j in range(n) for i in range(j)]
    sizes = [p ** (m + D[j]) for _, j in ent]
    prefixes: list[tuple] = [()]
    k = 0
    while jobs > 1 and len(prefixes) < 4 * jobs and k < len(ent):
        prefixes = [pre + (x,) for pre in prefixes for x in range(sizes[k])]
        k += 1
    return prefixes


def tally(nu: Sequence[int], p: int, D: Sequence[int] | None = None, m: int | None = None,
          jobs: int = 1) -> Tally:
    """Sweep ``N_D / N_m`` and bucket ``u`` by ``cartan(u nu(pi))`` and ``Psi(u)``.

    With ``jobs > 1`` the sweep is split on the leading coefficients into
    independent chunks, and the partial counts are merged in chunk order.
    """
    nu = tuple(nu)
    n = len(nu)
    d0, m0 = default_bounds(nu)
    D = tuple(D) if D is not None else d0
    m = m if m is not None else m0
    need = max([nu[k] - nu[j] for j in range(n) for k in range(j)], default=0)
    if m < need:
        raise ValueError(f"precision m={m} below nu-gap {need}: integrand not N_m-invariant")
    if any(D[j] < nu[j] for j in range(1, n)):
        raise ValueError(f"pole bounds {D} cut off the support (need D_j >= nu_j)")
    CosetEnumeration(n, p, D, m)  # validates bounds
    t0 = time.perf_counter()
    prefixes = _partition(n, p, D, m, jobs)
    tasks = [(n, p, nu, D, m, pre) for pre in prefixes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_tally_chunk, tasks))
    else:
        results = [_tally_chunk(t) for t in tasks]
    counts: dict = {}
    seen = 0
    for part, k in results:
        seen += k
        for mu, bucket in part.items():
            acc = counts.setdefault(mu, [0] * p)
            for r, c in enumerate(bucket):
                acc[r] += c
    counts = dict(sorted(counts.items(), reverse=True))
    return Tally(nu, p, D, m, counts, seen, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Hermite normal forms
# ---------------------------------------------------------------------------


def _compositions(m: int, n: int) -> Iterator[tuple]:
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _compositions(m - first, n - 1):
            yield (first,) + rest


def hnf_enumerate(n: int, p: int, m: int, target: Sequence[int] | None = None) -> Iterator[SeriesMatrix]:
    """Hermite representatives of the cosets ``g K`` with ``g`` integral and
    ``val det g = m``: upper triangular, diagonal ``pi^{a_i}``, entry
    ``(i, j)`` a polynomial of degree ``< a_i``.

    With ``target`` only cosets in ``K target(pi) K`` are produced.
    """
    tgt = tuple(target) if target is not None else None
    if tgt is not None and sum(tgt) != m:
        return
    zero = FpLaurent(p)
    for a in _compositions(m, n):
        slots = [(i, j) for j in range(n) for i in range(j)]
        pools = [[FpLaurent(p, c, 0) for c in product(range(p), repeat=a[i])] if a[i] else [zero]
                 for i, j in slots]
        for combo in product(*pools):
            rows = [[FpLaurent.monomial(p, a[i]) if i == j else zero for j in range(n)] for i in range(n)]
            for (i, j), x in zip(slots, combo):
                rows[i][j] = x
            g = SeriesMatrix(p, tuple(tuple(r) for r in rows))
            if tgt is None or cartan_invariant(g) == tgt:
                yield g


def hnf_count(n: int, p: int, mu: Sequence[int]) -> int:
    """``|K mu(pi) K / K|`` by enumeration."""
    return sum(1 for _ in hnf_enumerate(n, p, sum(mu), mu))
