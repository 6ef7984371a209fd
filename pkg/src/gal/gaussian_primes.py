"""Sieve and classification of Gaussian primes by norm.

A Gaussian prime has norm 2 (the ramified 1+i and its associates), a
rational prime norm p = 1 (mod 4) (split primes, 8 elements of each
norm: four associates of a+bi and four of its conjugate), or norm p^2
for a rational prime p = 3 (mod 4) (inert, the four associates of p).

Counting convention: every element is counted, associates and
conjugates included, matching sums that run over all Gaussian primes.
The table stores only per-norm counts plus the rational-prime bitset;
prime elements are regenerated on demand from norms.

S(x) is the count over the annulus x/2 < N(p) <= x (strict left,
inclusive right) and the prime number theorem for Gaussian primes gives
S(x) ~ 2x/log x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, LimitTooLarge, OutOfRange, ZeroOrUnit
from .gaussian_core import GaussianInt

DEFAULT_SIEVE_LIMIT = 10**8
DEFAULT_GRID_BUDGET = 10**8


@dataclass
class SieveTable:
    """Classification of Gaussian primes with norm up to `limit`.

    Attributes:
        limit: inclusive norm bound x
        rational_primes: boolean array, rational_primes[n] iff n prime
        counts_by_norm: norm -> number of Gaussian primes of that norm
    """

    limit: int
    rational_primes: np.ndarray
    counts_by_norm: dict[int, int]
    _norms: np.ndarray = field(repr=False, default=None)
    _counts: np.ndarray = field(repr=False, default=None)
    _cum: np.ndarray = field(repr=False, default=None)

    def __post_init__(self) -> None:
        norms = np.fromiter(sorted(self.counts_by_norm), dtype=np.int64,
                            count=len(self.counts_by_norm))
        counts = np.fromiter((self.counts_by_norm[int(n)] for n in norms),
                             dtype=np.int64, count=len(norms))
        self._norms = norms
        self._counts = counts
        self._cum = np.concatenate(([0], np.cumsum(counts)))

    def count_norm_range(self, lo: float, hi: float) -> int:
        """Number of Gaussian primes with lo < N(p) <= hi."""
        i0 = int(np.searchsorted(self._norms, lo, side="right"))
        i1 = int(np.searchsorted(self._norms, hi, side="right"))
        return int(self._cum[i1] - self._cum[i0])


def _rational_prime_bitset(x: int) -> np.ndarray:
    is_prime = np.ones(x + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, math.isqrt(x) + 1):
        if is_prime[i]:
            is_prime[i * i:: i] = False
    return is_prime


def build_sieve(x: int, *, limit_budget: int = DEFAULT_SIEVE_LIMIT) -> SieveTable:
    """Sieve all Gaussian prime norms up to x.

    Args:
        x: inclusive norm bound, x >= 2
        limit_budget: memory guard; x above it raises LimitTooLarge
    """
    if x < 2:
        raise OutOfRange("sieve limit must be >= 2")
    if x > limit_budget:
        raise LimitTooLarge(f"sieve limit {x} exceeds budget {limit_budget}")
    is_prime = _rational_prime_bitset(x)
    primes = np.nonzero(is_prime)[0]
    counts: dict[int, int] = {2: 4}
    for p in primes[primes % 4 == 1]:
        counts[int(p)] = 8
    inert = primes[(primes % 4 == 3) & (primes <= math.isqrt(x))]
    for p in inert:
        if p * p <= x:
            counts[int(p * p)] = 4
    return SieveTable(x, is_prime, counts)


def is_gaussian_prime(g: GaussianInt, table: SieveTable | None = None) -> bool:
    """Primality of g in Z[i] via norm classification."""
    if g.is_zero() or g.is_unit():
        raise ZeroOrUnit(f"{g} is zero or a unit")
    n = g.norm
    if table is not None and n <= table.limit:
        n_prime = bool(table.rational_primes[n])
    else:
        import sympy
        n_prime = bool(sympy.isprime(n))
    if n_prime:
        # a^2+b^2 is never 3 mod 4, so a prime norm is 2 or 1 mod 4
        return True
    if g.re == 0 or g.im == 0:
        q = abs(g.re) or abs(g.im)
        if q % 4 == 3:
            if table is not None and q <= table.limit:
                return bool(table.rational_primes[q])
            import sympy
            return bool(sympy.isprime(q))
    return False


def count_annulus(table: SieveTable, x: int) -> int:
    """S(x): number of Gaussian primes with x/2 < N(p) <= x."""
    if x < 2 or x > table.limit:
        raise OutOfRange(f"x={x} outside table range [2, {table.limit}]")
    return table.count_norm_range(x / 2, x)


def pnt_ratio(table: SieveTable, x: int) -> float:
    """S(x) * log(x) / (2x), tending to 1 as x grows."""
    if x < 16 or x > table.limit:
        raise OutOfRange(f"x={x} outside [16, {table.limit}]")
    return count_annulus(table, x) * math.log(x) / (2.0 * x)


def prime_class_reps(table: SieveTable, lo: float, hi: float, *,
                     budget: int = DEFAULT_GRID_BUDGET
                     ) -> tuple[np.ndarray, np.ndarray]:
    """One representative per unit class of Gaussian primes, lo < N <= hi.

    Each returned (a, b) stands for the four associates {±(a+bi),
    ±i(a+bi)}; a split prime contributes two representatives ((a,b) and
    (b,a), conjugate classes), inert primes contribute (q, 0).  The
    sup-norm distance ||p*theta|| is constant on each class, so harness
    counts can be evaluated per representative and scaled by 4.
    """
    if hi > table.limit:
        raise OutOfRange(f"hi={hi} exceeds table limit {table.limit}")
    r = math.isqrt(int(hi))
    if r * r > budget:
        raise BudgetExceeded(f"prime grid needs {r * r} cells (budget {budget})")
    a = np.arange(1, r + 1, dtype=np.int64)
    re, im = np.meshgrid(a, a, indexing="ij")
    nn = re * re + im * im
    mask = (nn > lo) & (nn <= hi) & table.rational_primes[np.minimum(nn, table.limit)]
    re, im, nn = re[mask], im[mask], nn[mask]
    # inert rational primes q = 3 (mod 4) with q^2 in range
    qmax = math.isqrt(int(hi))
    qs = np.nonzero(table.rational_primes[: qmax + 1])[0]
    qs = qs[(qs % 4 == 3) & (qs.astype(np.int64) ** 2 > lo)
            & (qs.astype(np.int64) ** 2 <= hi)]
    re = np.concatenate([re, qs.astype(np.int64)])
    im = np.concatenate([im, np.zeros(len(qs), dtype=np.int64)])
    nn = np.concatenate([nn, qs.astype(np.int64) ** 2])
    order = np.lexsort((im, re, nn))
    return re[order], im[order]
