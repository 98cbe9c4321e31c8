"""Arithmetic primitives: prime sieve, Moebius, totient, Chebyshev theta,
reduced fractions with bounded denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EmptyTableError, ResourceCapError

SIEVE_CAP = 1 << 24


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit`` together with their natural logs."""

    limit: int
    primes: np.ndarray  # int64, ascending
    logweights: np.ndarray  # float64, ln(primes)

    def __len__(self):
        return len(self.primes)

    def upto(self, x):
        """Sub-table of primes <= x (x <= limit)."""
        n = int(np.searchsorted(self.primes, x, side="right"))
        return PrimeTable(int(x), self.primes[:n], self.logweights[:n])


@dataclass(frozen=True)
class RationalFreq:
    """Reduced fraction a/q on the circle, canonicalized to 0 <= a < q."""

    a: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"denominator must be positive, got {self.q}")
        if not 0 <= self.a < self.q:
            raise ValueError(f"numerator must satisfy 0 <= a < q, got {self.a}/{self.q}")
        if math.gcd(self.a, self.q) != 1:
            raise ValueError(f"{self.a}/{self.q} is not reduced")

    @classmethod
    def canonical(cls, a, q):
        """Reduce a/q and move it to [0, 1)."""
        g = math.gcd(a, q)
        a, q = a // g, q // g
        return cls(a % q, q)

    @property
    def value(self):
        return self.a / self.q

    def __str__(self):
        return f"{self.a}/{self.q}"


def _bit_sieve(limit):
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[i]:
            is_prime[i * i :: 2 * i] = False
    return is_prime


def sieve_primes(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes up to ``limit`` (inclusive)."""
    limit = int(limit)
    if limit < 2:
        raise EmptyTableError(f"no primes <= {limit}")
    if limit > SIEVE_CAP:
        raise ResourceCapError(
            f"sieve limit {limit} exceeds cap {SIEVE_CAP}", required=limit
        )
    return _cached_sieve(limit)


@lru_cache(maxsize=8)
def _cached_sieve(limit):
    primes = np.flatnonzero(_bit_sieve(limit)).astype(np.int64)
    # math.log rather than np.log: the vectorized log can differ by an ulp
    logs = np.fromiter(map(math.log, primes.tolist()), dtype=np.float64, count=len(primes))
    primes.flags.writeable = False
    logs.flags.writeable = False
    return PrimeTable(limit, primes, logs)


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization, {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(q: int) -> int:
    fac = factorize(q)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(q: int) -> int:
    result = q
    for p in factorize(q):
        result -= result // p
    return result


def mobius_totient_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Bulk mu(m) and phi(m) for 0 <= m <= n by striding over each prime.

    Index 0 is a placeholder (mu = phi = 0).
    """
    if n > SIEVE_CAP:
        raise ResourceCapError(f"table size {n} exceeds cap {SIEVE_CAP}", required=n)
    mu = np.zeros(n + 1, dtype=np.int64)
    phi = np.zeros(n + 1, dtype=np.int64)
    primes = sieve_primes(n).primes if n >= 2 else np.array([], dtype=np.int64)
    # multiplicative sieve: start from mu = 1, phi = m and strip each prime
    mu[1:] = 1
    phi[:] = np.arange(n + 1)
    for p in primes.tolist():
        mu[p::p] *= -1
        phi[p::p] -= phi[p::p] // p
        if p * p <= n:
            mu[p * p :: p * p] = 0
    mu[0] = phi[0] = 0
    return mu, phi


@dataclass(frozen=True)
class TotientReport:
    qmax: int
    eps: float
    minimum: float
    argmin: int


def totient_lowerbound_report(qmax: int, eps: float) -> TotientReport:
    """min over 1 <= q <= qmax of phi(q) / q**(1 - eps)."""
    if qmax < 2:
        raise ValueError(f"qmax must be >= 2, got {qmax}")
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    _, phi = mobius_totient_tables(qmax)
    q = np.arange(1, qmax + 1, dtype=np.float64)
    ratio = phi[1:] / q ** (1.0 - eps)
    i = int(np.argmin(ratio))
    return TotientReport(qmax, eps, float(ratio[i]), i + 1)


def farey_arrays(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of reduced a/q in [0, 1), q <= N, ascending."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    num, den = [0], [1]
    a, b, c, d = 0, 1, 1, N
    while not (c == 1 and d == 1):
        num.append(c)
        den.append(d)
        k = (N + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return np.asarray(num, dtype=np.int64), np.asarray(den, dtype=np.int64)


def reduced_fractions(N: int) -> list[RationalFreq]:
    """Every reduced a/q with 0 <= a < q <= N, sorted by value."""
    a, q = farey_arrays(N)
    return [RationalFreq(int(x), int(y)) for x, y in zip(a, q)]


def chebyshev_theta(x: float) -> float:
    """Sum of ln p over primes p <= x."""
    if x < 2:
        return 0.0
    table = sieve_primes(int(math.floor(x)))
    return math.fsum(table.logweights.tolist())


def prevprime(n: int) -> int:
    """Largest prime <= n (n >= 2), by trial division."""
    if n < 2:
        raise ValueError(f"no prime <= {n}")
    while True:
        if n == 2 or (n % 2 and all(n % d for d in range(3, math.isqrt(n) + 1, 2))):
            return n
        n -= 1
