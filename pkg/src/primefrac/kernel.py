"""Prime kernels K_k and truncated fractional kernels, with their Fourier
transforms (pointwise, on alias-free grids, and certified sup-norm brackets).

Sign convention: the forward transform is sum_x K(x) e(-x alpha) with
e(t) = exp(2 pi i t); the inverse integrates against e(+x alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.fft as sfft

from ._parallel import n_threads, ordered_map
from .errors import AliasingError, ResourceCapError
from .numtheory import RationalFreq, sieve_primes

MAX_K = 24
# fine-grid points for certified brackets; evaluated in cosets, so this caps work, not memory
GRID_CAP = 1 << 33


@dataclass(frozen=True)
class PrimeKernel:
    """K_k = 2^-k * sum_{p <= 2^k} ln(p) delta_p."""

    k: int
    primes: np.ndarray
    logweights: np.ndarray

    @property
    def scale(self) -> float:
        return 2.0 ** -self.k

    @property
    def positions(self) -> np.ndarray:
        return self.primes

    @property
    def values(self) -> np.ndarray:
        # multiplying by 2^-k is exact in binary floating point
        return self.logweights * self.scale

    @property
    def atoms(self):
        return list(zip(self.primes.tolist(), self.logweights.tolist()))

    @property
    def max_position(self) -> int:
        return int(self.primes[-1])

    @property
    def min_grid(self) -> int:
        return 1 << (self.k + 2)

    def total_mass(self) -> float:
        return math.fsum(self.values.tolist())

    def __call__(self, x: int) -> float:
        i = int(np.searchsorted(self.primes, x))
        if i < len(self.primes) and self.primes[i] == x:
            return float(self.values[i])
        return 0.0


@dataclass(frozen=True)
class FractionalKernel:
    """Truncation of T^lambda_P: atoms (p, ln p / p^lambda) for p <= P."""

    lam: float
    P: int
    primes: np.ndarray
    logweights: np.ndarray

    @property
    def positions(self) -> np.ndarray:
        return self.primes

    @property
    def values(self) -> np.ndarray:
        return self.logweights * self.primes.astype(np.float64) ** -self.lam

    @property
    def atoms(self):
        return list(zip(self.primes.tolist(), self.values.tolist()))

    @property
    def max_position(self) -> int:
        return int(self.primes[-1])

    @property
    def min_grid(self) -> int:
        return _next_pow2(self.max_position + 1)

    def total_mass(self) -> float:
        return math.fsum(self.values.tolist())


def _next_pow2(n: int) -> int:
    return 1 << max(0, math.ceil(math.log2(max(n, 1))))


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def build_kernel(k: int) -> PrimeKernel:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must lie in [1, {MAX_K}], got {k}")
    table = sieve_primes(1 << k)
    return PrimeKernel(k, table.primes, table.logweights)


def build_fractional_kernel(lam: float, P: int) -> FractionalKernel:
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    if P < 2:
        raise ValueError(f"truncation P must be >= 2, got {P}")
    table = sieve_primes(P)
    return FractionalKernel(float(lam), int(P), table.primes, table.logweights)


def _phases(positions: np.ndarray, alpha) -> np.ndarray:
    """Fractional parts of x*alpha; exact for rational alpha."""
    if isinstance(alpha, RationalFreq):
        alpha = Fraction(alpha.a, alpha.q)
    if isinstance(alpha, Fraction):
        a, q = alpha.numerator, alpha.denominator
        if q < (1 << 62) // max(int(positions[-1]), 1):
            return ((positions * (a % q)) % q) / q
        alpha = float(alpha)
    return np.mod(positions * float(alpha), 1.0)


def kernel_fourier(kernel, alpha) -> complex:
    """sum_x K(x) e(-x alpha) by direct summation.

    ``alpha`` may be a float, a ``Fraction`` or a ``RationalFreq``; rational
    arguments get exact phase reduction.
    """
    ph = _phases(kernel.positions, alpha)
    terms = kernel.values * np.exp(-2j * np.pi * ph)
    return complex(terms.sum())


@dataclass(frozen=True)
class SpectralGrid:
    N: int
    values: np.ndarray  # complex, at alpha = j / N

    @property
    def alphas(self) -> np.ndarray:
        return np.arange(self.N) / self.N

    def csv_rows(self):
        for j, v in enumerate(self.values.tolist()):
            yield j, j / self.N, v.real, v.imag, abs(v)

    CSV_HEADER = ("j", "alpha", "re", "im", "abs")


def _dense(kernel, N: int) -> np.ndarray:
    a = np.zeros(N, dtype=np.float64)
    a[kernel.positions] = kernel.values
    return a


def kernel_fourier_grid(kernel, N: int) -> SpectralGrid:
    """Kernel transform at alpha = j/N via one FFT of the zero-padded atoms."""
    if not _is_pow2(N):
        raise ValueError(f"grid size must be a power of two, got {N}")
    if N < kernel.min_grid:
        raise AliasingError(
            f"grid size {N} below alias-free minimum {kernel.min_grid}"
        )
    vals = sfft.fft(_dense(kernel, N), workers=n_threads())
    return SpectralGrid(N, vals)


def lipschitz_bound(kernel) -> float:
    """2 pi sum_x |K(x)| x, a Lipschitz constant for alpha -> |K^(alpha)|."""
    pos = kernel.positions.astype(np.float64)
    return 2 * math.pi * math.fsum((np.abs(kernel.values) * pos).tolist())


def fine_grid_abs_max(kernel, N: int, base: int | None = None) -> tuple[float, float]:
    """max_j |K^(j/N)| and its argmax alpha, without materializing N points.

    The N-grid splits into N/base cosets j/base + r/N; each coset is one
    FFT of length ``base`` applied to modulated atoms.
    """
    base = base or kernel.min_grid
    base = min(base, N)
    if N % base:
        raise ValueError("fine grid must be a multiple of the base grid")
    R = N // base
    pos = kernel.positions
    vals = kernel.values

    def coset(r):
        mod = np.zeros(base, dtype=np.complex128)
        mod[pos] = vals * np.exp(-2j * np.pi * (pos * r % N) / N)
        mag = np.abs(sfft.fft(mod))
        j = int(np.argmax(mag))
        return float(mag[j]), (j * R + r) / N

    best = max(ordered_map(coset, range(R)), key=lambda t: t[0])
    return best


@dataclass(frozen=True)
class CertifiedBracket:
    lo: float
    hi: float
    N: int
    lipschitz: float
    argmax_alpha: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi


def required_grid(kernel, delta: float) -> int:
    L = lipschitz_bound(kernel)
    return max(kernel.min_grid, _next_pow2(math.ceil(L / (2 * delta))))


def sup_norm_certified(kernel, delta: float, cap: int = GRID_CAP) -> CertifiedBracket:
    """Interval [lo, hi] containing sup_alpha |K^(alpha)| with hi - lo <= delta.

    lo is the largest sample on a grid of spacing h; every alpha lies within
    h/2 of a sample, so hi = lo + L*h/2 with L from ``lipschitz_bound``.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    L = lipschitz_bound(kernel)
    N = required_grid(kernel, delta)
    if N > cap:
        raise ResourceCapError(
            f"bracket width {delta} needs a grid of {N} points (cap {cap})", required=N
        )
    lo, arg = fine_grid_abs_max(kernel, N)
    return CertifiedBracket(lo, lo + L / (2 * N), N, L, arg)
