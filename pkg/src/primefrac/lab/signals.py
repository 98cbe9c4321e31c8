"""Signals on the cyclic model Z_M and exact (alias-free) convolution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from .._parallel import n_threads
from ..errors import AliasingError


@dataclass(frozen=True)
class SignalWindow:
    """Samples on Z_M plus the index window [start, stop) standing in for Q_k."""

    M: int
    samples: np.ndarray
    window: tuple[int, int]

    def __post_init__(self):
        if self.M < 1 or self.M & (self.M - 1):
            raise ValueError(f"model size must be a power of two, got {self.M}")
        if len(self.samples) != self.M:
            raise ValueError(f"expected {self.M} samples, got {len(self.samples)}")
        lo, hi = self.window
        if not 0 <= lo < hi <= self.M:
            raise ValueError(f"window {self.window} not inside [0, {self.M})")

    @classmethod
    def for_scale(cls, k: int, samples=None):
        """Model for scale k: M = 2^(k+2), Q_k = [0, 2^(k+1))."""
        M = 1 << (k + 2)
        if samples is None:
            samples = np.zeros(M)
        return cls(M, np.asarray(samples), (0, 1 << (k + 1)))

    @classmethod
    def indicator(cls, k: int, indices):
        s = np.zeros(1 << (k + 2))
        idx = np.asarray(list(indices), dtype=np.int64)
        sw = cls.for_scale(k, s)
        if len(idx) and (idx.min() < sw.window[0] or idx.max() >= sw.window[1]):
            raise ValueError("indicator set must lie inside Q_k")
        s[idx] = 1.0
        return sw

    @property
    def Q_size(self) -> int:
        return self.window[1] - self.window[0]

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.M)
        m[self.window[0] : self.window[1]] = 1.0
        return m

    def with_samples(self, samples):
        return SignalWindow(self.M, np.asarray(samples), self.window)

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.samples))


def shift(f, s: int):
    """(shift f)(x) = f(x - s) on Z_M."""
    if isinstance(f, SignalWindow):
        return f.with_samples(np.roll(f.samples, s))
    return np.roll(f, s)


def cyclic_support_length(x) -> int:
    """Length of the shortest cyclic arc containing the support of x."""
    nz = np.flatnonzero(x)
    if len(nz) == 0:
        return 0
    M = len(x)
    gaps = np.diff(np.append(nz, nz[0] + M))
    return int(M - (gaps.max() - 1))


def _check_alias(kernel, x):
    M = len(x)
    W = cyclic_support_length(x)
    if W and W + kernel.max_position > M:
        raise AliasingError(
            f"support length {W} plus kernel reach {kernel.max_position} exceeds model size {M}"
        )


def kernel_spectrum(kernel, M: int) -> np.ndarray:
    dense = np.zeros(M)
    dense[kernel.positions] = kernel.values
    return sfft.rfft(dense, workers=n_threads())


def convolve(kernel, f, method: str = "fft", check: bool = True):
    """K * f on Z_M, equal to the convolution on Z when nothing wraps.

    ``method="direct"`` sums atom by atom over the support of f (the oracle
    path); ``"fft"`` multiplies spectra.
    """
    x = np.asarray(getattr(f, "samples", f))
    M = len(x)
    if check:
        _check_alias(kernel, x)
    if method == "direct":
        out = np.zeros(M, dtype=np.result_type(x, np.float64))
        pos, vals = kernel.positions, kernel.values
        for i in np.flatnonzero(x):
            np.add.at(out, (i + pos) % M, x[i] * vals)
    elif method == "fft":
        if np.iscomplexobj(x):
            dense = np.zeros(M)
            dense[kernel.positions] = kernel.values
            out = sfft.ifft(sfft.fft(dense) * sfft.fft(x))
        else:
            out = sfft.irfft(kernel_spectrum(kernel, M) * sfft.rfft(x), n=M)
    else:
        raise ValueError(f"unknown method {method!r}")
    if isinstance(f, SignalWindow):
        return f.with_samples(out)
    return out


def correlate(kernel, y, spectrum=None):
    """Adjoint of f -> K * f on Z_M (real signals)."""
    M = len(y)
    spec = kernel_spectrum(kernel, M) if spectrum is None else spectrum
    return sfft.irfft(np.conj(spec) * sfft.rfft(y), n=M)
