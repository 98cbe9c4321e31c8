"""Split K_k * f into the low-frequency part, the major-arc main term and
the error term:

    K_k * f = K_k * f_1 + (L_k f_2^)^v + (E_k f_2^)^v  +  ((L'_k - L_k) f_2^)^v

The last piece is the price of swapping L'_k for L_k; its l^2 norm is the
reported residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from ..iw import IWParams, project_low, projection_multiplier
from ..kernel import build_kernel, kernel_fourier_grid
from ..major_arc import ApproxParams, MajorArcApprox, lemma_gap_sup
from .signals import SignalWindow, convolve


@dataclass
class Decomposition:
    f1: np.ndarray
    f2: np.ndarray
    m1: np.ndarray  # K_k * f_1
    main: np.ndarray  # (L_k f_2^)^v
    error: np.ndarray  # (E_k f_2^)^v
    full: np.ndarray  # K_k * f
    gap: float
    f_norm: float

    @property
    def residual(self) -> float:
        return float(np.linalg.norm(self.full - (self.m1 + self.main + self.error)))

    @property
    def bound(self) -> float:
        return self.gap * self.f_norm + 1e-9

    @property
    def within_bound(self) -> bool:
        return self.residual <= self.bound


class Decomposer:
    """Precomputes the grid multipliers for one scale; call it on many signals."""

    def __init__(self, k: int, iw: IWParams | None = None, approx: ApproxParams | None = None):
        self.k = k
        self.M = 1 << (k + 2)
        self.iw = iw or IWParams(k)
        self.U = self.iw.freq_set()
        self.kernel = build_kernel(k)
        arcs = MajorArcApprox(k, approx)
        self.approx = arcs.params
        alphas = np.arange(self.M) / self.M
        self.low = projection_multiplier(self.iw, self.U, self.M)
        self.Khat = kernel_fourier_grid(self.kernel, self.M).values
        self.L = arcs.L(alphas, "phi")
        self.E = self.Khat - arcs.L(alphas, "chi")
        # refined sup of |L - L'|; at least the sup over this grid
        self.gap = lemma_gap_sup(k, self.approx, N=self.M).sup

    def __call__(self, f, check: bool = True) -> Decomposition:
        """Decompose one signal; ``check=False`` allows supports outside Q_k."""
        x = np.asarray(getattr(f, "samples", f), dtype=np.float64)
        if len(x) != self.M:
            raise ValueError(f"signal must live on Z_{self.M}")
        f1, f2 = project_low(x, self.iw, self.U, multiplier=self.low)
        m1 = convolve(self.kernel, f1, check=False)
        F2 = sfft.fft(f2)
        main = sfft.ifft(self.L * F2).real
        error = sfft.ifft(self.E * F2).real
        full = convolve(self.kernel, x, check=check)
        return Decomposition(f1, f2, m1, main, error, full, self.gap, float(np.linalg.norm(x)))


def decompose(k: int, f, iw: IWParams | None = None, approx: ApproxParams | None = None):
    """One-shot version of ``Decomposer(k, iw, approx)(f)``."""
    if isinstance(f, SignalWindow) and f.M != 1 << (k + 2):
        raise ValueError("signal model does not match scale k")
    return Decomposer(k, iw, approx)(f)
