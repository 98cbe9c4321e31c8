"""Norm estimators for f -> K * f: exact l^1 -> l^inf endpoint, certified
l^2 bracket, interpolation calculator and ascent lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from ..kernel import PrimeKernel, build_kernel, sup_norm_certified
from ..normest import AscentResult, boyd_ascent, conjugate, power_iteration_norm
from .signals import convolve, correlate, kernel_spectrum


def model_for(kernel) -> tuple[int, tuple[int, int]]:
    """(M, window) for a kernel: window [0, M/2) and kernel reach <= M/2.

    For K_k this is M = 2^(k+2), Q_k = [0, 2^(k+1)).
    """
    if isinstance(kernel, PrimeKernel):
        M = 1 << (kernel.k + 2)
    else:
        M = 4 * (1 << math.ceil(math.log2(kernel.max_position + 1)))
    return M, (0, M // 2)


def endpoint_l1_linf(kernel, M: int | None = None) -> float:
    """||f -> K*f||_{l^1 -> l^inf}, measured on the delta witness (direct sum)."""
    M = M or model_for(kernel)[0]
    delta = np.zeros(M)
    delta[0] = 1.0
    return float(np.abs(convolve(kernel, delta, method="direct")).max())


def riesz_thorin_bound(A1: float, A2: float, p: float) -> float:
    """A1^(1-theta) A2^theta with 1/p = (1 - theta) + theta/2.

    Bound for l^p -> l^{p'} with p' the conjugate exponent, p in [1, 2].
    """
    if A1 < 0 or A2 < 0:
        raise ValueError("endpoint norms must be nonnegative")
    if not 1 <= p <= 2:
        raise ValueError(f"p must lie in [1, 2], got {p}")
    theta = 2.0 * (1.0 - 1.0 / p)
    if theta == 0:
        return float(A1)
    if theta == 1:
        return float(A2)
    return float(A1 ** (1 - theta) * A2**theta)


def _operator(kernel, M):
    spec = kernel_spectrum(kernel, M)
    apply = lambda x: sfft.irfft(spec * sfft.rfft(x), n=M)
    adjoint = lambda y: correlate(kernel, y, spectrum=spec)
    return apply, adjoint


def l2_power_norm(kernel, M: int | None = None, seed: int = 0, tol=1e-14, maxiter=20000):
    """Power-iteration l^2 norm of cyclic convolution on Z_M.

    Starts from a seeded nonnegative random vector. Returns (norm, iterations).
    """
    M = M or model_for(kernel)[0]
    apply, adjoint = _operator(kernel, M)
    x0 = np.random.default_rng(seed).random(M)
    return power_iteration_norm(apply, adjoint, x0, tol=tol, maxiter=maxiter)


@dataclass
class SearchResult:
    value: float
    witness: np.ndarray
    start: str
    history: list
    per_start: dict
    model: str
    M: int
    window: tuple


def norm_lowerbound_search(
    kernel, p: float, pprime: float, iters: int = 10, seed: int = 0,
    model: str = "auto", n_random: int = 2,
) -> SearchResult:
    """Best ||K*f||_{p'} / ||f||_p found by alternating-duality ascent.

    Starts: delta, indicator of the kernel atoms, indicator of the window,
    and ``n_random`` seeded nonnegative random vectors. With
    ``model="window"`` iterates stay supported in the window, so the cyclic
    value equals the value on Z; ``"cyclic"`` searches all of Z_M, which is
    only a lower bound on Z for p = p'. ``"auto"`` picks cyclic iff p == p'.
    This is a heuristic lower bound, nothing more.
    """
    if not (1 < p < np.inf and 1 < pprime < np.inf):
        raise ValueError(f"exponents must lie in (1, inf), got {p}, {pprime}")
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    if model == "auto":
        model = "cyclic" if p == pprime else "window"
    if model not in ("cyclic", "window"):
        raise ValueError(f"unknown model {model!r}")
    M, window = model_for(kernel)
    apply, adjoint = _operator(kernel, M)
    mask = None
    if model == "window":
        mask = np.zeros(M)
        mask[window[0] : window[1]] = 1.0

    starts = {}
    d = np.zeros(M)
    d[window[0]] = 1.0
    starts["delta"] = d
    pr = np.zeros(M)
    pr[kernel.positions[kernel.positions < window[1]]] = 1.0
    starts["primes"] = pr
    q = np.zeros(M)
    q[window[0] : window[1]] = 1.0
    starts["window"] = q
    for i, ss in enumerate(np.random.SeedSequence(seed).spawn(n_random)):
        starts[f"random_{i}"] = np.random.default_rng(ss).random(M)

    best: AscentResult | None = None
    best_name = None
    per_start = {}
    for name, x0 in starts.items():
        res = boyd_ascent(apply, adjoint, x0, p, pprime, iters, mask=mask)
        per_start[name] = res.value
        if best is None or res.value > best.value:
            best, best_name = res, name
    return SearchResult(
        best.value, best.witness, best_name, best.history, per_start, model, M, window
    )


def embedding_factor(window_out: int, pprime: float, pbar: float) -> float:
    """Constant c with ||g||_{p'} <= c ||g||_{pbar} for g supported on window_out points."""
    if pprime >= pbar:
        return 1.0
    return float(window_out) ** (1.0 / pprime - 1.0 / pbar)


@dataclass
class NormReport:
    p: float
    pprime: float
    k: int
    A1: float
    A2_lo: float
    A2_hi: float
    pbar: float
    embed: float
    interpolated: float
    searched: float | None
    weak_type_max: float | None = None

    @property
    def consistent(self) -> bool:
        if self.searched is None or math.isnan(self.interpolated):
            return True
        return self.searched <= self.interpolated * (1 + 1e-12)


def norm_report(
    k: int, p: float, pprime: float, delta: float = 1e-2, iters: int = 10, seed: int = 0,
    search: bool = True, n_random: int = 2,
) -> NormReport:
    """Endpoint, certified l^2 and interpolated bounds plus an ascent lower bound.

    The interpolated bound is for l^p -> l^{pbar'} (pbar' conjugate to p) and
    is transported to l^{p'} via ``embedding_factor`` on the output window
    |Q_k| + 2^k; NaN when p lies outside [1, 2].
    """
    K = build_kernel(k)
    A1 = endpoint_l1_linf(K)
    br = sup_norm_certified(K, delta)
    pbar = conjugate(p)
    M, window = model_for(K)
    embed = embedding_factor(window[1] - window[0] + K.max_position, pprime, pbar)
    if 1 <= p <= 2:
        interp = riesz_thorin_bound(A1, br.hi, p) * embed
    else:
        interp = float("nan")
    searched = None
    if search:
        searched = norm_lowerbound_search(K, p, pprime, iters, seed, n_random=n_random).value
    return NormReport(p, pprime, k, A1, br.lo, br.hi, pbar, embed, interp, searched)
