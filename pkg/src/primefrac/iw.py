"""Ionescu-Wainger frequency sets and the low-frequency projection f -> f_1.

    f_1^(alpha) = sum_{theta in U} m(alpha - theta) eta_k(alpha - theta) f^(alpha),
    f_2 = f - f_1,

with m = 1 unless a multiplier is supplied. Everything lives on the cyclic
model Z_M, so the transform is sampled at alpha = j/M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft

from .arcs import arc_sum
from .bump import BumpSpec
from .errors import ArcOverlapError
from .normest import boyd_ascent, lp_norm, power_iteration_norm
from .numtheory import RationalFreq, farey_arrays


@dataclass(frozen=True)
class FreqSet:
    """U_N: here the minimal admissible set {a/q reduced : q <= N}."""

    N: int
    rho: float
    a: np.ndarray
    q: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.a / self.q

    @property
    def members(self) -> list[RationalFreq]:
        return [RationalFreq(int(x), int(y)) for x, y in zip(self.a, self.q)]

    def __len__(self):
        return len(self.q)

    def min_gap(self) -> float:
        """Smallest distance between two members on the circle."""
        if len(self.q) < 2:
            return 1.0
        v = self.values
        return float(np.min(np.diff(np.append(v, 1.0))))

    def is_symmetric(self) -> bool:
        """Closed under alpha -> -alpha mod 1."""
        neg = set(zip(((-self.a) % self.q).tolist(), self.q.tolist()))
        return neg == set(zip(self.a.tolist(), self.q.tolist()))


def build_freq_set(N: int, rho: float = 0.1, extra=None) -> FreqSet:
    """Reduced fractions with q <= N.

    ``extra`` is the hook for the superset freedom (fractions with larger
    denominators); unused by default.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    a, q = farey_arrays(N)
    if extra:
        pairs = set(zip(a.tolist(), q.tolist()))
        pairs |= {(f.a, f.q) for f in extra}
        ordered = sorted(pairs, key=lambda t: t[0] / t[1])
        a = np.array([t[0] for t in ordered], dtype=np.int64)
        q = np.array([t[1] for t in ordered], dtype=np.int64)
    return FreqSet(N, rho, a, q)


@dataclass(frozen=True)
class IWParams:
    k: int
    C0: float = 2.0
    rho: float = 0.1
    rhoprime: float = 0.5
    bump: BumpSpec = field(default_factory=BumpSpec)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.C0 < 1:
            raise ValueError(f"C0 must be >= 1, got {self.C0}")
        if not 0 < self.rho < self.rhoprime < 1:
            raise ValueError(
                f"need 0 < rho < rhoprime < 1, got rho={self.rho}, rhoprime={self.rhoprime}"
            )

    @property
    def N(self) -> int:
        return math.ceil(self.k**self.C0 - 1e-9)

    @property
    def eta_scale(self) -> float:
        """2^(k^rho'), the nominal dilation of eta."""
        return 2.0 ** (self.k**self.rhoprime)

    def freq_set(self) -> FreqSet:
        return build_freq_set(self.N, self.rho)

    def support_radius(self, U: FreqSet) -> float:
        """Radius actually used for eta_k.

        The nominal support/2^(k^rho') is capped by e^(-N^(2 rho)) and by half
        the minimal gap of U, so arcs around distinct members never overlap.
        """
        nominal = self.bump.support / self.eta_scale
        tiny = math.exp(-(U.N ** (2 * self.rho)))
        return min(nominal, tiny, U.min_gap() / 2)

    def eta(self, U: FreqSet):
        R = self.support_radius(U)
        return self.bump.scaled(self.bump.support / R)

    def default_M(self, U: FreqSet) -> int:
        """Power of two >= 2^(k+2) that puts ~16 grid points across each arc."""
        R = self.support_radius(U)
        need = max(1 << (self.k + 2), math.ceil(8 / R))
        return 1 << math.ceil(math.log2(need))


def projection_multiplier(params: IWParams, U: FreqSet, M: int, m=None) -> np.ndarray:
    """sum_theta m(alpha - theta) eta_k(alpha - theta) at alpha = j/M.

    Raises ArcOverlapError if two arcs are simultaneously nonzero at a grid point.
    """
    eta = params.eta(U)
    R = eta.support_radius
    alphas = np.arange(M) / M
    fn = eta if m is None else (lambda b: np.asarray(m(b)) * eta(b))
    vals, count = arc_sum(U.values, np.ones(len(U)), alphas, R, fn, return_count=True)
    bad = np.flatnonzero(count > 1)
    if len(bad):
        j = int(bad[0])
        near = np.argsort(np.abs(((alphas[j] - U.values) + 0.5) % 1.0 - 0.5))[:2]
        pair = tuple(str(RationalFreq(int(U.a[i]), int(U.q[i]))) for i in near)
        raise ArcOverlapError(f"eta arcs overlap at grid point j={j}: {pair}", pair=pair)
    if m is None:
        return vals.real
    return vals


def project_low(f, params: IWParams, U: FreqSet, multiplier=None, m=None):
    """Split f = f_1 + f_2 with f_1 the projection onto arcs around U.

    ``multiplier`` may be a precomputed grid multiplier (from
    ``projection_multiplier``) to avoid recomputation across calls.
    """
    f = np.asarray(getattr(f, "samples", f))
    M = len(f)
    if M & (M - 1):
        raise ValueError(f"model size must be a power of two, got {M}")
    mult = projection_multiplier(params, U, M, m) if multiplier is None else multiplier
    f1 = sfft.ifft(mult * sfft.fft(f))
    if np.isrealobj(f) and np.isrealobj(mult):
        f1 = f1.real
    return f1, f - f1


@dataclass
class ProjectionNormReport:
    p: float
    N: int
    M: int
    radius: float
    trials: int
    best_ratio: float
    witness: str
    multiplier_sup: float
    ratios: list

    @property
    def log_N(self) -> float:
        return math.log(self.N) if self.N > 1 else float("nan")

    @property
    def ratio_over_logN(self) -> float:
        return self.best_ratio / self.log_N


def _dirichlet_start(U: FreqSet, M: int, rng) -> np.ndarray:
    """Windowed sum of tones at random members of U with random phases."""
    pick = rng.choice(len(U), size=min(len(U), int(rng.integers(1, 9))), replace=False)
    L = int(rng.integers(M // 16, M // 2 + 1))
    x = np.arange(M)
    f = np.zeros(M)
    for i in pick:
        f += np.cos(2 * np.pi * U.values[i] * x + rng.uniform(0, 2 * np.pi))
    f[L:] = 0.0
    return f


def measure_projection_norm(
    p: float,
    params: IWParams,
    trials: int = 8,
    seed: int = 0,
    M: int | None = None,
    U: FreqSet | None = None,
    ascent_iters: int = 5,
    m=None,
) -> ProjectionNormReport:
    """Empirical lower bound on ||f -> f_1||_{l^p -> l^p}.

    Structured witnesses (plateau-aligned tones, delta) plus ``trials``
    seeded random starts (Gaussian or Dirichlet-like near U), each improved
    by a short alternating-duality ascent. Trial streams come from
    SeedSequence(seed).spawn(trials).
    """
    if not 1 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    U = U or params.freq_set()
    M = M or params.default_M(U)
    mult = projection_multiplier(params, U, M, m)

    def apply(x):
        y = sfft.ifft(mult * sfft.fft(x))
        return y.real if np.isrealobj(mult) else y

    def adjoint(y):
        z = sfft.ifft(np.conj(mult) * sfft.fft(y))
        return z.real if np.isrealobj(mult) else z

    ratios = []
    x = np.arange(M)
    structured = {"tone_0": np.ones(M), "delta": np.eye(1, M).ravel()}
    if len(U) > 1:
        structured["tone_1/2"] = np.cos(np.pi * x)
    for name, f in structured.items():
        ratios.append((name, lp_norm(np.real(apply(f)), p) / lp_norm(f, p)))

    streams = np.random.SeedSequence(seed).spawn(trials)
    for i, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        if i % 2 == 0:
            f0 = rng.standard_normal(M)
            name = f"gauss_{i}"
        else:
            f0 = _dirichlet_start(U, M, rng)
            name = f"dirichlet_{i}"
        res = boyd_ascent(apply, adjoint, f0, p, p, ascent_iters)
        ratios.append((name, res.value))

    name, best = max(ratios, key=lambda t: t[1])
    return ProjectionNormReport(
        p, U.N, M, params.support_radius(U), trials, float(best), name,
        float(np.abs(mult).max()), ratios,
    )


def projection_l2_power(params: IWParams, U=None, M=None, seed=0, tol=1e-14, maxiter=20000):
    """Power-iteration estimate of the l^2 norm of the projection on Z_M."""
    U = U or params.freq_set()
    M = M or params.default_M(U)
    mult = projection_multiplier(params, U, M)
    op = lambda x: sfft.ifft(mult * sfft.fft(x)).real
    x0 = np.random.default_rng(seed).standard_normal(M)
    return power_iteration_norm(op, op, x0, tol=tol, maxiter=maxiter)


IW_SWEEP_HEADER = ("N", "p", "trials", "best_ratio", "log_N", "ratio_over_logN")


def iw_norm_sweep(p, kmin, kmax, trials=8, seed=0, C0=2.0, rho=0.1, rhoprime=0.5,
                  bump=None, ascent_iters=5):
    """One ProjectionNormReport per scale k = kmin..kmax, with N = ceil(k^C0)."""
    bump = bump or BumpSpec()
    reports = []
    for k in range(kmin, kmax + 1):
        params = IWParams(k, C0, rho, rhoprime, bump)
        reports.append(
            measure_projection_norm(p, params, trials, seed + k, ascent_iters=ascent_iters)
        )
    return reports


def sweep_rows(reports):
    for r in reports:
        yield r.N, r.p, r.trials, r.best_ratio, r.log_N, r.ratio_over_logN
