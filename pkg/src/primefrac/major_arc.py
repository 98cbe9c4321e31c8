"""Major-arc approximation of the prime exponential sum.

    L'_{k,t}(alpha) = sum_{q in [2^t, 2^{t+1})} mu(q)/phi(q)
                      sum_{(a,q)=1} V_k(alpha - a/q) chi(2^{Ct} (alpha - a/q))

    L_{k,t}(alpha)  = same with phi_k(beta) = bump(2^{k(1-eps)} beta)

    E_k = K_k^ - L'_k,   V_k(beta) = int_0^1 e(-2^k t beta) dt.

The "chi" variant is L' and the "phi" variant is L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arcs import arc_sum
from .bump import BumpSpec
from .errors import ArcOverlapError
from .kernel import build_kernel, kernel_fourier_grid
from .numtheory import farey_arrays, mobius_totient_tables

VARIANTS = ("chi", "phi")
_SERIES_CUTOFF = 1e-6


def eval_V(k: int, alpha):
    """V_k(alpha) = (1 - e(-2^k alpha)) / (2 pi i 2^k alpha).

    Written as e(-z/2) sin(pi z)/(pi z), z = 2^k alpha, to avoid the
    cancellation in 1 - e(-z); a 4-term Taylor series below |z| < 1e-6.
    """
    a = np.asarray(alpha, dtype=np.float64)
    z = a * 2.0**k
    out = np.empty(z.shape, dtype=np.complex128)
    small = np.abs(z) < _SERIES_CUTOFF
    zs = z[small]
    out[small] = (
        1 - 1j * np.pi * zs - (2 / 3) * np.pi**2 * zs**2 + (1j / 3) * np.pi**3 * zs**3
    )
    zb = z[~small]
    out[~small] = np.exp(-1j * np.pi * zb) * np.sin(np.pi * zb) / (np.pi * zb)
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class ApproxParams:
    """Parameters of the major-arc approximation.

    ``tmax=None`` means floor(C0 * log2 k), resolved per scale by ``tmax_for``.
    """

    A: float = 2.0
    C: float = 3.0
    eps_width: float = 0.1
    tmax: int | None = None
    C0: float = 2.0
    bump: BumpSpec = field(default_factory=BumpSpec)

    def __post_init__(self):
        if self.A < 1:
            raise ValueError(f"A must be >= 1, got {self.A}")
        if self.C <= 0:
            raise ValueError(f"C must be positive, got {self.C}")
        if not 0 < self.eps_width < 0.5:
            raise ValueError(f"eps_width must lie in (0, 1/2), got {self.eps_width}")
        if self.tmax is not None and self.tmax < 0:
            raise ValueError(f"tmax must be >= 0, got {self.tmax}")
        if self.C0 < 1:
            raise ValueError(f"C0 must be >= 1, got {self.C0}")

    def tmax_for(self, k: int) -> int:
        if self.tmax is not None:
            return self.tmax
        return int(math.floor(self.C0 * math.log2(k))) if k > 1 else 0

    def chi_scale(self, t: int) -> float:
        return 2.0 ** (self.C * t)

    def phi_scale(self, k: int) -> float:
        return 2.0 ** (k * (1 - self.eps_width))

    def validate(self, k: int) -> int:
        """Check the parameters against scale k; return the resolved tmax."""
        if self.C < 3:
            raise ValueError(f"C must be >= 3 for evaluation, got {self.C}")
        tmax = self.tmax_for(k)
        if tmax + 1 > k * (1 - self.eps_width):
            raise ValueError(
                f"tmax={tmax} too large for k={k}: need 2^(tmax+1) <= 2^(k(1-eps))"
            )
        return tmax


@dataclass(frozen=True)
class Shell:
    """Reduced a/q with q in [2^t, 2^{t+1}), sorted by value."""

    t: int
    a: np.ndarray
    q: np.ndarray
    coef: np.ndarray  # mu(q) / phi(q)

    @property
    def values(self) -> np.ndarray:
        return self.a / self.q

    def __len__(self):
        return len(self.q)


@lru_cache(maxsize=64)
def shell(t: int) -> Shell:
    qmax = (1 << (t + 1)) - 1
    a, q = farey_arrays(qmax)
    keep = q >= (1 << t)
    a, q = a[keep], q[keep]
    mu, phi = mobius_totient_tables(qmax)
    coef = mu[q] / phi[q]
    for arr in (a, q, coef):
        arr.flags.writeable = False
    return Shell(t, a, q, coef)


def _reduce(alpha):
    a = np.asarray(alpha, dtype=np.float64)
    return np.mod(a, 1.0)


@dataclass(frozen=True)
class DisjointnessReport:
    t: int
    disjoint: bool
    min_gap: float
    radius: float
    pair: tuple | None = None

    def __bool__(self):
        return self.disjoint


def disjointness_check(t: int, params: ApproxParams | None = None, *, C=None, bump=None):
    """Whether the chi_t arcs around the fractions of shell t are pairwise disjoint.

    ``min_gap`` is the smallest distance between the closed supports of two
    neighbouring arcs (negative when they overlap).
    """
    params = params or ApproxParams()
    C = params.C if C is None else C
    bump = bump or params.bump
    radius = bump.support / 2.0 ** (C * t)
    sh = shell(t)
    v = sh.values
    if len(v) < 2:
        # a single arc can only meet its own translate, at distance 1
        return DisjointnessReport(t, 2 * radius <= 1.0, 1.0 - 2 * radius, radius)
    gaps = np.diff(np.append(v, v[0] + 1.0)) - 2 * radius
    i = int(np.argmin(gaps))
    j = (i + 1) % len(v)
    pair = ((int(sh.a[i]), int(sh.q[i])), (int(sh.a[j]), int(sh.q[j])))
    # touching supports are fine: the bump vanishes on its support boundary
    return DisjointnessReport(t, bool(gaps[i] >= 0), float(gaps[i]), radius, pair)


class MajorArcApprox:
    """Evaluators for V_k, L_{k,t}, L'_{k,t}, L_k, L'_k and E_k at a fixed scale."""

    def __init__(self, k: int, params: ApproxParams | None = None):
        self.k = k
        self.params = params or ApproxParams()
        self.tmax = self.params.validate(k)
        for t in range(self.tmax + 1):
            rep = disjointness_check(t, self.params)
            if not rep:
                raise ArcOverlapError(
                    f"chi arcs overlap in shell t={t}: {rep.pair}", pair=rep.pair
                )

    def V(self, alpha):
        return eval_V(self.k, alpha)

    def _bump(self, t, variant):
        if variant == "chi":
            return self.params.bump.scaled(self.params.chi_scale(t))
        if variant == "phi":
            return self.params.bump.scaled(self.params.phi_scale(self.k))
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")

    def L_shell(self, t: int, alpha, variant: str):
        if not 0 <= t <= self.tmax:
            raise ValueError(f"shell t={t} outside [0, {self.tmax}]")
        b = self._bump(t, variant)
        sh = shell(t)
        alpha = _reduce(alpha)
        scalar = alpha.ndim == 0
        alpha = np.atleast_1d(alpha)
        k = self.k
        out = arc_sum(
            sh.values, sh.coef, alpha, b.support_radius,
            lambda beta: eval_V(k, beta) * b(beta),
        )
        return complex(out[0]) if scalar else out

    def L(self, alpha, variant: str):
        alpha = _reduce(alpha)
        total = sum(self.L_shell(t, alpha, variant) for t in range(self.tmax + 1))
        return total

    def L_shell_gap(self, t: int, alpha):
        """L_{k,t} - L'_{k,t}, evaluated in one pass over the wider arc."""
        chi = self._bump(t, "chi")
        phi = self._bump(t, "phi")
        sh = shell(t)
        alpha = np.atleast_1d(_reduce(alpha))
        k = self.k
        radius = max(chi.support_radius, phi.support_radius)
        return arc_sum(
            sh.values, sh.coef, alpha, radius,
            lambda beta: eval_V(k, beta) * (phi(beta) - chi(beta)),
        )

    def E_grid(self, N: int):
        """E_k = K_k^ - L'_k on the alias-free grid j/N."""
        grid = kernel_fourier_grid(build_kernel(self.k), N)
        return grid.values - self.L(grid.alphas, "chi")


def eval_V_bound(k: int, alpha):
    """min(1, 1/(pi 2^k |alpha|)), the closed-form envelope of |V_k|."""
    a = np.abs(np.asarray(alpha, dtype=np.float64))
    with np.errstate(divide="ignore"):
        return np.minimum(1.0, 1.0 / (np.pi * 2.0**k * a))


def eval_L_shell(k, t, alpha, params=None, variant="chi"):
    return MajorArcApprox(k, params).L_shell(t, alpha, variant)


def eval_L_total(k, alpha, params=None, variant="chi"):
    return MajorArcApprox(k, params).L(alpha, variant)


def nearest_fraction(alpha, qmax: int):
    """Nearest reduced a/q (q <= qmax) to each alpha, on the circle."""
    a, q = farey_arrays(qmax)
    v = a / q
    alpha = np.atleast_1d(_reduce(alpha))
    ext = np.append(v, 1.0)
    idx = np.clip(np.searchsorted(ext, alpha), 1, len(ext) - 1)
    left = idx - 1
    right = idx
    pick_right = (ext[right] - alpha) < (alpha - ext[left])
    best = np.where(pick_right, right, left) % len(v)
    return a[best], q[best]


@dataclass
class ErrorProfile:
    k: int
    N: int
    alphas: np.ndarray
    values: np.ndarray  # complex E_k(j/N)
    sup: float
    argmax_alpha: float
    near_a: np.ndarray
    near_q: np.ndarray

    CSV_HEADER = ("alpha", "re", "im", "abs", "nearest_fraction_a", "nearest_fraction_q")

    def csv_rows(self):
        for al, v, a, q in zip(
            self.alphas.tolist(), self.values.tolist(), self.near_a.tolist(), self.near_q.tolist()
        ):
            yield al, v.real, v.imag, abs(v), a, q


def error_profile(k: int, params: ApproxParams | None = None, N: int | None = None):
    """E_k = K_k^ - L'_k on the grid j/N and its grid sup."""
    approx = MajorArcApprox(k, params)
    N = N or (1 << (k + 2))
    E = approx.E_grid(N)
    mag = np.abs(E)
    i = int(np.argmax(mag))
    alphas = np.arange(N) / N
    na, nq = nearest_fraction(alphas, (1 << (approx.tmax + 1)) - 1)
    return ErrorProfile(k, N, alphas, E, float(mag[i]), float(alphas[i]), na, nq)


@dataclass
class GapReport:
    k: int
    N: int
    sup: float
    argmax_alpha: float
    per_shell: dict
    active_fraction: float
    min_active_offset: float
    sinc_bound_holds: bool
    alphas: np.ndarray
    values: np.ndarray
    near_a: np.ndarray
    near_q: np.ndarray

    CSV_HEADER = ErrorProfile.CSV_HEADER

    def csv_rows(self):
        return ErrorProfile.csv_rows(self)


def _refine(fn, alphas, mag, h, top=32, pts=257):
    """Dense resampling of fn around the ``top`` largest grid values."""
    order = np.argsort(mag)[::-1][:top]
    best, arg = -1.0, 0.0
    offs = np.linspace(-h, h, pts)
    for i in order:
        loc = alphas[i] + offs
        m = np.abs(fn(loc))
        j = int(np.argmax(m))
        if m[j] > best:
            best, arg = float(m[j]), float(np.mod(loc[j], 1.0))
    return best, arg


def lemma_gap_sup(
    k: int, params: ApproxParams | None = None, N: int | None = None, refine: bool = True
) -> GapReport:
    """Estimate sup_alpha |L_k(alpha) - L'_k(alpha)| with a per-shell breakdown.

    The certificate grid has N points (default 2^(k+3)); the sup is then
    refined by dense resampling around the largest grid values. The active
    region is where the chi and phi bumps differ; on it the sinc envelope
    |V_k(beta)| <= (2^k |beta|)^-1 is checked at every grid point.
    """
    approx = MajorArcApprox(k, params)
    p = approx.params
    N = N or (1 << (k + 3))
    alphas = np.arange(N) / N
    per_shell = {}
    total = np.zeros(N, dtype=np.complex128)
    for t in range(approx.tmax + 1):
        d = approx.L_shell_gap(t, alphas)
        per_shell[t] = float(np.abs(d).max())
        total += d
    mag = np.abs(total)
    i = int(np.argmax(mag))
    sup, arg = float(mag[i]), float(alphas[i])
    if refine:
        fn = lambda a: sum(approx.L_shell_gap(t, a) for t in range(approx.tmax + 1))
        rsup, rarg = _refine(fn, alphas, mag, 1.0 / N)
        if rsup > sup:
            sup, arg = rsup, rarg

    # active region: distance to the nearest fraction of any shell where bumps differ
    qmax = (1 << (approx.tmax + 1)) - 1
    na, nq = nearest_fraction(alphas, qmax)
    beta = alphas - na / nq
    beta = beta - np.round(beta)
    t_of_q = np.floor(np.log2(nq)).astype(int)
    chi_v = p.bump(beta * 2.0 ** (p.C * t_of_q))
    phi_v = p.bump(beta * p.phi_scale(k))
    active = np.abs(chi_v - phi_v) > 0
    absb = np.abs(beta[active])
    sinc_ok = bool(
        np.all(np.abs(eval_V(k, beta[active])) <= 1.0 / (2.0**k * absb) + 1e-15)
    ) if active.any() else True
    return GapReport(
        k, N, sup, arg, per_shell,
        float(active.mean()),
        float(absb.min()) if active.any() else math.inf,
        sinc_ok, alphas, total, na, nq,
    )
