"""Scale-by-scale decay tables and truncated fractional-operator studies."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft

from ..arcs import arc_sum
from ..iw import IWParams, project_low, projection_multiplier
from ..kernel import build_fractional_kernel, build_kernel
from ..major_arc import ApproxParams, eval_V, shell
from ..normest import conjugate, lp_norm
from ..numtheory import chebyshev_theta
from .norms import embedding_factor, model_for, norm_lowerbound_search, norm_report, riesz_thorin_bound
from .signals import convolve

DECAY_HEADER = (
    "k", "A1", "A2_lo", "A2_hi", "interp_bound", "embed_factor", "searched_lower",
    "predicted", "envelope_k2", "envelope_klogk", "M1_measured", "tail_shell_sup",
)
TLAMBDA_HEADER = (
    "P", "lam", "p", "pprime", "admissible", "total_mass", "upper_bound", "searched_lower",
)


def log2_slope(ks, values) -> float:
    """Least-squares slope of log2(values) against k; NaN if any value is not positive."""
    v = np.asarray(values, dtype=np.float64)
    if len(v) < 2 or not np.all(np.isfinite(v)) or np.any(v <= 0):
        return float("nan")
    return float(np.polyfit(np.asarray(ks, dtype=np.float64), np.log2(v), 1)[0])


def tail_shell_sup(k: int, approx: ApproxParams, extra: int = 2, N: int | None = None) -> float:
    """Grid sup of sum_t |L_{k,t}| over the shells just past tmax.

    These are the shells the approximation drops; only shells with
    2^(t+1) <= 2^(k(1-eps_width)) are included. Returns 0 if none qualify.
    """
    t0 = approx.tmax_for(k) + 1
    tlast = min(t0 + extra - 1, int(math.floor(k * (1 - approx.eps_width))) - 1)
    if tlast < t0:
        return 0.0
    N = N or (1 << (k + 2))
    alphas = np.arange(N) / N
    b = approx.bump.scaled(approx.phi_scale(k))
    total = np.zeros(N)
    for t in range(t0, tlast + 1):
        sh = shell(t)
        total += np.abs(
            arc_sum(sh.values, sh.coef, alphas, b.support_radius, lambda x: eval_V(k, x) * b(x))
        )
    return float(total.max())


def measured_low_part(k: int, p: float, pprime: float, seed: int, samples: int = 4,
                      iw: IWParams | None = None) -> float:
    """max ||K_k * f_1||_{p'} / ||f||_p over seeded random indicators of F in Q_k."""
    iw = iw or IWParams(k)
    U = iw.freq_set()
    M, window = model_for(build_kernel(k))
    K = build_kernel(k)
    mult = projection_multiplier(iw, U, M)
    best = 0.0
    for ss in np.random.SeedSequence(seed).spawn(samples):
        rng = np.random.default_rng(ss)
        f = np.zeros(M)
        f[window[0] : window[1]] = rng.random(window[1] - window[0]) < rng.uniform(0.01, 1)
        if not f.any():
            continue
        f1, _ = project_low(f, iw, U, multiplier=mult)
        best = max(best, lp_norm(convolve(K, f1, check=False), pprime) / lp_norm(f, p))
    return best


@dataclass
class DecayStudy:
    p: float
    pprime: float
    eps_loss: float
    rows: list
    slopes: dict = field(default_factory=dict)

    header = DECAY_HEADER

    def column(self, name: str) -> np.ndarray:
        i = DECAY_HEADER.index(name)
        return np.array([r[i] for r in self.rows], dtype=np.float64)


def decay_study(
    kmin: int, kmax: int, p: float, pprime: float, eps_loss: float = 0.1,
    delta: float = 1e-2, iters: int = 5, seed: int = 0, search: bool = True,
    decomposition: bool = False, iw: IWParams | None = None,
    approx: ApproxParams | None = None,
) -> DecayStudy:
    """Per-scale bounds for f -> K_k * f from l^p to l^{p'}, k = kmin..kmax.

    ``predicted`` is 2^(-k(1/p - 1/p' - eps_loss)). The two envelope columns
    are k^2 2^(-k(2/p-1)) and k log k 2^(-k(2/p-1)); both are reported, neither
    asserted. With ``decomposition=True`` the low-frequency piece is measured
    on random indicators and the dropped shells are summed.
    """
    if kmin > kmax:
        raise ValueError(f"kmin={kmin} exceeds kmax={kmax}")
    if not 0 <= eps_loss < 1:
        raise ValueError(f"eps_loss must lie in [0, 1), got {eps_loss}")
    approx = approx or ApproxParams()
    rows = []
    gain = 2.0 / p - 1.0
    for k in range(kmin, kmax + 1):
        rep = norm_report(k, p, pprime, delta, iters, seed + k, search=search)
        predicted = 2.0 ** (-k * (1 / p - 1 / pprime - eps_loss))
        env2 = k**2 * 2.0 ** (-k * gain)
        envl = k * math.log(k) * 2.0 ** (-k * gain)
        m1 = tail = float("nan")
        if decomposition:
            m1 = measured_low_part(k, p, pprime, seed + k, iw=iw if iw and iw.k == k else None)
            tail = tail_shell_sup(k, approx)
        rows.append((
            k, rep.A1, rep.A2_lo, rep.A2_hi, rep.interpolated, rep.embed,
            rep.searched if rep.searched is not None else float("nan"),
            predicted, env2, envl, m1, tail,
        ))
    study = DecayStudy(p, pprime, eps_loss, rows)
    ks = [r[0] for r in rows]
    for name in ("A1", "A2_hi", "interp_bound", "searched_lower", "predicted", "M1_measured"):
        study.slopes[name] = log2_slope(ks, study.column(name))
    return study


def admissible(lam: float, p: float, pprime: float) -> bool:
    """p > 1 and 1/p' < 1/p - (1 - lambda)."""
    return p > 1 and 1 / pprime < 1 / p - (1 - lam)


def triangle_terms(lam: float, p: float, pprime: float, P: int) -> list[float]:
    """Per-block bounds 2^lam 2^(k(1-lam)) ||K_k||_{p->p'}, k = 1..ceil(log2 P).

    Block k holds the primes in (2^(k-1), 2^k]; there ln q / q^lam is at most
    2^lam 2^(k(1-lam)) K_k(q), and both kernels are nonnegative. The scale-k
    norm is the interpolation bound with A_2 = K_k^(0) = theta(2^k)/2^k.
    """
    if not 1 <= p <= 2:
        return [float("nan")]
    pbar = conjugate(p)
    terms = []
    for k in range(1, max(1, math.ceil(math.log2(P))) + 1):
        K = build_kernel(k)
        A1 = float(K.values.max())
        A2 = chebyshev_theta(2**k) / 2**k
        M, window = model_for(K)
        embed = embedding_factor(window[1] - window[0] + K.max_position, pprime, pbar)
        terms.append(2.0**lam * 2.0 ** (k * (1 - lam)) * riesz_thorin_bound(A1, A2, p) * embed)
    return terms


@dataclass
class TLambdaStudy:
    lam: float
    p: float
    pprime: float
    admissible: bool
    rows: list
    partial_sums: dict

    header = TLAMBDA_HEADER


def t_lambda_study(lam: float, p: float, pprime: float, P_values, iters: int = 10,
                   seed: int = 0, search: bool = True) -> TLambdaStudy:
    """Truncated T^lambda_P on finite models against the truncation P.

    For each P: total kernel mass, triangle-inequality upper bound and an
    ascent lower bound for the l^p -> l^{p'} norm. ``partial_sums[P]`` lists
    the cumulative triangle sums block by block.
    """
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    ok = admissible(lam, p, pprime)
    rows = []
    partial = {}
    for P in sorted(set(int(x) for x in P_values)):
        kern = build_fractional_kernel(lam, P)
        terms = triangle_terms(lam, p, pprime, P)
        partial[P] = np.cumsum(terms).tolist()
        low = float("nan")
        if search:
            low = norm_lowerbound_search(kern, p, pprime, iters, seed).value
        rows.append((P, lam, p, pprime, ok, kern.total_mass(), partial[P][-1], low))
    return TLambdaStudy(lam, p, pprime, ok, rows, partial)
