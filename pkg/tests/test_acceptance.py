"""Acceptance suite: one test per criterion, tolerances pinned below.

Each test records a single PASS/FAIL line (collected at the end of the run
under "acceptance criteria") and then asserts the same condition.
"""

import math
from fractions import Fraction
from math import gcd

import numpy as np

from primefrac.iw import iw_norm_sweep
from primefrac.kernel import build_kernel, kernel_fourier, kernel_fourier_grid, sup_norm_certified
from primefrac.lab.decompose import Decomposer
from primefrac.lab.norms import endpoint_l1_linf, l2_power_norm, riesz_thorin_bound
from primefrac.lab.studies import decay_study
from primefrac.lab.weaktype import weak_type_sweep
from primefrac.major_arc import (
    ApproxParams, MajorArcApprox, disjointness_check, error_profile, lemma_gap_sup,
)
from primefrac.numtheory import (
    farey_arrays, mobius, mobius_totient_tables, prevprime, totient, totient_lowerbound_report,
)

# pinned tolerances
RATIONAL_TOL = 0.1
L2_AGREE_TOL = 1e-6
BRACKET_WIDTH = 1e-3
DECAY_SLOPE_MAX = -0.4
GAP_GROWTH_MAX = 1.10
LOW_Q_ERROR_MAX = 0.01
IW_P2_TOL = 1e-9
IW_LOGN_EXPONENT_MAX = 1.1
WEAK_RATIO_MAX = 2.0
RESIDUAL_SLACK = 1e-9


def _reduced(q):
    return [a for a in range(q) if gcd(a, q) == 1]


def test_c01_rational_point_limit(verdict):
    qs = (1, 3, 4, 5, 7, 8, 9)
    errs = {}
    for k in (14, 20):
        K = build_kernel(k)
        errs[k] = [abs(kernel_fourier(K, Fraction(a, q)) - mobius(q) / totient(q))
                   for q in qs for a in _reduced(q)]
    worst = max(errs[20])
    m14, m20 = np.median(errs[14]), np.median(errs[20])
    ok = worst <= RATIONAL_TOL and m20 < m14
    verdict(1, ok, f"max err k=20 {worst:.4g} (<= {RATIONAL_TOL}); median k=14 {m14:.4g} -> k=20 {m20:.4g}")
    assert ok


def test_c02_endpoint_exactness(verdict):
    bad = []
    for k in range(4, 21):
        A1 = endpoint_l1_linf(build_kernel(k))
        exact = math.log(prevprime(2**k)) / 2**k
        if not (A1 == exact and A1 <= k * math.log(2) / 2**k):
            bad.append(k)
    verdict(2, not bad, f"k=4..20 exact and below k ln2/2^k; failures at {bad}")
    assert not bad


def test_c03_l2_certification(verdict):
    details, ok = [], True
    for k in (8, 12, 16):
        K = build_kernel(k)
        est, _ = l2_power_norm(K)
        gmax = float(np.abs(kernel_fourier_grid(K, 1 << (k + 2)).values).max())
        br = sup_norm_certified(K, BRACKET_WIDTH)
        # power iteration approaches from below; allow the agreement tolerance under lo
        inside = br.lo - L2_AGREE_TOL <= est <= br.hi and br.lo <= gmax <= br.hi
        good = abs(est - gmax) <= L2_AGREE_TOL and br.width <= BRACKET_WIDTH and inside
        ok &= good
        details.append(f"k={k} |pow-grid|={abs(est - gmax):.1e} width={br.width:.1e}")
    verdict(3, ok, "; ".join(details))
    assert ok


def test_c04_interpolation(verdict):
    A1, A2 = 0.0123, 0.987
    ends = riesz_thorin_bound(A1, A2, 1.0) == A1 and riesz_thorin_bound(A1, A2, 2.0) == A2
    mid = math.isclose(riesz_thorin_bound(A1, A2, 4 / 3), math.sqrt(A1 * A2), rel_tol=1e-12)
    study = decay_study(12, 20, 4 / 3, 4.0, eps_loss=0.1, search=False)
    slope = study.slopes["interp_bound"]
    ok = ends and mid and slope <= DECAY_SLOPE_MAX
    verdict(4, ok, f"endpoints {ends}, p=4/3 sqrt {mid}, interp log2-slope k=12..20 {slope:.4f} (<= {DECAY_SLOPE_MAX})")
    assert ok


def test_c05_major_arc_gap(verdict):
    params = ApproxParams(C=3.0, eps_width=0.1)
    ratios = {k: lemma_gap_sup(k, params).sup * 2 ** (0.1 * k) for k in range(10, 19, 2)}
    worst = max(r / ratios[10] for r in ratios.values())
    ok = worst <= GAP_GROWTH_MAX
    shown = " ".join(f"k={k}:{r:.4f}" for k, r in ratios.items())
    verdict(5, ok, f"sup*2^(0.1k) {shown}; max/k=10 value {worst:.3f} (<= {GAP_GROWTH_MAX})")
    assert ok


def test_c06_error_profile_decrease(verdict):
    params = ApproxParams(tmax=7)
    sups = [error_profile(k, params).sup for k in range(12, 19)]
    decreasing = all(b < a for a, b in zip(sups, sups[1:]))
    k = 18
    A, K = MajorArcApprox(k, params), build_kernel(k)
    low_q = max(abs(kernel_fourier(K, Fraction(a, q)) - A.L(a / q, "chi"))
                for q in range(1, 6) for a in _reduced(q))
    ok = decreasing and low_q <= LOW_Q_ERROR_MAX
    verdict(6, ok, "grid sup k=12..18 " + " ".join(f"{s:.4f}" for s in sups)
            + f"; max |E_18(a/q)|, q<=5: {low_q:.2e} (<= {LOW_Q_ERROR_MAX})")
    assert ok


def test_c07_disjointness(verdict):
    tmax = ApproxParams().tmax_for(20)
    good = all(disjointness_check(t, C=3.0) for t in range(tmax + 1))
    counter = not disjointness_check(4, C=1.0)
    ok = good and counter
    verdict(7, ok, f"C=3 disjoint for t<=tmax(20)={tmax}: {good}; C=1,t=4 overlaps: {counter}")
    assert ok


def test_c08_iw_projection(verdict):
    p2 = iw_norm_sweep(2.0, 4, 12, trials=2)
    dev = max(abs(r.best_ratio - 1.0) for r in p2)
    p4 = iw_norm_sweep(4.0, 4, 12)
    logN = np.log([r.log_N for r in p4])
    expo = float(np.polyfit(logN, np.log([r.best_ratio for r in p4]), 1)[0])
    ok_a = dev <= IW_P2_TOL
    ok_b = expo <= IW_LOGN_EXPONENT_MAX
    ratios = " ".join(f"{r.ratio_over_logN:.3f}" for r in p4)
    verdict(8, ok_a and ok_b,
            f"(a) p=2 max |norm-1| {dev:.1e} (<= {IW_P2_TOL}); (b) p=4 ratio/logN k=4..12 {ratios}; "
            f"fitted growth exponent in log N {expo:.3f} (<= {IW_LOGN_EXPONENT_MAX})")
    assert ok_a, "p=2 projection norm"
    assert ok_b, "p=4 ratio grows faster than log N"


def test_c09_weak_type_stability(verdict):
    maxima = [weak_type_sweep(k, 0.1, 200, seed=k).max for k in range(8, 17)]
    finite = all(np.isfinite(maxima))
    growth = max(b / a for a, b in zip(maxima, maxima[1:]))
    ok = finite and growth <= WEAK_RATIO_MAX
    verdict(9, ok, "max constants k=8..16 " + " ".join(f"{m:.3f}" for m in maxima)
            + f"; largest k-to-k ratio {growth:.3f} (<= {WEAK_RATIO_MAX})")
    assert ok


def test_c10_decomposition_residual(verdict):
    worst, ok = 0.0, True
    for k in (8, 10, 12):
        D = Decomposer(k)
        rng = np.random.default_rng(1000 + k)
        Q = 1 << (k + 1)
        for _ in range(50):
            f = np.zeros(D.M)
            f[:Q] = rng.random(Q) < rng.uniform(0.01, 1.0)
            d = D(f)
            bound = d.gap * d.f_norm + RESIDUAL_SLACK
            ok &= d.residual <= bound
            worst = max(worst, d.residual / bound)
    verdict(10, ok, f"150 random indicators, worst residual/bound {worst:.3f}")
    assert ok


def test_c11_arithmetic(verdict):
    farey_ok = all(
        len(farey_arrays(N)[0])
        == sum(1 for q in range(1, N + 1) for a in range(q) if gcd(a, q) == 1)
        for N in range(1, 61)
    )
    n = 3000
    mu, phi = mobius_totient_tables(n)
    phi_brute = [0] + [sum(1 for a in range(1, q + 1) if gcd(a, q) == 1) for q in range(1, 301)]
    brute_ok = all(phi[q] == phi_brute[q] for q in range(1, 301))
    mult_ok = all(
        phi[a * b] == phi[a] * phi[b] and mu[a * b] == mu[a] * mu[b]
        for a in range(1, 55) for b in range(1, 55) if gcd(a, b) == 1
    )
    divsum_ok = all(
        sum(int(mu[d]) for d in range(1, q + 1) if q % d == 0) == (q == 1) for q in range(1, 1001)
    )
    qmax, eps = 10**5, 0.25
    rep = totient_lowerbound_report(qmax, eps)
    # independent oracle: per-q trial-division totient
    ratios = [totient(q) / q ** (1 - eps) for q in range(1, qmax + 1)]
    q0 = int(np.argmin(ratios)) + 1
    scan_ok = rep.argmin == q0 and math.isclose(rep.minimum, ratios[q0 - 1], rel_tol=1e-12)
    ok = farey_ok and brute_ok and mult_ok and divsum_ok and scan_ok
    verdict(11, ok, f"Farey {farey_ok}, phi brute {brute_ok}, multiplicative {mult_ok}, "
            f"divisor sum {divsum_ok}, totient scan to 1e5 argmin {rep.argmin} {scan_ok}")
    assert ok
