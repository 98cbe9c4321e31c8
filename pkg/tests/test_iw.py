from dataclasses import dataclass
from math import gcd

import numpy as np
import pytest

from primefrac.errors import ArcOverlapError
from primefrac.iw import (
    IWParams, build_freq_set, iw_norm_sweep, measure_projection_norm, project_low,
    projection_multiplier,
)


def test_freq_set_is_farey():
    U = build_freq_set(9)
    brute = {(a // gcd(a, q), q // gcd(a, q)) for q in range(1, 10) for a in range(q)}
    assert set(zip(U.a.tolist(), U.q.tolist())) == brute
    assert U.is_symmetric()
    assert U.min_gap() == pytest.approx(1 / (9 * 8))


def test_freq_set_extra_members():
    from primefrac.numtheory import RationalFreq
    U = build_freq_set(3, extra=[RationalFreq(1, 7)])
    assert (1, 7) in set(zip(U.a.tolist(), U.q.tolist()))
    assert np.all(np.diff(U.values) > 0)


def test_params():
    p = IWParams(4)
    assert p.N == 16
    U = p.freq_set()
    R = p.support_radius(U)
    assert R <= U.min_gap() / 2 and R <= np.exp(-(16**0.2))
    with pytest.raises(ValueError):
        IWParams(4, rho=0.6, rhoprime=0.5)


def test_multiplier_range_and_plateau():
    p = IWParams(3)
    U = p.freq_set()
    M = p.default_M(U)
    m = projection_multiplier(p, U, M)
    assert m.min() >= 0 and m.max() <= 1
    assert m[0] == 1.0
    # each arc carries roughly 2 R M grid points
    assert np.count_nonzero(m) <= len(U) * (2 * p.support_radius(U) * M + 2)


@dataclass(frozen=True)
class WideParams(IWParams):
    def support_radius(self, U):
        return 0.3


def test_overlap_detected():
    p = WideParams(3)
    U = p.freq_set()
    with pytest.raises(ArcOverlapError) as e:
        projection_multiplier(p, U, 256)
    assert e.value.pair is not None


def test_projection_split():
    p = IWParams(3)
    U = p.freq_set()
    M = p.default_M(U)
    f = np.random.default_rng(0).standard_normal(M)
    f1, f2 = project_low(f, p, U)
    assert np.allclose(f1 + f2, f)
    assert np.linalg.norm(f1) <= np.linalg.norm(f) + 1e-12


def test_plateau_tone_is_fixed():
    p = IWParams(3)
    U = p.freq_set()
    M = p.default_M(U)
    f = np.ones(M)
    f1, f2 = project_low(f, p, U)
    assert np.max(np.abs(f2)) < 1e-12


def test_p2_norm_is_one():
    for k in (3, 5):
        rep = measure_projection_norm(2.0, IWParams(k), trials=2)
        assert abs(rep.best_ratio - 1.0) <= 1e-9


def test_sweep_deterministic():
    a = iw_norm_sweep(4.0, 3, 4, trials=2, seed=5)
    b = iw_norm_sweep(4.0, 3, 4, trials=2, seed=5)
    assert [r.best_ratio for r in a] == [r.best_ratio for r in b]
    assert [r.N for r in a] == [9, 16]
