import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from primefrac.errors import AliasingError, ResourceCapError
from primefrac.kernel import (
    build_fractional_kernel, build_kernel, fine_grid_abs_max, kernel_fourier,
    kernel_fourier_grid, lipschitz_bound, sup_norm_certified,
)
from primefrac.numtheory import chebyshev_theta


def direct(atoms, alpha):
    return sum(w * cmath.exp(-2j * math.pi * x * alpha) for x, w in atoms)


def test_two_atom_value():
    v = kernel_fourier(build_kernel(2), 0.5)
    assert v.real == pytest.approx((math.log(2) - math.log(3)) / 4, abs=1e-15)
    assert v.real == pytest.approx(-0.101366, abs=1e-6)
    assert abs(v.imag) < 1e-15


def test_pointwise_matches_direct_sum():
    K = build_kernel(9)
    atoms = [(p, w * 2.0**-9) for p, w in K.atoms]
    for alpha in (0.0, 0.1234, 1 / 3, 0.77):
        assert kernel_fourier(K, alpha) == pytest.approx(direct(atoms, alpha), abs=1e-12)


def test_exact_rational_phases():
    K = build_kernel(14)
    assert kernel_fourier(K, Fraction(2, 7)) == pytest.approx(kernel_fourier(K, 2 / 7), abs=1e-9)


def test_zero_frequency_is_theta():
    for k in (5, 10, 16):
        assert kernel_fourier(build_kernel(k), 0.0).real == pytest.approx(
            chebyshev_theta(2**k) / 2**k, rel=1e-13)


def test_grid_matches_pointwise():
    K = build_kernel(8)
    g = kernel_fourier_grid(K, 1 << 11)
    for j in (0, 1, 37, 1000, 2047):
        assert g.values[j] == pytest.approx(kernel_fourier(K, j / 2**11), abs=1e-12)
    assert g.alphas[3] == 3 / 2**11


def test_grid_rejects():
    K = build_kernel(6)
    with pytest.raises(AliasingError):
        kernel_fourier_grid(K, 128)
    with pytest.raises(ValueError):
        kernel_fourier_grid(K, 300)


def test_fine_grid_max_matches_dense():
    K = build_kernel(6)
    N = 1 << 14
    dense = np.abs(kernel_fourier_grid(K, N).values)
    mx, arg = fine_grid_abs_max(K, N)
    assert mx == pytest.approx(dense.max(), rel=1e-12)
    assert abs(kernel_fourier(K, arg)) == pytest.approx(mx, rel=1e-10)


def test_lipschitz_bound_dominates_differences():
    K = build_kernel(7)
    L = lipschitz_bound(K)
    a = np.random.default_rng(1).random(200)
    h = 1e-4
    for x in a:
        d = abs(abs(kernel_fourier(K, x + h)) - abs(kernel_fourier(K, x)))
        assert d <= L * h * (1 + 1e-9)


@pytest.mark.parametrize("k", [5, 8])
def test_certified_bracket_contains_dense_sup(k):
    K = build_kernel(k)
    br = sup_norm_certified(K, 1e-3)
    assert br.width <= 1e-3
    dense = np.abs(kernel_fourier_grid(K, 1 << 20).values).max()
    assert br.lo <= dense + 1e-12 and dense <= br.hi


def test_bracket_cap():
    with pytest.raises(ResourceCapError):
        sup_norm_certified(build_kernel(12), 1e-9, cap=1 << 20)
    with pytest.raises(ValueError):
        sup_norm_certified(build_kernel(4), 0.0)


def test_build_kernel_range():
    for k in (0, 25):
        with pytest.raises(ValueError):
            build_kernel(k)


def test_kernel_mass_and_lookup():
    K = build_kernel(4)
    assert K(13) == pytest.approx(math.log(13) / 16)
    assert K(12) == 0.0
    assert K.total_mass() == pytest.approx(chebyshev_theta(16) / 16)


def test_fractional_kernel():
    F0 = build_fractional_kernel(0.0, 30)
    assert np.allclose(F0.values, np.log(F0.primes))
    F1 = build_fractional_kernel(1.0, 2)
    assert F1.atoms == [(2, pytest.approx(math.log(2) / 2))]
    with pytest.raises(ValueError):
        build_fractional_kernel(1.5, 10)
    with pytest.raises(ValueError):
        build_fractional_kernel(0.5, 1)
