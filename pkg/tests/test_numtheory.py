import math
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primefrac.errors import EmptyTableError, ResourceCapError
from primefrac.numtheory import (
    SIEVE_CAP, RationalFreq, chebyshev_theta, factorize, farey_arrays, mobius,
    mobius_totient_tables, prevprime, reduced_fractions, sieve_primes, totient,
    totient_lowerbound_report,
)


def is_prime_slow(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def phi_gcd(q):
    return sum(1 for a in range(1, q + 1) if gcd(a, q) == 1)


def mu_slow(q):
    out = 1
    for d in range(2, q + 1):
        if q % d == 0 and is_prime_slow(d):
            if q % (d * d) == 0:
                return 0
            out = -out
    return out


def test_sieve_matches_trial_division():
    t = sieve_primes(3000)
    assert t.primes.tolist() == [n for n in range(3001) if is_prime_slow(n)]


def test_sieve_counts_and_weights():
    assert len(sieve_primes(10)) == 4
    assert len(sieve_primes(1000)) == 168
    t = sieve_primes(1 << 16)
    assert t.logweights.tolist() == [math.log(p) for p in t.primes.tolist()]


def test_sieve_upto_slices():
    t = sieve_primes(100)
    assert t.upto(10).primes.tolist() == [2, 3, 5, 7]


def test_sieve_rejects_bad_limits():
    with pytest.raises(EmptyTableError):
        sieve_primes(1)
    with pytest.raises(ResourceCapError):
        sieve_primes(SIEVE_CAP + 1)


def test_mobius_totient_against_brute_force():
    mu, phi = mobius_totient_tables(400)
    for q in range(1, 401):
        assert phi[q] == phi_gcd(q) == totient(q)
        assert mu[q] == mu_slow(q) == mobius(q)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 3000))
def test_multiplicativity(a, b):
    if gcd(a, b) == 1:
        assert totient(a * b) == totient(a) * totient(b)
        assert mobius(a * b) == mobius(a) * mobius(b)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(is_prime_slow(p) for p in f)


def test_mobius_divisor_sum():
    for q in range(1, 500):
        s = sum(mobius(d) for d in range(1, q + 1) if q % d == 0)
        assert s == (1 if q == 1 else 0)


def test_farey_small():
    a, q = farey_arrays(3)
    assert list(zip(a.tolist(), q.tolist())) == [(0, 1), (1, 3), (1, 2), (2, 3)]


@pytest.mark.parametrize("N", [1, 2, 5, 17, 40])
def test_farey_against_brute_force(N):
    a, q = farey_arrays(N)
    brute = sorted({(x // gcd(x, y), y // gcd(x, y)) for y in range(1, N + 1) for x in range(y)},
                   key=lambda t: t[0] / t[1])
    assert list(zip(a.tolist(), q.tolist())) == brute
    assert len(a) == sum(phi_gcd(y) for y in range(1, N + 1))


def test_farey_neighbours_unimodular():
    a, q = farey_arrays(30)
    assert np.all(a[1:] * q[:-1] - a[:-1] * q[1:] == 1)


def test_farey_count_100():
    assert len(reduced_fractions(100)) == 3044


def test_rational_freq():
    assert RationalFreq.canonical(4, 6) == RationalFreq(2, 3)
    assert RationalFreq.canonical(-1, 3) == RationalFreq(2, 3)
    with pytest.raises(ValueError):
        RationalFreq(2, 4)
    with pytest.raises(ValueError):
        RationalFreq(3, 3)


def test_chebyshev_theta():
    assert chebyshev_theta(10) == pytest.approx(math.log(210), abs=1e-12)
    assert chebyshev_theta(1) == 0.0


def test_prevprime():
    assert prevprime(16) == 13
    assert prevprime(14) == 13
    assert prevprime(1 << 20) == max(p for p in range((1 << 20) - 200, 1 << 20) if is_prime_slow(p))


def test_totient_report_matches_scan():
    rep = totient_lowerbound_report(30, 0.25)
    vals = {q: phi_gcd(q) / q**0.75 for q in range(1, 31)}
    q0 = min(vals, key=vals.get)
    assert rep.argmin == q0 == 6
    assert rep.minimum == pytest.approx(vals[6], rel=1e-12)
    rep2 = totient_lowerbound_report(2, 0.5)
    assert rep2.minimum == pytest.approx(2**-0.5)


def test_totient_report_rejects():
    with pytest.raises(ValueError):
        totient_lowerbound_report(1, 0.25)
    with pytest.raises(ValueError):
        totient_lowerbound_report(10, 1.5)
