"""Restricted weak-type harness: pairings <K_k * 1_F, 1_G> over sets in Q_k."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..kernel import build_kernel
from .signals import SignalWindow, convolve

FAMILIES = ("random", "interval", "primes-shifted")
WEAK_HEADER = ("k", "family", "trial", "F_size", "G_size", "pairing", "constant")


def weak_type_constant(pairing: float, nF: int, nG: int, Q: int, eps: float) -> float:
    """pairing / [|Q| (|F|/|Q|)^(1-eps) (|G|/|Q|)^(1-eps)], 0 for empty sets."""
    if nF == 0 or nG == 0:
        return 0.0
    return pairing / (Q * (nF / Q) ** (1 - eps) * (nG / Q) ** (1 - eps))


def pairing(kernel, F, G, M: int) -> float:
    f = np.zeros(M)
    f[np.asarray(F, dtype=np.int64)] = 1.0
    g = np.asarray(G, dtype=np.int64)
    if len(g) == 0 or not f.any():
        return 0.0
    return float(convolve(kernel, f)[g].sum())


def _random_sets(rng, Q):
    out = []
    for _ in range(2):
        d = 10 ** rng.uniform(-3, 0)
        s = np.flatnonzero(rng.random(Q) < d)
        if len(s) == 0:
            s = np.array([rng.integers(Q)])
        out.append(s)
    return out


def _interval(rng, Q):
    L = int(round(2 ** rng.uniform(0, np.log2(Q))))
    a = int(rng.integers(0, Q - L + 1))
    return np.arange(a, a + L)


def _family_sets(family, trial, rng, k, kernel):
    Q = 1 << (k + 1)
    if family == "random":
        return _random_sets(rng, Q)
    if family == "interval":
        if trial == 0:
            return np.arange(Q), np.arange(Q)
        if trial == 1:
            return np.array([0]), np.array([kernel.max_position])
        return _interval(rng, Q), _interval(rng, Q)
    if family == "primes-shifted":
        # F in [0, 2^k) so F + primes stays inside Q
        L = int(round(2 ** rng.uniform(0, k)))
        d = 10 ** rng.uniform(-2, 0)
        F = np.flatnonzero(rng.random(L) < d)
        if len(F) == 0:
            F = np.array([0])
        G = np.unique((F[:, None] + kernel.positions[None, :]).ravel())
        return F, G
    raise ValueError(f"unknown set family {family!r}; choose from {FAMILIES}")


@dataclass
class WeakTypeResult:
    k: int
    eps: float
    family: str
    constants: np.ndarray
    rows: list

    @property
    def max(self) -> float:
        return float(self.constants.max())

    @property
    def argmax(self) -> int:
        return int(self.constants.argmax())

    def quantiles(self, qs=(0.5, 0.9, 0.99)):
        return {q: float(np.quantile(self.constants, q)) for q in qs}


def weak_type_sweep(k: int, eps: float, trials: int, seed: int, set_family: str = "random"):
    """Restricted weak-type constants for ``trials`` seeded set pairs F, G in Q_k."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    if set_family not in FAMILIES:
        raise ValueError(f"unknown set family {set_family!r}; choose from {FAMILIES}")
    kernel = build_kernel(k)
    model = SignalWindow.for_scale(k)
    Q = model.Q_size
    rows = []
    consts = np.empty(trials)
    for i, ss in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(ss)
        F, G = _family_sets(set_family, i, rng, k, kernel)
        val = pairing(kernel, F, G, model.M)
        c = weak_type_constant(val, len(F), len(G), Q, eps)
        consts[i] = c
        rows.append((k, set_family, i, len(F), len(G), val, c))
    return WeakTypeResult(k, eps, set_family, consts, rows)
