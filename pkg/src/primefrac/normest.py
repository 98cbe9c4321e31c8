"""Lower-bound estimators for operator norms l^p -> l^q of real linear maps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def lp_norm(x, p: float) -> float:
    a = np.abs(x)
    m = a.max(initial=0.0)
    if m == 0:
        return 0.0
    if np.isinf(p):
        return float(m)
    return float(m * np.sum((a / m) ** p) ** (1.0 / p))


def conjugate(p: float) -> float:
    if p == 1:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


def dual_direction(y, r: float):
    """w with ||w||_{r'} = 1 and <y, w> = ||y||_r."""
    n = lp_norm(y, r)
    if n == 0:
        return np.zeros_like(y)
    return np.sign(y) * (np.abs(y) / n) ** (r - 1.0)


@dataclass
class AscentResult:
    value: float
    witness: np.ndarray
    history: list = field(default_factory=list)


def boyd_ascent(apply, adjoint, x0, p: float, q: float, iters: int, mask=None) -> AscentResult:
    """Alternating-duality ascent for ||A||_{p->q}.

    x <- dual_{p'}(A^T dual_q(A x)); the ratio ||Ax||_q / ||x||_p never
    decreases (Hoelder), so ``history`` is nondecreasing up to rounding.
    ``mask`` confines iterates to a support window.
    """
    pc = conjugate(p)
    x = np.asarray(x0, dtype=np.float64)
    if mask is not None:
        x = x * mask
    nx = lp_norm(x, p)
    if nx == 0:
        raise ValueError("start vector vanishes on the search window")
    x = x / nx
    best = AscentResult(-1.0, x)
    for it in range(iters + 1):
        y = apply(x)
        val = lp_norm(y, q)
        best.history.append(val)
        if val > best.value:
            best.value, best.witness = val, x
        if it == iters:
            break
        z = adjoint(dual_direction(y, q))
        if mask is not None:
            z = z * mask
        if not np.any(z):
            break
        x = dual_direction(z, pc)
    return best


def power_iteration_norm(apply, adjoint, x0, tol=1e-14, maxiter=20000):
    """sqrt of the top eigenvalue of A^T A by power iteration.

    Returns (estimate, iterations). The estimate ||A x||_2 with ||x||_2 = 1
    increases monotonically towards ||A||_{2->2}.
    """
    x = np.asarray(x0, dtype=np.float64)
    x = x / np.linalg.norm(x)
    est = 0.0
    for it in range(1, maxiter + 1):
        y = apply(x)
        new = float(np.linalg.norm(y))
        z = adjoint(y)
        nz = np.linalg.norm(z)
        if nz == 0:
            return new, it
        x = z / nz
        if abs(new - est) <= tol * max(new, 1e-300):
            return new, it
        est = new
    return est, maxiter
