"""Smooth compactly supported bumps with a flat plateau."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _g(s):
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


@dataclass(frozen=True)
class BumpSpec:
    """Even bump: 1 on |t| <= plateau, 0 on |t| >= support, C^infinity between.

    The transition is g(x) / (g(x) + g(1 - x)) with g(s) = exp(-1/s), x the
    normalized distance from the support edge.
    """

    plateau: float = 0.25
    support: float = 0.5

    def __post_init__(self):
        if not 0 < self.plateau < self.support:
            raise ValueError(
                f"need 0 < plateau < support, got {self.plateau}, {self.support}"
            )

    def __call__(self, t):
        a = np.abs(np.asarray(t, dtype=np.float64))
        width = self.support - self.plateau
        x = (self.support - a) / width
        y = (a - self.plateau) / width
        gx, gy = _g(x), _g(y)
        with np.errstate(invalid="ignore", divide="ignore"):
            mid = gx / (gx + gy)
        out = np.where(a <= self.plateau, 1.0, np.where(a >= self.support, 0.0, mid))
        return out if out.ndim else float(out)

    def scaled(self, scale: float):
        """t -> bump(scale * t)."""
        return ScaledBump(self, float(scale))


@dataclass(frozen=True)
class ScaledBump:
    base: BumpSpec
    scale: float

    @property
    def plateau_radius(self) -> float:
        return self.base.plateau / self.scale

    @property
    def support_radius(self) -> float:
        return self.base.support / self.scale

    def __call__(self, t):
        return self.base(np.asarray(t, dtype=np.float64) * self.scale)
