"""Sums of functions localized on arcs around points of the circle."""

from __future__ import annotations

import numpy as np


def arc_sum(centers, coef, alpha, radius, fn, return_count=False):
    """sum over centers c with |alpha - c| <= radius (mod 1) of coef_c * fn(alpha - c).

    ``centers`` must be sorted in [0, 1). Lookup is by interval search against
    the centers and their +-1 translates, so each alpha visits only the
    centers whose arc can contain it. With ``return_count`` also return how
    many arcs give a nonzero term at each alpha.
    """
    centers = np.asarray(centers, dtype=np.float64)
    coef = np.asarray(coef)
    ext = np.concatenate([centers - 1.0, centers, centers + 1.0])
    ext_coef = np.concatenate([coef, coef, coef])
    lo = np.searchsorted(ext, alpha - radius, side="left")
    hi = np.searchsorted(ext, alpha + radius, side="right")
    count = hi - lo
    out = np.zeros(alpha.shape, dtype=np.complex128)
    nonzero = np.zeros(alpha.shape, dtype=np.int64) if return_count else None
    for j in range(int(count.max(initial=0))):
        sel = np.flatnonzero(count > j)
        idx = lo[sel] + j
        term = ext_coef[idx] * fn(alpha[sel] - ext[idx])
        out[sel] += term
        if return_count:
            nonzero[sel] += term != 0
    if return_count:
        return out, nonzero
    return out
