"""Independent reference computations used by the tests and ``selftest``.

Nothing here shares code with the fast paths it checks: the nearest-point
oracle only uses the generator matrix, and the field oracle only uses
shift-and-xor arithmetic.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import norm

from .lattice import DIM, G

# every coordinate of the nearest E8 point is within the covering radius (1)
BOX_HALF_WIDTH = 1.0 + 1e-9


def box_points(y: np.ndarray, half_width: float = BOX_HALF_WIDTH):
    """All lattice points G b with |x_i - y_i| <= half_width for every i.

    ``y`` has shape (P, 8).  Returns (owner, points) where ``owner[r]`` is
    the row of ``y`` that leaf ``r`` belongs to; leaves are grouped by owner.
    The coefficients b are enumerated coordinate by coordinate, which the
    lower-triangular G makes exhaustive.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    owner = np.arange(len(y))
    pts = np.zeros((len(y), 0))
    coef = np.zeros((len(y), 0), dtype=np.int64)
    for i in range(DIM):
        c = coef @ G[i, :i] if i else np.zeros(len(owner))
        g = G[i, i]
        lo = np.ceil((y[owner, i] - half_width - c) / g).astype(np.int64)
        hi = np.floor((y[owner, i] + half_width - c) / g).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        rep = np.repeat(np.arange(len(owner)), cnt)
        offs = np.arange(len(rep)) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        bi = lo[rep] + offs
        owner = owner[rep]
        coef = np.concatenate([coef[rep], bi[:, None]], axis=1)
        pts = np.concatenate([pts[rep], (c[rep] + g * bi)[:, None]], axis=1)
    return owner, pts


def brute_nearest(y, chunk: int = 2000) -> np.ndarray:
    """Nearest lattice point to each row of ``y`` by exhaustive box search."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    out = np.empty_like(y)
    for s in range(0, len(y), chunk):
        yc = y[s:s + chunk]
        owner, pts = box_points(yc)
        d = ((pts - yc[owner]) ** 2).sum(axis=1)
        starts = np.searchsorted(owner, np.arange(len(yc)))
        if (np.diff(np.append(starts, len(owner))) == 0).any():
            raise AssertionError("empty search box; covering radius violated")
        best = np.empty(len(yc), dtype=np.int64)
        dmin = np.minimum.reduceat(d, starts)
        is_min = d == dmin[owner]
        # first minimiser of each group
        idx = np.nonzero(is_min)[0]
        first = np.unique(owner[idx], return_index=True)[1]
        best[:] = idx[first]
        out[s:s + chunk] = pts[best]
    return out


def norm2_lattice_vectors() -> np.ndarray:
    """Lattice points of squared norm 2 found by box search around 0."""
    owner, pts = box_points(np.zeros((1, DIM)), half_width=1.0 + 1e-9)
    n2 = (pts ** 2).sum(axis=1)
    return pts[np.isclose(n2, 2.0)]


def pam_ser(q: int, sigma: float) -> float:
    """Hard-decision symbol error rate of q-PAM with unit level spacing."""
    return 2 * (q - 1) / q * norm.sf(1 / (2 * sigma))
