"""Hot loops for segment coverage and point location on developed cells.

A cell is the affine image ``x = L y + off`` of a prototype ``K`` given by
up to ``K`` half-planes ``a . y <= c`` (rows ``hp[c, k] = (a0, a1, c)``,
only the first ``nhp[c]`` used) and optionally the unit disk ``|y| <= 1``.
Cells are passed as ``Linv = L^{-1}`` and ``off``.

Two backends share one signature: numba ``@njit`` kernels and vectorised
numpy. Set ``GTBEND_DISABLE_NUMBA=1`` to force numpy; numba is also skipped
silently when it cannot be imported.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("GTBEND_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:  # pragma: no cover - exercised through BACKEND
    if _DISABLED:
        raise ImportError("disabled by GTBEND_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"


# -- numpy reference implementations -----------------------------------------


def segment_intervals_numpy(Linv, off, hp, nhp, disk, P0, P1, slack):
    """Parameter intervals ``[lo, hi]`` of ``P0 + s (P1 - P0)`` inside each cell.

    Returns arrays of shape ``(T, C)``; an empty intersection has ``lo > hi``.
    """
    D = P1 - P0
    Y0 = np.einsum("cij,tcj->tci", Linv, P0[:, None, :] - off[None, :, :])
    DY = np.einsum("cij,tj->tci", Linv, D)
    T, C = Y0.shape[:2]
    lo = np.zeros((T, C))
    hi = np.ones((T, C))
    for k in range(hp.shape[1]):
        active = (k < nhp)[None, :]
        a = hp[:, k, :2]
        num = hp[None, :, k, 2] + slack - np.einsum("tci,ci->tc", Y0, a)
        den = np.einsum("tci,ci->tc", DY, a)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = num / den
        up = active & (den > 0)
        dn = active & (den < 0)
        flat_bad = active & (den == 0) & (num < 0)
        hi = np.where(up, np.minimum(hi, r), hi)
        lo = np.where(dn, np.maximum(lo, r), lo)
        lo = np.where(flat_bad, 2.0, lo)
    A = np.einsum("tci,tci->tc", DY, DY)
    B = 2.0 * np.einsum("tci,tci->tc", Y0, DY)
    Cq = np.einsum("tci,tci->tc", Y0, Y0) - 1.0 - slack
    disc = B * B - 4.0 * A * Cq
    use = disk[None, :]
    tiny = A <= 1e-300
    with np.errstate(divide="ignore", invalid="ignore"):
        sq = np.sqrt(np.maximum(disc, 0.0))
        r1 = (-B - sq) / (2.0 * A)
        r2 = (-B + sq) / (2.0 * A)
    ok_quad = use & ~tiny & (disc >= 0)
    lo = np.where(ok_quad, np.maximum(lo, r1), lo)
    hi = np.where(ok_quad, np.minimum(hi, r2), hi)
    lo = np.where(use & ~tiny & (disc < 0), 2.0, lo)
    lo = np.where(use & tiny & (Cq > 0), 2.0, lo)
    return lo, hi


def coverage_gaps_numpy(lo, hi, mask, tol):
    """First gap of the union of masked intervals inside ``[0, 1]``.

    Returns ``(start, end)`` per row; ``start = -1`` when fully covered.
    """
    T = lo.shape[0]
    start = np.full(T, -1.0)
    end = np.full(T, -1.0)
    for t in range(T):
        sel = mask[t] & (lo[t] <= hi[t])
        a = lo[t][sel]
        b = hi[t][sel]
        order = np.argsort(a, kind="stable")
        cur = 0.0
        found = False
        for i in order:
            if a[i] > cur + tol:
                start[t], end[t] = cur, a[i]
                found = True
                break
            cur = max(cur, b[i])
        if not found and cur < 1.0 - tol:
            start[t], end[t] = cur, 1.0
    return start, end


def points_in_cells_numpy(Linv, off, hp, nhp, disk, X, slack):
    Y = np.einsum("cij,ncj->nci", Linv, X[:, None, :] - off[None, :, :])
    inside = np.ones(Y.shape[:2], dtype=bool)
    for k in range(hp.shape[1]):
        active = (k < nhp)[None, :]
        val = np.einsum("nci,ci->nc", Y, hp[:, k, :2]) - hp[None, :, k, 2]
        inside &= ~active | (val <= slack)
    r2 = np.einsum("nci,nci->nc", Y, Y)
    inside &= ~disk[None, :] | (r2 <= 1.0 + slack)
    return inside


# -- numba kernels ---------------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _segment_intervals_nb(Linv, off, hp, nhp, disk, P0, P1, slack):  # pragma: no cover
        T = P0.shape[0]
        C = Linv.shape[0]
        lo = np.zeros((T, C))
        hi = np.ones((T, C))
        for t in range(T):
            dx = P1[t, 0] - P0[t, 0]
            dy = P1[t, 1] - P0[t, 1]
            for c in range(C):
                px = P0[t, 0] - off[c, 0]
                py = P0[t, 1] - off[c, 1]
                y0 = Linv[c, 0, 0] * px + Linv[c, 0, 1] * py
                y1 = Linv[c, 1, 0] * px + Linv[c, 1, 1] * py
                d0 = Linv[c, 0, 0] * dx + Linv[c, 0, 1] * dy
                d1 = Linv[c, 1, 0] * dx + Linv[c, 1, 1] * dy
                a_lo = 0.0
                a_hi = 1.0
                for k in range(nhp[c]):
                    num = hp[c, k, 2] + slack - (hp[c, k, 0] * y0 + hp[c, k, 1] * y1)
                    den = hp[c, k, 0] * d0 + hp[c, k, 1] * d1
                    if den > 0:
                        r = num / den
                        if r < a_hi:
                            a_hi = r
                    elif den < 0:
                        r = num / den
                        if r > a_lo:
                            a_lo = r
                    elif num < 0:
                        a_lo = 2.0
                if disk[c]:
                    A = d0 * d0 + d1 * d1
                    B = 2.0 * (y0 * d0 + y1 * d1)
                    Cq = y0 * y0 + y1 * y1 - 1.0 - slack
                    if A <= 1e-300:
                        if Cq > 0:
                            a_lo = 2.0
                    else:
                        disc = B * B - 4.0 * A * Cq
                        if disc < 0:
                            a_lo = 2.0
                        else:
                            sq = np.sqrt(disc)
                            r1 = (-B - sq) / (2.0 * A)
                            r2 = (-B + sq) / (2.0 * A)
                            if r1 > a_lo:
                                a_lo = r1
                            if r2 < a_hi:
                                a_hi = r2
                lo[t, c] = a_lo
                hi[t, c] = a_hi
        return lo, hi

    @njit(cache=True)
    def _coverage_gaps_nb(lo, hi, mask, tol):  # pragma: no cover
        T, C = lo.shape
        start = np.full(T, -1.0)
        end = np.full(T, -1.0)
        for t in range(T):
            keys = np.empty(C)
            for c in range(C):
                keys[c] = lo[t, c] if (mask[t, c] and lo[t, c] <= hi[t, c]) else np.inf
            order = np.argsort(keys, kind="mergesort")
            cur = 0.0
            found = False
            for j in range(C):
                c = order[j]
                if keys[c] == np.inf:
                    break
                if lo[t, c] > cur + tol:
                    start[t] = cur
                    end[t] = lo[t, c]
                    found = True
                    break
                if hi[t, c] > cur:
                    cur = hi[t, c]
            if not found and cur < 1.0 - tol:
                start[t] = cur
                end[t] = 1.0
        return start, end

    @njit(cache=True)
    def _points_in_cells_nb(Linv, off, hp, nhp, disk, X, slack):  # pragma: no cover
        N = X.shape[0]
        C = Linv.shape[0]
        out = np.zeros((N, C), dtype=np.bool_)
        for i in range(N):
            for c in range(C):
                px = X[i, 0] - off[c, 0]
                py = X[i, 1] - off[c, 1]
                y0 = Linv[c, 0, 0] * px + Linv[c, 0, 1] * py
                y1 = Linv[c, 1, 0] * px + Linv[c, 1, 1] * py
                ok = True
                for k in range(nhp[c]):
                    if hp[c, k, 0] * y0 + hp[c, k, 1] * y1 - hp[c, k, 2] > slack:
                        ok = False
                        break
                if ok and disk[c] and y0 * y0 + y1 * y1 > 1.0 + slack:
                    ok = False
                out[i, c] = ok
        return out


def _prep(Linv, off, hp, nhp, disk):
    return (
        np.ascontiguousarray(Linv, dtype=np.float64),
        np.ascontiguousarray(off, dtype=np.float64),
        np.ascontiguousarray(hp, dtype=np.float64),
        np.ascontiguousarray(nhp, dtype=np.int64),
        np.ascontiguousarray(disk, dtype=np.bool_),
    )


def segment_intervals(Linv, off, hp, nhp, disk, P0, P1, slack=0.0, backend=None):
    args = _prep(Linv, off, hp, nhp, disk)
    P0 = np.ascontiguousarray(P0, dtype=np.float64)
    P1 = np.ascontiguousarray(P1, dtype=np.float64)
    if (backend or BACKEND) == "numba" and HAS_NUMBA:
        return _segment_intervals_nb(*args, P0, P1, float(slack))
    return segment_intervals_numpy(*args, P0, P1, float(slack))


def coverage_gaps(lo, hi, mask, tol=1e-12, backend=None):
    mask = np.ascontiguousarray(mask, dtype=np.bool_)
    if (backend or BACKEND) == "numba" and HAS_NUMBA:
        return _coverage_gaps_nb(np.ascontiguousarray(lo), np.ascontiguousarray(hi), mask, float(tol))
    return coverage_gaps_numpy(lo, hi, mask, float(tol))


def points_in_cells(Linv, off, hp, nhp, disk, X, slack=0.0, backend=None):
    args = _prep(Linv, off, hp, nhp, disk)
    X = np.ascontiguousarray(X, dtype=np.float64)
    if (backend or BACKEND) == "numba" and HAS_NUMBA:
        return _points_in_cells_nb(*args, X, float(slack))
    return points_in_cells_numpy(*args, X, float(slack))
