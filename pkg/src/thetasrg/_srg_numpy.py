"""Vectorized numpy twin of the radial slicing kernel in _srg_numba."""

from __future__ import annotations

import numpy as np


def _piece_ranges(a1, a2, c):
    """r-range images of the abscissa pieces [a1, a2] under a = r*c."""
    if c > 0.0:
        return a1 / c, a2 / c
    return a2 / c, a1 / c


def slice_bins(cphis, aU, bU, aL, bL, a_lo, a_hi, bmax_at0, bmin_at0):
    K = len(cphis)
    PL = len(aL) - 1
    cap = PL + 2
    packed = np.zeros((K * cap, 2))
    counts = np.zeros(K, dtype=np.int64)

    mU = np.diff(bU) / np.diff(aU)
    qU = bU[:-1] - mU * aU[:-1]
    mL = np.diff(bL) / np.diff(aL)
    qL = bL[:-1] - mL * aL[:-1]
    okU = np.diff(aU) > 1e-300
    okL = np.diff(aL) > 1e-300

    for k in range(K):
        c = cphis[k]
        if abs(c) < 1e-14:
            if a_lo <= 0.0 <= a_hi and bmax_at0 >= 0.0:
                hi = np.sqrt(bmax_at0)
                lo = np.sqrt(bmin_at0) if bmin_at0 > 0.0 else 0.0
                if hi >= lo:
                    packed[k * cap] = (lo, hi)
                    counts[k] = 1
            continue
        r_a_lo, r_a_hi = _piece_ranges(a_lo, a_hi, c)
        if r_a_hi < 0.0:
            continue
        r_a_lo = max(r_a_lo, 0.0)

        p_lo, p_hi = _piece_ranges(aU[:-1], aU[1:], c)
        p_lo = np.maximum(p_lo, r_a_lo)
        p_hi = np.minimum(p_hi, r_a_hi)
        mc = mU * c
        disc = mc * mc + 4.0 * qU
        with np.errstate(invalid="ignore"):
            sd = np.sqrt(np.maximum(disc, 0.0))
        lo2 = np.maximum(0.5 * (mc - sd), p_lo)
        hi2 = np.minimum(0.5 * (mc + sd), p_hi)
        feas = okU & (disc >= 0.0) & (hi2 >= lo2)
        if not feas.any():
            continue
        u_lo = max(float(lo2[feas].min()), 0.0)
        u_hi = float(hi2[feas].max())
        if u_hi < u_lo:
            continue

        p_lo, p_hi = _piece_ranges(aL[:-1], aL[1:], c)
        p_lo = np.maximum(p_lo, u_lo)
        p_hi = np.minimum(p_hi, u_hi)
        mc = mL * c
        disc = mc * mc + 4.0 * qL
        with np.errstate(invalid="ignore"):
            sd = np.sqrt(np.maximum(disc, 0.0))
        blo = np.maximum(0.5 * (mc - sd), p_lo)
        bhi = np.minimum(0.5 * (mc + sd), p_hi)
        blk = okL & (disc > 0.0) & (bhi > blo)

        cur = u_lo
        cnt = 0
        base = k * cap
        if blk.any():
            b = np.stack([blo[blk], bhi[blk]], axis=1)
            b = b[np.argsort(b[:, 0], kind="stable")]
            for i in range(len(b)):
                lo_i, hi_i = b[i]
                if hi_i <= cur:
                    continue
                if lo_i > cur:
                    packed[base + cnt] = (cur, min(lo_i, u_hi))
                    cnt += 1
                cur = hi_i
                if cur >= u_hi:
                    break
        if cur <= u_hi:
            packed[base + cnt] = (cur, u_hi)
            cnt += 1
        counts[k] = cnt
    return counts, packed
