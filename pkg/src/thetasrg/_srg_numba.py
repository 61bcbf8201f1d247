"""Numba kernel: radial slicing of a numerical-range polytope into angle bins.

Geometry: a point r*e^{j*phi} (relative angle phi) belongs to the region iff
the pair (a, b) = (r*cos(phi), r^2) lies in the convex polytope W described
by an upper concave chain b <= b_max(a), a lower convex chain b >= b_min(a)
and the abscissa range [a_lo, a_hi].  Per bin the feasible radius set is a
single interval from the upper chain minus the sub-intervals blocked by the
lower chain.
"""

from __future__ import annotations

import numpy as np

from .backend import njit


@njit(cache=True)
def slice_bins(cphis, aU, bU, aL, bL, a_lo, a_hi, bmax_at0, bmin_at0):
    """Radius intervals per angle bin.

    Returns ``(counts, packed)`` where bin k owns
    ``packed[k*cap : k*cap + counts[k]]`` with ``cap = len(aL) + 2``.
    """
    K = cphis.shape[0]
    PU = aU.shape[0] - 1
    PL = aL.shape[0] - 1
    cap = PL + 2
    packed = np.zeros((K * cap, 2), dtype=np.float64)
    counts = np.zeros(K, dtype=np.int64)
    blocked = np.empty((PL + 1, 2), dtype=np.float64)

    for k in range(K):
        c = cphis[k]
        if abs(c) < 1e-14:
            # vertical ray a = 0
            if a_lo <= 0.0 <= a_hi and bmax_at0 >= 0.0:
                hi = np.sqrt(bmax_at0)
                lo = 0.0
                if bmin_at0 > 0.0:
                    lo = np.sqrt(bmin_at0)
                if hi >= lo:
                    packed[k * cap, 0] = lo
                    packed[k * cap, 1] = hi
                    counts[k] = 1
            continue

        if c > 0.0:
            r_a_lo = a_lo / c
            r_a_hi = a_hi / c
        else:
            r_a_lo = a_hi / c
            r_a_hi = a_lo / c
        if r_a_hi < 0.0:
            continue
        if r_a_lo < 0.0:
            r_a_lo = 0.0

        # feasible interval under the upper chain (convex constraint -> one
        # interval; accumulate min/max over per-piece feasible slices)
        u_lo = np.inf
        u_hi = -np.inf
        for p in range(PU):
            a1 = aU[p]
            a2 = aU[p + 1]
            da = a2 - a1
            if da <= 1e-300:
                continue
            if c > 0.0:
                p_lo = a1 / c
                p_hi = a2 / c
            else:
                p_lo = a2 / c
                p_hi = a1 / c
            if p_hi < r_a_lo or p_lo > r_a_hi:
                continue
            if p_lo < r_a_lo:
                p_lo = r_a_lo
            if p_hi > r_a_hi:
                p_hi = r_a_hi
            m = (bU[p + 1] - bU[p]) / da
            q = bU[p] - m * a1
            mc = m * c
            disc = mc * mc + 4.0 * q
            if disc < 0.0:
                continue
            sd = np.sqrt(disc)
            rlo = 0.5 * (mc - sd)
            rhi = 0.5 * (mc + sd)
            if rlo > p_lo:
                p_lo2 = rlo
            else:
                p_lo2 = p_lo
            if rhi < p_hi:
                p_hi2 = rhi
            else:
                p_hi2 = p_hi
            if p_hi2 >= p_lo2:
                if p_lo2 < u_lo:
                    u_lo = p_lo2
                if p_hi2 > u_hi:
                    u_hi = p_hi2
        if u_hi < u_lo:
            continue
        if u_lo < 0.0:
            u_lo = 0.0
        if u_hi < u_lo:
            continue

        # blocked sub-intervals where r^2 < b_min(r c)
        nb = 0
        for p in range(PL):
            a1 = aL[p]
            a2 = aL[p + 1]
            da = a2 - a1
            if da <= 1e-300:
                continue
            if c > 0.0:
                p_lo = a1 / c
                p_hi = a2 / c
            else:
                p_lo = a2 / c
                p_hi = a1 / c
            if p_hi < u_lo or p_lo > u_hi:
                continue
            if p_lo < u_lo:
                p_lo = u_lo
            if p_hi > u_hi:
                p_hi = u_hi
            m = (bL[p + 1] - bL[p]) / da
            q = bL[p] - m * a1
            mc = m * c
            disc = mc * mc + 4.0 * q
            if disc <= 0.0:
                continue
            sd = np.sqrt(disc)
            rlo = 0.5 * (mc - sd)
            rhi = 0.5 * (mc + sd)
            if rlo < p_lo:
                rlo = p_lo
            if rhi > p_hi:
                rhi = p_hi
            if rhi > rlo:
                blocked[nb, 0] = rlo
                blocked[nb, 1] = rhi
                nb += 1
        # insertion sort blocked by lo
        for i in range(1, nb):
            lo_i = blocked[i, 0]
            hi_i = blocked[i, 1]
            j = i - 1
            while j >= 0 and blocked[j, 0] > lo_i:
                blocked[j + 1, 0] = blocked[j, 0]
                blocked[j + 1, 1] = blocked[j, 1]
                j -= 1
            blocked[j + 1, 0] = lo_i
            blocked[j + 1, 1] = hi_i

        cur = u_lo
        cnt = 0
        base = k * cap
        for i in range(nb):
            blo = blocked[i, 0]
            bhi = blocked[i, 1]
            if bhi <= cur:
                continue
            if blo > cur:
                end = blo if blo < u_hi else u_hi
                if end >= cur:
                    packed[base + cnt, 0] = cur
                    packed[base + cnt, 1] = end
                    cnt += 1
            cur = bhi
            if cur >= u_hi:
                break
        if cur <= u_hi:
            packed[base + cnt, 0] = cur
            packed[base + cnt, 1] = u_hi
            cnt += 1
        counts[k] = cnt
    return counts, packed
