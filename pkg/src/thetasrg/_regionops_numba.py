"""Numba kernels for log-polar region algebra.

A binned factor is (counts, offsets, intervals, idx_lo): bin i holds radius
intervals of the relative angle (idx_lo + i) * step.  The pointwise set
product of two factors is an index-convolution: output bin m collects the
radius products of every bin pair with index sum m, merged per bin.
"""

from __future__ import annotations

import numpy as np

from .backend import njit


@njit(cache=True)
def convolve_bins(counts_a, offsets_a, ints_a, counts_b, offsets_b, ints_b):
    """Index-convolution product of two binned factors.

    Returns ``(counts, offsets, intervals)`` for the output index range
    ``[0, Ba + Bb - 2]`` (caller adds the idx_lo offsets).
    """
    Ba = counts_a.shape[0]
    Bb = counts_b.shape[0]
    Bo = Ba + Bb - 1

    raw = np.zeros(Bo, dtype=np.int64)
    for ia in range(Ba):
        na = counts_a[ia]
        if na == 0:
            continue
        for ib in range(Bb):
            nb = counts_b[ib]
            if nb:
                raw[ia + ib] += na * nb
    roff = np.zeros(Bo + 1, dtype=np.int64)
    for m in range(Bo):
        roff[m + 1] = roff[m] + raw[m]
    total = roff[Bo]
    buf = np.empty((total, 2), dtype=np.float64)
    cursor = roff[:-1].copy()
    for ia in range(Ba):
        if counts_a[ia] == 0:
            continue
        for i in range(offsets_a[ia], offsets_a[ia + 1]):
            la = ints_a[i, 0]
            ha = ints_a[i, 1]
            for ib in range(Bb):
                if counts_b[ib] == 0:
                    continue
                m = ia + ib
                for j in range(offsets_b[ib], offsets_b[ib + 1]):
                    p = cursor[m]
                    buf[p, 0] = la * ints_b[j, 0]
                    buf[p, 1] = ha * ints_b[j, 1]
                    cursor[m] = p + 1

    # merge each output bin in place
    out = np.empty((total, 2), dtype=np.float64)
    counts = np.zeros(Bo, dtype=np.int64)
    offsets = np.zeros(Bo + 1, dtype=np.int64)
    w = 0
    for m in range(Bo):
        s = roff[m]
        e = roff[m + 1]
        offsets[m] = w
        if e == s:
            continue
        seg = buf[s:e]
        order = np.argsort(seg[:, 0], kind="mergesort")
        cur_lo = seg[order[0], 0]
        cur_hi = seg[order[0], 1]
        cnt = 0
        for t in range(1, e - s):
            lo = seg[order[t], 0]
            hi = seg[order[t], 1]
            if lo <= cur_hi:
                if hi > cur_hi:
                    cur_hi = hi
            else:
                out[w, 0] = cur_lo
                out[w, 1] = cur_hi
                w += 1
                cnt += 1
                cur_lo = lo
                cur_hi = hi
        out[w, 0] = cur_lo
        out[w, 1] = cur_hi
        w += 1
        cnt += 1
        counts[m] = cnt
    offsets[Bo] = w
    return counts, offsets, out[:w].copy()
