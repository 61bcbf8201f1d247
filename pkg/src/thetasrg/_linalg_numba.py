"""Numba kernels: dense complex eigensolvers sized for desk-scale matrices.

Hermitian problems use cyclic Jacobi rotations (unconditionally stable for
n <= 32); general spectra use Householder reduction to Hessenberg form
followed by Wilkinson-shifted QR steps.  Everything here is eigenvalue-only
or eigenpair-level work on small matrices inside hot sweeps, so the code is
written as plain scalar loops for numba.
"""

from __future__ import annotations

import numpy as np

from .backend import njit

_JACOBI_MAX_SWEEPS = 60
_QR_MAX_ITERS_PER_EIG = 64


@njit(cache=True)
def jacobi_eigh(H):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, V, converged)`` with eigenvalues ``w`` ascending and unit
    eigenvector columns in ``V``.  The caller is responsible for symmetrizing
    the input; only the upper triangle's Hermitian structure is assumed.
    """
    n = H.shape[0]
    A = H.copy()
    V = np.eye(n, dtype=np.complex128)
    if n == 1:
        w = np.empty(1, dtype=np.float64)
        w[0] = A[0, 0].real
        return w, V, True

    scale = 0.0
    for i in range(n):
        for j in range(n):
            m = abs(A[i, j])
            if m > scale:
                scale = m
    if scale == 0.0:
        w = np.zeros(n, dtype=np.float64)
        return w, V, True
    stop = (1e-15 * scale) ** 2 * n * n

    converged = False
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(A[p, q]) ** 2
        if off <= stop:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(A[p, q])
                if g <= 1e-18 * scale:
                    continue
                phase = A[p, q] / g
                # small-magnitude root of t^2 - 2*tau*t - 1 = 0
                tau = (A[q, q].real - A[p, p].real) / (2.0 * g)
                if tau >= 0.0:
                    t = -1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = (t * c) * np.conj(phase)
                sb = np.conj(s)
                # columns p, q of A (A <- A J)
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp + s * akq
                    A[k, q] = -sb * akp + c * akq
                # rows p, q of A (A <- J^H A)
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk + sb * aqk
                    A[q, k] = -s * apk + c * aqk
                # force exact Hermitian pair on the rotated 2x2 block
                A[p, q] = 0.5 * (A[p, q] + np.conj(A[q, p]))
                A[q, p] = np.conj(A[p, q])
                A[p, p] = complex(A[p, p].real, 0.0)
                A[q, q] = complex(A[q, q].real, 0.0)
                # accumulate V <- V J
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp + s * vkq
                    V[k, q] = -sb * vkp + c * vkq

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = A[i, i].real
    order = np.argsort(w)
    w_sorted = np.empty(n, dtype=np.float64)
    V_sorted = np.empty((n, n), dtype=np.complex128)
    for idx in range(n):
        w_sorted[idx] = w[order[idx]]
        for k in range(n):
            V_sorted[k, idx] = V[k, order[idx]]
    return w_sorted, V_sorted, converged


@njit(cache=True)
def support_sweep(H1, H2, psis):
    """Boundary of the joint numerical range of a Hermitian pair.

    For each direction angle psi, maximizes ``cos(psi)*H1 + sin(psi)*H2``
    over unit vectors.  Returns ``(heights, points, ok)`` where ``heights[k]``
    is the support value and ``points[k]`` the attaining pair
    ``(x^H H1 x, x^H H2 x)``.
    """
    K = psis.shape[0]
    n = H1.shape[0]
    heights = np.empty(K, dtype=np.float64)
    points = np.empty((K, 2), dtype=np.float64)
    G = np.empty((n, n), dtype=np.complex128)
    ok = True
    for k in range(K):
        cp = np.cos(psis[k])
        sp = np.sin(psis[k])
        for i in range(n):
            for j in range(n):
                G[i, j] = cp * H1[i, j] + sp * H2[i, j]
        w, V, conv = jacobi_eigh(G)
        if not conv:
            ok = False
        u = 0.0
        v = 0.0
        for i in range(n):
            xi = np.conj(V[i, n - 1])
            acc1 = 0.0 + 0.0j
            acc2 = 0.0 + 0.0j
            for j in range(n):
                acc1 += H1[i, j] * V[j, n - 1]
                acc2 += H2[i, j] * V[j, n - 1]
            u += (xi * acc1).real
            v += (xi * acc2).real
        heights[k] = w[n - 1]
        points[k, 0] = u
        points[k, 1] = v
    return heights, points, ok


@njit(cache=True)
def hessenberg_reduce(A):
    """Unitary similarity reduction to upper Hessenberg form (in a copy)."""
    n = A.shape[0]
    H = A.copy()
    for k in range(n - 2):
        nx = 0.0
        for i in range(k + 1, n):
            nx += abs(H[i, k]) ** 2
        nx = np.sqrt(nx)
        if nx <= 1e-300:
            continue
        alpha = H[k + 1, k]
        aa = abs(alpha)
        if aa == 0.0:
            phase = 1.0 + 0.0j
        else:
            phase = alpha / aa
        v = np.zeros(n, dtype=np.complex128)
        for i in range(k + 1, n):
            v[i] = H[i, k]
        v[k + 1] += phase * nx
        nv = 0.0
        for i in range(k + 1, n):
            nv += abs(v[i]) ** 2
        nv = np.sqrt(nv)
        if nv <= 1e-300:
            continue
        for i in range(k + 1, n):
            v[i] /= nv
        # rows: H <- (I - 2 v v^H) H
        for col in range(k, n):
            acc = 0.0 + 0.0j
            for i in range(k + 1, n):
                acc += np.conj(v[i]) * H[i, col]
            acc *= 2.0
            for i in range(k + 1, n):
                H[i, col] -= acc * v[i]
        # cols: H <- H (I - 2 v v^H)
        for row in range(n):
            acc = 0.0 + 0.0j
            for i in range(k + 1, n):
                acc += H[row, i] * v[i]
            acc *= 2.0
            for i in range(k + 1, n):
                H[row, i] -= acc * np.conj(v[i])
        for i in range(k + 2, n):
            H[i, k] = 0.0 + 0.0j
    return H


@njit(cache=True)
def qr_eigvals_hessenberg(Hin):
    """Eigenvalues of an upper Hessenberg matrix by shifted QR iteration.

    Returns ``(eigs, converged)``.  Single Wilkinson shifts with an
    exceptional perturbed shift every tenth iteration on a stuck window.
    """
    n = Hin.shape[0]
    H = Hin.copy()
    eigs = np.zeros(n, dtype=np.complex128)
    if n == 1:
        eigs[0] = H[0, 0]
        return eigs, True

    norm = 0.0
    for i in range(n):
        for j in range(n):
            m = abs(H[i, j])
            if m > norm:
                norm = m
    if norm == 0.0:
        return eigs, True

    eps = 2.3e-16
    m = n
    its = 0
    converged = True
    cs = np.empty(n, dtype=np.complex128)
    sn = np.empty(n, dtype=np.complex128)
    while m > 0:
        if m == 1:
            eigs[0] = H[0, 0]
            break
        # split at negligible subdiagonal entries
        l = m - 1
        while l > 0:
            small = eps * (abs(H[l - 1, l - 1]) + abs(H[l, l]))
            if small == 0.0:
                small = eps * norm
            if abs(H[l, l - 1]) <= small:
                H[l, l - 1] = 0.0 + 0.0j
                break
            l -= 1
        if l == m - 1:
            eigs[m - 1] = H[m - 1, m - 1]
            m -= 1
            its = 0
            continue

        its += 1
        if its > _QR_MAX_ITERS_PER_EIG:
            converged = False
            # salvage: report diagonal of the stuck window
            for i in range(l, m):
                eigs[i] = H[i, i]
            m = l
            its = 0
            continue

        # Wilkinson shift from the trailing 2x2 block
        a = H[m - 2, m - 2]
        b = H[m - 2, m - 1]
        c2 = H[m - 1, m - 2]
        d = H[m - 1, m - 1]
        tr = a + d
        det = a * d - b * c2
        disc = np.sqrt(tr * tr - 4.0 * det)
        mu1 = 0.5 * (tr + disc)
        mu2 = 0.5 * (tr - disc)
        if abs(mu1 - d) <= abs(mu2 - d):
            mu = mu1
        else:
            mu = mu2
        if its % 10 == 0:
            mu = d + abs(H[m - 1, m - 2]) * (1.0 + 0.0j)

        # explicit single-shift QR step on a copy of the window [l, m):
        # W - mu*I = QR, window <- RQ + mu*I
        w = m - l
        W = np.empty((w, w), dtype=np.complex128)
        for i in range(w):
            for j in range(w):
                W[i, j] = H[l + i, l + j]
            W[i, i] -= mu
        for i in range(w - 1):
            x = W[i, i]
            y = W[i + 1, i]
            r = np.sqrt(abs(x) ** 2 + abs(y) ** 2)
            if r <= 1e-300:
                cs[i] = 1.0 + 0.0j
                sn[i] = 0.0 + 0.0j
                continue
            c = x / r
            s = y / r
            cs[i] = c
            sn[i] = s
            cb = np.conj(c)
            sb = np.conj(s)
            for col in range(i, w):
                ha = W[i, col]
                hb = W[i + 1, col]
                W[i, col] = cb * ha + sb * hb
                W[i + 1, col] = -s * ha + c * hb
            W[i + 1, i] = 0.0 + 0.0j
        for i in range(w - 1):
            c = cs[i]
            s = sn[i]
            cb = np.conj(c)
            sb = np.conj(s)
            top = i + 2
            if top > w:
                top = w
            for row in range(top):
                ha = W[row, i]
                hb = W[row, i + 1]
                W[row, i] = ha * c + hb * s
                W[row, i + 1] = -sb * ha + cb * hb
        for i in range(w):
            for j in range(w):
                H[l + i, l + j] = W[i, j]
            H[l + i, l + i] += mu
    return eigs, converged
