"""Pure-numpy fallback kernels (LAPACK via np.linalg, batched where it pays)."""

from __future__ import annotations

import numpy as np


def jacobi_eigh(H):
    w, V = np.linalg.eigh(H)
    return w, V, True


def support_sweep(H1, H2, psis):
    G = (
        np.cos(psis)[:, None, None] * H1[None, :, :]
        + np.sin(psis)[:, None, None] * H2[None, :, :]
    )
    w, V = np.linalg.eigh(G)
    x = V[:, :, -1]
    xc = x.conj()
    u = np.einsum("ki,ij,kj->k", xc, H1, x).real
    v = np.einsum("ki,ij,kj->k", xc, H2, x).real
    return w[:, -1], np.stack([u, v], axis=1), True


def qr_eigvals(A):
    return np.linalg.eigvals(A), True
