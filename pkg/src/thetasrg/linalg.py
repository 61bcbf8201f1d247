"""Dense complex linear-algebra primitives for desk-scale matrices (n <= 32).

Public surface: ``hermitian_eig``, ``spectrum``, ``singular_values`` and the
validation helpers shared by the rest of the package.  Each operation
dispatches to the numba kernel or the pure-numpy fallback according to the
active backend (see :mod:`thetasrg.backend`).
"""

from __future__ import annotations

import numpy as np

from . import _linalg_numpy
from .backend import active_backend
from .errors import DimensionError, NumericalError, ValidationError

__all__ = [
    "as_complex_matrix",
    "as_square_matrix",
    "hermitian_eig",
    "spectrum",
    "singular_values",
    "sort_spectrum",
    "matrix_scale",
    "support_sweep",
]


def as_complex_matrix(entries) -> np.ndarray:
    """Validate and convert to a dense complex matrix (finite, 2-D, nonempty)."""
    A = np.asarray(entries, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={A.ndim}")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise DimensionError(f"matrix must be at least 1x1, got {A.shape}")
    if not np.all(np.isfinite(A.view(np.float64))):
        raise ValidationError("matrix entries must be finite (no NaN/Inf)")
    return A


def as_square_matrix(entries) -> np.ndarray:
    A = as_complex_matrix(entries)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got {A.shape}")
    return A


def matrix_scale(A: np.ndarray) -> float:
    """Max absolute entry; the relative-tolerance scale used throughout."""
    return float(np.max(np.abs(A))) if A.size else 0.0


def hermitian_eig(H) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and orthonormal eigenvectors of Hermitian H.

    The input is symmetrized before solving; deviations from Hermitian beyond
    1e-12 relative to the matrix scale are rejected.
    """
    H = as_square_matrix(H)
    scale = matrix_scale(H)
    if scale > 0.0 and matrix_scale(H - H.conj().T) > 1e-12 * scale * 2.0:
        raise ValidationError("matrix is not Hermitian within 1e-12 of its scale")
    Hs = 0.5 * (H + H.conj().T)
    if active_backend() == "numba":
        from . import _linalg_numba

        w, V, ok = _linalg_numba.jacobi_eigh(Hs)
    else:
        w, V, ok = _linalg_numpy.jacobi_eigh(Hs)
    if not ok:
        raise NumericalError("Jacobi iteration did not converge")
    return w, V


def support_sweep(H1, H2, psis) -> tuple[np.ndarray, np.ndarray]:
    """Support values/points of the joint numerical range of a Hermitian pair.

    ``heights[k] = max_x x^H (cos(psi_k) H1 + sin(psi_k) H2) x`` over unit x,
    ``points[k] = (x^H H1 x, x^H H2 x)`` at the maximizer.
    """
    psis = np.ascontiguousarray(psis, dtype=np.float64)
    H1 = np.ascontiguousarray(H1, dtype=np.complex128)
    H2 = np.ascontiguousarray(H2, dtype=np.complex128)
    if active_backend() == "numba":
        from . import _linalg_numba

        heights, points, ok = _linalg_numba.support_sweep(H1, H2, psis)
    else:
        heights, points, ok = _linalg_numpy.support_sweep(H1, H2, psis)
    if not ok:
        raise NumericalError("eigen sweep did not converge")
    return heights, points


def sort_spectrum(values: np.ndarray) -> np.ndarray:
    """Deterministic eigenvalue order: descending modulus, then ascending
    argument in (-pi, pi]."""
    values = np.asarray(values, dtype=np.complex128)
    args = np.angle(values)
    # np.angle returns [-pi, pi]; map -pi to +pi so the order matches the
    # documented (-pi, pi] convention
    args = np.where(np.isclose(args, -np.pi), np.pi, args)
    order = np.lexsort((args, -np.abs(values)))
    return values[order]


def spectrum(C) -> np.ndarray:
    """All eigenvalues of a square complex matrix, deterministically ordered."""
    C = as_square_matrix(C)
    if active_backend() == "numba":
        from . import _linalg_numba

        Hss = _linalg_numba.hessenberg_reduce(np.ascontiguousarray(C))
        eigs, ok = _linalg_numba.qr_eigvals_hessenberg(Hss)
    else:
        eigs, ok = _linalg_numpy.qr_eigvals(C)
    if not ok:
        raise NumericalError(
            "QR iteration did not converge within the sweep budget "
            f"(n={C.shape[0]}, scale={matrix_scale(C):.3e})"
        )
    return sort_spectrum(eigs)


def singular_values(C) -> np.ndarray:
    """Singular values, descending.  Computed as sqrt of eig(C^H C)."""
    C = as_complex_matrix(C)
    G = C.conj().T @ C
    G = 0.5 * (G + G.conj().T)
    if active_backend() == "numba":
        from . import _linalg_numba

        w, _, ok = _linalg_numba.jacobi_eigh(np.ascontiguousarray(G))
        if not ok:
            raise NumericalError("Jacobi iteration did not converge")
    else:
        w, _, _ = _linalg_numpy.jacobi_eigh(G)
    w = np.clip(w, 0.0, None)
    return np.sqrt(w)[::-1].copy()
