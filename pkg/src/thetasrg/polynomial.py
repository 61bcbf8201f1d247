"""Real-coefficient polynomials (ascending order) and companion-matrix roots."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg_numpy
from .backend import active_backend
from .errors import NumericalError, ValidationError
from .linalg import sort_spectrum

__all__ = ["RealPolynomial", "poly_roots", "poly_from_roots"]


@dataclass(frozen=True)
class RealPolynomial:
    """p(s) = sum_k coefficients[k] * s**k with real coefficients.

    Exact trailing zeros are stripped on construction so the leading
    coefficient is nonzero unless the polynomial is identically zero.
    """

    coefficients: np.ndarray

    def __init__(self, coefficients):
        c = np.atleast_1d(np.asarray(coefficients, dtype=np.float64))
        if c.ndim != 1 or c.size == 0:
            raise ValidationError("coefficients must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(c)):
            raise ValidationError("coefficients must be finite")
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        object.__setattr__(self, "coefficients", c.copy())

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coefficients[0] == 0.0

    def __call__(self, s):
        # Horner on scalars or arrays, complex-safe
        s = np.asarray(s, dtype=np.complex128)
        out = np.zeros_like(s)
        for c in self.coefficients[::-1]:
            out = out * s + c
        return out if out.ndim else complex(out)

    def __mul__(self, other):
        if isinstance(other, RealPolynomial):
            return RealPolynomial(np.convolve(self.coefficients, other.coefficients))
        return RealPolynomial(self.coefficients * float(other))

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, RealPolynomial):
            other = RealPolynomial([float(other)])
        n = max(len(self.coefficients), len(other.coefficients))
        a = np.zeros(n)
        a[: len(self.coefficients)] = self.coefficients
        a[: len(other.coefficients)] += other.coefficients
        return RealPolynomial(a)

    def __sub__(self, other):
        if not isinstance(other, RealPolynomial):
            other = RealPolynomial([float(other)])
        return self + (-1.0) * other

    def __eq__(self, other):
        return isinstance(other, RealPolynomial) and np.array_equal(
            self.coefficients, other.coefficients
        )

    def scale(self) -> float:
        return float(np.max(np.abs(self.coefficients)))

    def __repr__(self):
        return f"RealPolynomial({self.coefficients.tolist()})"


def poly_from_roots(roots) -> RealPolynomial:
    """Monic real polynomial with the given roots (conjugate-closed set)."""
    roots = np.asarray(roots, dtype=np.complex128)
    c = np.array([1.0 + 0.0j])
    for r in roots:
        c = np.convolve(c, np.array([-r, 1.0 + 0.0j]))
    if np.max(np.abs(c.imag)) > 1e-9 * max(np.max(np.abs(c)), 1.0):
        raise ValidationError("root set is not closed under conjugation")
    return RealPolynomial(c.real)


def poly_roots(p: RealPolynomial) -> np.ndarray:
    """All complex roots of p, with multiplicity, via companion-matrix
    eigenvalues; ordered like :func:`thetasrg.linalg.sort_spectrum`."""
    if not isinstance(p, RealPolynomial):
        p = RealPolynomial(p)
    if p.is_zero:
        raise ValidationError("cannot take roots of the zero polynomial")
    if p.degree < 1:
        raise ValidationError("polynomial must have degree >= 1")
    c = p.coefficients / p.coefficients[-1]
    n = len(c) - 1
    if active_backend() == "numba":
        from . import _linalg_numba

        comp = np.zeros((n, n), dtype=np.complex128)
        comp[0, :] = -c[:-1][::-1]
        for i in range(1, n):
            comp[i, i - 1] = 1.0
        # companion in this layout is already upper Hessenberg
        eigs, ok = _linalg_numba.qr_eigvals_hessenberg(comp)
        if not ok:
            raise NumericalError("companion QR iteration did not converge")
    else:
        eigs, ok = _linalg_numpy.qr_eigvals(_companion(c))
    return sort_spectrum(eigs)


def _companion(monic_coeffs: np.ndarray) -> np.ndarray:
    n = len(monic_coeffs) - 1
    comp = np.zeros((n, n), dtype=np.complex128)
    comp[0, :] = -monic_coeffs[:-1][::-1]
    comp[np.arange(1, n), np.arange(0, n - 1)] = 1.0
    return comp
