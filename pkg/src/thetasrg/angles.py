"""Angles between complex vectors, classical and axis-referenced."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ValidationError

__all__ = ["angle_theta", "angle_classic"]

_CLAMP_TOL = 1e-12


def _as_vector(x) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=np.complex128)).ravel()
    if not np.all(np.isfinite(v.view(np.float64))):
        raise ValidationError("vector entries must be finite")
    return v


def angle_theta(x, y, theta: float) -> float:
    """Angle in [0, pi] between x and y measured against the axis direction
    e^{j*theta}: arccos(Re<x, e^{-j*theta} y> / (|x| |y|)).

    Returns 0 when either vector is zero.  The arccos argument is clamped to
    [-1, 1] (tolerance 1e-12) to absorb rounding.
    """
    x = _as_vector(x)
    y = _as_vector(y)
    if x.shape != y.shape:
        raise DimensionError(f"vector shapes differ: {x.shape} vs {y.shape}")
    nx = np.linalg.norm(x)
    ny = np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        return 0.0
    c = (np.vdot(x, y) * np.exp(-1j * float(theta))).real / (nx * ny)
    if c > 1.0:
        if c > 1.0 + _CLAMP_TOL:
            raise ValidationError(f"cosine out of range: {c}")
        c = 1.0
    elif c < -1.0:
        if c < -1.0 - _CLAMP_TOL:
            raise ValidationError(f"cosine out of range: {c}")
        c = -1.0
    return float(np.arccos(c))


def angle_classic(x, y) -> float:
    """The classical vector angle: angle_theta with a real reference axis."""
    return angle_theta(x, y, 0.0)
