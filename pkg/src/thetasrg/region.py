"""Complex-plane region containers.

The central type is :class:`SrgRegion`, a log-polar occupancy description of
a gain-phase region: a grid of angles relative to a symmetry axis ``theta``,
with zero or more disjoint radius intervals per angle.  Regions built
directly from a matrix also carry the support-function data of the joint
numerical range they were sliced from, which gives exact (grid-free)
membership tests.  :class:`AnnularSector` and :class:`PhaseDescriptor` are
the closed-form over-approximation companions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import ValidationError

__all__ = [
    "SupportData",
    "SrgRegion",
    "AnnularSector",
    "PhaseDescriptor",
    "uniform_angle_grid",
    "merge_intervals",
]

TWO_PI = 2.0 * np.pi


def uniform_angle_grid(k: int) -> np.ndarray:
    """K relative angles -pi + i*(2pi/K); K must be even and >= 4."""
    if k < 4 or k % 2:
        raise ValidationError(f"angle grid size must be even and >= 4, got {k}")
    return -np.pi + np.arange(k) * (TWO_PI / k)


def wrap_angle(phi):
    """Wrap to [-pi, pi)."""
    return (np.asarray(phi) + np.pi) % TWO_PI - np.pi


def merge_intervals(intervals: np.ndarray) -> np.ndarray:
    """Union of closed intervals, returned sorted and disjoint."""
    intervals = np.asarray(intervals, dtype=np.float64).reshape(-1, 2)
    if len(intervals) == 0:
        return intervals
    order = np.argsort(intervals[:, 0], kind="stable")
    ivs = intervals[order]
    out = [ivs[0].copy()]
    for lo, hi in ivs[1:]:
        if lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append(np.array([lo, hi]))
    return np.array(out)


@dataclass(frozen=True)
class SupportData:
    """Support-function certificate of the joint numerical range W.

    ``heights[i]`` is ``max_x x^H (cos(psi_i) H1 + sin(psi_i) H2) x`` and
    ``points[i]`` the attaining ``(u, v)`` pair; W is contained in every
    half-plane ``u*cos(psi) + v*sin(psi) <= height``.
    """

    psis: np.ndarray
    heights: np.ndarray
    points: np.ndarray
    scale: float

    def margin(self, a, b) -> np.ndarray:
        """Max half-plane violation of the points (a, b); <= 0 means inside."""
        a = np.atleast_1d(np.asarray(a, dtype=np.float64))
        b = np.atleast_1d(np.asarray(b, dtype=np.float64))
        viol = (
            np.cos(self.psis)[None, :] * a[:, None]
            + np.sin(self.psis)[None, :] * b[:, None]
            - self.heights[None, :]
        )
        return viol.max(axis=1)


class SrgRegion:
    """A theta-symmetric region sampled as radius intervals per angle.

    ``angles`` are relative to the axis ``theta``, form a set symmetric about
    0, and are sorted ascending in [-pi, pi).  ``intervals[offsets[k]:
    offsets[k+1]]`` are the disjoint sorted ``[r_lo, r_hi]`` rows of angle k.
    """

    __slots__ = (
        "theta",
        "angles",
        "offsets",
        "intervals",
        "provenance",
        "uniform",
        "contains_origin",
        "support",
        "boundary",
    )

    def __init__(
        self,
        theta: float,
        angles: np.ndarray,
        offsets: np.ndarray,
        intervals: np.ndarray,
        provenance: str,
        uniform: bool,
        contains_origin: bool = False,
        support: Optional[SupportData] = None,
        boundary: Optional[np.ndarray] = None,
    ):
        self.theta = float(theta)
        self.angles = np.asarray(angles, dtype=np.float64)
        self.offsets = np.asarray(offsets, dtype=np.int64)
        self.intervals = np.asarray(intervals, dtype=np.float64).reshape(-1, 2)
        self.provenance = provenance
        self.uniform = bool(uniform)
        self.contains_origin = bool(contains_origin)
        self.support = support
        self.boundary = boundary
        if len(self.offsets) != len(self.angles) + 1:
            raise ValidationError("offsets must have len(angles) + 1 entries")
        if self.intervals.size and (
            np.any(self.intervals < 0.0)
            or np.any(self.intervals[:, 0] > self.intervals[:, 1])
            or not np.all(np.isfinite(self.intervals))
        ):
            raise ValidationError("radius intervals must be finite, >= 0, lo <= hi")

    # -- structure ---------------------------------------------------------

    @property
    def num_angles(self) -> int:
        return len(self.angles)

    def bin_intervals(self, k: int) -> np.ndarray:
        return self.intervals[self.offsets[k] : self.offsets[k + 1]]

    @property
    def is_empty(self) -> bool:
        return len(self.intervals) == 0 and not self.contains_origin

    @property
    def angle_step(self) -> float:
        if not self.uniform:
            raise ValidationError("angle_step undefined for non-uniform grids")
        return TWO_PI / self.num_angles

    def outer_radius(self) -> float:
        if len(self.intervals) == 0:
            return 0.0
        return float(self.intervals[:, 1].max())

    def inner_radius(self) -> float:
        if self.contains_origin:
            return 0.0
        if len(self.intervals) == 0:
            return 0.0
        return float(self.intervals[:, 0].min())

    def occupied_mask(self) -> np.ndarray:
        return np.diff(self.offsets) > 0

    def angular_extent(self) -> float:
        """Max |relative angle| over occupied bins (0 when empty)."""
        occ = self.occupied_mask()
        if not occ.any():
            return 0.0
        return float(np.abs(self.angles[occ]).max())

    def _bin_of(self, phi: float) -> int:
        if self.uniform:
            k = int(np.rint((phi + np.pi) / self.angle_step))
            return k % self.num_angles
        return int(np.argmin(np.abs(wrap_angle(self.angles - phi))))

    # -- geometry ----------------------------------------------------------

    def sample_points(self, radial_samples: int = 3) -> np.ndarray:
        """Representative complex points: interval endpoints plus interior
        radial fill on every occupied bin (absolute coordinates)."""
        if len(self.intervals) == 0:
            return (
                np.array([0.0 + 0.0j]) if self.contains_origin else np.array([], complex)
            )
        counts = np.diff(self.offsets)
        phis = np.repeat(self.angles, counts)
        ts = np.linspace(0.0, 1.0, max(radial_samples, 2))
        radii = self.intervals[:, 0:1] + ts[None, :] * (
            self.intervals[:, 1:2] - self.intervals[:, 0:1]
        )
        pts = (radii * np.exp(1j * (self.theta + phis))[:, None]).ravel()
        if self.contains_origin:
            pts = np.append(pts, 0.0 + 0.0j)
        return pts

    def boundary_points(self) -> np.ndarray:
        """Dense samples of the region boundary (absolute coordinates)."""
        parts = []
        if self.boundary is not None and len(self.boundary):
            parts.append(self.boundary)
        if len(self.intervals):
            counts = np.diff(self.offsets)
            phis = np.repeat(self.angles, counts)
            rot = np.exp(1j * (self.theta + phis))
            parts.append(self.intervals[:, 0] * rot)
            parts.append(self.intervals[:, 1] * rot)
        if self.contains_origin:
            parts.append(np.array([0.0 + 0.0j]))
        if not parts:
            return np.array([], complex)
        return np.concatenate(parts)

    def radial_intervals_at(self, phi: float) -> np.ndarray:
        """Radius intervals at an arbitrary relative angle.

        Linear interpolation between the two neighbor bins when their
        interval counts match; the union of both otherwise (conservative).
        """
        if not self.uniform:
            k = self._bin_of(phi)
            return self.bin_intervals(k)
        step = self.angle_step
        pos = (wrap_angle(phi) + np.pi) / step
        k0 = int(np.floor(pos)) % self.num_angles
        k1 = (k0 + 1) % self.num_angles
        t = pos - np.floor(pos)
        i0 = self.bin_intervals(k0)
        i1 = self.bin_intervals(k1)
        if len(i0) == len(i1) and len(i0) > 0:
            return (1.0 - t) * i0 + t * i1
        if len(i0) == 0 and len(i1) == 0:
            return i0
        return merge_intervals(np.vstack([i0, i1]) if len(i0) and len(i1) else (i0 if len(i0) else i1))

    def contains_point(self, z: complex, tol: float = 0.0) -> bool:
        z = complex(z)
        r = abs(z)
        if self.contains_origin and r <= tol:
            return True
        if self.support is not None:
            return self._support_contains(z, tol)
        if len(self.intervals) == 0:
            return False
        return self.distance(z) <= tol

    def _support_contains(self, z: complex, tol: float) -> bool:
        zeta = z * np.exp(-1j * self.theta)
        r = abs(z)
        a, b = zeta.real, r * r
        slack = tol * np.sqrt(1.0 + (2.0 * r + tol) ** 2) + 1e-14 * max(
            self.support.scale, 1.0
        )
        return bool(self.support.margin(a, b)[0] <= slack)

    def distance(self, z: complex) -> float:
        """Euclidean distance from z to the realized region (0 if inside)."""
        z = complex(z)
        if self.support is not None and self._support_contains(z, 0.0):
            return 0.0
        best = np.inf
        if self.contains_origin:
            best = abs(z)
        if len(self.intervals):
            counts = np.diff(self.offsets)
            phis = np.repeat(self.angles, counts)
            w = z * np.exp(-1j * (self.theta + phis))
            re = np.clip(w.real, self.intervals[:, 0], self.intervals[:, 1])
            best = min(best, float(np.abs(w - re).min()))
        if self.boundary is not None and len(self.boundary):
            best = min(best, float(np.abs(self.boundary - z).min()))
        if not np.isfinite(best):
            return np.inf
        return best

    def scaled(self, factor: complex) -> "SrgRegion":
        """Pointwise multiplication by a nonzero complex scalar (exact)."""
        factor = complex(factor)
        mag, arg = abs(factor), np.angle(factor)
        if mag == 0.0:
            raise ValidationError("scalar factor must be nonzero")
        theta = wrap_angle(self.theta + arg)
        return SrgRegion(
            theta=float(theta),
            angles=self.angles,
            offsets=self.offsets,
            intervals=self.intervals * mag,
            provenance=self.provenance,
            uniform=self.uniform,
            contains_origin=self.contains_origin,
            support=None,
            boundary=None if self.boundary is None else self.boundary * factor,
        )

    def __repr__(self):
        occ = int(self.occupied_mask().sum())
        return (
            f"SrgRegion(theta={self.theta:.6g}, bins={self.num_angles}, "
            f"occupied={occ}, provenance={self.provenance!r})"
        )


def hausdorff_distance(
    a: SrgRegion, b: SrgRegion, radial_samples: int = 5
) -> float:
    """Symmetric Hausdorff distance between two realized regions."""

    def directed(src: SrgRegion, dst: SrgRegion) -> float:
        pts = np.concatenate([src.sample_points(radial_samples), src.boundary_points()])
        if len(pts) == 0:
            return 0.0
        worst = 0.0
        for z in pts:
            d = dst.distance(z)
            if d > worst:
                worst = d
        return worst

    return max(directed(a, b), directed(b, a))


@dataclass(frozen=True)
class AnnularSector:
    """{z : |z| in [r_lo, r_hi], angle(z) in [psi_lo, psi_hi]}."""

    r_lo: float
    r_hi: float
    psi_lo: float
    psi_hi: float

    def __post_init__(self):
        if not (0.0 <= self.r_lo <= self.r_hi):
            raise ValidationError("sector radii must satisfy 0 <= r_lo <= r_hi")
        if self.psi_lo > self.psi_hi:
            raise ValidationError("sector phases must satisfy psi_lo <= psi_hi")
        if self.psi_hi - self.psi_lo > TWO_PI + 1e-12:
            raise ValidationError("sector phase width cannot exceed 2*pi")

    @property
    def axis(self) -> float:
        return 0.5 * (self.psi_lo + self.psi_hi)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.psi_hi - self.psi_lo)

    def product(self, other: "AnnularSector") -> "AnnularSector":
        """Pointwise set product: radii multiply, phase intervals add (exact)."""
        return AnnularSector(
            self.r_lo * other.r_lo,
            self.r_hi * other.r_hi,
            self.psi_lo + other.psi_lo,
            self.psi_hi + other.psi_hi,
        )

    def contains_point(self, z: complex, tol: float = 0.0) -> bool:
        return self.distance(z) <= tol

    def distance(self, z: complex) -> float:
        z = complex(z)
        r = abs(z)
        if self.psi_hi - self.psi_lo >= TWO_PI - 1e-12:
            dphi = 0.0
        else:
            dphi = abs(wrap_angle(np.angle(z) - self.axis))
        inside_phase = dphi <= self.half_width + 1e-15
        if inside_phase:
            if r < self.r_lo:
                return self.r_lo - r
            if r > self.r_hi:
                return r - self.r_hi
            return 0.0
        # nearest point lies on one of the two straight phase edges
        best = np.inf
        for psi in (self.psi_lo, self.psi_hi):
            w = z * np.exp(-1j * psi)
            t = np.clip(w.real, self.r_lo, self.r_hi)
            best = min(best, abs(w - t))
        return float(best)

    def to_region(self, grid: int = 720) -> SrgRegion:
        """Rasterize onto a uniform angle grid about the sector axis."""
        angles = uniform_angle_grid(grid)
        half = self.half_width
        step = TWO_PI / grid
        occupied = np.abs(angles) <= half + 0.5 * step
        offsets = np.zeros(grid + 1, dtype=np.int64)
        offsets[1:] = np.cumsum(occupied)
        intervals = np.tile([self.r_lo, self.r_hi], (int(occupied.sum()), 1))
        return SrgRegion(
            theta=self.axis,
            angles=angles,
            offsets=offsets,
            intervals=intervals,
            provenance="sector",
            uniform=True,
            contains_origin=self.r_lo <= 0.0,
        )


@dataclass(frozen=True)
class PhaseDescriptor:
    """Phase interval [theta - spread, theta + spread] of a matrix region."""

    theta: float
    spread: float

    def __post_init__(self):
        if not (0.0 <= self.spread <= np.pi + 1e-12):
            raise ValidationError("phase spread must lie in [0, pi]")

    @property
    def psi_lo(self) -> float:
        return self.theta - self.spread

    @property
    def psi_hi(self) -> float:
        return self.theta + self.spread

    def __add__(self, other: "PhaseDescriptor") -> "PhaseDescriptor":
        # interval sum; the result's spread may exceed pi, so go through
        # the raw bounds rather than the constructor invariant
        lo = self.psi_lo + other.psi_lo
        hi = self.psi_hi + other.psi_hi
        obj = object.__new__(PhaseDescriptor)
        object.__setattr__(obj, "theta", 0.5 * (lo + hi))
        object.__setattr__(obj, "spread", 0.5 * (hi - lo))
        return obj
