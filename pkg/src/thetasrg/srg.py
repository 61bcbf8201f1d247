"""theta-symmetric gain-phase regions of complex matrices.

Construction route: for M = e^{-j*theta} C, the pair set
W = {(x^H Re(M) x, x^H M^H M x) : |x| = 1} is the (convex) joint numerical
range of the Hermitian pair (Re M, M^H M).  Region points r*e^{j(theta+phi)}
correspond exactly to pairs (r*cos(phi), r^2) in W, so the region is
recovered by sweeping support directions of W (one Hermitian eigensolve per
direction), building circumscribed piecewise-linear envelopes, and slicing
them radially on an angle grid.  The circumscribed polytope makes every
derived region a (resolution-accurate) *outer* approximation, which keeps
spectrum containment and the downstream nonsingularity certificates sound.
"""

from __future__ import annotations

import numpy as np

from . import _srg_numpy
from .angles import angle_classic, angle_theta  # noqa: F401  (re-export)
from .backend import active_backend
from .errors import ValidationError
from .linalg import as_square_matrix, matrix_scale, singular_values, support_sweep
from .region import (
    AnnularSector,
    PhaseDescriptor,
    SrgRegion,
    SupportData,
    merge_intervals,
    uniform_angle_grid,
    wrap_angle,
)

__all__ = [
    "srg_region",
    "srg_sample_oracle",
    "phase_spread",
    "optimal_theta",
    "segmental_phase",
    "annular_sector",
    "arc_hull",
    "angle_theta",
    "angle_classic",
]

_MIN_RESOLUTION = 16
_MAX_DIRECTIONS = 200_000


# ---------------------------------------------------------------------------
# support sweep of the joint numerical range


def _hermitian_pair(C: np.ndarray, theta: float):
    M = np.exp(-1j * theta) * C
    H1 = 0.5 * (M + M.conj().T)
    H2 = M.conj().T @ M
    H2 = 0.5 * (H2 + H2.conj().T)
    return H1, H2


def _sweep_support(C: np.ndarray, theta: float, resolution: int,
                   boundary_tol: float | None) -> SupportData:
    H1, H2 = _hermitian_pair(C, theta)
    psis = np.arange(resolution) * (2.0 * np.pi / resolution)
    heights, points = support_sweep(H1, H2, psis)
    scale = matrix_scale(C)

    if boundary_tol is not None:
        sa = max(1e-30, float(np.abs(points[:, 0]).max()))
        sb = max(1e-30, float(np.abs(points[:, 1]).max()))
        chord_cap = max(50.0 * boundary_tol, 1e-3)
        for _ in range(24):
            if len(psis) >= _MAX_DIRECTIONS:
                break
            pn = points / (sa, sb)
            nxt = np.roll(pn, -1, axis=0)
            chord = np.hypot(nxt[:, 0] - pn[:, 0], nxt[:, 1] - pn[:, 1])
            gaps = np.diff(psis, append=psis[0] + 2.0 * np.pi)
            excess = 0.25 * chord * gaps
            split = (excess > boundary_tol) | (chord > chord_cap)
            if not split.any():
                break
            mids = psis[split] + 0.5 * gaps[split]
            hm, pm = support_sweep(H1, H2, mids)
            psis = np.concatenate([psis, mids])
            heights = np.concatenate([heights, hm])
            points = np.vstack([points, pm])
            order = np.argsort(psis, kind="stable")
            psis, heights, points = psis[order], heights[order], points[order]
    return SupportData(psis=psis, heights=heights, points=points, scale=scale)


# ---------------------------------------------------------------------------
# envelopes of the support half-planes


def _lower_envelope(ms, qs):
    """Pointwise min of lines y = m*x + q, slopes sorted descending.

    Returns (ms, qs, xs) of active pieces left-to-right; piece i is active on
    [xs[i-1], xs[i]] with xs extended by +-inf outside.
    """
    keep_m: list[float] = []
    keep_q: list[float] = []
    breaks: list[float] = []
    for m, q in zip(ms, qs):
        while keep_m:
            m0, q0 = keep_m[-1], keep_q[-1]
            if m0 - m <= 1e-300:
                # (near-)parallel: keep the lower line
                if q >= q0 - 1e-300 * max(abs(q), 1.0):
                    m = None
                    break
                keep_m.pop()
                keep_q.pop()
                if breaks:
                    breaks.pop()
                continue
            x = (q - q0) / (m0 - m)
            if breaks and x <= breaks[-1]:
                keep_m.pop()
                keep_q.pop()
                breaks.pop()
                continue
            breaks.append(x)
            break
        if m is None:
            continue
        keep_m.append(m)
        keep_q.append(q)
    return np.array(keep_m), np.array(keep_q), np.array(breaks)


def _chain_vertices(ms, qs, breaks, a_lo, a_hi):
    """Vertex arrays (a, b) of a piecewise-linear envelope over [a_lo, a_hi]."""
    if len(ms) == 0:
        raise ValidationError("degenerate support data: no envelope lines")
    knots = [a_lo]
    for x in breaks:
        if a_lo < x < a_hi:
            knots.append(float(x))
    knots.append(a_hi)
    knots = np.array(knots)
    piece = np.searchsorted(breaks, knots[:-1], side="right")
    aV = knots
    bV = np.empty_like(knots)
    for i in range(len(knots) - 1):
        bV[i] = ms[piece[i]] * knots[i] + qs[piece[i]]
    bV[-1] = ms[piece[-1]] * knots[-1] + qs[piece[-1]]
    return aV, bV


def _eval_chain(aV, bV, x):
    return float(np.interp(x, aV, bV))


class _RangeGeometry:
    """Envelope chains + degeneracy classification of a support sweep."""

    __slots__ = ("support", "a_lo", "a_hi", "aU", "bU", "aL", "bL",
                 "is_point", "a0", "b0", "eps_a", "eps_b")

    def __init__(self, support: SupportData):
        self.support = support
        psis, heights = support.psis, support.heights
        pts = support.points

        # exact abscissa range from the two horizontal support directions
        i0 = int(np.argmin(np.abs(wrap_angle(psis))))
        ipi = int(np.argmin(np.abs(wrap_angle(psis - np.pi))))
        a_hi = float(heights[i0])
        a_lo = float(-heights[ipi])
        b_lo = float(pts[:, 1].min())
        b_hi = float(pts[:, 1].max())

        sa = max(abs(a_lo), abs(a_hi), 1e-30)
        sb = max(abs(b_lo), abs(b_hi), 1e-30)
        self.eps_a = 1e-12 * sa
        self.eps_b = 1e-12 * sb

        self.is_point = (a_hi - a_lo <= 4.0 * self.eps_a) and (
            b_hi - b_lo <= 4.0 * self.eps_b
        )
        self.a0 = 0.5 * (a_lo + a_hi)
        self.b0 = max(0.5 * (b_lo + b_hi), 0.0)
        if self.is_point:
            self.a_lo = self.a_hi = self.a0
            self.aU = self.bU = self.aL = self.bL = None
            return

        self.a_lo = a_lo - self.eps_a
        self.a_hi = a_hi + self.eps_a

        sin_p = np.sin(psis)
        up = sin_p > 1e-9
        lo = sin_p < -1e-9
        # upper chain: v <= (h - u cos)/sin, slope -cot(psi) increases with
        # psi on (0, pi) -> feed in reverse for descending slopes
        m_up = -np.cos(psis[up]) / sin_p[up]
        q_up = heights[up] / sin_p[up]
        order = np.argsort(-m_up, kind="stable")
        ms, qs, breaks = _lower_envelope(m_up[order], q_up[order])
        self.aU, self.bU = _chain_vertices(ms, qs, breaks, self.a_lo, self.a_hi)
        self.bU = self.bU + self.eps_b

        # lower chain: v >= (h - u cos)/sin (sin < 0); max of lines via the
        # min-envelope of the negated lines
        m_lo = -np.cos(psis[lo]) / sin_p[lo]
        q_lo = heights[lo] / sin_p[lo]
        order = np.argsort(m_lo, kind="stable")  # -m descending
        ms, qs, breaks = _lower_envelope(-m_lo[order], -q_lo[order])
        self.aL, self.bL = _chain_vertices(ms, qs, breaks, self.a_lo, self.a_hi)
        self.bL = -self.bL - self.eps_b

    def min_cos_ratio(self) -> float:
        """min of a/sqrt(b) over the polytope; cos of the phase spread."""
        if self.is_point:
            if self.b0 <= self.eps_b:
                return 1.0  # zero matrix: angle 0 by convention
            return float(np.clip(self.a0 / np.sqrt(self.b0), -1.0, 1.0))

        best = 1.0
        for aV, bV in ((self.aU, self.bU), (self.aL, self.bL)):
            cand_a = [aV]
            cand_b = [bV]
            da = np.diff(aV)
            db = np.diff(bV)
            with np.errstate(divide="ignore", invalid="ignore"):
                t = (aV[:-1] * db * 0.5 - da * bV[:-1]) / (da * db * 0.5)
            good = np.isfinite(t) & (t > 0.0) & (t < 1.0)
            if good.any():
                cand_a.append(aV[:-1][good] + t[good] * da[good])
                cand_b.append(bV[:-1][good] + t[good] * db[good])
            a = np.concatenate(cand_a)
            b = np.concatenate(cand_b)
            pos = b > self.eps_b
            if pos.any():
                ratios = a[pos] / np.sqrt(b[pos])
                best = min(best, float(ratios.min()))
            if (~pos).any():
                # near b = 0 the realizable ratio tends to 0 along edges
                near0 = np.abs(a[~pos]) <= 10.0 * np.sqrt(max(self.eps_b, 0.0))
                if near0.any():
                    best = min(best, 0.0)
        return float(np.clip(best, -1.0, 1.0))


# ---------------------------------------------------------------------------
# region construction


def _point_region(theta: float, a0: float, b0: float, eps_b: float,
                  support: SupportData) -> SrgRegion:
    b0 = max(b0, 0.0)
    r0 = np.sqrt(b0)
    s2 = b0 - a0 * a0
    s0 = np.sqrt(s2) if s2 > 0.0 else 0.0
    if b0 <= eps_b:
        return SrgRegion(
            theta=theta,
            angles=np.array([0.0]),
            offsets=np.array([0, 1]),
            intervals=np.array([[0.0, 0.0]]),
            provenance="exact",
            uniform=False,
            contains_origin=True,
            support=support,
            boundary=np.array([0.0 + 0.0j]),
        )
    if s0 <= 1e-13 * (1.0 + r0):
        phi0 = 0.0 if a0 >= 0.0 else -np.pi
        angles = np.array([phi0])
        offsets = np.array([0, 1])
        intervals = np.array([[r0, r0]])
    else:
        phi0 = float(np.arctan2(s0, a0))
        angles = np.array([-phi0, phi0])
        offsets = np.array([0, 1, 2])
        intervals = np.array([[r0, r0], [r0, r0]])
    boundary = r0 * np.exp(1j * (theta + angles))
    return SrgRegion(
        theta=theta,
        angles=angles,
        offsets=offsets,
        intervals=intervals,
        provenance="exact",
        uniform=False,
        contains_origin=False,
        support=support,
        boundary=boundary,
    )


def _boundary_samples(theta: float, support: SupportData) -> np.ndarray:
    u = support.points[:, 0]
    v = support.points[:, 1]
    s = np.sqrt(np.maximum(v - u * u, 0.0))
    rot = np.exp(1j * theta)
    return np.concatenate([(u + 1j * s) * rot, (u - 1j * s) * rot])


def srg_region(C, theta: float, resolution: int = 720,
               boundary_tol: float | None = None) -> SrgRegion:
    """The theta-symmetric gain-phase region of a square matrix.

    ``resolution`` sets both the support-direction count of the numerical
    range sweep and the angle-bin count of the result (even, >= 16).
    ``boundary_tol`` optionally refines support directions adaptively until
    the circumscribed-boundary excess is below ``boundary_tol`` in normalized
    numerical-range units (used by the tight identity tests).
    """
    C = as_square_matrix(C)
    theta = float(theta)
    if resolution < _MIN_RESOLUTION:
        raise ValidationError(f"resolution must be >= {_MIN_RESOLUTION}")
    if resolution % 2:
        resolution += 1

    support = _sweep_support(C, theta, resolution, boundary_tol)
    geo = _RangeGeometry(support)
    if geo.is_point:
        return _point_region(theta, geo.a0, geo.b0, geo.eps_b, support)

    angles = uniform_angle_grid(resolution)
    half = resolution // 2
    # slice positive relative angles (incl. 0 and the -pi self-mirror bin)
    upper_idx = np.arange(half, resolution)
    cphis = np.cos(angles[upper_idx])
    cphis = np.concatenate([cphis, [np.cos(angles[0])]])  # phi = -pi bin
    has_zero = geo.a_lo <= 0.0 <= geo.a_hi
    bmax0 = _eval_chain(geo.aU, geo.bU, 0.0) if has_zero else -1.0
    bmin0 = _eval_chain(geo.aL, geo.bL, 0.0) if has_zero else -1.0

    if active_backend() == "numba":
        from . import _srg_numba

        counts, packed = _srg_numba.slice_bins(
            np.ascontiguousarray(cphis), geo.aU, geo.bU, geo.aL, geo.bL,
            geo.a_lo, geo.a_hi, bmax0, bmin0,
        )
    else:
        counts, packed = _srg_numpy.slice_bins(
            cphis, geo.aU, geo.bU, geo.aL, geo.bL,
            geo.a_lo, geo.a_hi, bmax0, bmin0,
        )
    cap = packed.shape[0] // len(cphis)

    # assemble the full symmetric grid: bin k mirrors bin K-k
    bin_iv: list[np.ndarray] = [None] * resolution  # type: ignore[list-item]
    for j, k in enumerate(upper_idx):
        iv = packed[j * cap : j * cap + counts[j]]
        iv = iv[iv[:, 1] >= 0.0]
        bin_iv[k] = iv
        mirror = (resolution - k) % resolution
        if mirror != k:
            bin_iv[mirror] = iv
    iv = packed[len(upper_idx) * cap : len(upper_idx) * cap + counts[len(upper_idx)]]
    bin_iv[0] = iv

    offsets = np.zeros(resolution + 1, dtype=np.int64)
    for k in range(resolution):
        offsets[k + 1] = offsets[k] + len(bin_iv[k])
    intervals = (
        np.vstack([iv for iv in bin_iv if len(iv)])
        if offsets[-1]
        else np.zeros((0, 2))
    )
    intervals = np.maximum(intervals, 0.0)

    contains_origin = bool(np.all(support.heights >= -1e-13 * max(support.scale**2, 1.0)))
    return SrgRegion(
        theta=theta,
        angles=angles,
        offsets=offsets,
        intervals=intervals,
        provenance="exact",
        uniform=True,
        contains_origin=contains_origin,
        support=support,
        boundary=_boundary_samples(theta, support),
    )


# ---------------------------------------------------------------------------
# sampling oracle


def srg_sample_oracle(C, theta: float, num_samples: int, seed: int) -> np.ndarray:
    """Monte-Carlo region points from uniformly random unit vectors.

    Emits both reflection partners per sample:
    (|Cx|/|x|) * exp(j*(theta +- angle_theta(x, Cx))).
    """
    C = as_square_matrix(C)
    if num_samples < 1:
        raise ValidationError("num_samples must be >= 1")
    n = C.shape[0]
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((num_samples, n)) + 1j * rng.standard_normal(
        (num_samples, n)
    )
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    CX = X @ C.T
    rho = np.linalg.norm(CX, axis=1)
    inner = np.einsum("ki,ki->k", X.conj(), CX)
    cosang = np.zeros(num_samples)
    nz = rho > 0.0
    cosang[nz] = (inner[nz] * np.exp(-1j * theta)).real / rho[nz]
    ang = np.arccos(np.clip(cosang, -1.0, 1.0))
    ang[~nz] = 0.0
    plus = rho * np.exp(1j * (theta + ang))
    minus = rho * np.exp(1j * (theta - ang))
    return np.concatenate([plus, minus])


# ---------------------------------------------------------------------------
# phase descriptors


def phase_spread(C, theta: float, resolution: int = 720,
                 boundary_tol: float | None = None) -> float:
    """Largest angle_theta(x, Cx) over nonzero x, in [0, pi].

    Computed as arccos of the minimum of a/sqrt(b) over the circumscribed
    numerical-range polytope (the supremum over the closed computed region;
    whether the underlying sup is attained is not distinguished).
    """
    C = as_square_matrix(C)
    if resolution < _MIN_RESOLUTION:
        raise ValidationError(f"resolution must be >= {_MIN_RESOLUTION}")
    if resolution % 2:
        resolution += 1
    support = _sweep_support(C, float(theta), resolution, boundary_tol)
    geo = _RangeGeometry(support)
    return float(np.arccos(geo.min_cos_ratio()))


def optimal_theta(C, resolution: int = 256, scan_points: int = 256,
                  tol: float = 1e-6) -> float:
    """Axis angle in [0, pi) minimizing the phase spread.

    Coarse scan over ``scan_points`` angles followed by golden-section
    refinement to ``tol`` radians; exact ties resolve to the smallest angle.
    """
    C = as_square_matrix(C)

    def gamma(th: float) -> float:
        return phase_spread(C, th, resolution=resolution)

    thetas = np.arange(scan_points) * (np.pi / scan_points)
    vals = np.array([gamma(t) for t in thetas])
    k = int(np.argmin(vals))
    step = np.pi / scan_points
    lo = thetas[k] - step
    hi = thetas[k] + step

    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = gamma(x1), gamma(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = gamma(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = gamma(x2)
    best = 0.5 * (lo + hi)
    return float(best % np.pi)


def segmental_phase(C, theta: float, resolution: int = 720) -> PhaseDescriptor:
    """Phase interval [theta - spread, theta + spread] at the given axis."""
    return PhaseDescriptor(theta=float(theta),
                           spread=phase_spread(C, theta, resolution))


def annular_sector(C, theta: float, resolution: int = 720) -> AnnularSector:
    """Coarsest over-approximation: singular-value radii x phase interval."""
    C = as_square_matrix(C)
    sv = singular_values(C)
    spread = phase_spread(C, theta, resolution)
    return AnnularSector(
        r_lo=float(sv[-1]),
        r_hi=float(sv[0]),
        psi_lo=float(theta) - spread,
        psi_hi=float(theta) + spread,
    )


# ---------------------------------------------------------------------------
# arc hull


def arc_hull(R: SrgRegion, variant: str = "plus", grid: int = 720) -> SrgRegion:
    """Close a region under constant-modulus arcs to its mirror point.

    For every region point at relative angle phi0 and radius r, the plus
    variant occupies radius r at all |phi| <= |phi0| (the arc through the
    symmetry axis); the minus variant occupies all |phi| >= |phi0| (the arc
    through the anti-axis).  The result satisfies the arc property by
    construction and contains its input.
    """
    if variant not in ("plus", "minus"):
        raise ValidationError("variant must be 'plus' or 'minus'")
    if not R.uniform:
        R = _rasterize(R, grid)
    K = R.num_angles
    order = np.argsort(
        -np.abs(R.angles) if variant == "plus" else np.abs(R.angles),
        kind="stable",
    )
    levels = np.abs(R.angles[order])

    bin_iv: list[np.ndarray] = [None] * K  # type: ignore[list-item]
    acc = np.zeros((0, 2))
    i = 0
    while i < K:
        j = i
        while j < K and abs(levels[j] - levels[i]) <= 1e-12:
            j += 1
        new = [acc]
        for t in range(i, j):
            iv = R.bin_intervals(order[t])
            if len(iv):
                new.append(iv)
        acc = merge_intervals(np.vstack(new)) if len(new) > 1 else acc
        for t in range(i, j):
            bin_iv[order[t]] = acc
        i = j

    offsets = np.zeros(K + 1, dtype=np.int64)
    for k in range(K):
        offsets[k + 1] = offsets[k] + len(bin_iv[k])
    intervals = (
        np.vstack([iv for iv in bin_iv if len(iv)]) if offsets[-1] else np.zeros((0, 2))
    )
    return SrgRegion(
        theta=R.theta,
        angles=R.angles,
        offsets=offsets,
        intervals=intervals,
        provenance="arc_hull" if variant == "plus" else "arc_hull_minus",
        uniform=True,
        contains_origin=R.contains_origin,
    )


def _rasterize(R: SrgRegion, grid: int) -> SrgRegion:
    """Snap a non-uniform (point-grid) region onto a uniform grid."""
    angles = uniform_angle_grid(grid)
    step = 2.0 * np.pi / grid
    bins: list[list] = [[] for _ in range(grid)]
    for k in range(R.num_angles):
        iv = R.bin_intervals(k)
        if not len(iv):
            continue
        pos = (wrap_angle(R.angles[k]) + np.pi) / step
        for kk in (int(np.floor(pos)) % grid, int(np.ceil(pos)) % grid):
            bins[kk].append(iv)
    bin_iv = [
        merge_intervals(np.vstack(b)) if b else np.zeros((0, 2)) for b in bins
    ]
    offsets = np.zeros(grid + 1, dtype=np.int64)
    for k in range(grid):
        offsets[k + 1] = offsets[k] + len(bin_iv[k])
    intervals = (
        np.vstack([iv for iv in bin_iv if len(iv)]) if offsets[-1] else np.zeros((0, 2))
    )
    return SrgRegion(
        theta=R.theta,
        angles=angles,
        offsets=offsets,
        intervals=intervals,
        provenance="sampled",
        uniform=True,
        contains_origin=R.contains_origin,
        boundary=R.boundary,
    )
