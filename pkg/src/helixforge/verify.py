"""Brute-force checks of chord deviation against the analytic curve.

Nothing here uses the closed-form point count: deviations come from
dense sampling of the true curve and minimal counts from a search over
the sagitta predicate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateSegment, InvalidTolerance

DEFAULT_SAMPLES = 256
MIN_SAMPLES = 16
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class EllipticalHelixCurve:
    """``(cx + a cos t, cy + b sin t, z0 + pitch * t / 2pi)``.

    ``pitch == 0`` gives a planar ellipse (or circle when ``a == b``).
    """

    center_x: float
    center_y: float
    semi_major: float
    semi_minor: float
    pitch: float = 0.0
    z0: float = 0.0

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        return np.stack(
            [
                self.center_x + self.semi_major * np.cos(t),
                self.center_y + self.semi_minor * np.sin(t),
                self.z0 + self.pitch * t / TWO_PI,
            ],
            axis=-1,
        )

    def parameters(self, points: np.ndarray) -> np.ndarray:
        """Unwrapped curve parameter of each point, increasing along the path.

        On a helix the z value picks the revolution; on a planar curve each
        step is taken as the counter-clockwise angle from the previous point.
        """
        u = (points[:, 0] - self.center_x) / self.semi_major
        v = (points[:, 1] - self.center_y) / self.semi_minor
        phase = np.arctan2(v, u)
        if self.pitch != 0.0:
            approx = TWO_PI * (points[:, 2] - self.z0) / self.pitch
            turns = np.round((approx - phase) / TWO_PI)
            return phase + TWO_PI * turns
        steps = np.mod(np.diff(phase), TWO_PI)
        return np.concatenate([[phase[0]], phase[0] + np.cumsum(steps)])


def circle_curve(center_x, center_y, radius, z=0.0) -> EllipticalHelixCurve:
    return EllipticalHelixCurve(center_x, center_y, radius, radius, 0.0, z)


def helix_curve(center_x, center_y, radius, pitch) -> EllipticalHelixCurve:
    return EllipticalHelixCurve(center_x, center_y, radius, radius, pitch, 0.0)


@dataclass(frozen=True)
class DeviationReport:
    max_deviation: float
    worst_segment_index: int
    samples_per_segment: int

    def within(self, tolerance: float, allowance: float = 0.0, rel: float = 1e-9) -> bool:
        return self.max_deviation <= tolerance * (1.0 + rel) + allowance


def _segment_distances(p0, p1, samples):
    d = p1 - p0
    length_sq = float(d @ d)
    if length_sq == 0.0:
        return None
    w = samples - p0
    s = np.clip((w @ d) / length_sq, 0.0, 1.0)
    foot = p0 + s[:, None] * d
    return np.linalg.norm(samples - foot, axis=1)


def measure_deviation(
    points: Sequence[Sequence[float]],
    curve: EllipticalHelixCurve,
    samples_per_segment: int = DEFAULT_SAMPLES,
) -> DeviationReport:
    """Largest distance from the true curve to the polyline through ``points``.

    For each consecutive pair the curve is sampled at
    ``samples_per_segment + 1`` evenly spaced parameters between the two
    points (inclusive), and each sample's distance to the 3D chord is
    taken.

    Raises:
        DegenerateSegment: two consecutive points coincide.
        ValueError: fewer than two points or too few samples.
    """
    if samples_per_segment < MIN_SAMPLES:
        raise ValueError(f"samples_per_segment must be >= {MIN_SAMPLES}, got {samples_per_segment}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two points")
    if pts.shape[1] == 2:
        pts = np.column_stack([pts, np.full(len(pts), curve.z0)])
    params = curve.parameters(pts)
    frac = np.linspace(0.0, 1.0, samples_per_segment + 1)

    worst, worst_index = -1.0, 0
    for i in range(len(pts) - 1):
        t0, t1 = params[i], params[i + 1]
        dist = _segment_distances(pts[i], pts[i + 1], curve.evaluate(t0 + (t1 - t0) * frac))
        if dist is None:
            raise DegenerateSegment(f"points {i} and {i + 1} coincide")
        m = float(dist.max())
        if m > worst:
            worst, worst_index = m, i
    return DeviationReport(worst, worst_index, samples_per_segment)


def _fits(radius, delta, m):
    return radius * (1.0 - math.cos(math.pi / m)) <= delta


def oracle_min_count(radius: float, delta: float) -> int:
    """Smallest ``m >= 3`` with ``radius * (1 - cos(pi / m)) <= delta``.

    The predicate is monotone in ``m``, so the search doubles an upper
    bracket and then bisects; the result is the same as a linear scan.
    """
    if not (radius > 0 and 0 < delta < radius):
        raise InvalidTolerance(f"need 0 < delta < radius, got radius={radius}, delta={delta}")
    if _fits(radius, delta, 3):
        return 3
    lo, hi = 3, 4
    while not _fits(radius, delta, hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _fits(radius, delta, mid):
            hi = mid
        else:
            lo = mid
    return hi
