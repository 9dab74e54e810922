"""Circle, helix and elliptical-helix point sequences for helical milling.

All paths run counter-clockwise starting at angle 0.  Helices restart at
angle 0 on every revolution, so the last chord of each revolution (the
seam) is shorter than the others and carries the remaining z advance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .discretize import Discretization, ToleranceSpec, discretize_count
from .errors import CutterTooLarge, HelixForgeError, InvalidTolerance, ZeroRevolutions

TWO_PI = 2.0 * math.pi


class ToolpathPoint(NamedTuple):
    x: float
    y: float
    z: float


def _check_common(cutter_diameter, pitch, bore_length, tolerance):
    if cutter_diameter < 0:
        raise CutterTooLarge(f"cutter diameter must be non-negative, got {cutter_diameter}")
    if pitch <= 0:
        raise ZeroRevolutions(f"pitch must be positive, got {pitch}")
    if bore_length < pitch:
        raise ZeroRevolutions(
            f"bore length {bore_length} is shorter than one pitch ({pitch}); no full revolution"
        )
    if tolerance <= 0:
        raise InvalidTolerance(f"tolerance must be positive, got {tolerance}")


@dataclass(frozen=True)
class HelixSpec:
    """A helical boring/threading job.

    ``bore_radius`` is the finished bore; the tool centre runs on
    ``bore_radius - cutter_diameter / 2``.  A zero cutter diameter means
    no compensation.
    """

    cutter_diameter: float
    center_x: float
    center_y: float
    bore_radius: float
    pitch: float
    bore_length: float
    tolerance: float

    def __post_init__(self):
        _check_common(self.cutter_diameter, self.pitch, self.bore_length, self.tolerance)
        r = self.bore_radius - self.cutter_diameter / 2.0
        if r <= 0:
            raise CutterTooLarge(
                f"cutter diameter {self.cutter_diameter} leaves no room in bore radius {self.bore_radius}"
            )
        if self.tolerance >= r:
            raise InvalidTolerance(
                f"tolerance {self.tolerance} must be smaller than the tool-centre radius {r}"
            )

    @property
    def cutter_radius(self) -> float:
        return self.cutter_diameter / 2.0

    @property
    def revolutions(self) -> int:
        return int(self.bore_length / self.pitch)


@dataclass(frozen=True)
class EllipticalHelixSpec:
    """Helix whose XY projection is an ellipse with the given semi-axes.

    Cutter compensation subtracts the cutter radius from each semi-axis.
    """

    semi_major: float
    semi_minor: float
    center_x: float
    center_y: float
    pitch: float
    bore_length: float
    tolerance: float
    cutter_diameter: float = 0.0

    def __post_init__(self):
        _check_common(self.cutter_diameter, self.pitch, self.bore_length, self.tolerance)
        if self.semi_minor > self.semi_major:
            raise HelixForgeError(
                f"semi_minor ({self.semi_minor}) must not exceed semi_major ({self.semi_major})"
            )
        rc = self.cutter_diameter / 2.0
        if self.semi_minor - rc <= 0:
            raise CutterTooLarge(
                f"cutter diameter {self.cutter_diameter} leaves no room in semi-minor axis {self.semi_minor}"
            )
        if self.tolerance >= self.semi_major - rc:
            raise InvalidTolerance(
                f"tolerance {self.tolerance} must be smaller than the compensated semi-major axis"
            )

    @property
    def cutter_radius(self) -> float:
        return self.cutter_diameter / 2.0

    @property
    def revolutions(self) -> int:
        return int(self.bore_length / self.pitch)


def effective_radius(spec: HelixSpec) -> float:
    """Radius of the tool-centre path: bore radius minus cutter radius."""
    r = spec.bore_radius - spec.cutter_diameter / 2.0
    if r <= 0:
        raise CutterTooLarge(
            f"cutter diameter {spec.cutter_diameter} leaves no room in bore radius {spec.bore_radius}"
        )
    return r


def _angles(disc: Discretization) -> list[float]:
    return [i * disc.step_angle for i in range(disc.count)]


def _helical(rx, ry, cx, cy, pitch, revolutions, disc, finish_limit=None):
    thetas = _angles(disc)
    cos_sin = [(math.cos(t), math.sin(t)) for t in thetas]
    points = []
    for k in range(revolutions):
        for theta, (c, s) in zip(thetas, cos_sin):
            z = (k * pitch) + ((theta / TWO_PI) * pitch)
            points.append(ToolpathPoint(rx * c + cx, ry * s + cy, z))
    if finish_limit is not None:
        k = revolutions
        for theta, (c, s) in zip(thetas, cos_sin):
            z = (k * pitch) + ((theta / TWO_PI) * pitch)
            if z > finish_limit:
                break
            points.append(ToolpathPoint(rx * c + cx, ry * s + cy, z))
    return points


def helix_points(spec: HelixSpec, finish_partial_rev: bool = False) -> list[ToolpathPoint]:
    """Sample the compensated helix of ``spec``.

    Emits ``revolutions * n`` points, ``n`` from :func:`discretize_count`.
    A fractional final revolution is dropped unless ``finish_partial_rev``
    is set, in which case points continue until z would pass
    ``bore_length``.
    """
    r = effective_radius(spec)
    k = spec.revolutions
    if k == 0:
        raise ZeroRevolutions(f"bore length {spec.bore_length} is shorter than pitch {spec.pitch}")
    disc = discretize_count(ToleranceSpec(r, spec.tolerance))
    limit = spec.bore_length if finish_partial_rev else None
    return _helical(r, r, spec.center_x, spec.center_y, spec.pitch, k, disc, limit)


def circle_points(center_x: float, center_y: float, radius: float, z: float, tolerance: float) -> list[ToolpathPoint]:
    """One revolution of ``radius`` at constant ``z``; the path is closed back to point 0 by the caller."""
    disc = discretize_count(ToleranceSpec(radius, tolerance))
    return [
        ToolpathPoint(radius * math.cos(t) + center_x, radius * math.sin(t) + center_y, z)
        for t in _angles(disc)
    ]


def elliptical_helix_points(spec: EllipticalHelixSpec, finish_partial_rev: bool = False) -> list[ToolpathPoint]:
    """Sample ``x = A' cos t + cx, y = B' sin t + cy`` with the helix z law.

    ``A'`` and ``B'`` are the compensated semi-axes.  The point count comes
    from the compensated semi-major axis.  An ellipse is the image of that
    circle under a y-scale <= 1, which cannot increase chord sag, so the
    circle's bound carries over; :func:`helixforge.verify.measure_deviation`
    checks it per job anyway.
    """
    rc = spec.cutter_diameter / 2.0
    a = spec.semi_major - rc
    b = spec.semi_minor - rc
    k = spec.revolutions
    if k == 0:
        raise ZeroRevolutions(f"bore length {spec.bore_length} is shorter than pitch {spec.pitch}")
    disc = discretize_count(ToleranceSpec(a, spec.tolerance))
    limit = spec.bore_length if finish_partial_rev else None
    return _helical(a, b, spec.center_x, spec.center_y, spec.pitch, k, disc, limit)
