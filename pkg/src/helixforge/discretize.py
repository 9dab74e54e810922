"""Point count for a circle from a chordal (sagitta) tolerance.

A regular polygon inscribed in a circle of radius ``r`` has an apothem
``a``.  Fixing ``delta = r - a`` bounds how far any side can sag away
from the arc it replaces, and fixes the half-angle ``theta`` each side
subtends.  The number of points is then ``floor(pi / theta) + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidCount, InvalidTolerance

MIN_COUNT = 3


@dataclass(frozen=True)
class ToleranceSpec:
    """Circle radius and the allowed chord-to-arc deviation."""

    radius: float
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and math.isfinite(self.delta)):
            raise InvalidTolerance(f"non-finite radius/tolerance: {self.radius!r}, {self.delta!r}")
        if self.radius <= 0:
            raise InvalidTolerance(f"radius must be positive, got {self.radius}")
        if not 0 < self.delta < self.radius:
            raise InvalidTolerance(
                f"tolerance must satisfy 0 < tolerance < radius ({self.radius}), got {self.delta}"
            )


@dataclass(frozen=True)
class Discretization:
    radius: float
    apothem: float
    height: float  # half of the chord
    half_angle: float
    step_angle: float  # angle between consecutive points
    raw_count: float  # pi / half_angle before rounding
    count: int

    @property
    def chord(self) -> float:
        return chord_length(self)


def discretize_count(spec: ToleranceSpec) -> Discretization:
    """Discretize a circle so no chord sags more than ``spec.delta``.

    The half-angle is ``arccos(a / r)``, which equals ``atan(h / a)`` for
    ``a > 0``.  It is evaluated as ``2 * asin(sqrt(delta / 2r))`` so that
    tiny tolerances do not lose digits to ``1 - delta / r``.

    Raises:
        InvalidTolerance: if ``spec`` is not a valid ToleranceSpec.
    """
    if not isinstance(spec, ToleranceSpec):
        spec = ToleranceSpec(*spec)
    r, delta = spec.radius, spec.delta
    apothem = r - delta
    # r^2 - a^2 == delta * (2r - delta), without cancellation
    height = math.sqrt(delta * (2.0 * r - delta))
    half_angle = 2.0 * math.asin(math.sqrt(delta / (2.0 * r)))
    raw_count = math.pi / half_angle
    count = max(int(raw_count) + 1, MIN_COUNT)
    return Discretization(
        radius=r,
        apothem=apothem,
        height=height,
        half_angle=half_angle,
        step_angle=2.0 * half_angle,
        raw_count=raw_count,
        count=count,
    )


def count_points(radius: float, delta: float) -> int:
    return discretize_count(ToleranceSpec(radius, delta)).count


def sagitta(radius: float, count: int) -> float:
    """Largest chord-to-arc gap of a regular ``count``-gon inscribed in ``radius``."""
    if count < MIN_COUNT:
        raise InvalidCount(f"a polygon needs at least {MIN_COUNT} vertices, got {count}")
    if radius <= 0:
        raise InvalidTolerance(f"radius must be positive, got {radius}")
    # r * (1 - cos(pi/n)) written as 2r sin^2(pi/2n)
    s = math.sin(math.pi / (2 * count))
    return 2.0 * radius * s * s


def chord_length(disc: Discretization) -> float:
    return 2.0 * disc.height
