"""Tolerance-driven circle and helix discretization for CNC G-code."""

from .discretize import (
    Discretization,
    ToleranceSpec,
    chord_length,
    count_points,
    discretize_count,
    sagitta,
)
from .errors import (
    CutterTooLarge,
    DegenerateSegment,
    EmptyToolpath,
    HelixForgeError,
    InvalidCount,
    InvalidTolerance,
    IoFailure,
    ZeroRevolutions,
)
from .gcode import Block, GCodeProgram, render_program, write_program
from .toolpath import (
    EllipticalHelixSpec,
    HelixSpec,
    ToolpathPoint,
    circle_points,
    effective_radius,
    elliptical_helix_points,
    helix_points,
)
from .verify import DeviationReport, EllipticalHelixCurve, measure_deviation, oracle_min_count

__version__ = "0.1.0"
