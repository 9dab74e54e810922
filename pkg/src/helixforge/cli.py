"""Command line entry point.

All lengths are unitless machine units (use mm or inches consistently).
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import gcode
from .discretize import ToleranceSpec, chord_length, discretize_count
from .errors import CutterTooLarge, HelixForgeError, IoFailure
from .toolpath import (
    EllipticalHelixSpec,
    HelixSpec,
    circle_points,
    effective_radius,
    elliptical_helix_points,
    helix_points,
)
from .verify import DEFAULT_SAMPLES, EllipticalHelixCurve, measure_deviation

DECIMALS_ENV = "HELIXFORGE_DECIMALS"
SHAPES = ("circle", "helix", "elliptical-helix")

# Default job: 10-dia cutter in a 10-radius bore, 2 pitch, 6 deep
JOB_DEFAULTS = {
    "shape": "helix",
    "cutter_diameter": 10.0,
    "center_x": 0.0,
    "center_y": 0.0,
    "bore_radius": 10.0,
    "pitch": 2.0,
    "bore_length": 6.0,
    "tolerance": 0.1,
    "semi_major": None,
    "semi_minor": None,
    "z": 0.0,
    "finish_partial_rev": False,
    "output": gcode.DEFAULT_FILENAME,
    "decimals": None,
    "crlf": False,
    "start_marker": gcode.DEFAULT_START_MARKER,
    "approach_z": gcode.APPROACH_Z,
    "retract_z": gcode.RETRACT_Z,
}

# Prompt order and wording of the classic interactive dialogue.
PROMPTS = (
    ("cutter_diameter", "Enter the cutter dia\n"),
    ("center_x", "Enter the center for X\n"),
    ("center_y", "Enter the center for Y\n"),
    ("bore_radius", "Enter a value for the radius"),
    ("pitch", "Enter the pitch\n"),
    ("bore_length", "Enter the length of the bore\n"),
    ("tolerance", "Enter the tolerance,a small value\n"),
)

# same short names the command-line flags accept
_ALIASES = {"cutter_dia": "cutter_diameter", "radius": "bore_radius", "length": "bore_length"}
_BOOL_KEYS = {"finish_partial_rev", "crlf"}
_STR_KEYS = {"shape", "output", "start_marker"}
_INT_KEYS = {"decimals"}


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    shape: str
    cutter_diameter: float
    center_x: float
    center_y: float
    bore_radius: float
    pitch: float
    bore_length: float
    tolerance: float
    semi_major: float | None
    semi_minor: float | None
    z: float
    finish_partial_rev: bool
    output: str
    decimals: int
    crlf: bool
    start_marker: str
    approach_z: float
    retract_z: float

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise UsageError(f"unknown shape {self.shape!r}; choose from {', '.join(SHAPES)}")
        if not self.output:
            raise UsageError("output path must not be empty")
        if self.decimals < 0:
            raise UsageError(f"decimals must be >= 0, got {self.decimals}")

    def helix_spec(self) -> HelixSpec:
        return HelixSpec(
            self.cutter_diameter, self.center_x, self.center_y,
            self.bore_radius, self.pitch, self.bore_length, self.tolerance,
        )

    def ellipse_spec(self) -> EllipticalHelixSpec:
        a = self.semi_major if self.semi_major is not None else self.bore_radius
        b = self.semi_minor if self.semi_minor is not None else a
        return EllipticalHelixSpec(
            a, b, self.center_x, self.center_y, self.pitch,
            self.bore_length, self.tolerance, self.cutter_diameter,
        )

    def points(self):
        if self.shape == "helix":
            return helix_points(self.helix_spec(), self.finish_partial_rev)
        if self.shape == "elliptical-helix":
            return elliptical_helix_points(self.ellipse_spec(), self.finish_partial_rev)
        return circle_points(self.center_x, self.center_y, self._circle_radius(), self.z, self.tolerance)

    def _circle_radius(self):
        r = self.bore_radius - self.cutter_diameter / 2.0
        if r <= 0:
            raise CutterTooLarge(
                f"cutter diameter {self.cutter_diameter} leaves no room in bore radius {self.bore_radius}"
            )
        return r

    def curve(self) -> EllipticalHelixCurve:
        if self.shape == "helix":
            r = effective_radius(self.helix_spec())
            return EllipticalHelixCurve(self.center_x, self.center_y, r, r, self.pitch)
        if self.shape == "elliptical-helix":
            s = self.ellipse_spec()
            rc = s.cutter_radius
            return EllipticalHelixCurve(
                s.center_x, s.center_y, s.semi_major - rc, s.semi_minor - rc, s.pitch
            )
        r = self._circle_radius()
        return EllipticalHelixCurve(self.center_x, self.center_y, r, r, 0.0, self.z)

    def bounding_radius(self) -> float:
        if self.shape == "elliptical-helix":
            return self.ellipse_spec().semi_major
        return self.bore_radius


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, dashes equal underscores."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        key = _ALIASES.get(key, key)
        if key not in JOB_DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, value, f"{path}:{lineno}")
    return values


def _coerce(key, value, where):
    try:
        if key in _BOOL_KEYS:
            if value.lower() in ("1", "true", "yes", "on"):
                return True
            if value.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(value)
        if key in _STR_KEYS:
            return value
        if key in _INT_KEYS:
            return int(value)
        return float(value)
    except ValueError:
        raise UsageError(f"{where}: bad value for {key}: {value!r}") from None


def _read_tokens(stream):
    for line in stream:
        yield from line.split()


def prompt_job(values: dict, stdin=None, stdout=None) -> dict:
    """Fill the seven core job values from the interactive dialogue."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    tokens = _read_tokens(stdin)
    for key, prompt in PROMPTS:
        print(prompt, file=stdout)
        stdout.flush()
        try:
            token = next(tokens)
        except StopIteration:
            raise UsageError(f"input ended before a value for {key}") from None
        values[key] = _coerce(key, token, "input")
    return values


def _job_options(p):
    g = p.add_argument_group("job")
    g.add_argument("--shape", choices=SHAPES)
    g.add_argument("--cutter-diameter", "--cutter-dia", type=float, dest="cutter_diameter")
    g.add_argument("--center-x", type=float)
    g.add_argument("--center-y", type=float)
    g.add_argument("--bore-radius", "--radius", type=float, dest="bore_radius",
                   help="finished bore radius (tool centre runs cutter radius inside)")
    g.add_argument("--pitch", type=float, help="axial advance per revolution")
    g.add_argument("--bore-length", "--length", type=float, dest="bore_length")
    g.add_argument("--tolerance", type=float, help="allowed chord-to-arc deviation")
    g.add_argument("--semi-major", type=float, help="elliptical-helix: X semi-axis of the finished bore")
    g.add_argument("--semi-minor", type=float, help="elliptical-helix: Y semi-axis of the finished bore")
    g.add_argument("--z", type=float, help="circle: cutting height")
    g.add_argument("--finish-partial-rev", action="store_true", default=None,
                   help="keep cutting through a fractional last revolution")
    g.add_argument("--config", help="key=value file; command-line flags override it")
    g.add_argument("--interactive", action="store_true", help="prompt for the core job values")
    f = p.add_argument_group("format")
    f.add_argument("--decimals", type=int, help=f"digits after the point (env {DECIMALS_ENV}, default 3)")
    f.add_argument("--crlf", action="store_true", default=None, help="CRLF line endings")
    f.add_argument("--start-marker", help="first program line (default %%)")
    f.add_argument("--approach-z", type=float)
    f.add_argument("--retract-z", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helixforge",
        description="Tolerance-driven circle/helix discretization and helical milling G-code. "
        "All lengths are unitless machine units.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="print point count, step angle and chord for a radius/tolerance")
    c.add_argument("--radius", type=float, required=True)
    c.add_argument("--tolerance", type=float, required=True)

    g = sub.add_parser("generate", help="write an NC program")
    _job_options(g)
    g.add_argument("--output", "-o", help=f"NC file (default {gcode.DEFAULT_FILENAME})")

    v = sub.add_parser("verify", help="measure chord deviation of a job's toolpath")
    _job_options(v)
    v.add_argument("--input", "-i", help="NC or CSV file to check instead of regenerating the points")
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="curve samples per segment")

    d = sub.add_parser("dump", help="write the points as CSV and optionally an SVG of the XY path")
    _job_options(d)
    d.add_argument("--csv", help="CSV path (default stdout)")
    d.add_argument("--svg", help="SVG path")
    return parser


def resolve_job(args, stdin=None, stdout=None) -> JobConfig:
    values = dict(JOB_DEFAULTS)
    if getattr(args, "config", None):
        values.update(read_config(args.config))
    env = os.environ.get(DECIMALS_ENV)
    if env is not None:
        values["decimals"] = _coerce("decimals", env, DECIMALS_ENV)
    if getattr(args, "interactive", False):
        prompt_job(values, stdin, stdout)
    for key in JOB_DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if values["decimals"] is None:
        values["decimals"] = gcode.DEFAULT_DECIMALS
    return JobConfig(**values)


def cmd_count(args, out):
    disc = discretize_count(ToleranceSpec(args.radius, args.tolerance))
    print(f"The number of points is {disc.count}", file=out)
    print(f"The angle is {math.degrees(disc.step_angle):.6f} degrees ({disc.step_angle:.9f} rad)", file=out)
    print(f"The chord is {chord_length(disc):.6f}", file=out)
    return 0


def _program(job: JobConfig, points):
    return gcode.render_program(
        points, job, decimals=job.decimals, start_marker=job.start_marker,
        approach_z=job.approach_z, retract_z=job.retract_z, crlf=job.crlf,
    )


def _announce(job, points, out):
    r = job.curve().semi_major
    disc = discretize_count(ToleranceSpec(r, job.tolerance))
    print(f"The number of points is {disc.count}", file=out)
    print(f"The angle is {math.degrees(disc.step_angle):.6f} degrees", file=out)
    print(f"Toolpath points: {len(points)}", file=out)


def cmd_generate(args, out, stdin=None):
    job = resolve_job(args, stdin, out)
    points = job.points()
    _announce(job, points, out)
    path = gcode.write_program(_program(job, points), job.output)
    print(f"Wrote {path}", file=out)
    return 0


def _load_points(path):
    text = Path(path).read_text()
    if Path(path).suffix.lower() == ".csv":
        rows = list(csv.reader(text.splitlines()))
        if rows and rows[0] and rows[0][0].strip().lower() == "x":
            rows = rows[1:]
        return [tuple(float(v) for v in row) for row in rows if row]
    return gcode.parse_toolpath(text.splitlines())


def cmd_verify(args, out):
    job = resolve_job(args)
    if args.input:
        try:
            points = _load_points(args.input)
        except OSError as exc:
            raise IoFailure(f"cannot read {args.input}: {exc}") from exc
        # each coordinate is off by up to half a quantum, so a 3D chord can
        # shift by sqrt(3)/2 quantum; one full quantum covers it
        allowance = 10.0 ** (-job.decimals)
    else:
        points = job.points()
        allowance = 0.0
    if job.shape == "circle" and len(points) > 1:
        points = list(points) + [points[0]]
    report = measure_deviation(points, job.curve(), args.samples)
    ok = report.within(job.tolerance, allowance)
    print(f"points: {len(points)}", file=out)
    print(f"max_deviation: {report.max_deviation:.9f}", file=out)
    print(f"worst_segment_index: {report.worst_segment_index}", file=out)
    print(f"samples_per_segment: {report.samples_per_segment}", file=out)
    print(f"tolerance: {job.tolerance} {'OK' if ok else 'EXCEEDED'}", file=out)
    return 0 if ok else 1


def write_csv(points, path_or_stream, decimals):
    def rows(w):
        w.writerow(["x", "y", "z"])
        for p in points:
            w.writerow([gcode.format_number(v, decimals) for v in p])

    if hasattr(path_or_stream, "write"):
        rows(csv.writer(path_or_stream, lineterminator="\n"))
        return
    try:
        with open(path_or_stream, "w", newline="") as fh:
            rows(csv.writer(fh, lineterminator="\n"))
    except OSError as exc:
        raise IoFailure(f"cannot write {path_or_stream}: {exc}") from exc


def svg_polyline(points, center_x, center_y, bore_radius, decimals=3) -> str:
    """XY projection as one polyline; y is flipped so +Y points up.

    The view box is the bore diameter plus a 10% margin, centred on the bore.
    """
    size = 2.0 * bore_radius * 1.1
    half = size / 2.0
    fmt = lambda v: gcode.format_number(v, decimals)  # noqa: E731
    coords = " ".join(f"{fmt(p[0])},{fmt(-p[1])}" for p in points)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{fmt(center_x - half)} {fmt(-center_y - half)} {fmt(size)} {fmt(size)}">\n'
        f'<polyline fill="none" stroke="black" stroke-width="{fmt(size / 500)}" points="{coords}"/>\n'
        "</svg>\n"
    )


def cmd_dump(args, out):
    job = resolve_job(args)
    points = job.points()
    write_csv(points, args.csv or out, job.decimals)
    if args.svg:
        text = svg_polyline(points, job.center_x, job.center_y, job.bounding_radius(), job.decimals)
        try:
            Path(args.svg).write_text(text)
        except OSError as exc:
            raise IoFailure(f"cannot write {args.svg}: {exc}") from exc
    return 0


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "count":
            return cmd_count(args, out)
        if args.command == "generate":
            return cmd_generate(args, out, stdin)
        if args.command == "verify":
            return cmd_verify(args, out)
        return cmd_dump(args, out)
    except (HelixForgeError, IoFailure) as exc:
        print(f"helixforge: {type(exc).__name__}: {exc}", file=err)
        return 2
    except UsageError as exc:
        print(f"helixforge: usage: {exc}", file=err)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
