import math
from pathlib import Path

import numpy as np
import pytest

from helixforge import HelixSpec

GOLDEN_DIR = Path(__file__).parent / "golden"


def linear_min_count(radius, delta):
    """Plain linear scan; the reference the package's oracle is checked against."""
    m = 3
    while radius * (1 - math.cos(math.pi / m)) > delta:
        m += 1
    return m


def dense_chord_deviation(points, cx, cy, rx, ry, pitch, per_rev=10_000, closed=False):
    """Max distance from a densely sampled ellipse/helix to the polyline.

    Samples the true curve at ``per_rev`` parameters per revolution and
    assigns each sample to the chord whose parameter span contains it.
    Independent of helixforge.verify.
    """
    pts = np.asarray(points, float)
    if closed:
        pts = np.vstack([pts, pts[:1]])
    phase = np.arctan2((pts[:, 1] - cy) / ry, (pts[:, 0] - cx) / rx)
    if pitch:
        turns = np.round((2 * np.pi * pts[:, 2] / pitch - phase) / (2 * np.pi))
        t = phase + 2 * np.pi * turns
    else:
        t = np.concatenate([[phase[0]], phase[0] + np.cumsum(np.mod(np.diff(phase), 2 * np.pi))])
    worst = 0.0
    for i in range(len(pts) - 1):
        n = max(2, int(math.ceil((t[i + 1] - t[i]) / (2 * np.pi) * per_rev)) + 1)
        s = np.linspace(t[i], t[i + 1], n)
        z0 = pts[0, 2] if not pitch else 0.0
        curve = np.column_stack([cx + rx * np.cos(s), cy + ry * np.sin(s), z0 + pitch * s / (2 * np.pi)])
        a, b = pts[i], pts[i + 1]
        d = b - a
        u = np.clip((curve - a) @ d / (d @ d), 0, 1)
        dist = np.linalg.norm(curve - (a + u[:, None] * d), axis=1)
        worst = max(worst, float(dist.max()))
    return worst


@pytest.fixture
def job4():
    return HelixSpec(cutter_diameter=10, center_x=0, center_y=0, bore_radius=10,
                     pitch=2, bore_length=6, tolerance=0.1)


def pytest_terminal_summary(terminalreporter):
    results = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if "test_acceptance.py" not in rep.nodeid:
                continue
            if rep.when == "call" or not rep.passed:
                results[rep.nodeid.split("::")[-1]] = "PASS" if rep.passed else "FAIL"
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(f"{results[name]}  {name}")
