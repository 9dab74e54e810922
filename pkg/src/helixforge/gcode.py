"""Render toolpath points as a 3-axis milling program and write it out."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyToolpath, IoFailure

DEFAULT_FILENAME = "TestHelix.nc"
DEFAULT_DECIMALS = 3
DEFAULT_START_MARKER = "%"
SAFETY_BLOCK = "G54 G17 G40 G80 G90"
SPINDLE_BLOCK = "S1000 M03"
END_BLOCK = "M30"
APPROACH_Z = 20.0
RETRACT_Z = 100.0
AXES = ("X", "Y", "Z", "F")


def format_number(value: float, decimals: int = DEFAULT_DECIMALS) -> str:
    """Fixed-point text, half away from zero, never ``-0.000`` or exponents."""
    quantum = Decimal(1).scaleb(-decimals)
    d = Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP)
    if d.is_zero():
        d = abs(d)
    return f"{d:f}"


def _word_number(value: float) -> str:
    # "100." style for whole numbers, as in the classic retract line
    if float(value).is_integer():
        return f"{int(value)}."
    return repr(float(value))


@dataclass(frozen=True)
class Block:
    """One NC line: either literal text or an axis move."""

    text: str | None = None
    words: tuple[tuple[str, float], ...] = ()

    @classmethod
    def move(cls, x=None, y=None, z=None, f=None) -> "Block":
        vals = dict(zip(AXES, (x, y, z, f)))
        return cls(words=tuple((a, v) for a, v in vals.items() if v is not None))

    def render(self, decimals: int = DEFAULT_DECIMALS) -> str:
        if self.text is not None:
            return self.text
        out = []
        for axis, value in self.words:
            if axis == "F":
                out.append(f"F{_word_number(value).rstrip('.')}")
            else:
                out.append(f"{axis}{format_number(value, decimals)}")
        return " ".join(out)


@dataclass
class GCodeProgram:
    blocks: list[Block] = field(default_factory=list)
    decimals: int = DEFAULT_DECIMALS
    line_ending: str = "\n"

    def lines(self) -> list[str]:
        return [b.render(self.decimals) for b in self.blocks]

    def text(self) -> str:
        return "".join(line + self.line_ending for line in self.lines())

    def to_bytes(self) -> bytes:
        return self.text().encode("ascii")

    def __len__(self):
        return len(self.blocks)

    @property
    def block_count(self) -> int:
        """NC blocks, not counting the leading tape start marker."""
        return len(self.blocks) - 1


def render_program(
    points: Sequence[Sequence[float]],
    spec,
    *,
    decimals: int = DEFAULT_DECIMALS,
    start_marker: str = DEFAULT_START_MARKER,
    approach_z: float = APPROACH_Z,
    retract_z: float = RETRACT_Z,
    crlf: bool = False,
) -> GCodeProgram:
    """Wrap ``points`` in the helix program header and footer.

    ``spec`` only needs ``center_x`` and ``center_y``; the tool rapids
    there before the first point and returns there after the last.

    Raises:
        EmptyToolpath: ``points`` is empty.
    """
    if len(points) == 0:
        raise EmptyToolpath("no toolpath points to render")
    cx, cy = spec.center_x, spec.center_y
    n = lambda v: format_number(v, decimals)  # noqa: E731
    blocks = [
        Block(start_marker),
        Block(SAFETY_BLOCK),
        Block(SPINDLE_BLOCK),
        Block(f"G01 Z{_word_number(retract_z)} F1000"),
        Block(f"X{n(cx)} Y{n(cy)} Z{format_number(approach_z, 2)} F3000"),
    ]
    blocks.extend(Block.move(p[0], p[1], p[2]) for p in points)
    blocks.append(Block(f"X{n(cx)} Y{n(cy)} F1000"))
    blocks.append(Block(f"Z{format_number(retract_z, 3)}"))
    blocks.append(Block(END_BLOCK))
    return GCodeProgram(blocks, decimals, "\r\n" if crlf else "\n")


def write_program(program: GCodeProgram, path: str | Path = DEFAULT_FILENAME) -> Path:
    path = Path(path)
    try:
        path.write_bytes(program.to_bytes())
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path


_WORD = re.compile(r"([XYZF])\s*([-+]?\d*\.?\d*(?:[eE][-+]?\d+)?)")


def parse_words(line: str) -> dict[str, float]:
    words = {}
    for axis, num in _WORD.findall(line.upper()):
        if num in ("", ".", "+", "-"):
            continue
        words[axis] = float(num)
    return words


def parse_toolpath(lines: Iterable[str]) -> list[tuple[float, float, float]]:
    """Recover the cutting moves from program text.

    Only blocks carrying X, Y and Z without a feed word are cutting moves;
    the approach and return blocks carry F and are skipped.
    """
    out = []
    for line in lines:
        w = parse_words(line.split("(")[0].split(";")[0])
        if {"X", "Y", "Z"} <= w.keys() and "F" not in w:
            out.append((w["X"], w["Y"], w["Z"]))
    return out
