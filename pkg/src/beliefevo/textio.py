"""Plain-text formats for mass functions and PMFs.

Mass file::

    frame: A B C
    # comments and blank lines are ignored
    A:0.1
    A+B:0.2
    _:0.0

``_`` names the empty set.  Values are written with ``repr`` so any decimal
with up to 12 significant digits survives a round trip unchanged.
"""
from __future__ import annotations

from pathlib import Path

from .core import Frame, MassFunction, ProbabilityMassFunction
from .errors import FrameError, InvalidMassError, ParseError


def _number(text: str, line: int, col: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"line {line}, column {col}: not a number: {text!r}") from None


def format_value(v: float, precision: int | None = None) -> str:
    if precision is None:
        return repr(float(v))
    return f"{v:.{precision}f}"


def parse_frame_header(line: str, lineno: int = 1) -> Frame:
    head, sep, rest = line.partition(":")
    if not sep or head.strip().lower() != "frame":
        raise ParseError(f"line {lineno}, column 1: expected 'frame: <labels>' header")
    try:
        return Frame(tuple(rest.split()))
    except FrameError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None


def _record(frame, token, lineno, col):
    subset, sep, value = token.rpartition(":")
    if not sep:
        raise ParseError(f"line {lineno}, column {col}: expected '<subset>:<mass>', got {token!r}")
    try:
        bits = frame.mask(subset)
    except FrameError as exc:
        raise ParseError(f"line {lineno}, column {col}: {exc}") from None
    return bits, _number(value, lineno, col + len(subset) + 1)


def parse_mass(text: str, *, strict: bool = True) -> MassFunction:
    frame = None
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if frame is None:
            frame = parse_frame_header(line, lineno)
            continue
        col = raw.index(line[0]) + 1
        records.append(_record(frame, line, lineno, col))
    if frame is None:
        raise ParseError("line 1, column 1: empty mass file (missing frame header)")
    try:
        return MassFunction(frame, records, strict=strict)
    except InvalidMassError as exc:
        raise ParseError(f"invalid mass function: {exc}") from None


def format_mass(m: MassFunction, precision: int | None = None) -> str:
    lines = ["frame: " + " ".join(m.frame.elements)]
    for bits, v in m.items():
        lines.append(f"{m.frame.name(bits)}:{format_value(v, precision)}")
    return "\n".join(lines) + "\n"


def format_mass_line(m: MassFunction, precision: int | None = None) -> str:
    """Single-line form used for evolution traces."""
    return " ".join(f"{m.frame.name(b)}:{format_value(v, precision)}" for b, v in m.items())


def parse_mass_line(frame: Frame, line: str, *, strict: bool = True) -> MassFunction:
    records = []
    col = 1
    for token in line.split(" "):
        if token:
            records.append(_record(frame, token, 1, col))
        col += len(token) + 1
    return MassFunction(frame, records, strict=strict)


def read_mass(path, *, strict: bool = True) -> MassFunction:
    return parse_mass(Path(path).read_text(encoding="utf-8"), strict=strict)


def parse_pmf(text: str, frame: Frame | None = None, *, strict: bool = True) -> ProbabilityMassFunction:
    """Comma-separated probabilities, e.g. ``"0.9,0.09,0.01"``."""
    parts = [p.strip() for p in text.strip().split(",")]
    if not parts or parts == [""]:
        raise ParseError("line 1, column 1: empty probability list")
    values = []
    col = 1
    for p in parts:
        values.append(_number(p, 1, col))
        col += len(p) + 1
    frame = frame or Frame.letters(len(values))
    if frame.n != len(values):
        raise ParseError(f"expected {frame.n} probabilities, got {len(values)}")
    try:
        return ProbabilityMassFunction(frame, values, strict=strict)
    except InvalidMassError as exc:
        raise ParseError(str(exc)) from None


def format_pmf(p: ProbabilityMassFunction, precision: int | None = 4) -> str:
    return ",".join(format_value(v, precision) for v in p.probs)
