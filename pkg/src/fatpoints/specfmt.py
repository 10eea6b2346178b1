"""Line-oriented scheme-spec format.

Grammar (one constructor per file, '#' starts a comment):

    field: prime 2147483647        (or: field: rationals)
    N: 2
    star: {s: 4, seed: 7}          (or: star: {s: 3, hyperplanes: [[1,0,0], ...]})
    general: {n: 5, seed: 11}
    points:
      - [c0, c1, ..., cN] x <mult>

Coordinates are integers or rationals written a/b.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import Field, PrimeField, RationalField
from .schemes import FatPointScheme, explicit_scheme, general_points, star_configuration


class SpecFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_POINT_RE = re.compile(r"^\s*-\s*\[(?P<coords>[^\]]*)\]\s*x\s*(?P<mult>\d+)\s*$")
_STAR_SEED_RE = re.compile(r"^\{\s*s\s*:\s*(?P<s>\d+)\s*,\s*seed\s*:\s*(?P<seed>-?\d+)\s*\}$")
_STAR_PLANES_RE = re.compile(r"^\{\s*s\s*:\s*(?P<s>\d+)\s*,\s*hyperplanes\s*:\s*(?P<planes>\[.*\])\s*\}$")
_GENERAL_RE = re.compile(r"^\{\s*n\s*:\s*(?P<n>\d+)\s*,\s*seed\s*:\s*(?P<seed>-?\d+)\s*\}$")


def _parse_number(token: str, line: int):
    token = token.strip()
    if not token:
        raise SpecFormatError("empty coordinate", line)
    try:
        if "/" in token:
            return Fraction(token)
        return int(token)
    except ValueError:
        raise SpecFormatError(f"bad coordinate {token!r}", line) from None


def _parse_vector_list(text: str, line: int) -> list[list]:
    """Parse [[a,b,c],[d,e,f],...] with integer/rational entries."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise SpecFormatError("expected a bracketed list", line)
    inner = text[1:-1].strip()
    vectors = []
    depth = 0
    current = ""
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                current = ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                vectors.append([_parse_number(t, line) for t in current.split(",")])
                continue
        if depth >= 1:
            current += ch
        elif ch not in ", \t":
            raise SpecFormatError(f"unexpected character {ch!r} in list", line)
    if depth != 0:
        raise SpecFormatError("unbalanced brackets", line)
    return vectors


def parse_scheme_spec(text: str) -> tuple[FatPointScheme, Field]:
    """Parse a scheme-spec document into a validated scheme and its field."""
    field: Field | None = None
    N: int | None = None
    constructor: tuple | None = None
    point_rows: list = []
    in_points = False
    points_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if in_points:
            m = _POINT_RE.match(line)
            if m:
                coords = [_parse_number(t, lineno) for t in m.group("coords").split(",")]
                point_rows.append((coords, int(m.group("mult"))))
                continue
            in_points = False  # fall through: the points block ended
        key, sep, value = line.partition(":")
        if not sep:
            raise SpecFormatError(f"expected 'key: value', got {line.strip()!r}", lineno)
        key = key.strip()
        value = value.strip()
        if key == "field":
            if value == "rationals":
                field = RationalField()
            elif value.startswith("prime"):
                parts = value.split()
                if len(parts) != 2 or not parts[1].isdigit():
                    raise SpecFormatError("expected 'field: prime <p>'", lineno)
                try:
                    field = PrimeField(int(parts[1]))
                except ValueError as exc:
                    raise SpecFormatError(str(exc), lineno) from None
            else:
                raise SpecFormatError(f"unknown field {value!r}", lineno)
        elif key == "N":
            try:
                N = int(value)
            except ValueError:
                raise SpecFormatError("N must be an integer", lineno) from None
        elif key in ("star", "general", "points"):
            if constructor is not None:
                raise SpecFormatError("exactly one constructor per file", lineno)
            if key == "points":
                if value:
                    raise SpecFormatError("point rows go on following '- [...] x m' lines", lineno)
                constructor = ("points",)
                in_points = True
                points_line = lineno
            elif key == "star":
                m = _STAR_SEED_RE.match(value)
                if m:
                    constructor = ("star-seed", int(m.group("s")), int(m.group("seed")), lineno)
                else:
                    m = _STAR_PLANES_RE.match(value)
                    if not m:
                        raise SpecFormatError(
                            "expected star: {s: <int>, seed: <int>} or {s: <int>, hyperplanes: [...]}",
                            lineno,
                        )
                    planes = _parse_vector_list(m.group("planes"), lineno)
                    constructor = ("star-planes", int(m.group("s")), planes, lineno)
            else:
                m = _GENERAL_RE.match(value)
                if not m:
                    raise SpecFormatError("expected general: {n: <int>, seed: <int>}", lineno)
                constructor = ("general", int(m.group("n")), int(m.group("seed")), lineno)
        else:
            raise SpecFormatError(f"unknown key {key!r}", lineno)
    if field is None:
        raise SpecFormatError("missing 'field:' line", 1)
    if N is None:
        raise SpecFormatError("missing 'N:' line", 1)
    if constructor is None:
        raise SpecFormatError("missing constructor (points/star/general)", 1)
    try:
        if constructor[0] == "points":
            if not point_rows:
                raise SpecFormatError("points: block has no rows", points_line)
            scheme = explicit_scheme(field, N, point_rows)
        elif constructor[0] == "star-seed":
            scheme = star_configuration(constructor[1], N, field, seed=constructor[2])
        elif constructor[0] == "star-planes":
            scheme = star_configuration(constructor[1], N, field, hyperplanes=constructor[2])
        else:
            scheme = general_points(constructor[1], N, field, constructor[2])
    except SpecFormatError:
        raise
    except ValueError as exc:
        lineno = constructor[-1] if constructor[0] != "points" else points_line
        raise SpecFormatError(str(exc), lineno) from None
    return scheme, field


def emit_scheme_spec(scheme: FatPointScheme) -> str:
    """Serialize a scheme as an explicit-points spec (round-trips exactly)."""
    field = scheme.field
    cfg = field.config()
    lines = []
    lines.append("field: rationals" if cfg["kind"] == "rationals" else f"field: prime {cfg['p']}")
    lines.append(f"N: {scheme.N}")
    lines.append("points:")
    for pt, mult in scheme.entries:
        coords = ", ".join(field.format(c) for c in pt.coords)
        lines.append(f"  - [{coords}] x {mult}")
    return "\n".join(lines) + "\n"
