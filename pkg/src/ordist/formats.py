"""Plain-text formats for distance matrices and split systems.

Distance matrix format::

    # optional comment lines
    4
    a 0 2 2 1
    b 2 0 2 3
    c 2 2 0 1
    d 1 3 1 0

Values may be integers, rationals like ``3/2`` or finite decimals like
``1.5``; all are read exactly.  Split system format::

    5
    a b c d e
    a,b | c,d,e : 3/2
    c | a,b,d,e

The weight clause is optional and defaults to 1.  Writing then reading
either format reproduces the object exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    DistanceMatrix,
    GroundSet,
    Split,
    WeightedSplitSystem,
    as_rational,
)

__all__ = [
    "FormatError",
    "format_rational",
    "parse_distance_matrix",
    "format_distance_matrix",
    "parse_split_system",
    "format_split_system",
]


class FormatError(ValueError):
    """Raised for malformed or inconsistent input text."""


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _parse_value(token: str, context: str) -> Fraction:
    try:
        return as_rational(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad value {token!r} in {context}") from None


def parse_distance_matrix(text: str) -> DistanceMatrix:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"expected element count, got {lines[0]!r}") from None
    if n < 1:
        raise FormatError("element count must be at least 1")
    if len(lines) != n + 1:
        raise FormatError(f"expected {n} matrix rows, found {len(lines) - 1}")
    labels = []
    rows = []
    for line in lines[1:]:
        tokens = line.split()
        if len(tokens) != n + 1:
            raise FormatError(f"expected label plus {n} values: {line!r}")
        labels.append(tokens[0])
        rows.append([_parse_value(t, f"row {tokens[0]!r}") for t in tokens[1:]])
    try:
        return DistanceMatrix(GroundSet(labels), rows)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_distance_matrix(matrix: DistanceMatrix) -> str:
    lines = [str(matrix.n)]
    for label, row in zip(matrix.ground.labels, matrix.entries):
        lines.append(label + " " + " ".join(format_rational(v) for v in row))
    return "\n".join(lines) + "\n"


def _parse_side(part: str, ground: GroundSet, context: str) -> list[int]:
    labels = [tok.strip() for tok in part.split(",")]
    if any(not tok for tok in labels):
        raise FormatError(f"empty label in {context}")
    try:
        return [ground.index(tok) for tok in labels]
    except ValueError as exc:
        raise FormatError(f"{exc} in {context}") from None


def parse_split_system(text: str) -> WeightedSplitSystem:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise FormatError("split system input needs a count line and a label line")
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"expected element count, got {lines[0]!r}") from None
    labels = lines[1].split()
    if len(labels) != n:
        raise FormatError(f"expected {n} labels, found {len(labels)}")
    try:
        ground = GroundSet(labels)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    entries = []
    seen = set()
    for line in lines[2:]:
        body, _, weight_part = line.partition(":")
        weight = Fraction(1)
        if weight_part.strip():
            weight = _parse_value(weight_part.strip(), f"split line {line!r}")
        sides = body.split("|")
        if len(sides) != 2:
            raise FormatError(f"expected exactly one '|' in split line {line!r}")
        left = _parse_side(sides[0], ground, f"split line {line!r}")
        right = _parse_side(sides[1], ground, f"split line {line!r}")
        if set(left) & set(right):
            raise FormatError(f"sides overlap in split line {line!r}")
        if len(left) + len(right) != n:
            raise FormatError(f"sides do not cover all elements: {line!r}")
        try:
            split = Split(ground, left)
        except ValueError as exc:
            raise FormatError(f"{exc} in split line {line!r}") from None
        if split in seen:
            raise FormatError(f"duplicate split in line {line!r}")
        seen.add(split)
        if weight < 0:
            raise FormatError(f"negative weight in split line {line!r}")
        entries.append((split, weight))
    try:
        return WeightedSplitSystem(ground, entries)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_split_system(system: WeightedSplitSystem) -> str:
    lines = [str(system.ground.n), " ".join(system.ground.labels)]
    for split, weight in system.items():
        lines.append(f"{split} : {format_rational(weight)}")
    return "\n".join(lines) + "\n"
