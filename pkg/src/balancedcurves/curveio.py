"""Text formats for curves, arcs and witnesses.

Curve files are UTF-8 text with one vertex per line as ``p/q r/s`` in
lowest terms, blank-line-separated blocks, and ``#`` comments.  Parsing
then serializing (and vice versa on canonical files) is bit-exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .geometry import PolyArc, PolyCurve, RatPoint, validate_curve


class FormatError(Exception):
    pass


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad rational {s!r}: {e}") from None


def _parse_blocks(text: str) -> list[list[RatPoint]]:
    blocks: list[list[RatPoint]] = []
    current: list[RatPoint] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'x y' on line {raw!r}")
        current.append(RatPoint(parse_fraction(parts[0]), parse_fraction(parts[1])))
    if current:
        blocks.append(current)
    return blocks


def parse_points(text: str) -> list[list[RatPoint]]:
    return _parse_blocks(text)


def parse_curves(text: str) -> list[PolyCurve]:
    return [validate_curve(b) for b in _parse_blocks(text)]


def parse_curve(text: str) -> PolyCurve:
    curves = parse_curves(text)
    if len(curves) != 1:
        raise FormatError(f"expected exactly one curve, found {len(curves)}")
    return curves[0]


def parse_arc(text: str) -> PolyArc:
    blocks = _parse_blocks(text)
    if len(blocks) != 1:
        raise FormatError(f"expected exactly one arc, found {len(blocks)}")
    return PolyArc(blocks[0])


def serialize_points(blocks: Sequence[Sequence[RatPoint]]) -> str:
    out = []
    for b in blocks:
        out.append("\n".join(f"{format_fraction(p.x)} {format_fraction(p.y)}" for p in b))
    return "\n\n".join(out) + "\n"


def serialize_curve(c: PolyCurve) -> str:
    return serialize_points([c.points])


def serialize_curves(cs: Sequence[PolyCurve]) -> str:
    return serialize_points([c.points for c in cs])


def serialize_arc(a: PolyArc) -> str:
    return serialize_points([a.points])
