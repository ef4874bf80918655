from fractions import Fraction

import pytest

from balancedcurves.curveio import (
    FormatError,
    format_fraction,
    parse_curve,
    parse_curves,
    parse_fraction,
    serialize_curve,
    serialize_curves,
)
from balancedcurves.geometry import pt, validate_curve

SQ = validate_curve([pt("1/4", "1/4"), pt("3/4", "1/4"), pt("3/4", "3/4"), pt("1/4", "3/4")])


def test_fraction_round_trip():
    for s in ("1/2", "0", "-3/7", "5"):
        assert format_fraction(parse_fraction(s)) == s


def test_curve_round_trip_bit_exact():
    text = serialize_curve(SQ)
    again = parse_curve(text)
    assert again == SQ
    assert serialize_curve(again) == text


def test_multi_curve_blocks_and_comments():
    text = "# a square\n1/4 1/4\n3/4 1/4\n3/4 3/4\n1/4 3/4\n\n# another\n3/8 3/8\n5/8 3/8\n1/2 5/8\n"
    curves = parse_curves(text)
    assert len(curves) == 2
    assert curves[0] == SQ


def test_bad_line_raises():
    with pytest.raises(FormatError):
        parse_curves("1/4\n")


def test_bad_fraction_raises():
    with pytest.raises(FormatError):
        parse_fraction("x/y")
