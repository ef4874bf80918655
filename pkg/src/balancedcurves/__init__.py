"""Exact toolkit for balanced curves on the measured sphere."""

__version__ = "0.1.0"
