"""Exact rational helpers.

All rates (percentages, thresholds, F-scores) are kept as `fractions.Fraction`
internally so that strict comparisons and equality checks are exact and
bit-reproducible. Floats enter only at the formatting boundary.
"""

from __future__ import annotations

from fractions import Fraction


def exact_fraction(value) -> Fraction:
    """Convert a number to a Fraction, treating floats as their decimal repr.

    `exact_fraction(0.05)` is 1/20, not the binary double nearest 0.05. This
    keeps thresholds read back from JSON identical to the ones written out.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def format_rate(value, places: int = 3) -> float:
    """Round a rational rate for reports; reports match 3-decimal table style."""
    return round(float(value), places)
