"""Exact rational scalars.

Every polyhedral computation in this package is exact: facet, inclusion, and
equality claims are equality-sensitive, so floating point is never used.
gmpy2's mpq is preferred for speed; fractions.Fraction is a drop-in fallback.
"""
from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

RatType = type(Rat(0))

ZERO = Rat(0)
ONE = Rat(1)


def rat(value, den=None):
    """Build a Rat from an int, a "p/q" string, or another Rat."""
    if den is not None:
        return Rat(value, den)
    if isinstance(value, RatType):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, int):
        return Rat(value)
    if isinstance(value, str):
        return Rat(value.strip())
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


def rat_str(q) -> str:
    """Render as "p/q" (or "p" for integers); inverse of rat()."""
    return str(q)


def is_integer(q) -> bool:
    return q.denominator == 1


def rat_sum(values):
    total = ZERO
    for v in values:
        total += v
    return total
