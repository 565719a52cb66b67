"""Exact coefficients for the two supported rings, Z and Q.

Z values are Python ints, Q values are ``fractions.Fraction`` (always in
lowest terms with positive denominator).  Everything here is a thin layer
of coercion, parsing and deterministic enumeration on top of those types.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CoefficientError

RING_TAGS = ("Z", "Q")


def check_ring(ring: str) -> str:
    if ring not in RING_TAGS:
        raise CoefficientError("unknown ring tag %r (use 'Z' or 'Q')" % (ring,))
    return ring


def coerce(ring: str, value):
    """Cast ``value`` into the ring, rejecting non-integral values over Z."""
    if isinstance(value, bool):
        raise CoefficientError("booleans are not scalars")
    if ring == "Z":
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value)
        raise CoefficientError("%r is not an integer scalar" % (value,))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise CoefficientError("%r is not a rational scalar" % (value,))


def parse(ring: str, text: str):
    """Read a scalar from its decimal or ``p/q`` string form."""
    text = text.strip()
    try:
        if ring == "Z":
            return int(text)
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CoefficientError("cannot read %r as a scalar in %s" % (text, ring)) from None


def to_str(value) -> str:
    return str(value)


def height(value) -> int:
    """Max of |numerator| and denominator; plain |n| over Z; 0 for zero."""
    if not value:
        return 0
    if isinstance(value, Fraction):
        return max(abs(value.numerator), value.denominator)
    return abs(value)


def candidates(ring: str, max_height: int):
    """All scalars of height <= ``max_height`` in a fixed canonical order.

    The order puts small heights first (0, 1, -1, 2, -2, ...) so that
    searches return minimal witnesses deterministically.
    """
    if max_height < 0:
        raise CoefficientError("height bound must be >= 0")
    if ring == "Z":
        out = [0]
        for n in range(1, max_height + 1):
            out.extend((n, -n))
        return out
    seen = set()
    values = []
    for den in range(1, max_height + 1):
        for num in range(-max_height, max_height + 1):
            f = Fraction(num, den)
            if height(f) <= max_height and f not in seen:
                seen.add(f)
                values.append(f)
    values.sort(key=lambda f: (height(f), f.denominator, f.numerator))
    if max_height == 0:
        values = [Fraction(0)]
    return values
