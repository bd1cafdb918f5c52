"""Certified rational enclosures.

Inequality checks that leave the quadratic field (cube roots) are decided
with rational interval arithmetic: every enclosure below is *proved* by
integer arithmetic (``isqrt`` / integer cube root bracketing), so a
comparison of intervals is a rigorous verdict, never a float guess.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .qfield import QuadNumber

Interval = tuple[Fraction, Fraction]


def icbrt(n: int) -> int:
    """Floor of the real cube root of ``n >= 0``, by integer Newton."""
    if n < 0:
        raise ValueError("icbrt needs a nonnegative integer")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3 + 1)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def sqrt_enclosure(d: int, digits: int) -> Interval:
    """lo <= sqrt(d) <= hi with hi - lo = 10**-digits."""
    scale = 10**digits
    k = isqrt(d * scale * scale)
    return Fraction(k, scale), Fraction(k + 1, scale)


def quad_enclosure(x: QuadNumber, digits: int) -> Interval:
    """A rational interval containing the field element ``x``."""
    if x.b == 0:
        return x.a, x.a
    lo_r, hi_r = sqrt_enclosure(x.d, digits)
    if x.b > 0:
        return x.a + x.b * lo_r, x.a + x.b * hi_r
    return x.a + x.b * hi_r, x.a + x.b * lo_r


def cbrt_enclosure(value: Interval, digits: int) -> Interval:
    """An interval containing the cube root of a nonnegative interval."""
    lo, hi = value
    if lo < 0:
        raise ValueError("cbrt_enclosure needs a nonnegative interval")
    scale = 10**digits

    def below(q: Fraction) -> Fraction:
        k = icbrt(q.numerator * scale**3 // q.denominator)
        return Fraction(k, scale)

    def above(q: Fraction) -> Fraction:
        k = icbrt(q.numerator * scale**3 // q.denominator)
        return Fraction(k + 1, scale)

    return below(lo), above(hi)
