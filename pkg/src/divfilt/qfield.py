"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Every scalar that the rest of the package touches is a :class:`QuadNumber`:
a pair of rationals ``(a, b)`` representing ``a + b*sqrt(d)`` for a fixed
squarefree integer ``d >= 2``.  All operations are exact.  In particular:

* signs (and hence every comparison) are decided by rational case analysis
  — ``a + b*sqrt(d)`` with ``a`` and ``b`` of opposite sign reduces to
  comparing ``a**2`` against ``d*b**2``;
* ``ceil``/``floor`` start from a high-precision rational approximation of
  ``sqrt(d)`` and then *verify* the candidate integer with exact sign
  checks, so the approximation can never leak into the result;
* square roots are found symbolically when they exist in the field
  (``sqrt(q)`` is either rational or a rational multiple of ``sqrt(d)``)
  and reported as absent otherwise.

No floating point participates in any of these paths; ``float(x)`` exists
only as a convenience for display.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .errors import DiscriminantMismatchError, ParseError

RationalLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "QuadNumber"]

_SQUAREFREE_CACHE: set[int] = set()


def _require_squarefree(d: int) -> None:
    if d in _SQUAREFREE_CACHE:
        return
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"field discriminant must be an integer >= 2, got {d!r}")
    if d % 4 == 0:
        raise ValueError(f"field discriminant must be squarefree, got {d}")
    p = 3
    while p * p <= d:
        if d % (p * p) == 0:
            raise ValueError(f"field discriminant must be squarefree, got {d}")
        p += 2
    _SQUAREFREE_CACHE.add(d)


@dataclass(frozen=True)
class QuadNumber:
    """The element ``a + b*sqrt(d)`` of Q(sqrt(d)), stored in lowest terms.

    The representation is canonical: two elements of the same field are
    equal iff their ``(a, b)`` pairs are equal.  Purely rational values
    (``b == 0``) compare equal, and hash identically, across fields and
    against plain ``int``/``Fraction``.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        _require_squarefree(self.d)
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))

    # -- construction helpers ------------------------------------------

    @classmethod
    def rational(cls, value: RationalLike, d: int) -> "QuadNumber":
        return cls(Fraction(value), Fraction(0), d)

    @classmethod
    def zero(cls, d: int) -> "QuadNumber":
        return cls.rational(0, d)

    @classmethod
    def one(cls, d: int) -> "QuadNumber":
        return cls.rational(1, d)

    @classmethod
    def sqrt_d(cls, d: int) -> "QuadNumber":
        return cls(Fraction(0), Fraction(1), d)

    def _coerce(self, other: ScalarLike) -> Optional["QuadNumber"]:
        """Bring ``other`` into this element's field, or None if impossible."""
        if isinstance(other, QuadNumber):
            if other.d == self.d or other.b == 0:
                return QuadNumber(other.a, other.b, self.d) if other.d != self.d else other
            if self.b == 0:
                return other
            raise DiscriminantMismatchError(
                f"cannot mix sqrt({self.d}) with sqrt({other.d})"
            )
        if isinstance(other, (int, Fraction)):
            return QuadNumber(Fraction(other), Fraction(0), self.d)
        return None

    # -- field arithmetic ----------------------------------------------

    def __add__(self, other: ScalarLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.d != self.d:  # self was rational, o irrational in another field
            return QuadNumber(self.a + o.a, o.b, o.d)
        return QuadNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadNumber":
        return QuadNumber(-self.a, -self.b, self.d)

    def __sub__(self, other: ScalarLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other: ScalarLike) -> "QuadNumber":
        return (-self).__add__(other)

    def __mul__(self, other: ScalarLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.d != self.d:
            return o.__mul__(self)
        return QuadNumber(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        return QuadNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: ScalarLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.d != self.d:
            return QuadNumber(self.a, self.b, o.d).__truediv__(o)
        return self.__mul__(o.inverse())

    def __rtruediv__(self, other: ScalarLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, exponent: int) -> "QuadNumber":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadNumber.one(self.d)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """The field norm ``a**2 - d*b**2`` (a rational number)."""
        return self.a * self.a - self.d * self.b * self.b

    # -- exact sign, comparisons, integer parts ------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}, decided without approximation."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Opposite signs: |a| vs |b|*sqrt(d), i.e. a**2 vs d*b**2.
        lhs, rhs = a * a, self.d * b * b
        if lhs == rhs:
            # Impossible for squarefree d >= 2: sqrt(d) is irrational.
            return 0
        bigger_rational_part = lhs > rhs
        return 1 if (a > 0) == bigger_rational_part else -1

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadNumber):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other: ScalarLike) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadNumber with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other: ScalarLike) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: ScalarLike) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: ScalarLike) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: ScalarLike) -> bool:
        return self._cmp(other) >= 0

    def __abs__(self) -> "QuadNumber":
        return -self if self.sign() < 0 else self

    def __ceil__(self) -> int:
        if self.b == 0:
            return math.ceil(self.a)
        # Rational approximation with error below 1, then exact adjustment.
        bits = abs(self.b.numerator).bit_length() + 66
        root = Fraction(isqrt(self.d << (2 * bits)), 1 << bits)
        k = math.ceil(self.a + self.b * root)
        while (self - k).sign() > 0:
            k += 1
        while (self - (k - 1)).sign() <= 0:
            k -= 1
        return k

    def __floor__(self) -> int:
        return -math.ceil(-self)

    def ceil(self) -> int:
        """Least integer ``k`` with ``k >= self`` (exact)."""
        return math.ceil(self)

    def floor(self) -> int:
        """Greatest integer ``k`` with ``k <= self`` (exact)."""
        return math.floor(self)

    # -- rendering ------------------------------------------------------

    def canonical_string(self) -> str:
        """Render as ``"p/q + r/s*sqrt(d)"``, omitting zero parts.

        Examples: ``"0"``, ``"33"``, ``"-5/3"``, ``"sqrt(3)"``,
        ``"2007/169 - 9/338*sqrt(3)"``.  ``parse_scalar`` inverts this.
        """
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        term = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        if self.a == 0:
            return term if self.b > 0 else "-" + term
        op = " + " if self.b > 0 else " - "
        return f"{self.a}{op}{term}"

    def __str__(self) -> str:
        return self.canonical_string()

    def __repr__(self) -> str:
        return f"QuadNumber({self.canonical_string()!r}, d={self.d})"

    def __float__(self) -> float:
        # Display convenience only; exact code paths never call this.
        return float(self.a) + float(self.b) * math.sqrt(self.d)


# ---------------------------------------------------------------------------
# parsing and JSON encoding


_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_UNSIGNED = r"\d+(?:/\d+)?"
_RE_RATIONAL = re.compile(rf"({_RAT})$")
_RE_ROOT_TERM = re.compile(rf"([+-]?)(?:({_RAT_UNSIGNED})\*)?sqrt\((\d+)\)$")
_RE_FULL = re.compile(
    rf"({_RAT})([+-])(?:({_RAT_UNSIGNED})\*)?sqrt\((\d+)\)$"
)


def _check_discriminant(found: int, expected: int) -> None:
    if found != expected:
        raise ParseError(f"expected sqrt({expected}), found sqrt({found})")


def parse_scalar(text: str, d: int) -> QuadNumber:
    """Parse the canonical scalar form back into a :class:`QuadNumber`.

    Accepts ``"p/q"``, ``"[r/s*]sqrt(d)"`` with optional sign, and
    ``"p/q +- [r/s*]sqrt(d)"``; whitespace is ignored.
    """
    compact = text.strip().replace(" ", "")
    if not compact:
        raise ParseError("empty scalar")
    m = _RE_RATIONAL.match(compact)
    if m:
        return QuadNumber(Fraction(m.group(1)), Fraction(0), d)
    m = _RE_ROOT_TERM.match(compact)
    if m:
        sign_str, coeff, found_d = m.groups()
        _check_discriminant(int(found_d), d)
        b = Fraction(coeff) if coeff else Fraction(1)
        if sign_str == "-":
            b = -b
        return QuadNumber(Fraction(0), b, d)
    m = _RE_FULL.match(compact)
    if m:
        a_str, op, coeff, found_d = m.groups()
        _check_discriminant(int(found_d), d)
        b = Fraction(coeff) if coeff else Fraction(1)
        if op == "-":
            b = -b
        return QuadNumber(Fraction(a_str), b, d)
    raise ParseError(f"cannot parse scalar {text!r}")


def scalar_to_json(x: QuadNumber) -> Union[str, dict]:
    """JSON form: ``"p/q"`` when rational, else ``{"a": "p/q", "b": "r/s"}``."""
    if x.b == 0:
        return str(x.a)
    return {"a": str(x.a), "b": str(x.b)}


def scalar_from_json(doc: object, d: int) -> QuadNumber:
    """Accept ``int``, ``"p/q"``, or ``{"a": "p/q", "b": "r/s"}``."""
    if isinstance(doc, bool):
        raise ParseError(f"not a scalar: {doc!r}")
    if isinstance(doc, int):
        return QuadNumber.rational(doc, d)
    if isinstance(doc, str):
        try:
            return QuadNumber(Fraction(doc.strip()), Fraction(0), d)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {doc!r}: {exc}") from None
    if isinstance(doc, dict):
        extra = set(doc) - {"a", "b"}
        if extra:
            raise ParseError(f"unknown scalar fields {sorted(extra)}")
        try:
            a = Fraction(str(doc.get("a", "0")).strip())
            b = Fraction(str(doc.get("b", "0")).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar object {doc!r}: {exc}") from None
        return QuadNumber(a, b, d)
    raise ParseError(f"not a scalar: {doc!r}")


# ---------------------------------------------------------------------------
# square roots


def rational_sqrt(q: RationalLike) -> Optional[Fraction]:
    """Exact square root of a rational, or None when it is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def sqrt_in_field(q: RationalLike, d: int) -> Optional[QuadNumber]:
    """Nonnegative square root of the rational ``q`` inside Q(sqrt(d)).

    Exists iff ``q`` is a rational square or ``d`` times one; e.g.
    ``sqrt_in_field(12, 3) == 2*sqrt(3)`` while ``sqrt_in_field(2, 3)``
    is None.
    """
    _require_squarefree(d)
    q = Fraction(q)
    if q < 0:
        return None
    r = rational_sqrt(q)
    if r is not None:
        return QuadNumber(r, Fraction(0), d)
    r = rational_sqrt(q / d)
    if r is not None:
        return QuadNumber(Fraction(0), r, d)
    return None


def field_sqrt(x: QuadNumber) -> Optional[QuadNumber]:
    """Nonnegative square root of ``x`` within its own field, if any.

    For irrational ``x = a + b*sqrt(d)``, a root ``p + q*sqrt(d)`` forces
    ``p**2`` to be ``(a ± sqrt(norm(x)))/2``, so the norm must be a
    rational square; both branches are tried and verified by squaring.
    """
    if x.sign() < 0:
        return None
    if x.b == 0:
        return sqrt_in_field(x.a, x.d)
    s = rational_sqrt(x.norm())
    if s is None:
        return None
    for u in ((x.a + s) / 2, (x.a - s) / 2):
        p = rational_sqrt(u)
        if p is None or p == 0:
            continue
        candidate = QuadNumber(p, x.b / (2 * p), x.d)
        if candidate * candidate == x:
            return candidate if candidate.sign() >= 0 else -candidate
    return None
