"""Multiplicities, mixed multiplicities, and piecewise limit formulas.

Everything here reduces to two ingredients supplied by the lower layers:
the minimal nef envelope of a divisor (``envelope.gamma``) and the
trilinear intersection form (``model.triple``).  Writing ``sigma(D)`` for
the divisor built from the envelope coordinates of ``D``:

* the normalized colength limit of the filtration of ``D`` is
  ``(sigma(D)^3) / 3!`` and its multiplicity is the same times ``3!``;
* the mixed multiplicity with exponents ``(d1, ..., dr)``, summing to 3,
  is the trilinear form evaluated on ``sigma(D_1), ..., sigma(D_r)`` with
  those multiplicities (two sign flips — negating the divisors and
  negating the product — cancel);
* along a two-divisor family ``n*D1 + j*D2`` the limit is a cubic in
  ``(n, j)`` on each cone of constant envelope behaviour, assembled here
  into a :class:`PiecewisePoly` whose coefficients may be irrational.

The four Minkowski-style inequalities among these numbers are checked
exactly inside the field where possible; the genuinely transcendental one
(cube roots) is decided by certified interval refinement with an exact
pre-test for the equality case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .envelope import GammaEnvelope, gamma, regions
from .errors import ComputationError, InputError, UndecidableError
from .intervals import cbrt_enclosure, quad_enclosure
from .model import ExcDivisor, ThreefoldModel
from .qfield import QuadNumber, ScalarLike

MONOMIALS = ((3, 0), (2, 1), (1, 2), (0, 3))


@dataclass(frozen=True)
class CubicForm:
    """A homogeneous cubic in (n, j): coefficients for n^3, n^2 j, n j^2, j^3."""

    coefficients: tuple[QuadNumber, QuadNumber, QuadNumber, QuadNumber]

    def coefficient(self, d1: int, d2: int) -> QuadNumber:
        try:
            return self.coefficients[MONOMIALS.index((d1, d2))]
        except ValueError:
            raise InputError(f"no monomial n^{d1} j^{d2} of degree 3") from None

    def value_at(self, n: ScalarLike, j: ScalarLike) -> QuadNumber:
        c30, c21, c12, c03 = self.coefficients
        return ((c30 * n + c21 * j) * n + c12 * j * j) * n + c03 * j * j * j

    def slope_value(self, r: ScalarLike) -> QuadNumber:
        """Value at (1, r); the cubic along the ray j = r*n is n^3 times this."""
        return self.value_at(1, r)

    def __sub__(self, other: "CubicForm") -> "CubicForm":
        return CubicForm(
            tuple(a - b for a, b in zip(self.coefficients, other.coefficients))
        )

    def scaled(self, factor: ScalarLike) -> "CubicForm":
        return CubicForm(tuple(c * factor for c in self.coefficients))

    def is_zero(self) -> bool:
        return all(c.sign() == 0 for c in self.coefficients)

    def render(self, variables: tuple[str, str] = ("n", "j")) -> str:
        n, j = variables
        names = (f"{n}^3", f"{n}^2*{j}", f"{n}*{j}^2", f"{j}^3")
        parts: list[tuple[bool, str]] = []
        for coeff, mono in zip(self.coefficients, names):
            if coeff.sign() == 0:
                continue
            if coeff.is_rational:
                negative = coeff.sign() < 0
                magnitude = abs(coeff)
                body = mono if magnitude == 1 else f"{magnitude}*{mono}"
            else:
                negative = False
                body = f"({coeff.canonical_string()})*{mono}"
            parts.append((negative, body))
        if not parts:
            return "0"
        first_negative, first_body = parts[0]
        text = ("-" if first_negative else "") + first_body
        for negative, body in parts[1:]:
            text += (" - " if negative else " + ") + body
        return text

    def to_json_dict(self) -> dict:
        names = ("n^3", "n^2*j", "n*j^2", "j^3")
        return {
            name: c.canonical_string()
            for name, c in zip(names, self.coefficients)
        }

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class PiecewiseRegion:
    lower_slope: QuadNumber
    upper_slope: Optional[QuadNumber]  # None = unbounded
    poly: CubicForm

    def bounds_string(self) -> str:
        upper = (
            "inf" if self.upper_slope is None else self.upper_slope.canonical_string()
        )
        return f"[{self.lower_slope.canonical_string()}, {upper})"


@dataclass(frozen=True)
class PiecewisePoly:
    """A slope-piecewise homogeneous cubic on the effective quadrant.

    Region k applies when ``lower_slope <= j/n < upper_slope`` (the last
    region is unbounded and also covers ``n = 0``).  Adjacent regions
    agree on their shared boundary ray, so the closed/half-open reading
    of the bounds never changes a value.
    """

    regions: tuple[PiecewiseRegion, ...]

    def __post_init__(self) -> None:
        if not self.regions:
            raise InputError("piecewise polynomial needs at least one region")
        if self.regions[0].lower_slope.sign() != 0:
            raise InputError("first region must start at slope 0")
        for left, right in zip(self.regions, self.regions[1:]):
            if left.upper_slope is None or left.upper_slope != right.lower_slope:
                raise InputError("region slopes must be contiguous")
        for region in self.regions:
            if (
                region.upper_slope is not None
                and (region.upper_slope - region.lower_slope).sign() <= 0
            ):
                raise InputError("region slopes must strictly increase")
        if self.regions[-1].upper_slope is not None:
            raise InputError("last region must be unbounded")

    def region_for(self, n: ScalarLike, j: ScalarLike) -> PiecewiseRegion:
        d = self.regions[0].lower_slope.d
        n = QuadNumber.rational(n, d) if not isinstance(n, QuadNumber) else n
        j = QuadNumber.rational(j, d) if not isinstance(j, QuadNumber) else j
        if n.sign() < 0 or j.sign() < 0 or (n.sign() == 0 and j.sign() == 0):
            raise InputError("evaluation point must be effective and nonzero")
        if n.sign() == 0:
            return self.regions[-1]
        slope = j / n
        for region in self.regions:
            if region.upper_slope is None or slope < region.upper_slope:
                return region
        return self.regions[-1]

    def value_at(self, n: ScalarLike, j: ScalarLike) -> QuadNumber:
        return self.region_for(n, j).poly.value_at(n, j)

    def scaled(self, factor: ScalarLike) -> "PiecewisePoly":
        return PiecewisePoly(
            tuple(
                PiecewiseRegion(r.lower_slope, r.upper_slope, r.poly.scaled(factor))
                for r in self.regions
            )
        )

    def boundary_slopes(self) -> list[QuadNumber]:
        return [r.lower_slope for r in self.regions[1:]]

    def lines(self) -> list[str]:
        return [
            f"region {k}: {region.bounds_string()} -> {region.poly.render()}"
            for k, region in enumerate(self.regions, start=1)
        ]

    def to_json_dict(self) -> dict:
        return {
            "regions": [
                {
                    "lower_slope": r.lower_slope.canonical_string(),
                    "upper_slope": None
                    if r.upper_slope is None
                    else r.upper_slope.canonical_string(),
                    "poly": r.poly.to_json_dict(),
                }
                for r in self.regions
            ]
        }


@dataclass(frozen=True)
class MultReport:
    """Normalized limit and multiplicity of one divisor's filtration."""

    limit: QuadNumber
    multiplicity: QuadNumber
    gamma_used: GammaEnvelope

    def __post_init__(self) -> None:
        if self.multiplicity != self.limit * 6:
            raise ComputationError("multiplicity must equal 3! times the limit")
        if self.multiplicity.sign() < 0:
            raise ComputationError(
                "negative multiplicity: model violates nonnegativity"
            )

    def to_json_dict(self) -> dict:
        return {
            "limit": self.limit.canonical_string(),
            "multiplicity": self.multiplicity.canonical_string(),
            "gamma": self.gamma_used.to_json_dict(),
        }


def _sigma(model: ThreefoldModel, D: ExcDivisor) -> tuple[GammaEnvelope, ExcDivisor]:
    env = gamma(model, D)
    return env, env.envelope_divisor


def limit_single(model: ThreefoldModel, D: ExcDivisor) -> MultReport:
    """lim of colength(m*D-filtration)/m^3, via the envelope divisor.

    With sigma the envelope divisor, the limit is ``-((-sigma)^3)/3!``,
    i.e. ``(sigma^3)/6`` after the sign flips cancel.
    """
    env, sigma = _sigma(model, D)
    multiplicity = model.triple(sigma, sigma, sigma)
    return MultReport(
        limit=multiplicity / 6, multiplicity=multiplicity, gamma_used=env
    )


def mixed(
    model: ThreefoldModel,
    factors: Sequence[tuple[ExcDivisor, int]],
    total: int = 3,
) -> QuadNumber:
    """Mixed multiplicity with the given exponents (summing to 3).

    Symmetric in its factors; ``mixed([(D, 3)])`` equals the plain
    multiplicity of ``D``.
    """
    if total != model.dimension:
        raise InputError(f"total degree must be {model.dimension}")
    slots: list[ExcDivisor] = []
    for D, exponent in factors:
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError("exponents must be nonnegative integers")
        if exponent == 0:
            continue
        _, sigma = _sigma(model, D)
        slots.extend([sigma] * exponent)
    if len(slots) != total:
        raise InputError(f"exponents must sum to {total}")
    return model.triple(slots[0], slots[1], slots[2])


def _envelope_family_affine(
    model: ThreefoldModel,
    D1: ExcDivisor,
    D2: ExcDivisor,
    samples: tuple[QuadNumber, QuadNumber, QuadNumber],
) -> tuple[ExcDivisor, ExcDivisor]:
    """Fit gamma(D1 + r*D2) = u + r*v on three sample slopes, verifying."""
    s1, s2, s3 = samples
    g1 = gamma(model, D1 + D2 * s1).gamma
    g2 = gamma(model, D1 + D2 * s2).gamma
    g3 = gamma(model, D1 + D2 * s3).gamma
    inv = (s2 - s1).inverse()
    v = tuple((b - a) * inv for a, b in zip(g1, g2))
    u = tuple(a - s1 * vi for a, vi in zip(g1, v))
    check = tuple(ui + s3 * vi for ui, vi in zip(u, v))
    if check != g3:
        raise ComputationError(
            "envelope is not affine within a region; the model is outside "
            "this solver's supported family"
        )
    return model.divisor(u), model.divisor(v)


def _region_form(
    model: ThreefoldModel, P: ExcDivisor, Q: ExcDivisor
) -> CubicForm:
    """Cubic of (n*P + j*Q)^3 / 6 expanded in the monomial basis."""
    return CubicForm(
        (
            model.triple(P, P, P) / 6,
            model.triple(P, P, Q) / 2,
            model.triple(P, Q, Q) / 2,
            model.triple(Q, Q, Q) / 6,
        )
    )


def piecewise_limit(
    model: ThreefoldModel, D1: ExcDivisor, D2: ExcDivisor
) -> PiecewisePoly:
    """The limit of ``n*D1 + j*D2`` filtrations as a piecewise cubic.

    Within each region delivered by :func:`envelope.regions` the envelope
    is an affine function of the slope, so three exact samples determine
    it (the third sample is a verification); the region's cubic is then
    ``(n*P + j*Q)^3/6`` for the affine part ``(P, Q)``.
    """
    breakpoints = regions(model, D1, D2)
    d = model.field_d
    zero, one = QuadNumber.zero(d), QuadNumber.one(d)
    bounds: list[tuple[QuadNumber, Optional[QuadNumber]]] = []
    lowers = [zero] + breakpoints
    for i, lo in enumerate(lowers):
        hi = breakpoints[i] if i < len(breakpoints) else None
        bounds.append((lo, hi))

    pieces = []
    for lo, hi in bounds:
        if hi is None:
            samples = (lo + 1, lo + 2, lo + 3)
        else:
            width = hi - lo
            samples = (
                lo + width / 4,
                lo + width / 2,
                lo + width * Fraction(3, 4),
            )
        P, Q = _envelope_family_affine(model, D1, D2, samples)
        pieces.append(PiecewiseRegion(lo, hi, _region_form(model, P, Q)))
    return PiecewisePoly(tuple(pieces))


def product_limit(
    model: ThreefoldModel, D1: ExcDivisor, D2: ExcDivisor
) -> CubicForm:
    """Limit of the product filtration of ``(n*D1, j*D2)`` as one cubic.

    The coefficient of ``n^d1 j^d2`` is the mixed multiplicity with those
    exponents divided by ``d1! d2!``; unlike :func:`piecewise_limit` this
    is a single polynomial valid on the whole quadrant.
    """
    _, sigma1 = _sigma(model, D1)
    _, sigma2 = _sigma(model, D2)
    e3 = model.triple(sigma1, sigma1, sigma1)
    e2 = model.triple(sigma1, sigma1, sigma2)
    e1 = model.triple(sigma1, sigma2, sigma2)
    e0 = model.triple(sigma2, sigma2, sigma2)
    return CubicForm((e3 / 6, e2 / 2, e1 / 2, e0 / 6))


# ---------------------------------------------------------------------------
# Minkowski-style inequality checks


@dataclass(frozen=True)
class InequalityCheck:
    label: str
    holds: bool
    method: str
    lhs: str
    rhs: str

    def line(self) -> str:
        verdict = "holds" if self.holds else "FAILS"
        return f"inequality {self.label}: {self.lhs} <= {self.rhs} ... {verdict} [{self.method}]"

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "holds": self.holds,
            "method": self.method,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class MinkowskiReport:
    e_values: tuple[QuadNumber, QuadNumber, QuadNumber, QuadNumber]
    product_multiplicity: QuadNumber
    checks: tuple[InequalityCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def lines(self) -> list[str]:
        out = [
            f"e({i}) = {self.e_values[i].canonical_string()}"
            for i in range(3, -1, -1)
        ]
        out.append(
            f"e(product) = {self.product_multiplicity.canonical_string()}"
        )
        out.extend(c.line() for c in self.checks)
        out.append("all inequalities hold" if self.all_hold else "SOME INEQUALITY FAILS")
        return out

    def to_json_dict(self) -> dict:
        return {
            "e": {
                str(i): self.e_values[i].canonical_string() for i in range(4)
            },
            "e_product": self.product_multiplicity.canonical_string(),
            "checks": [c.to_json_dict() for c in self.checks],
            "all_hold": self.all_hold,
        }


def _cube_root_sum_decision(
    L: QuadNumber, a: QuadNumber, b: QuadNumber
) -> tuple[bool, str]:
    """Decide cbrt(L) <= cbrt(a) + cbrt(b) for nonnegative field elements."""
    if L.sign() == 0:
        return True, "exact"
    if a.sign() == 0:
        return (L - b).sign() <= 0, "exact"
    if b.sign() == 0:
        return (L - a).sign() <= 0, "exact"
    excess = L - a - b
    if excess.sign() <= 0:
        # L <= a + b forces cbrt(L) <= cbrt(a+b) <= cbrt(a) + cbrt(b).
        return True, "exact"
    # Equality holds iff (L - a - b)^3 = 27 a b L (given the excess > 0).
    if (excess**3 - 27 * a * b * L).sign() == 0:
        return True, "exact-equality"
    for digits in (20, 40, 80, 128):
        def enclose_root(x: QuadNumber):
            lo, hi = quad_enclosure(x, digits)
            return cbrt_enclosure((max(Fraction(0), lo), hi), digits)

        L_lo, L_hi = enclose_root(L)
        a_lo, a_hi = enclose_root(a)
        b_lo, b_hi = enclose_root(b)
        if L_hi <= a_lo + b_lo:
            return True, f"interval({digits} digits)"
        if L_lo > a_hi + b_hi:
            return False, f"interval({digits} digits)"
    raise UndecidableError("undecidable at max precision (128 digits)")


def minkowski_check(
    model: ThreefoldModel, D1: ExcDivisor, D2: ExcDivisor
) -> MinkowskiReport:
    """Check the four mixed-multiplicity inequalities for (D1, D2).

    Writing ``e(i)`` for the mixed multiplicity with ``i`` copies of D1
    and ``3 - i`` of D2, inequalities 1-3 are polynomial in the ``e(i)``
    and are decided by exact field comparisons; inequality 4 involves
    cube roots and is decided rigorously by interval refinement (after an
    exact test for its equality case).
    """
    _, sigma1 = _sigma(model, D1)
    _, sigma2 = _sigma(model, D2)
    slots = [sigma2, sigma2, sigma2]
    e = []
    for i in range(4):
        e.append(model.triple(slots[0], slots[1], slots[2]))
        if i < 3:
            slots[i] = sigma1
    # e[i] now holds the mixed multiplicity with i copies of sigma1.
    product_sigma = sigma1 + sigma2
    L = model.triple(product_sigma, product_sigma, product_sigma)

    checks: list[InequalityCheck] = []

    def exact(label: str, lhs: QuadNumber, rhs: QuadNumber) -> None:
        checks.append(
            InequalityCheck(
                label=label,
                holds=(lhs - rhs).sign() <= 0,
                method="exact",
                lhs=lhs.canonical_string(),
                rhs=rhs.canonical_string(),
            )
        )

    for i in (1, 2):
        exact(f"1(i={i})", e[i] ** 2, e[i + 1] * e[i - 1])
    for i in range(4):
        exact(f"2(i={i})", e[i] * e[3 - i], e[3] * e[0])
    for i in range(4):
        exact(f"3(i={i})", e[3 - i] ** 3, e[3] ** (3 - i) * e[0] ** i)
    holds, method = _cube_root_sum_decision(L, e[3], e[0])
    checks.append(
        InequalityCheck(
            label="4",
            holds=holds,
            method=method,
            lhs=f"cbrt({L.canonical_string()})",
            rhs=f"cbrt({e[3].canonical_string()}) + cbrt({e[0].canonical_string()})",
        )
    )
    return MinkowskiReport(
        e_values=(e[0], e[1], e[2], e[3]),
        product_multiplicity=L,
        checks=tuple(checks),
    )
