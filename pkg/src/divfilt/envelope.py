"""Minimal nef envelopes of effective exceptional divisors.

Given an effective divisor ``D = sum a_i E_i`` supported on the
exceptional primes, its *envelope* is the coordinatewise-smallest vector
``g >= a`` such that ``-sum g_i E_i`` is nef, i.e. its restriction to the
surface over every prime lies in that surface's nef cone.  The envelope
coordinates are what the multiplicity formulas consume: they are exact
elements of Q(sqrt(d)) and may well be irrational.

The computation is an exhaustive active-set enumeration.  The feasible
set is cut out by the bound constraints ``g_i - a_i >= 0`` together with
the nef constraints (linear functionals for polyhedral cones, one
homogeneous quadratic plus an ample-side linear form for quadratic
cones).  Every subset of constraints of size ``t`` (the number of primes)
is solved as an equality system over the field; the feasible solutions
are collected, and the coordinatewise minimum among them — whose
existence is certified, not assumed — is the envelope.  Equality systems
stay tractable because after eliminating the linear equations at most one
quadratic survives in one free variable; anything richer is refused
loudly rather than solved approximately.

``regions`` analyses the one-parameter family ``D1 + r*D2`` and returns
the finitely many slopes ``r`` where the envelope's active constraint set
changes; these are the breakpoints of the piecewise multiplicity
formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .errors import (
    InputError,
    NoMinimalEnvelopeError,
    RootOutsideFieldError,
    UnsupportedModelError,
)
from .model import ExcDivisor, ThreefoldModel
from .qfield import QuadNumber, field_sqrt
from .surfaces import POLYHEDRAL

Point = tuple[QuadNumber, ...]


@dataclass(frozen=True)
class LinearConstraint:
    """The affine inequality ``coeffs . v + const >= 0``."""

    ident: str
    coeffs: tuple[QuadNumber, ...]
    const: QuadNumber

    def value(self, point: Sequence[QuadNumber]) -> QuadNumber:
        acc = self.const
        for c, x in zip(self.coeffs, point):
            acc = acc + c * x
        return acc


@dataclass(frozen=True)
class QuadraticConstraint:
    """The homogeneous inequality ``v^T matrix v >= 0`` (matrix symmetric)."""

    ident: str
    matrix: tuple[tuple[QuadNumber, ...], ...]

    def value(self, point: Sequence[QuadNumber]) -> QuadNumber:
        return _bilinear(self.matrix, point, point)


Constraint = Union[LinearConstraint, QuadraticConstraint]


def _bilinear(
    matrix: Sequence[Sequence[QuadNumber]],
    u: Sequence[QuadNumber],
    v: Sequence[QuadNumber],
) -> QuadNumber:
    acc = None
    for ui, row in zip(u, matrix):
        for mij, vj in zip(row, v):
            term = ui * mij * vj
            acc = term if acc is None else acc + term
    assert acc is not None
    return acc


@dataclass(frozen=True)
class GammaEnvelope:
    """The envelope of one divisor: minimal coordinates and certificates.

    ``active`` lists the identifiers of all constraints that hold with
    equality at the optimum; ``region`` is a case label (for two-prime
    models, the classical three-case split: "1" when only the second
    coordinate was raised, "3" when only the first was, "2" when the
    input was already anti-nef).
    """

    input: ExcDivisor
    gamma: tuple[QuadNumber, ...]
    active: frozenset[str]
    region: str

    @property
    def model(self) -> ThreefoldModel:
        return self.input.model

    @property
    def envelope_divisor(self) -> ExcDivisor:
        return ExcDivisor(self.input.model, self.gamma)

    @property
    def raised_indices(self) -> tuple[int, ...]:
        return tuple(
            i
            for i, (g, a) in enumerate(zip(self.gamma, self.input.coeffs))
            if (g - a).sign() > 0
        )

    def gamma_string(self) -> str:
        return "(" + ", ".join(g.canonical_string() for g in self.gamma) + ")"

    def to_json_dict(self) -> dict:
        return {
            "input": [c.canonical_string() for c in self.input.coeffs],
            "gamma": [g.canonical_string() for g in self.gamma],
            "active": sorted(self.active),
            "region": self.region,
        }

    def __str__(self) -> str:
        return f"{self.gamma_string()}, region {self.region}"


# ---------------------------------------------------------------------------
# constraint assembly


def _nef_constraints(model: ThreefoldModel, pad: int = 0) -> list[Constraint]:
    """Nef conditions on ``g`` for ``-sum g_i E_i``, as constraints.

    Restricting ``-sum g_i E_i`` to the surface over ``E`` gives
    ``-sum g_i r_E(E_i)``; applying a cone functional L yields the linear
    form with coefficients ``-L(r_E(E_i))``, and the quadratic cone's
    self-intersection yields the form with matrix ``(r_E(E_i).r_E(E_j))``
    (the two minus signs cancel).  ``pad`` appends extra variables that
    the nef conditions do not involve (used for the slope variable).
    """
    d = model.field_d
    zero = QuadNumber.zero(d)
    padding = (zero,) * pad
    constraints: list[Constraint] = []
    for prime in model.primes:
        surface = model.surface(prime)
        restr = [model.restriction(prime, p) for p in model.primes]
        cone = surface.nef_cone
        if cone.kind == POLYHEDRAL:
            for k, functional in enumerate(cone.functionals):
                coeffs = []
                for r in restr:
                    v = zero
                    for c, x in zip(functional, r.coords):
                        v = v + c * x
                    coeffs.append(-v)
                constraints.append(
                    LinearConstraint(
                        f"nef[{prime}]:{k}", tuple(coeffs) + padding, zero
                    )
                )
        else:
            size = len(restr) + pad
            matrix = [[zero] * size for _ in range(size)]
            for i, ri in enumerate(restr):
                for j, rj in enumerate(restr):
                    matrix[i][j] = ri.pair(rj)
            constraints.append(
                QuadraticConstraint(
                    f"nef[{prime}]:quad", tuple(tuple(row) for row in matrix)
                )
            )
            ample = surface.ample_class
            constraints.append(
                LinearConstraint(
                    f"nef[{prime}]:ample",
                    tuple(-r.pair(ample) for r in restr) + padding,
                    zero,
                )
            )
    return constraints


def _bound_constraints(
    model: ThreefoldModel, lower: Sequence[QuadNumber], pad: int = 0
) -> list[LinearConstraint]:
    d = model.field_d
    zero, one = QuadNumber.zero(d), QuadNumber.one(d)
    t = len(model.primes)
    out = []
    for i, prime in enumerate(model.primes):
        coeffs = [zero] * (t + pad)
        coeffs[i] = one
        out.append(
            LinearConstraint(f"coeff[{prime}]", tuple(coeffs), -lower[i])
        )
    return out


# ---------------------------------------------------------------------------
# exact equality-system solving


def _solve_linear_rows(
    rows: list[tuple[tuple[QuadNumber, ...], QuadNumber]], nvars: int, d: int
) -> Optional[tuple[list[QuadNumber], list[list[QuadNumber]]]]:
    """Gauss-Jordan over Q(sqrt(d)).

    ``rows`` are equations ``coeffs . v = rhs``.  Returns None when
    inconsistent, else a particular solution and a basis of the null
    space (empty basis = unique solution).
    """
    zero, one = QuadNumber.zero(d), QuadNumber.one(d)
    aug = [list(coeffs) + [rhs] for coeffs, rhs in rows]
    pivot_cols: list[int] = []
    row = 0
    for col in range(nvars):
        pivot = next(
            (r for r in range(row, len(aug)) if aug[r][col].sign() != 0), None
        )
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = aug[row][col].inverse()
        aug[row] = [x * inv for x in aug[row]]
        for r in range(len(aug)):
            if r != row and aug[r][col].sign() != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
        if row == len(aug):
            break
    for r in range(row, len(aug)):
        if aug[r][nvars].sign() != 0:
            return None
    particular = [zero] * nvars
    for r, col in enumerate(pivot_cols):
        particular[col] = aug[r][nvars]
    null_basis = []
    for free_col in (c for c in range(nvars) if c not in pivot_cols):
        vec = [zero] * nvars
        vec[free_col] = one
        for r, col in enumerate(pivot_cols):
            vec[col] = -aug[r][free_col]
        null_basis.append(vec)
    return particular, null_basis


def _quadratic_roots(
    alpha: QuadNumber, beta: QuadNumber, chi: QuadNumber, d: int
) -> Optional[list[QuadNumber]]:
    """Roots of ``alpha s^2 + beta s + chi = 0`` in Q(sqrt(d)).

    Returns None when the equation holds identically (a whole line of
    solutions), a possibly-empty list otherwise.
    """
    if alpha.sign() == 0:
        if beta.sign() == 0:
            return None if chi.sign() == 0 else []
        return [-chi / beta]
    disc = beta * beta - 4 * alpha * chi
    s = disc.sign()
    if s < 0:
        return []
    if s == 0:
        return [-beta / (2 * alpha)]
    root = field_sqrt(disc)
    if root is None:
        raise RootOutsideFieldError(
            f"root outside field: sqrt({disc.canonical_string()}) "
            f"is not in Q(sqrt({d}))"
        )
    return [(-beta + root) / (2 * alpha), (-beta - root) / (2 * alpha)]


def _solve_equality_system(
    constraints: Sequence[Constraint], nvars: int, d: int
) -> list[Point]:
    """Isolated solutions of ``{constraint = 0 for each}`` over Q(sqrt(d)).

    Underdetermined systems contribute no candidates (their solution sets
    are positive-dimensional, so they cannot pin an optimum that another,
    fully determined subset would not also pin).
    """
    linears = [c for c in constraints if isinstance(c, LinearConstraint)]
    quads = [c for c in constraints if isinstance(c, QuadraticConstraint)]
    solved = _solve_linear_rows(
        [(c.coeffs, -c.const) for c in linears], nvars, d
    )
    if solved is None:
        return []
    particular, null_basis = solved
    if not quads:
        return [tuple(particular)] if not null_basis else []
    if not null_basis:
        point = tuple(particular)
        if all(q.value(point).sign() == 0 for q in quads):
            return [point]
        return []
    if len(null_basis) == 1:
        direction = null_basis[0]
        for chosen in quads:
            alpha = _bilinear(chosen.matrix, direction, direction)
            beta = 2 * _bilinear(chosen.matrix, particular, direction)
            chi = _bilinear(chosen.matrix, particular, particular)
            roots = _quadratic_roots(alpha, beta, chi, d)
            if roots is None:
                continue  # this quadratic vanishes on the whole line
            points = []
            for s in roots:
                candidate = tuple(
                    p + s * n for p, n in zip(particular, direction)
                )
                if all(q.value(candidate).sign() == 0 for q in quads):
                    points.append(candidate)
            return points
        return []  # every quadratic vanishes identically along the line
    if all(x.sign() == 0 for x in particular):
        # Fully homogeneous: solutions come in rays through the origin,
        # never isolated points, so nothing here can pin an optimum.
        return []
    raise UnsupportedModelError(
        "active subsystem requires simultaneous quadratics in two or more "
        "free variables; this solver handles at most one"
    )


# ---------------------------------------------------------------------------
# public operations


def _require_effective(D: ExcDivisor, *, nonzero: bool) -> None:
    if not D.is_effective:
        raise InputError(f"divisor {D} must be effective")
    if nonzero and D.is_zero():
        raise InputError("divisor must be nonzero")


def is_antinef(model: ThreefoldModel, D: ExcDivisor) -> bool:
    """True iff ``-D`` restricts into the nef cone over every prime."""
    if D.model != model:
        raise InputError("divisor belongs to a different model")
    _require_effective(D, nonzero=False)
    negated = -D
    return all(
        model.surface(prime).cone_contains("nef", model.restrict(negated, prime))
        for prime in model.primes
    )


def _coordwise_le(x: Point, y: Point) -> bool:
    return all((xi - yi).sign() <= 0 for xi, yi in zip(x, y))


EPSILON = Fraction(1, 1000)


def _region_label(model: ThreefoldModel, raised: tuple[int, ...]) -> str:
    if len(model.primes) == 2:
        if not raised:
            return "2"
        if raised == (0,):
            return "3"
        if raised == (1,):
            return "1"
    if not raised:
        return "none"
    return "raised(" + ",".join(model.primes[i] for i in raised) + ")"


def gamma(model: ThreefoldModel, D: ExcDivisor) -> GammaEnvelope:
    """Coordinatewise-minimal ``g >= coeffs(D)`` making ``-sum g_i E_i`` nef.

    Enumerates active sets exactly; the returned point is checked to be
    (a) feasible, (b) below every other feasible candidate, and (c) not
    improvable by lowering any single coordinate by 1/1000 — so a bogus
    "minimum" cannot escape silently.
    """
    if D.model != model:
        raise InputError("divisor belongs to a different model")
    _require_effective(D, nonzero=True)
    t = len(model.primes)
    d = model.field_d
    constraints: list[Constraint] = list(
        _bound_constraints(model, D.coeffs)
    ) + _nef_constraints(model)

    candidates: dict[Point, None] = {}
    for subset in combinations(constraints, t):
        for point in _solve_equality_system(subset, t, d):
            candidates.setdefault(point, None)

    def feasible(point: Point) -> bool:
        return all(c.value(point).sign() >= 0 for c in constraints)

    admissible = [p for p in candidates if feasible(p)]
    if not admissible:
        raise NoMinimalEnvelopeError(
            "no minimal envelope: no feasible active-set point"
        )
    minimum = next(
        (p for p in admissible if all(_coordwise_le(p, q) for q in admissible)),
        None,
    )
    if minimum is None:
        raise NoMinimalEnvelopeError(
            "no minimal envelope: minimal feasible points are incomparable"
        )
    for i in range(t):
        perturbed = tuple(
            g - EPSILON if k == i else g for k, g in enumerate(minimum)
        )
        if feasible(perturbed):
            raise NoMinimalEnvelopeError(
                "no minimal envelope: candidate is not coordinatewise minimal "
                f"(coordinate {model.primes[i]} can decrease)"
            )

    active = frozenset(
        c.ident for c in constraints if c.value(minimum).sign() == 0
    )
    raised = tuple(
        i for i, (g, a) in enumerate(zip(minimum, D.coeffs)) if (g - a).sign() > 0
    )
    return GammaEnvelope(
        input=D,
        gamma=minimum,
        active=active,
        region=_region_label(model, raised),
    )


def regions(
    model: ThreefoldModel, D1: ExcDivisor, D2: ExcDivisor
) -> list[QuadNumber]:
    """Slopes ``0 < r_1 < ... < r_k`` where ``gamma(D1 + r*D2)`` changes.

    Candidate slopes come from solving every system of ``t + 1``
    constraints-as-equalities in the variables ``(g, r)``; a candidate is
    kept only if the envelope's active set genuinely differs between the
    two adjacent slope intervals.  Dependent directions yield no
    breakpoints (a single region).
    """
    for D in (D1, D2):
        if D.model != model:
            raise InputError("divisor belongs to a different model")
        _require_effective(D, nonzero=True)
    t = len(model.primes)
    d = model.field_d
    nvars = t + 1

    bounds = []
    zero, one = QuadNumber.zero(d), QuadNumber.one(d)
    for i, prime in enumerate(model.primes):
        coeffs = [zero] * nvars
        coeffs[i] = one
        coeffs[t] = -D2.coeffs[i]
        bounds.append(
            LinearConstraint(f"coeff[{prime}]", tuple(coeffs), -D1.coeffs[i])
        )
    constraints: list[Constraint] = bounds + _nef_constraints(model, pad=1)

    candidates: set[QuadNumber] = set()
    for subset in combinations(constraints, nvars):
        for point in _solve_equality_system(subset, nvars, d):
            r = point[-1]
            if r.sign() > 0:
                candidates.add(r)
    if not candidates:
        return []

    slopes = sorted(candidates)
    samples = []
    previous = zero
    for r in slopes:
        samples.append((previous + r) / 2)
        previous = r
    samples.append(slopes[-1] + one)

    active_sets = [
        gamma(model, D1 + D2 * s).active for s in samples
    ]
    return [
        slopes[i]
        for i in range(len(slopes))
        if active_sets[i] != active_sets[i + 1]
    ]
