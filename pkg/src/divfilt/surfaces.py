"""Divisor-class lattices on surfaces.

A :class:`SurfaceLattice` is a free module over a named basis of curve
classes together with the symmetric intersection pairing (Gram matrix) and
two distinguished cones — nef and effective.  Cones come in two kinds:

* ``polyhedral``: cut out by finitely many linear functionals, membership
  meaning every functional is ``>= 0``;
* ``quadratic``: the component of ``{x : (x.x) >= 0}`` selected by pairing
  nonnegatively with a designated ample class (the standard picture on an
  abelian surface, where nef = effective = one half of the light cone).

Both cones are CLOSED: boundary classes are members.  Downstream limit
formulas are continuous across the boundaries, which makes the closed
convention the consistent one, and it keeps membership decidable by exact
sign tests alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import InputError, RootOutsideFieldError
from .qfield import QuadNumber, ScalarLike, field_sqrt

POLYHEDRAL = "polyhedral"
QUADRATIC = "quadratic"


@dataclass(frozen=True)
class ConeSpec:
    """A cone in a surface lattice, either polyhedral or quadratic.

    For the polyhedral kind, ``functionals`` holds the rows of the
    inequality system; the quadratic kind carries no data of its own and
    borrows the owning lattice's gram matrix and ample class.
    """

    kind: str
    functionals: tuple[tuple[QuadNumber, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (POLYHEDRAL, QUADRATIC):
            raise InputError(f"unknown cone kind {self.kind!r}")
        if self.kind == POLYHEDRAL and not self.functionals:
            raise InputError("polyhedral cone needs at least one functional")
        if self.kind == QUADRATIC and self.functionals:
            raise InputError("quadratic cone takes no functionals")


@dataclass(frozen=True)
class SurfaceClass:
    """A divisor class on a surface: coordinates over the lattice basis."""

    lattice: "SurfaceLattice"
    coords: tuple[QuadNumber, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != len(self.lattice.basis):
            raise InputError(
                f"class on {self.lattice.name!r} needs "
                f"{len(self.lattice.basis)} coordinates, got {len(self.coords)}"
            )

    def _check_same_lattice(self, other: "SurfaceClass") -> None:
        if self.lattice != other.lattice:
            raise InputError(
                f"lattice mismatch: {self.lattice.name!r} vs {other.lattice.name!r}"
            )

    def __add__(self, other: "SurfaceClass") -> "SurfaceClass":
        self._check_same_lattice(other)
        return SurfaceClass(
            self.lattice,
            tuple(x + y for x, y in zip(self.coords, other.coords)),
        )

    def __sub__(self, other: "SurfaceClass") -> "SurfaceClass":
        return self + (-other)

    def __neg__(self) -> "SurfaceClass":
        return SurfaceClass(self.lattice, tuple(-x for x in self.coords))

    def __mul__(self, scalar: ScalarLike) -> "SurfaceClass":
        return SurfaceClass(self.lattice, tuple(x * scalar for x in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(x.sign() == 0 for x in self.coords)

    def pair(self, other: "SurfaceClass") -> QuadNumber:
        """Intersection number ``(self . other)`` under the gram matrix."""
        self._check_same_lattice(other)
        total = QuadNumber.zero(self.lattice.field_d)
        for xi, row in zip(self.coords, self.lattice.gram):
            for gij, yj in zip(row, other.coords):
                total = total + xi * gij * yj
        return total

    def self_intersection(self) -> QuadNumber:
        return self.pair(self)

    def __str__(self) -> str:
        inner = ", ".join(x.canonical_string() for x in self.coords)
        return f"({inner})"


@dataclass(frozen=True)
class SurfaceLattice:
    """A surface's divisor-class lattice with pairing and cone data."""

    name: str
    basis: tuple[str, ...]
    gram: tuple[tuple[QuadNumber, ...], ...]
    ample_ref: tuple[QuadNumber, ...]
    nef_cone: ConeSpec
    eff_cone: ConeSpec
    field_d: int

    def __post_init__(self) -> None:
        rank = len(self.basis)
        if len(set(self.basis)) != rank:
            raise InputError(f"surface {self.name!r}: basis labels not unique")
        if len(self.gram) != rank or any(len(row) != rank for row in self.gram):
            raise InputError(f"surface {self.name!r}: gram shape != {rank}x{rank}")
        for i in range(rank):
            for j in range(rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InputError(f"surface {self.name!r}: gram not symmetric")
        if len(self.ample_ref) != rank:
            raise InputError(f"surface {self.name!r}: ample class has wrong length")
        for cone in (self.nef_cone, self.eff_cone):
            for functional in cone.functionals:
                if len(functional) != rank:
                    raise InputError(
                        f"surface {self.name!r}: functional length != rank"
                    )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _scalar(self, value: ScalarLike) -> QuadNumber:
        if isinstance(value, QuadNumber):
            if value.b == 0 or value.d == self.field_d:
                return QuadNumber(value.a, value.b, self.field_d)
            raise InputError(
                f"scalar lives in Q(sqrt({value.d})), lattice uses sqrt({self.field_d})"
            )
        return QuadNumber.rational(Fraction(value), self.field_d)

    def cls(self, coords: Iterable[ScalarLike]) -> SurfaceClass:
        """Build a class from any mix of ints / Fractions / QuadNumbers."""
        return SurfaceClass(self, tuple(self._scalar(c) for c in coords))

    def basis_class(self, label: str) -> SurfaceClass:
        if label not in self.basis:
            raise InputError(f"surface {self.name!r} has no basis label {label!r}")
        return self.cls([1 if lbl == label else 0 for lbl in self.basis])

    @property
    def ample_class(self) -> SurfaceClass:
        return SurfaceClass(self, tuple(self.ample_ref))

    def pair(self, x: SurfaceClass, y: SurfaceClass) -> QuadNumber:
        if x.lattice != self or y.lattice != self:
            raise InputError("classes do not belong to this lattice")
        return x.pair(y)

    # -- cone membership -------------------------------------------------

    def _cone(self, cone: Union[ConeSpec, str]) -> ConeSpec:
        if isinstance(cone, str):
            try:
                return {"nef": self.nef_cone, "eff": self.eff_cone}[cone]
            except KeyError:
                raise InputError(f"unknown cone name {cone!r}") from None
        return cone

    def _functional_values(self, cone: ConeSpec, x: SurfaceClass) -> list[QuadNumber]:
        values = []
        for functional in cone.functionals:
            acc = QuadNumber.zero(self.field_d)
            for c, xi in zip(functional, x.coords):
                acc = acc + c * xi
            values.append(acc)
        return values

    def cone_contains(self, cone: Union[ConeSpec, str], x: SurfaceClass) -> bool:
        """Exact membership of ``x`` in the CLOSED cone."""
        cone = self._cone(cone)
        if x.lattice != self:
            raise InputError("class does not belong to this lattice")
        if cone.kind == POLYHEDRAL:
            return all(v.sign() >= 0 for v in self._functional_values(cone, x))
        return (
            x.self_intersection().sign() >= 0
            and x.pair(self.ample_class).sign() >= 0
        )

    def ample_is_strictly_interior(self, cone: Union[ConeSpec, str]) -> bool:
        """Strict membership of the ample class (every defining form > 0)."""
        cone = self._cone(cone)
        ample = self.ample_class
        if cone.kind == POLYHEDRAL:
            return all(v.sign() > 0 for v in self._functional_values(cone, ample))
        return ample.self_intersection().sign() > 0

    # -- ray / boundary analysis -----------------------------------------

    def _ray_breakpoints(
        self, cone: ConeSpec, base: SurfaceClass, direction: SurfaceClass
    ) -> list[QuadNumber]:
        """All t >= 0 where some defining form of the cone vanishes on the ray."""
        candidates: list[QuadNumber] = []

        def add_linear_root(at_base: QuadNumber, along: QuadNumber) -> None:
            if along.sign() != 0:
                t = -at_base / along
                if t.sign() >= 0:
                    candidates.append(t)

        if cone.kind == POLYHEDRAL:
            for v0, v1 in zip(
                self._functional_values(cone, base),
                self._functional_values(cone, direction),
            ):
                add_linear_root(v0, v1)
        else:
            # (base + t dir)^2 = alpha t^2 + beta t + chi
            alpha = direction.self_intersection()
            beta = 2 * base.pair(direction)
            chi = base.self_intersection()
            if alpha.sign() == 0:
                add_linear_root(chi, beta)
            else:
                disc = beta * beta - 4 * alpha * chi
                if disc.sign() >= 0:
                    root = field_sqrt(disc)
                    if root is None:
                        raise RootOutsideFieldError(
                            "discriminant outside field: sqrt of "
                            f"{disc.canonical_string()} is not in Q(sqrt({self.field_d}))"
                        )
                    for sgn in (1, -1):
                        t = (-beta + sgn * root) / (2 * alpha)
                        if t.sign() >= 0:
                            candidates.append(t)
            # The ample side-condition is linear along the ray.
            add_linear_root(
                base.pair(self.ample_class), direction.pair(self.ample_class)
            )

        return sorted(set(candidates))

    def boundary_slopes(
        self,
        cone: Union[ConeSpec, str],
        base: SurfaceClass,
        direction: SurfaceClass,
    ) -> list[QuadNumber]:
        """Parameters t >= 0 where ``base + t*direction`` leaves the cone.

        ``base`` must be a member.  Because the cone is convex the ray
        crosses the boundary at most once, so the result is ``[]`` (never
        leaves) or a single exact value.  Candidate parameters are the
        vanishing points of the defining forms; membership is sampled
        exactly between consecutive candidates to find the true crossing.
        """
        cone = self._cone(cone)
        if direction.is_zero():
            raise InputError("direction must be nonzero")
        if not self.cone_contains(cone, base):
            raise InputError("base class is not in the cone")

        def member_at(t: QuadNumber) -> bool:
            return self.cone_contains(cone, base + direction * t)

        breakpoints = self._ray_breakpoints(cone, base, direction)
        one = QuadNumber.one(self.field_d)
        for i, left in enumerate(breakpoints):
            if i + 1 < len(breakpoints):
                sample = (left + breakpoints[i + 1]) / 2
            else:
                sample = left + one
            if not member_at(sample):
                return [left]
        return []
