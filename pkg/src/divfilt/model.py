"""The threefold resolution model.

A :class:`ThreefoldModel` describes the exceptional locus of a resolution
of an isolated singularity of dimension 3: an ordered list of exceptional
prime divisors ``E_i``, one surface lattice per prime, and for every pair
``(E, E')`` the class of ``O(E')`` restricted to the surface sitting over
``E``.  The trilinear intersection form on exceptional divisors is never
entered by hand — it is *derived* from the restriction table,

    (D1 . D2 . D3)  =  sum over primes E of
                       coeff(D3, E) * ( restrict(D1, E) . restrict(D2, E) ),

and :meth:`ThreefoldModel.validate` checks that every way of expanding a
basis monomial gives the same number, which is exactly the redundancy that
catches transcription errors in the restriction data.

The built-in model (addressable as ``"paper"`` on the command line) has
two primes over Q(sqrt(3)): an abelian surface with basis ``A, B, Delta``
and a ruled surface with basis ``C0, f``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError, ModelValidationError, ParseError
from .qfield import QuadNumber, ScalarLike, scalar_from_json, scalar_to_json
from .surfaces import POLYHEDRAL, QUADRATIC, ConeSpec, SurfaceClass, SurfaceLattice

BUILTIN_MODEL_NAME = "paper"

DIMENSION = 3


@dataclass(frozen=True)
class ExcDivisor:
    """A divisor supported on the exceptional primes: D = sum g_i E_i."""

    model: "ThreefoldModel"
    coeffs: tuple[QuadNumber, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != len(self.model.primes):
            raise InputError(
                f"divisor needs {len(self.model.primes)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    def _check_same_model(self, other: "ExcDivisor") -> None:
        if self.model != other.model:
            raise InputError("divisors belong to different models")

    @property
    def is_effective(self) -> bool:
        return all(c.sign() >= 0 for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.sign() == 0 for c in self.coeffs)

    def __add__(self, other: "ExcDivisor") -> "ExcDivisor":
        self._check_same_model(other)
        return ExcDivisor(
            self.model, tuple(x + y for x, y in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "ExcDivisor") -> "ExcDivisor":
        return self + (-other)

    def __neg__(self) -> "ExcDivisor":
        return ExcDivisor(self.model, tuple(-x for x in self.coeffs))

    def __mul__(self, scalar: ScalarLike) -> "ExcDivisor":
        return ExcDivisor(self.model, tuple(x * scalar for x in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "(" + ", ".join(c.canonical_string() for c in self.coeffs) + ")"


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL"
        return f"{status:4s} {self.name}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [f"{c.name}: {c.detail}" for c in self.checks if not c.ok]

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail}
                for c in self.checks
            ],
        }


@dataclass(frozen=True)
class ThreefoldModel:
    """Exceptional primes, their surfaces, and the restriction table."""

    field_d: int
    primes: tuple[str, ...]
    surfaces: tuple[SurfaceLattice, ...]
    # restrictions[i][j]: class of O(E_j) restricted to the surface over E_i
    restrictions: tuple[tuple[SurfaceClass, ...], ...]

    def __post_init__(self) -> None:
        t = len(self.primes)
        if len(set(self.primes)) != t:
            raise InputError("prime names are not unique")
        if len(self.surfaces) != t or len(self.restrictions) != t:
            raise InputError("surfaces/restrictions do not match prime count")
        for i, (prime, surface, row) in enumerate(
            zip(self.primes, self.surfaces, self.restrictions)
        ):
            if surface.field_d != self.field_d:
                raise InputError(f"surface {surface.name!r} uses a different field")
            if len(row) != t:
                raise InputError(f"restriction row for {prime!r} has wrong length")
            for cls in row:
                if cls.lattice != surface:
                    raise InputError(
                        f"restriction class for {prime!r} lies on the wrong surface"
                    )

    @property
    def dimension(self) -> int:
        return DIMENSION

    def index_of(self, prime: str) -> int:
        try:
            return self.primes.index(prime)
        except ValueError:
            raise InputError(f"unknown prime {prime!r}") from None

    def surface(self, prime: str) -> SurfaceLattice:
        return self.surfaces[self.index_of(prime)]

    def restriction(self, on_prime: str, of_prime: str) -> SurfaceClass:
        """The class of ``O(of_prime)`` restricted to ``surface(on_prime)``."""
        return self.restrictions[self.index_of(on_prime)][self.index_of(of_prime)]

    # -- divisors ---------------------------------------------------------

    def divisor(self, coeffs: Iterable[ScalarLike]) -> ExcDivisor:
        out = []
        for c in coeffs:
            if isinstance(c, QuadNumber):
                if c.b != 0 and c.d != self.field_d:
                    raise InputError(
                        f"coefficient in Q(sqrt({c.d})) does not fit field "
                        f"Q(sqrt({self.field_d}))"
                    )
                out.append(QuadNumber(c.a, c.b, self.field_d))
            else:
                out.append(QuadNumber.rational(c, self.field_d))
        return ExcDivisor(self, tuple(out))

    def prime_divisor(self, prime: str) -> ExcDivisor:
        i = self.index_of(prime)
        return self.divisor([1 if k == i else 0 for k in range(len(self.primes))])

    def zero_divisor(self) -> ExcDivisor:
        return self.divisor([0] * len(self.primes))

    # -- restriction and the trilinear form --------------------------------

    def restrict(self, D: ExcDivisor, prime: str) -> SurfaceClass:
        """Class of ``O(D)`` on the surface over ``prime`` (linear in D)."""
        if D.model != self:
            raise InputError("divisor belongs to a different model")
        i = self.index_of(prime)
        surface = self.surfaces[i]
        acc = surface.cls([0] * surface.rank)
        for coeff, cls in zip(D.coeffs, self.restrictions[i]):
            acc = acc + cls * coeff
        return acc

    def _triple_expanding(
        self, pair_a: ExcDivisor, pair_b: ExcDivisor, expanded: ExcDivisor
    ) -> QuadNumber:
        total = QuadNumber.zero(self.field_d)
        for prime, weight in zip(self.primes, expanded.coeffs):
            if weight.sign() == 0:
                continue
            value = self.restrict(pair_a, prime).pair(self.restrict(pair_b, prime))
            total = total + weight * value
        return total

    def triple(self, D1: ExcDivisor, D2: ExcDivisor, D3: ExcDivisor) -> QuadNumber:
        """Trilinear intersection number (D1 . D2 . D3).

        Expands the third argument over primes; :meth:`validate` certifies
        that the choice of expanded argument does not matter.
        """
        for D in (D1, D2, D3):
            if D.model != self:
                raise InputError("divisor belongs to a different model")
        return self._triple_expanding(D1, D2, D3)

    # -- validation ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Cross-check the restriction data and surface cone declarations.

        For every degree-3 monomial in the primes, all three argument
        expansions of the trilinear form must agree exactly; each surface's
        ample class must sit strictly inside its nef cone and inside its
        effective cone.
        """
        checks: list[CheckResult] = []
        t = len(self.primes)

        for surface in self.surfaces:
            strict = surface.ample_is_strictly_interior("nef")
            checks.append(
                CheckResult(
                    f"surface[{surface.name}].ample_in_nef",
                    strict,
                    "ample class strictly inside nef cone"
                    if strict
                    else "ample class not strictly inside nef cone",
                )
            )
            in_eff = surface.cone_contains("eff", surface.ample_class)
            checks.append(
                CheckResult(
                    f"surface[{surface.name}].ample_in_eff",
                    in_eff,
                    "ample class inside effective cone"
                    if in_eff
                    else "ample class outside effective cone",
                )
            )

        unit_divisors = [self.prime_divisor(p) for p in self.primes]
        for i in range(t):
            for j in range(i, t):
                for k in range(j, t):
                    monomial = "·".join(
                        (self.primes[i], self.primes[j], self.primes[k])
                    )
                    expansions = []
                    for (pa, pb, ex) in ((j, k, i), (i, k, j), (i, j, k)):
                        value = self._triple_expanding(
                            unit_divisors[pa], unit_divisors[pb], unit_divisors[ex]
                        )
                        expansions.append((self.primes[ex], value))
                    values = {v for _, v in expansions}
                    if len(values) == 1:
                        only = expansions[0][1]
                        checks.append(
                            CheckResult(
                                f"triple[{monomial}]",
                                True,
                                f"all expansions agree: {only.canonical_string()}",
                            )
                        )
                    else:
                        detail = ", ".join(
                            f"on {name} -> {v.canonical_string()}"
                            for name, v in expansions
                        )
                        checks.append(
                            CheckResult(
                                f"triple[{monomial}]",
                                False,
                                f"expansions disagree: {detail}",
                            )
                        )
        return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# JSON document form


def _require_keys(doc: Mapping, required: set, optional: set, where: str) -> None:
    if not isinstance(doc, Mapping):
        raise ParseError(f"{where}: expected an object")
    missing = required - set(doc)
    if missing:
        raise ParseError(f"{where}: missing {sorted(missing)}")
    extra = set(doc) - required - optional
    if extra:
        raise ParseError(f"{where}: unknown fields {sorted(extra)}")


def _scalar_vector(doc: object, d: int, where: str) -> tuple[QuadNumber, ...]:
    if not isinstance(doc, Sequence) or isinstance(doc, (str, bytes)):
        raise ParseError(f"{where}: expected a list of scalars")
    try:
        return tuple(scalar_from_json(x, d) for x in doc)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _cone_from_json(doc: object, d: int, where: str) -> ConeSpec:
    _require_keys(doc, {"type"}, {"inequalities"}, where)
    kind = doc["type"]
    if kind == QUADRATIC:
        if "inequalities" in doc:
            raise ParseError(f"{where}: quadratic cone takes no inequalities")
        return ConeSpec(QUADRATIC)
    if kind == POLYHEDRAL:
        rows = doc.get("inequalities")
        if not isinstance(rows, Sequence) or not rows:
            raise ParseError(f"{where}: polyhedral cone needs inequalities")
        return ConeSpec(
            POLYHEDRAL,
            tuple(
                _scalar_vector(row, d, f"{where}.inequalities[{i}]")
                for i, row in enumerate(rows)
            ),
        )
    raise ParseError(f"{where}: unknown cone type {kind!r}")


def _cone_to_json(cone: ConeSpec) -> dict:
    if cone.kind == QUADRATIC:
        return {"type": QUADRATIC}
    return {
        "type": POLYHEDRAL,
        "inequalities": [
            [scalar_to_json(c) for c in row] for row in cone.functionals
        ],
    }


def model_from_dict(doc: Mapping) -> ThreefoldModel:
    """Build and validate a model from its JSON document form."""
    _require_keys(doc, {"field", "surfaces", "primes", "restrictions"}, set(), "model")
    _require_keys(doc["field"], {"d"}, set(), "model.field")
    d = doc["field"]["d"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise ParseError("model.field.d: expected an integer")
    try:
        QuadNumber.zero(d)
    except ValueError as exc:
        raise ParseError(f"model.field.d: {exc}") from None

    primes = doc["primes"]
    if (
        not isinstance(primes, Sequence)
        or isinstance(primes, (str, bytes))
        or not primes
        or not all(isinstance(p, str) for p in primes)
    ):
        raise ParseError("model.primes: expected a nonempty list of names")
    primes = tuple(primes)

    if not isinstance(doc["surfaces"], Sequence):
        raise ParseError("model.surfaces: expected a list")
    lattices: dict[str, SurfaceLattice] = {}
    for i, sdoc in enumerate(doc["surfaces"]):
        where = f"model.surfaces[{i}]"
        _require_keys(sdoc, {"name", "basis", "gram", "ample", "nef", "eff"}, set(), where)
        name = sdoc["name"]
        basis = sdoc["basis"]
        if not isinstance(basis, Sequence) or not all(
            isinstance(b, str) for b in basis
        ):
            raise ParseError(f"{where}.basis: expected a list of labels")
        gram_doc = sdoc["gram"]
        if not isinstance(gram_doc, Sequence):
            raise ParseError(f"{where}.gram: expected a matrix")
        gram = tuple(
            _scalar_vector(row, d, f"{where}.gram[{k}]")
            for k, row in enumerate(gram_doc)
        )
        try:
            lattice = SurfaceLattice(
                name=name,
                basis=tuple(basis),
                gram=gram,
                ample_ref=_scalar_vector(sdoc["ample"], d, f"{where}.ample"),
                nef_cone=_cone_from_json(sdoc["nef"], d, f"{where}.nef"),
                eff_cone=_cone_from_json(sdoc["eff"], d, f"{where}.eff"),
                field_d=d,
            )
        except InputError as exc:
            raise ParseError(f"{where}: {exc}") from None
        if name in lattices:
            raise ParseError(f"{where}: duplicate surface name {name!r}")
        lattices[name] = lattice

    missing_surfaces = [p for p in primes if p not in lattices]
    if missing_surfaces:
        raise ParseError(f"model.surfaces: no surface for primes {missing_surfaces}")
    unused = sorted(set(lattices) - set(primes))
    if unused:
        raise ParseError(f"model.surfaces: surfaces without primes {unused}")

    rdoc = doc["restrictions"]
    if not isinstance(rdoc, Mapping):
        raise ParseError("model.restrictions: expected an object")
    unknown = sorted(set(rdoc) - set(primes))
    if unknown:
        raise ParseError(f"model.restrictions: unknown primes {unknown}")
    rows = []
    for on_prime in primes:
        row_doc = rdoc.get(on_prime)
        if not isinstance(row_doc, Mapping):
            raise ParseError(f"model.restrictions[{on_prime!r}]: missing row")
        unknown = sorted(set(row_doc) - set(primes))
        if unknown:
            raise ParseError(
                f"model.restrictions[{on_prime!r}]: unknown primes {unknown}"
            )
        surface = lattices[on_prime]
        row = []
        for of_prime in primes:
            if of_prime not in row_doc:
                raise ParseError(
                    f"model.restrictions[{on_prime!r}]: missing entry for "
                    f"{of_prime!r}"
                )
            coords = _scalar_vector(
                row_doc[of_prime], d, f"model.restrictions[{on_prime!r}][{of_prime!r}]"
            )
            try:
                row.append(surface.cls(coords))
            except InputError as exc:
                raise ParseError(
                    f"model.restrictions[{on_prime!r}][{of_prime!r}]: {exc}"
                ) from None
        rows.append(tuple(row))

    try:
        model = ThreefoldModel(
            field_d=d,
            primes=primes,
            surfaces=tuple(lattices[p] for p in primes),
            restrictions=tuple(rows),
        )
    except InputError as exc:
        raise ParseError(f"model: {exc}") from None

    report = model.validate()
    if not report.ok:
        raise ModelValidationError(report.failures)
    return model


def model_to_dict(model: ThreefoldModel) -> dict:
    """Serialize a model to its JSON document form (inverse of from_dict)."""
    return {
        "field": {"d": model.field_d},
        "surfaces": [
            {
                "name": s.name,
                "basis": list(s.basis),
                "gram": [[scalar_to_json(x) for x in row] for row in s.gram],
                "ample": [scalar_to_json(x) for x in s.ample_ref],
                "nef": _cone_to_json(s.nef_cone),
                "eff": _cone_to_json(s.eff_cone),
            }
            for s in model.surfaces
        ],
        "primes": list(model.primes),
        "restrictions": {
            on_prime: {
                of_prime: [scalar_to_json(x) for x in cls.coords]
                for of_prime, cls in zip(model.primes, row)
            }
            for on_prime, row in zip(model.primes, model.restrictions)
        },
    }


def load_model(source: Union[str, Path, Mapping]) -> ThreefoldModel:
    """Load a model from a JSON file path (or an already-parsed document)."""
    if isinstance(source, Mapping):
        return model_from_dict(source)
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read model file {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"model file {path} is not valid JSON: {exc}") from None
    return model_from_dict(doc)


# ---------------------------------------------------------------------------
# the built-in model


_BUILTIN_DOC: dict = {
    "field": {"d": 3},
    "surfaces": [
        {
            "name": "Sbar",
            "basis": ["A", "B", "Delta"],
            "gram": [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
            "ample": [1, 1, 1],
            "nef": {"type": "quadratic"},
            "eff": {"type": "quadratic"},
        },
        {
            "name": "F",
            "basis": ["C0", "f"],
            "gram": [[-162, 1], [1, 0]],
            "ample": [1, 163],
            "nef": {"type": "polyhedral", "inequalities": [[1, 0], [-162, 1]]},
            "eff": {"type": "polyhedral", "inequalities": [[1, 0], [0, 1]]},
        },
    ],
    "primes": ["Sbar", "F"],
    "restrictions": {
        "Sbar": {"Sbar": [-6, -9, -12], "F": [3, 3, 3]},
        "F": {"Sbar": [1, 0], "F": [-1, -108]},
    },
}


@lru_cache(maxsize=1)
def builtin_model() -> ThreefoldModel:
    """The built-in two-prime reference model over Q(sqrt(3)).

    One prime carries an abelian surface whose nef and effective cones
    coincide with (the ample half of) the light cone of the rank-3 Gram
    matrix; the other carries a ruled surface with polyhedral cones.
    """
    return model_from_dict(_BUILTIN_DOC)


def builtin_document() -> dict:
    """A fresh copy of the built-in model's JSON document."""
    return json.loads(json.dumps(_BUILTIN_DOC))
