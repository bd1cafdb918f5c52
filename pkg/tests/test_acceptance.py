"""Acceptance gate: one test per criterion, one printed PASS/FAIL line each."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from divfilt.envelope import gamma, regions
from divfilt.errors import ModelValidationError
from divfilt.filt_examples import (
    limit_probe,
    norm_length,
    sqrt2_length,
    sqrt2_sequence,
)
from divfilt.model import builtin_document, builtin_model, model_from_dict
from divfilt.multiplicity import (
    limit_single,
    minkowski_check,
    mixed,
    piecewise_limit,
    product_limit,
)
from divfilt.qfield import QuadNumber

SEED = 20260814


@pytest.fixture(scope="module")
def model():
    return builtin_model()


def q3(a, b=0):
    return QuadNumber(Fraction(a), Fraction(b), 3)


ROOT3 = q3(0, 1)


def check(capsys, number, description, body):
    try:
        body()
    except BaseException:
        with capsys.disabled():
            print(f"ACCEPTANCE {number}: FAIL - {description}")
        raise
    with capsys.disabled():
        print(f"ACCEPTANCE {number}: PASS - {description}")


def test_acceptance_1_intersection_table(model, capsys):
    def body():
        S, F = model.prime_divisor("Sbar"), model.prime_divisor("F")
        assert model.triple(S, S, S) == 468
        assert model.triple(S, S, F) == -162
        assert model.triple(S, F, F) == 54
        assert model.triple(F, F, F) == 54

    check(capsys, 1, "intersection table (468, -162, 54, 54)", body)


def test_acceptance_2_envelope_reproduction(model, capsys):
    def body():
        expected = {
            (2, 1): ((q3(2), q3(2)), "1"),
            (1, 1): ((q3(1), q3(1)), "2"),
            (2, 3): ((q3(2), q3(3)), "2"),
            (1, 3): (
                ((q3(9, 1) * 3) / 26, q3(3)),
                "3",
            ),
            (0, 1): ((q3(9, 1) / 26, q3(1)), "3"),
        }
        for (n, j), (g, label) in expected.items():
            env = gamma(model, model.divisor([n, j]))
            assert env.gamma == g, (n, j)
            assert env.region == label, (n, j)

    check(capsys, 2, "envelope values and region labels at five points", body)


def test_acceptance_3_piecewise_reproduction(model, capsys):
    def body():
        S, F = model.prime_divisor("Sbar"), model.prime_divisor("F")
        pw = piecewise_limit(model, S, F)
        assert pw.boundary_slopes() == [q3(1), q3(3) - ROOT3 / 3]
        assert [r.poly.render() for r in pw.regions] == [
            "33*n^3",
            "78*n^3 - 81*n^2*j + 27*n*j^2 + 9*j^3",
            "(2007/169 - 9/338*sqrt(3))*j^3",
        ]
        assert [r.poly.render() for r in pw.scaled(6).regions] == [
            "198*n^3",
            "468*n^3 - 486*n^2*j + 162*n*j^2 + 54*j^3",
            "(12042/169 - 27/169*sqrt(3))*j^3",
        ]

    check(capsys, 3, "piecewise limit and multiplicity polynomials", body)


def test_acceptance_4_single_limit(model, capsys):
    def body():
        report = limit_single(model, model.prime_divisor("F"))
        assert report.limit == q3(Fraction(2007, 169), Fraction(-9, 338))
        assert report.multiplicity == q3(Fraction(12042, 169), Fraction(-27, 169))

    check(capsys, 4, "limit and multiplicity of the second prime", body)


def test_acceptance_5_product_and_mixed(model, capsys):
    def body():
        S, F = model.prime_divisor("Sbar"), model.prime_divisor("F")
        form = product_limit(model, S, F)
        assert form.coefficients == (
            q3(33),
            q3(Fraction(891, 26), Fraction(99, 26)),
            q3(Fraction(6021, 169), Fraction(-27, 338)),
            q3(Fraction(2007, 169), Fraction(-9, 338)),
        )
        assert mixed(model, [(S, 3)]) == 198
        assert mixed(model, [(S, 2), (F, 1)]) == q3(
            Fraction(891, 13), Fraction(99, 13)
        )
        assert mixed(model, [(S, 1), (F, 2)]) == q3(
            Fraction(12042, 169), Fraction(-27, 169)
        )
        assert mixed(model, [(F, 3)]) == q3(
            Fraction(12042, 169), Fraction(-27, 169)
        )

    check(capsys, 5, "product-filtration limit and mixed multiplicities", body)


def test_acceptance_6_minkowski_suite(model, capsys):
    def body():
        S, F = model.prime_divisor("Sbar"), model.prime_divisor("F")
        report = minkowski_check(model, S, F)
        assert report.all_hold
        for c in report.checks[:10]:
            assert c.method == "exact"
        assert report.checks[10].method.startswith("interval")

        rng = random.Random(SEED)
        for _ in range(20):
            c1 = [rng.randint(0, 6), rng.randint(0, 6)]
            c2 = [rng.randint(0, 6), rng.randint(0, 6)]
            if c1 == [0, 0]:
                c1[rng.randint(0, 1)] = 1
            if c2 == [0, 0]:
                c2[rng.randint(0, 1)] = 1
            pair_report = minkowski_check(
                model, model.divisor(c1), model.divisor(c2)
            )
            assert pair_report.all_hold, (c1, c2)
            for c in pair_report.checks[:10]:
                assert c.method == "exact"

    check(capsys, 6, "all inequality families hold (builtin + 20 random pairs)", body)


def test_acceptance_7_consistency_properties(model, capsys):
    def body():
        # trilinear symmetry across expansion orders
        assert model.validate().ok
        S, F = model.prime_divisor("Sbar"), model.prime_divisor("F")
        for D1, D2, D3 in ((S, S, F), (S + F, S - F * 2, F * 3)):
            reference = model.triple(D1, D2, D3)
            for p in itertools.permutations((D1, D2, D3)):
                assert model.triple(*p) == reference
        # cross-restriction agreement computed on both surfaces
        s2f_on_Sbar = model.restrict(S, "Sbar").pair(model.restrict(F, "Sbar"))
        s2f_on_F = model.restrict(S, "F").pair(model.restrict(S, "F"))
        assert s2f_on_Sbar == s2f_on_F == -162
        f3_on_Sbar = model.restrict(F, "Sbar").pair(model.restrict(F, "Sbar"))
        f3_on_F = model.restrict(F, "F").pair(model.restrict(F, "F"))
        assert f3_on_Sbar == f3_on_F == 54
        # continuity across both boundary rays: difference vanishes on the ray
        pw = piecewise_limit(model, S, F)
        for left, right in zip(pw.regions, pw.regions[1:]):
            difference = left.poly - right.poly
            assert difference.slope_value(left.upper_slope) == 0
        # homogeneity for 20 random scalings
        rng = random.Random(SEED)
        for _ in range(20):
            n, j = rng.randint(0, 8), rng.randint(0, 8)
            if (n, j) == (0, 0):
                n = 1
            lam = Fraction(rng.randint(1, 30), rng.randint(1, 30))
            D = model.divisor([n, j])
            assert gamma(model, D * lam).gamma == tuple(
                g * lam for g in gamma(model, D).gamma
            )

    check(capsys, 7, "symmetry, cross-restriction, continuity, homogeneity", body)


def test_acceptance_8_filtration_examples(capsys):
    def body():
        start = time.perf_counter()
        result = limit_probe(sqrt2_sequence(), 10**5)
        elapsed = time.perf_counter() - start
        target = QuadNumber(Fraction(0), Fraction(1), 2)
        assert abs(result.estimate - target) <= Fraction(1, 10**5)
        assert elapsed < 1.0
        assert norm_length(2, 2) == 3 != 2 * norm_length(1, 1)
        lengths = [sqrt2_length(n) for n in range(1001)]
        for a in range(501):
            for b in range(501):
                assert lengths[a + b] <= lengths[a] + lengths[b]

    check(capsys, 8, "probe accuracy, non-polynomiality, submultiplicativity", body)


def test_acceptance_9_negative_control(capsys):
    def body():
        doc = builtin_document()
        doc["restrictions"]["F"]["F"] = [-1, -107]
        with pytest.raises(ModelValidationError) as exc_info:
            model_from_dict(doc)
        assert "triple[Sbar·F·F]" in str(exc_info.value)

    check(capsys, 9, "perturbed restriction table rejected with monomial named", body)


def test_acceptance_region_boundaries_bonus(model, capsys):
    # not a numbered criterion: the region list both ways, used by criteria 2-3
    S, F = model.prime_divisor("Sbar"), model.prime_divisor("F")
    assert regions(model, S, F) == [q3(1), q3(3) - ROOT3 / 3]
    assert regions(model, F, S) == [q3(Fraction(9, 26), Fraction(1, 26)), q3(1)]
