"""Minimal nef envelopes: closed-form agreement, minimality, regions."""

import random
from fractions import Fraction

import pytest

from divfilt.envelope import EPSILON, gamma, is_antinef, regions
from divfilt.errors import InputError
from divfilt.model import builtin_model
from divfilt.qfield import QuadNumber


@pytest.fixture(scope="module")
def model():
    return builtin_model()


def q3(a, b=0):
    return QuadNumber(Fraction(a), Fraction(b), 3)


ROOT3 = q3(0, 1)
# gamma_Sbar = RAISE_FACTOR * j in the steep region; equals 3/(9 - sqrt(3))
RAISE_FACTOR = q3(Fraction(9, 26), Fraction(1, 26))
# slope above which the first coordinate must be raised
STEEP_SLOPE = q3(3) - ROOT3 / 3


def closed_form(n, j):
    """Independent closed-form envelope for integer points of the builtin model."""
    assert n >= 0 and j >= 0 and (n, j) != (0, 0)
    if j <= n:
        label = "2" if j == n else "1"
        return (q3(n), q3(n)), label
    if q3(j) < STEEP_SLOPE * n:
        return (q3(n), q3(j)), "2"
    return (RAISE_FACTOR * j, q3(j)), "3"


# -- agreement with the closed form on an integer grid -------------------------


def test_closed_form_agreement_on_grid(model):
    points = [
        (n, j) for n in range(11) for j in range(11) if (n, j) != (0, 0)
    ]
    assert len(points) >= 100
    for n, j in points:
        env = gamma(model, model.divisor([n, j]))
        expected_gamma, expected_region = closed_form(n, j)
        assert env.gamma == expected_gamma, (n, j)
        assert env.region == expected_region, (n, j)


def test_named_envelope_points(model):
    cases = {
        (2, 1): ("(2, 2), region 1"),
        (1, 1): ("(1, 1), region 2"),
        (2, 3): ("(2, 3), region 2"),
        (1, 3): ("(27/26 + 3/26*sqrt(3), 3), region 3"),
        (0, 1): ("(9/26 + 1/26*sqrt(3), 1), region 3"),
    }
    for (n, j), expected in cases.items():
        assert str(gamma(model, model.divisor([n, j]))) == expected


def test_irrational_input_coefficients(model):
    # homogeneity extends to irrational scale factors within the field
    lam = q3(1, 1)  # 1 + sqrt(3) > 0
    base = model.divisor([0, 1])
    scaled = gamma(model, base * lam)
    unscaled = gamma(model, base)
    assert scaled.gamma == tuple(g * lam for g in unscaled.gamma)


# -- is_antinef -----------------------------------------------------------------


def test_antinef_examples(model):
    assert is_antinef(model, model.divisor([1, 1]))
    assert not is_antinef(model, model.divisor([1, 0]))
    assert not is_antinef(model, model.divisor([0, 1]))


def test_antinef_region_two_strip(model):
    for n, j in ((1, 1), (2, 3), (3, 4), (5, 7), (2, 2)):
        assert is_antinef(model, model.divisor([n, j])) == (
            q3(n) <= q3(j) and q3(j) <= STEEP_SLOPE * n
        )


# -- structural properties --------------------------------------------------------


def test_homogeneity_random(model):
    rng = random.Random(20260814)
    for _ in range(20):
        n, j = rng.randint(0, 8), rng.randint(0, 8)
        if (n, j) == (0, 0):
            n = 1
        lam = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        D = model.divisor([n, j])
        base = gamma(model, D)
        scaled = gamma(model, D * lam)
        assert scaled.gamma == tuple(g * lam for g in base.gamma)


def test_idempotence(model):
    for n, j in ((2, 1), (1, 1), (2, 3), (1, 3), (0, 1), (7, 2)):
        env = gamma(model, model.divisor([n, j]))
        again = gamma(model, model.divisor(env.gamma))
        assert again.gamma == env.gamma
        assert again.raised_indices == ()
        assert again.region == "2"


def test_soundness_envelope_is_antinef(model):
    for n, j in ((2, 1), (1, 1), (2, 3), (1, 3), (0, 1), (9, 2), (3, 11)):
        env = gamma(model, model.divisor([n, j]))
        assert is_antinef(model, env.envelope_divisor)
        assert all(
            (g - c).sign() >= 0 for g, c in zip(env.gamma, env.input.coeffs)
        )


def test_antinef_fixed_point(model):
    for n, j in ((1, 1), (2, 3), (3, 4)):
        D = model.divisor([n, j])
        assert is_antinef(model, D)
        env = gamma(model, D)
        assert env.gamma == D.coeffs
        assert env.raised_indices == ()


def test_minimality_against_integer_majorants(model):
    # any anti-nef integer point dominating D must dominate gamma(D)
    rng = random.Random(7)
    for _ in range(10):
        n, j = rng.randint(0, 4), rng.randint(0, 4)
        if (n, j) == (0, 0):
            j = 1
        env = gamma(model, model.divisor([n, j]))
        for a in range(n, n + 6):
            for b in range(j, j + 6):
                if is_antinef(model, model.divisor([a, b])):
                    assert (q3(a) - env.gamma[0]).sign() >= 0
                    assert (q3(b) - env.gamma[1]).sign() >= 0


def test_epsilon_certificate_for_raised_coordinates(model):
    for n, j in ((2, 1), (1, 3), (0, 1), (5, 0)):
        env = gamma(model, model.divisor([n, j]))
        for i in env.raised_indices:
            perturbed = list(env.gamma)
            perturbed[i] = perturbed[i] - EPSILON
            assert not is_antinef(model, model.divisor(perturbed)), (n, j, i)


def test_active_constraints_reported(model):
    env = gamma(model, model.divisor([1, 3]))
    assert env.active == frozenset({"coeff[F]", "nef[Sbar]:quad"})
    flat = gamma(model, model.divisor([1, 1]))
    assert "coeff[Sbar]" in flat.active and "coeff[F]" in flat.active


# -- regions ------------------------------------------------------------------------


def test_regions_builtin_pair(model):
    S = model.prime_divisor("Sbar")
    F = model.prime_divisor("F")
    assert regions(model, S, F) == [q3(1), STEEP_SLOPE]


def test_regions_swapped(model):
    S = model.prime_divisor("Sbar")
    F = model.prime_divisor("F")
    assert regions(model, F, S) == [RAISE_FACTOR, q3(1)]


def test_regions_reciprocal_relation(model):
    S = model.prime_divisor("Sbar")
    F = model.prime_divisor("F")
    forward = regions(model, S, F)
    backward = regions(model, F, S)
    assert [s.inverse() for s in reversed(forward)] == backward


def test_regions_dependent_directions(model):
    D = model.divisor([1, 1])
    assert regions(model, D, D * 2) == []


def test_regions_slopes_are_exact_region_changes(model):
    S = model.prime_divisor("Sbar")
    F = model.prime_divisor("F")
    slopes = regions(model, S, F)
    # sample strictly inside each open interval and confirm the label changes
    labels = []
    for r in (Fraction(1, 2), Fraction(3, 2), Fraction(5, 1)):
        env = gamma(model, model.divisor([1, r]))
        labels.append(env.region)
    assert labels == ["1", "2", "3"]
    assert len(slopes) == len(set(labels)) - 1


# -- input validation -----------------------------------------------------------------


def test_gamma_rejects_bad_inputs(model):
    with pytest.raises(InputError):
        gamma(model, model.divisor([-1, 0]))
    with pytest.raises(InputError):
        gamma(model, model.zero_divisor())
    with pytest.raises(InputError):
        is_antinef(model, model.divisor([0, -2]))
