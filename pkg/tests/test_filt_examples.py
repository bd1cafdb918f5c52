"""Closed-form filtration length oracles and the limit probe."""

from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divfilt.errors import InputError
from divfilt.filt_examples import (
    LengthSequence,
    diagonal_norm_sequence,
    limit_probe,
    norm_length,
    sqrt2_length,
    sqrt2_sequence,
)
from divfilt.qfield import QuadNumber

SQRT2 = QuadNumber(Fraction(0), Fraction(1), 2)


# -- sqrt2 lengths ------------------------------------------------------------


def test_sqrt2_length_examples():
    assert sqrt2_length(0) == 0
    assert sqrt2_length(1) == 2
    assert sqrt2_length(5) == 8
    assert sqrt2_length(10) == 15


def test_sqrt2_length_against_integer_sqrt_oracle():
    # n*sqrt(2) is never an integer for n >= 1, so its ceiling is
    # floor(sqrt(2 n^2)) + 1 — an independent derivation via math.isqrt.
    for n in range(1, 5000):
        assert sqrt2_length(n) == isqrt(2 * n * n) + 1


@given(st.integers(min_value=0, max_value=10**9))
def test_sqrt2_length_brackets_exactly(n):
    value = sqrt2_length(n)
    target = SQRT2 * n
    assert value >= target
    assert value - 1 < target or n == 0


def test_sqrt2_submultiplicative_up_to_500():
    lengths = [sqrt2_length(n) for n in range(1001)]
    for a in range(501):
        for b in range(501):
            assert lengths[a + b] <= lengths[a] + lengths[b]


# -- norm lengths --------------------------------------------------------------


def test_norm_length_examples():
    assert norm_length(3, 4) == 5
    assert norm_length(1, 1) == 2
    assert norm_length(2, 2) == 3
    assert norm_length(0, 0) == 0
    assert norm_length(0, 7) == 7


def test_norm_length_not_homogeneous():
    assert norm_length(2, 2) != 2 * norm_length(1, 1)


@given(
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=0, max_value=10**6),
)
def test_norm_length_brackets_exactly(n1, n2):
    value = norm_length(n1, n2)
    square = n1 * n1 + n2 * n2
    assert (value - 1) ** 2 < square or square == 0
    assert value * value >= square


@given(
    st.integers(min_value=0, max_value=1000),
    st.integers(min_value=0, max_value=1000),
)
def test_norm_length_symmetric(n1, n2):
    assert norm_length(n1, n2) == norm_length(n2, n1)


# -- limit probe ------------------------------------------------------------------


def test_probe_sqrt2_at_1e5_within_1e_minus_5():
    result = limit_probe(sqrt2_sequence(), 10**5)
    assert abs(result.estimate - SQRT2) <= Fraction(1, 10**5)
    assert result.bound == Fraction(1, 10**5)


def test_probe_error_bound_holds_at_every_sampled_index():
    seq = sqrt2_sequence()
    for n in range(1, 201):
        result = limit_probe(seq, n)
        assert abs(result.estimate - SQRT2) <= result.bound


def test_probe_constant_multiple_sequence_is_exact():
    seq = LengthSequence(evaluator=lambda n: 7 * n, dimension=1)
    for n in (1, 13, 123):
        assert limit_probe(seq, n).estimate == 7


def test_probe_diagonal_norm_approaches_sqrt2_without_reaching_it():
    seq = diagonal_norm_sequence()
    for n in (1, 10, 100, 1000):
        result = limit_probe(seq, n)
        assert abs(result.estimate - SQRT2) <= result.bound
        assert result.estimate != SQRT2  # the limit itself is irrational


def test_probe_result_json():
    result = limit_probe(sqrt2_sequence(), 5)
    assert result.to_json_dict() == {
        "n_max": 5,
        "length": 8,
        "estimate": "8/5",
        "bound": "1/5",
    }


# -- validation ----------------------------------------------------------------------


def test_length_sequence_must_start_at_zero():
    with pytest.raises(InputError):
        LengthSequence(evaluator=lambda n: n + 1, dimension=1)


def test_length_sequence_validates_dimension_and_defect():
    with pytest.raises(InputError):
        LengthSequence(evaluator=lambda n: n, dimension=0)
    with pytest.raises(InputError):
        LengthSequence(evaluator=lambda n: n, dimension=1, defect=0)


def test_negative_indices_rejected():
    with pytest.raises(InputError):
        sqrt2_length(-1)
    with pytest.raises(InputError):
        norm_length(-1, 2)
    with pytest.raises(InputError):
        limit_probe(sqrt2_sequence(), 0)
