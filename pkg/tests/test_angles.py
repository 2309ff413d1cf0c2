import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circlealg.angles import (
    DEFAULT_GENERATOR_VALUES,
    ZERO_ANGLE,
    combine,
    eval_unimodular,
    format_angle,
    generator_angle,
    negate,
    parse_angle,
    torsion_order,
    turns_angle,
)
from circlealg.errors import MissingGeneratorValue, SerializationError


def test_combine_half_plus_half_is_zero():
    a = turns_angle(1, 2)
    assert combine(1, a, 1, a) == ZERO_ANGLE


def test_combine_scaling():
    assert combine(2, turns_angle(1, 3), 0, ZERO_ANGLE) == turns_angle(2, 3)


def test_combine_generator_cancellation():
    g = generator_angle(1)
    shifted = combine(1, g, 1, turns_angle(1, 4))
    assert combine(1, g, -1, shifted) == turns_angle(3, 4)


def test_torsion_orders():
    assert torsion_order(turns_angle(2, 6)) == 3
    assert torsion_order(generator_angle(1)) is None
    assert torsion_order(ZERO_ANGLE) == 1


def test_eval_at_half_turn_is_exactly_minus_one():
    assert eval_unimodular(turns_angle(1, 2), 1, {}) == -1


def test_eval_quarter_turn():
    v = eval_unimodular(turns_angle(1, 4), 3, {})
    assert v == -1j
    assert abs(abs(v) - 1) <= 1e-15


def test_eval_generator_against_direct_exponential():
    g = generator_angle(1)
    v = eval_unimodular(g, 1, {1: math.sqrt(2) % 1})
    expect = cmath.exp(2j * cmath.pi * (math.sqrt(2) % 1))
    assert abs(v - expect) < 1e-15
    assert abs(abs(v) - 1) <= 1e-15


def test_eval_missing_generator_value():
    with pytest.raises(MissingGeneratorValue):
        eval_unimodular(generator_angle(2), 1, {1: 0.5})


def test_default_generator_values_are_sqrt_prime_fracs():
    assert DEFAULT_GENERATOR_VALUES[1] == pytest.approx(math.sqrt(2) % 1)
    assert DEFAULT_GENERATOR_VALUES[2] == pytest.approx(math.sqrt(3) % 1)
    assert DEFAULT_GENERATOR_VALUES[3] == pytest.approx(math.sqrt(5) % 1)


rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=24
)
gen_terms = st.dictionaries(
    st.integers(min_value=1, max_value=3), st.integers(-5, 5), max_size=3
)


@st.composite
def angles(draw):
    t = draw(rationals)
    gens = draw(gen_terms)
    a = turns_angle(t)
    for j, c in gens.items():
        if c:
            a = combine(1, a, 1, generator_angle(j, c))
    return a


@given(angles(), angles())
def test_combine_commutative(a, b):
    assert combine(1, a, 1, b) == combine(1, b, 1, a)


@given(angles(), angles(), angles())
def test_combine_associative(a, b, c):
    lhs = combine(1, combine(1, a, 1, b), 1, c)
    rhs = combine(1, a, 1, combine(1, b, 1, c))
    assert lhs == rhs


@given(angles())
def test_negate_is_inverse(a):
    assert combine(1, a, 1, negate(a)) == ZERO_ANGLE


@given(angles())
def test_torsion_order_is_minimal(a):
    n = torsion_order(a)
    if n is None:
        return
    assert combine(n, a, 0, ZERO_ANGLE) == ZERO_ANGLE
    for m in range(1, n):
        assert combine(m, a, 0, ZERO_ANGLE) != ZERO_ANGLE


@given(angles(), st.integers(-30, 30), st.integers(-30, 30))
def test_eval_is_multiplicative_in_n(a, m, n):
    vm = eval_unimodular(a, m)
    vn = eval_unimodular(a, n)
    vmn = eval_unimodular(a, m + n)
    assert abs(vm * vn - vmn) < 1e-12
    assert abs(abs(vmn) - 1) <= 1e-14


@given(angles())
def test_text_round_trip(a):
    assert parse_angle(format_angle(a)) == a


@pytest.mark.parametrize("text", ["1/2", "1/3+2*g1", "0+1*g1-1*g2", "5/6-3*g2"])
def test_parse_format_canonical(text):
    a = parse_angle(text)
    assert format_angle(a) == text


@pytest.mark.parametrize("text", ["", "x", "1/2+g", "1/2**g1", "1/2+2g1", "1/0"])
def test_parse_rejects_garbage(text):
    with pytest.raises(SerializationError):
        parse_angle(text)
