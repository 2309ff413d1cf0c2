import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circlealg.cyclotomic import Cyclotomic
from circlealg.rationals import Rat


def test_primitive_root_sum_vanishes():
    z = Cyclotomic.root_of_unity(1, 3)
    assert (1 + z + z * z).is_zero


def test_half_turn_is_minus_one():
    assert Cyclotomic.root_of_unity(1, 2) == -1


def test_gaussian_parts_round_trip():
    g = Cyclotomic.gaussian(Fraction(1, 2), Fraction(-3, 4))
    assert g.gaussian_parts() == (Rat(1, 2), Rat(-3, 4))
    assert Cyclotomic.root_of_unity(1, 3).gaussian_parts() is None


def test_mixed_order_arithmetic():
    z6 = Cyclotomic.root_of_unity(1, 6)
    z3 = Cyclotomic.root_of_unity(1, 3)
    assert z6**2 == z3
    assert z6**3 == -1
    assert (z6 - z6).is_zero


def test_numeric_value():
    z = Cyclotomic.root_of_unity(3, 7)
    assert abs(complex(z) - cmath.exp(6j * cmath.pi / 7)) < 1e-14


def test_exact_modulus_of_unimodular_times_rational():
    z = Cyclotomic.root_of_unity(2, 5) * Rat(1, 2)
    assert abs(z) == 0.5


roots = st.builds(
    Cyclotomic.root_of_unity,
    st.integers(0, 30),
    st.integers(1, 16),
)
scalars = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=6
)
values = st.one_of(
    roots,
    st.builds(lambda a, b: Cyclotomic.gaussian(a, b), scalars, scalars),
    st.builds(lambda r, s: r * s, roots, scalars),
)


@given(values, values)
def test_addition_matches_complex(a, b):
    assert abs(complex(a + b) - (complex(a) + complex(b))) < 1e-12


@given(values, values)
def test_multiplication_matches_complex(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-12


@given(values)
def test_conjugation(a):
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-12
    assert a.conjugate().conjugate() == a


@given(values)
def test_inverse(a):
    if a.is_zero:
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == 1


@given(values, values, values)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


def test_equality_is_canonical_across_orders():
    one_as_z4 = Cyclotomic.root_of_unity(4, 4)
    assert one_as_z4 == 1
    assert one_as_z4 == Cyclotomic.from_rational(1)
    z12_4 = Cyclotomic.root_of_unity(4, 12)
    assert z12_4 == Cyclotomic.root_of_unity(1, 3)
