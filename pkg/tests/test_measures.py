import cmath
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlealg.angles import generator_angle, turns_angle
from circlealg.cyclotomic import Cyclotomic
from circlealg.measures import (
    convolve,
    dirac,
    fourier_coefficient,
    fourier_coefficient_samples,
    haar_cyclic,
    involution,
    linear_combine,
    measure,
    shift_automorphism,
    tv_norm,
    wt_eq,
    wt_is_exact,
    zero_measure,
)


def half_sum():
    return linear_combine(F(1, 2), dirac(0), F(1, 2), dirac(F(1, 2)))


def half_diff():
    return linear_combine(F(1, 2), dirac(0), F(-1, 2), dirac(F(1, 2)))


def test_dirac_zero_is_convolution_unit():
    m = measure(atoms=[(F(1, 3), 2), (generator_angle(1), 1 + 1j)], ac={4: F(1, 2)})
    assert convolve(dirac(0), m) == m


def test_dirac_coefficients_alternate():
    d = dirac(F(1, 2))
    for n in range(-6, 7):
        assert fourier_coefficient(d, n) == (-1) ** n


def test_tv_norm_of_dirac_is_one():
    assert tv_norm(dirac(generator_angle(1))) == 1.0


@pytest.mark.parametrize("order", [1, 2, 3, 5, 12, 64])
def test_haar_coefficients(order):
    h = haar_cyclic(order)
    for n in (-2 * order, -1, 0, 1, order - 1, order, 3 * order + 1):
        expected = 1 if n % order == 0 else 0
        assert fourier_coefficient(h, n) == expected


def test_haar_one_is_dirac():
    assert haar_cyclic(1) == dirac(0)


def test_linear_combine_cancels_exactly():
    m = measure(atoms=[(F(1, 3), F(2, 7))], ac={3: F(1, 2)})
    assert linear_combine(1, m, -1, m).is_zero


def test_linear_combine_merges_atoms():
    m = linear_combine(2, dirac(F(1, 3)), 3, dirac(F(1, 3)))
    assert len(m.atoms) == 1
    assert m.atoms[0][1] == 5


def test_half_sum_atoms():
    e = half_sum()
    assert [(a.turns, w) for a, w in e.atoms] == [(F(0), F(1, 2)), (F(1, 2), F(1, 2))]


def test_idempotent_annihilation_is_exact():
    assert convolve(half_sum(), half_diff()).is_zero


def test_convolve_diracs_adds_positions():
    assert convolve(dirac(F(1, 3)), dirac(F(1, 3))) == dirac(F(2, 3))


def test_convolution_homomorphism_on_hybrid():
    m1 = measure(atoms=[(F(1, 4), F(1, 2))], ac={0: 1, 4: F(1, 2)})
    m2 = measure(atoms=[(F(1, 2), F(1, 3)), (F(3, 4), 1)], ac={4: F(1, 4), -4: 2})
    conv = convolve(m1, m2)
    for n in range(-9, 10):
        lhs = fourier_coefficient(conv, n)
        rhs = fourier_coefficient(m1, n) * fourier_coefficient(m2, n)
        assert wt_eq(lhs, rhs), n


def test_haar2_fixes_even_support_density():
    rn = measure(ac={0: 1, 4: F(1, 2), -4: F(1, 2), 8: F(1, 4), -8: F(1, 4)})
    assert convolve(haar_cyclic(2), rn) == rn


def test_involution_examples():
    assert involution(dirac(F(1, 3))) == dirac(F(2, 3))
    assert involution(haar_cyclic(5)) == haar_cyclic(5)


def test_involution_conjugates_coefficients():
    m = measure(
        atoms=[(F(1, 3), Cyclotomic.gaussian(1, 2)), (generator_angle(1), 0.25 + 0.5j)],
        ac={2: 1 + 2j},
    )
    for n in range(-5, 6):
        lhs = complex(fourier_coefficient(involution(m), n))
        rhs = complex(fourier_coefficient(m, n)).conjugate()
        assert abs(lhs - rhs) < 1e-12


def test_half_diff_coefficients():
    hd = half_diff()
    for n in range(-5, 6):
        assert fourier_coefficient(hd, n) == (0 if n % 2 == 0 else 1)


def test_fourier_coefficient_zero_measure():
    assert fourier_coefficient(zero_measure(), 17) == 0


def test_tv_norm_examples():
    assert tv_norm(half_diff()) == 1.0
    assert tv_norm(dirac(turns_angle(1, 7))) == 1.0


def test_tv_norm_nonnegative_density_is_mass():
    rn = measure(ac={0: 1, 4: F(1, 2), -4: F(1, 2)})
    assert tv_norm(rn) == pytest.approx(1.0, abs=1e-12)


def test_tv_norm_signed_density_quadrature():
    # density 2*cos(t): L1 norm over a period is 4/(2*pi)*2 = 4/pi
    m = measure(ac={1: 1, -1: 1})
    assert tv_norm(m) == pytest.approx(4 / np.pi, rel=1e-8)


def test_shift_automorphism_on_dirac_pi():
    s = shift_automorphism(dirac(F(1, 2)), 1)
    assert len(s.atoms) == 1
    assert s.atoms[0][0] == turns_angle(1, 2)
    assert s.atoms[0][1] == -1


def test_shift_zero_is_identity():
    m = measure(atoms=[(F(1, 6), 1j)], ac={2: F(1, 2)})
    assert shift_automorphism(m, 0) == m


def test_shift_composition():
    m = measure(atoms=[(F(1, 6), F(1, 2)), (generator_angle(1), 0.5)], ac={1: 1})
    lhs = shift_automorphism(shift_automorphism(m, 2), 3)
    rhs = shift_automorphism(m, 5)
    for n in range(-6, 7):
        assert abs(complex(fourier_coefficient(lhs, n)) - complex(fourier_coefficient(rhs, n))) < 1e-12


def test_fourier_samples_match_scalar_path():
    m = measure(
        atoms=[(F(1, 3), F(1, 2)), (generator_angle(2), 0.25)], ac={3: F(1, 4)}
    )
    ns = np.arange(-40, 41)
    vals = fourier_coefficient_samples(m, ns)
    for i, n in enumerate(ns):
        assert abs(vals[i] - complex(fourier_coefficient(m, int(n)))) < 1e-12


atom_weights = st.one_of(
    st.fractions(min_value=F(-3), max_value=F(3), max_denominator=4).filter(bool),
    st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False).filter(
        lambda z: abs(z) > 1e-3
    ),
)


@st.composite
def torsion_measures(draw):
    order = draw(st.sampled_from([2, 3, 4, 6, 8]))
    ks = draw(st.lists(st.integers(0, 7), min_size=1, max_size=3, unique=True))
    atoms = [(turns_angle(k % order, order), draw(atom_weights)) for k in ks]
    return measure(atoms=atoms)


@given(torsion_measures(), torsion_measures())
def test_convolution_commutative(m1, m2):
    assert convolve(m1, m2) == convolve(m2, m1)


@given(torsion_measures(), torsion_measures(), torsion_measures())
@settings(max_examples=30)
def test_convolution_associative(m1, m2, m3):
    lhs = convolve(convolve(m1, m2), m3)
    rhs = convolve(m1, convolve(m2, m3))
    for n in range(-8, 9):
        assert abs(complex(fourier_coefficient(lhs, n)) - complex(fourier_coefficient(rhs, n))) < 1e-9


@given(torsion_measures(), torsion_measures())
def test_tv_norm_submultiplicative(m1, m2):
    assert tv_norm(convolve(m1, m2)) <= tv_norm(m1) * tv_norm(m2) + 1e-9


@given(torsion_measures())
def test_involution_is_involutive(m):
    assert involution(involution(m)) == m


@given(torsion_measures(), st.integers(-6, 6), st.integers(-10, 10))
def test_shift_identity_exact_on_torsion(m, k, n):
    lhs = fourier_coefficient(shift_automorphism(m, k), n)
    rhs = fourier_coefficient(m, n - k)
    if wt_is_exact(lhs) and wt_is_exact(rhs):
        assert wt_eq(lhs, rhs)
    else:
        assert abs(complex(lhs) - complex(rhs)) < 1e-12


@given(torsion_measures(), st.integers(-12, 12))
def test_coefficient_bounded_by_tv_norm(m, n):
    assert abs(complex(fourier_coefficient(m, n))) <= tv_norm(m) + 1e-9


@given(torsion_measures(), torsion_measures(), st.integers(-4, 4))
def test_shift_is_an_algebra_automorphism(m1, m2, k):
    lhs = shift_automorphism(convolve(m1, m2), k)
    rhs = convolve(shift_automorphism(m1, k), shift_automorphism(m2, k))
    for n in range(-6, 7):
        a = complex(fourier_coefficient(lhs, n))
        b = complex(fourier_coefficient(rhs, n))
        assert abs(a - b) < 1e-12


@given(torsion_measures(), torsion_measures(), st.integers(-4, 4))
def test_shift_commutes_with_linear_combine(m1, m2, k):
    lhs = shift_automorphism(linear_combine(2, m1, -1j, m2), k)
    rhs = linear_combine(2, shift_automorphism(m1, k), -1j, shift_automorphism(m2, k))
    for n in range(-6, 7):
        assert abs(complex(fourier_coefficient(lhs, n)) - complex(fourier_coefficient(rhs, n))) < 1e-12
