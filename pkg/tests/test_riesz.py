from fractions import Fraction as F

import numpy as np
import pytest

from circlealg.angles import generator_angle, turns_angle
from circlealg.errors import InvalidBase, NotCheckable
from circlealg.measures import (
    convolve,
    dirac,
    fourier_coefficient,
    linear_combine,
    measure,
    tv_norm,
)
from circlealg.riesz import RieszSpec, riesz_partial, support_in_lattice


def fft_expansion_oracle(base, levels):
    """Recover the truncation's coefficients by FFT quadrature of the
    product density prod(1 + cos(base^k t)); independent of the
    combinatorial expansion."""
    max_freq = sum(base**k for k in range(1, levels + 1))
    n = 1
    while n < 4 * (max_freq + 1):
        n *= 2
    t = 2 * np.pi * np.arange(n) / n
    density = np.ones(n)
    for k in range(1, levels + 1):
        density *= 1 + np.cos(base**k * t)
    coeffs = np.fft.fft(density) / n
    table = {}
    for idx in range(n):
        freq = idx if idx <= n // 2 else idx - n
        if abs(coeffs[idx]) > 1e-9:
            table[freq] = coeffs[idx]
    return table


def test_level_one_expansion():
    m = riesz_partial(4, 1)
    assert dict(m.ac) == {0: 1, 4: F(1, 2), -4: F(1, 2)}


def test_level_two_coefficient_at_20():
    m = riesz_partial(4, 2)
    assert fourier_coefficient(m, 20) == F(1, 4)


@pytest.mark.parametrize("base,levels", [(4, 1), (4, 2), (4, 3), (3, 3), (5, 2)])
def test_expansion_matches_fft_oracle(base, levels):
    m = riesz_partial(base, levels)
    oracle = fft_expansion_oracle(base, levels)
    assert set(dict(m.ac)) == set(oracle)
    for n, c in m.ac:
        assert abs(complex(c) - oracle[n]) < 1e-9


@pytest.mark.parametrize("levels", range(1, 9))
def test_coefficient_count_and_mass(levels):
    m = riesz_partial(4, levels)
    assert len(m.ac) == 3**levels
    assert fourier_coefficient(m, 0) == 1
    assert max(abs(complex(c)) for _, c in m.ac) == 1.0


def test_invalid_base():
    with pytest.raises(InvalidBase):
        riesz_partial(2, 3)
    with pytest.raises(InvalidBase):
        RieszSpec(base=1, levels=2)


def test_riesz_spec_object():
    assert riesz_partial(RieszSpec(4, 2)) == riesz_partial(4, 2)


def test_support_in_lattice():
    m = riesz_partial(4, 5)
    assert support_in_lattice(m, 4)
    assert support_in_lattice(m, 2)
    assert not support_in_lattice(m, 8)
    assert support_in_lattice(measure(), 7)


def test_support_for_torsion_discrete():
    h = linear_combine(F(1, 2), dirac(0), F(1, 2), dirac(F(1, 2)))
    assert support_in_lattice(h, 2)  # transform (1,0,1,0,...) lives on 2Z
    assert not support_in_lattice(dirac(F(1, 2)), 2)


def test_support_not_checkable_for_generator_atoms():
    with pytest.raises(NotCheckable):
        support_in_lattice(dirac(generator_angle(1)), 2)


@pytest.mark.parametrize("levels", range(1, 7))
def test_annihilation_by_half_difference(levels):
    half_diff = linear_combine(F(1, 2), dirac(0), F(-1, 2), dirac(F(1, 2)))
    assert convolve(half_diff, riesz_partial(4, levels)).is_zero


@pytest.mark.parametrize("base", [3, 4, 5, 7])
def test_generalized_annihilation(base):
    alpha = turns_angle(1, base)
    half_diff = linear_combine(F(1, 2), dirac(0), F(-1, 2), dirac(alpha))
    assert convolve(half_diff, riesz_partial(base, 3)).is_zero


@pytest.mark.parametrize("levels", [1, 3, 5])
def test_positivity_and_unit_mass(levels):
    m = riesz_partial(4, levels)
    ts = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    vals = np.zeros_like(ts, dtype=complex)
    for n, c in m.ac:
        vals += complex(c) * np.exp(1j * n * ts)
    assert vals.real.min() >= -1e-9
    assert np.abs(vals.imag).max() < 1e-12
    assert abs(tv_norm(m) - 1.0) <= 1e-9


def test_truncations_stabilize():
    lower = dict(riesz_partial(4, 3).ac)
    higher = dict(riesz_partial(4, 4).ac)
    for n, c in lower.items():
        assert higher[n] == c
