"""Seeded random measure generators for scenarios and tests.

All randomness flows through numpy Generators derived from an integer
seed, so every corpus is reproducible.  Torsion corpora keep the lcm of
the atom orders small enough for the exact cyclotomic path.
"""

import numpy as np

from .angles import generator_angle, turns_angle
from .cyclotomic import Cyclotomic
from .measures import Measure, measure
from .rationals import Rat

TORSION_ORDERS = (2, 3, 4, 6, 8, 12, 24)


def rng_from_seed(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_gaussian_rational(rng, max_num=3, max_den=4) -> Cyclotomic:
    """Nonzero Gaussian rational with small numerators."""
    while True:
        den = int(rng.integers(1, max_den + 1))
        re = int(rng.integers(-max_num, max_num + 1))
        im = int(rng.integers(-max_num, max_num + 1))
        if re or im:
            return Cyclotomic.gaussian(Rat(re, den), Rat(im, den))


def random_complex(rng, scale=1.0) -> complex:
    return complex(rng.normal(0, scale), rng.normal(0, scale))


def random_torsion_measure(rng, max_atoms=6, order=None, exact=True) -> Measure:
    """Discrete measure supported on a single cyclic group."""
    if order is None:
        order = int(rng.choice(TORSION_ORDERS))
    count = int(rng.integers(1, min(max_atoms, order) + 1))
    residues = rng.choice(order, size=count, replace=False)
    atoms = []
    for r in residues:
        w = random_gaussian_rational(rng) if exact else random_complex(rng)
        atoms.append((turns_angle(int(r), order), w))
    return measure(atoms=atoms)


def random_generator_measure(rng, max_atoms=4, n_gens=2, exact=True) -> Measure:
    """Discrete measure with independent-generator positions, possibly
    offset by torsion."""
    count = int(rng.integers(1, max_atoms + 1))
    atoms = []
    seen = set()
    for _ in range(count):
        j = int(rng.integers(1, n_gens + 1))
        c = int(rng.integers(1, 3))
        den = int(rng.choice((1, 2, 3, 4))) if rng.random() < 0.5 else 1
        num = int(rng.integers(0, den))
        from .angles import combine

        pos = combine(1, generator_angle(j, c), 1, turns_angle(num, den))
        if pos in seen:
            continue
        seen.add(pos)
        w = random_gaussian_rational(rng) if exact else random_complex(rng)
        atoms.append((pos, w))
    if not atoms:
        atoms = [(generator_angle(1), Cyclotomic.from_rational(1))]
    return measure(atoms=atoms)


def random_trig_poly(rng, max_freq=6, max_terms=4, exact=True) -> Measure:
    """Pure a.c. measure with a small symmetric-ish support."""
    count = int(rng.integers(1, max_terms + 1))
    freqs = rng.choice(np.arange(-max_freq, max_freq + 1), size=count, replace=False)
    ac = {}
    for n in freqs:
        ac[int(n)] = (
            random_gaussian_rational(rng) if exact else random_complex(rng, 0.5)
        )
    return measure(ac=ac)


def random_hybrid_torsion_measure(rng, max_atoms=5, order=None) -> Measure:
    """Torsion atoms plus a small exact a.c. table (possibly empty)."""
    disc = random_torsion_measure(rng, max_atoms=max_atoms, order=order)
    if rng.random() < 0.7:
        return disc + random_trig_poly(rng, max_freq=8, max_terms=3)
    return disc


def random_measure(rng, exact=True) -> Measure:
    """Grab-bag of representable measures for broad property tests."""
    kind = rng.integers(0, 4)
    if kind == 0:
        return random_torsion_measure(rng, exact=exact)
    if kind == 1:
        return random_generator_measure(rng, exact=exact)
    if kind == 2:
        return random_trig_poly(rng, exact=exact)
    return random_torsion_measure(rng, exact=exact) + random_trig_poly(
        rng, max_freq=5, max_terms=2, exact=exact
    )
