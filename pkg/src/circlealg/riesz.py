"""Truncated Riesz products and support-lattice diagnostics.

The level-N truncation of prod(1 + cos(base^k t)) expands, exactly and
combinatorially, into the coefficient table

    coeff(sum eps_k base^k) = prod over eps_k != 0 of 1/2,

with eps ranging over {-1,0,1}^N.  base >= 3 keeps the signed sums
pairwise distinct (a dissociate frequency set), so the table has
exactly 3^N entries and mass 1 at frequency zero.
"""

from dataclasses import dataclass
from math import lcm

from .cyclotomic import Cyclotomic
from .errors import InvalidBase, NotCheckable
from .measures import Measure, fourier_coefficient, measure, wt_is_zero
from .rationals import Rat


@dataclass(frozen=True)
class RieszSpec:
    base: int
    levels: int

    def __post_init__(self):
        if self.base < 3:
            raise InvalidBase(
                f"base {self.base} < 3: signed power sums would collide"
            )
        if self.levels < 1:
            raise ValueError("levels must be >= 1")


def riesz_partial(base, levels=None) -> Measure:
    """Pure a.c. truncation of the lacunary Riesz product."""
    spec = base if isinstance(base, RieszSpec) else RieszSpec(int(base), int(levels))
    coeffs = {0: Rat(1)}
    for k in range(1, spec.levels + 1):
        f = spec.base**k
        nxt = dict(coeffs)
        for n, c in coeffs.items():
            half = c / 2
            nxt[n + f] = nxt.get(n + f, Rat(0)) + half
            nxt[n - f] = nxt.get(n - f, Rat(0)) + half
        coeffs = nxt
    assert len(coeffs) == 3**spec.levels
    return measure(ac={n: Cyclotomic.from_rational(c) for n, c in coeffs.items()})


def support_in_lattice(m: Measure, modulus: int) -> bool:
    """True iff the transform is supported in modulus*Z.

    For the a.c. table this is a divisibility scan.  A torsion discrete
    part has a periodic transform, so its support constraint is checked
    on one full period; measures with non-torsion atoms have no
    meaningful support statement and raise NotCheckable.
    """
    modulus = int(modulus)
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    for n, _ in m.ac:
        if n % modulus:
            return False
    if not m.atoms:
        return True
    period = m.torsion_period()
    if period is None:
        raise NotCheckable("support statement undefined for non-torsion atoms")
    span = lcm(period, modulus)
    disc = m.discrete_part()
    for r in range(span):
        if r % modulus and not _coeff_is_zero(disc, r):
            return False
    return True


def _coeff_is_zero(m: Measure, n: int) -> bool:
    c = fourier_coefficient(m, n)
    if wt_is_zero(c):
        return True
    return abs(complex(c)) <= 1e-12
