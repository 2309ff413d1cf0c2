"""Hybrid measures on the circle and their convolution algebra.

A measure is a finite sum of weighted Dirac atoms at exact angles plus
an absolutely continuous part given by a finite Fourier coefficient
table (a trigonometric-polynomial density).  The stored table *is* the
Fourier-Stieltjes transform of the a.c. part, and the convention
throughout is

    coeff(mu, n) = integral of exp(-i*n*t) d mu(t).

Atom positions combine exactly; weights are exact cyclotomic numbers
whenever they were built from rationals, so identities such as
(d0 + d_pi)/2 * (d0 - d_pi)/2 = 0 hold with no epsilon anywhere.
Weights become ordinary complex floats as soon as a float enters.  Zero
pruning is by exact zero only.
"""

import cmath
from math import lcm

import numpy as np

from .angles import (
    Angle,
    angle_sort_key,
    combine,
    eval_unimodular,
    generator_values_or_default,
    negate,
    turns_angle,
)
from .cyclotomic import Cyclotomic
from .rationals import Rat, is_rat, rat_mod1

# exact root-of-unity evaluation is used up to this torsion order
EXACT_TORSION_CAP = 64
# guard against pathological order growth when weights are themselves roots
_ORDER_SAFETY_CAP = 512


# -- weights ----------------------------------------------------------

def as_weight(value):
    """Coerce to a weight: exact rationals become Cyclotomic, floats stay complex."""
    if isinstance(value, Cyclotomic):
        return value
    if is_rat(value):
        return Cyclotomic.from_rational(value)
    if isinstance(value, (float, complex)):
        return complex(value)
    raise TypeError(f"cannot use {value!r} as a weight")


def wt_is_exact(w) -> bool:
    return isinstance(w, Cyclotomic)


def wt_is_zero(w) -> bool:
    return w.is_zero if isinstance(w, Cyclotomic) else w == 0


def wt_add(a, b):
    if isinstance(a, Cyclotomic) and isinstance(b, Cyclotomic):
        return a + b
    return complex(a) + complex(b)


def wt_mul(a, b):
    if isinstance(a, Cyclotomic) and isinstance(b, Cyclotomic):
        return a * b
    return complex(a) * complex(b)


def wt_neg(a):
    return -a if isinstance(a, Cyclotomic) else -complex(a)


def wt_conj(a):
    return a.conjugate() if isinstance(a, Cyclotomic) else complex(a).conjugate()


def wt_abs(a) -> float:
    return abs(a)


def wt_eq(a, b) -> bool:
    if isinstance(a, Cyclotomic) and isinstance(b, Cyclotomic):
        return a == b
    return complex(a) == complex(b)


def wt_inverse(a):
    if isinstance(a, Cyclotomic):
        return a.inverse()
    return 1.0 / complex(a)


# -- the measure type -------------------------------------------------

class Measure:
    """Immutable hybrid measure: sorted atom list plus a.c. coefficient table."""

    __slots__ = ("atoms", "ac", "_fcache")

    def __init__(self, atoms=(), ac=()):
        # trusted constructor; use measure()/dirac()/... to build values
        self.atoms = atoms
        self.ac = ac
        self._fcache = {}

    # structure ........................................................

    @property
    def is_zero(self) -> bool:
        return not self.atoms and not self.ac

    @property
    def is_discrete(self) -> bool:
        return not self.ac

    @property
    def has_atoms(self) -> bool:
        return bool(self.atoms)

    def ac_table(self) -> dict:
        return dict(self.ac)

    def ac_support(self):
        return tuple(n for n, _ in self.ac)

    def discrete_part(self) -> "Measure":
        return Measure(self.atoms, ())

    def ac_part(self) -> "Measure":
        return Measure((), self.ac)

    def atom_weight(self, angle: Angle):
        for a, w in self.atoms:
            if a == angle:
                return w
        return None

    def torsion_period(self):
        """lcm of atom torsion orders, or None if some atom has generator terms."""
        period = 1
        for a, _ in self.atoms:
            if a.gens:
                return None
            period = lcm(period, int(a.turns.denominator))
        return period

    # operators (sugar over linear_combine / convolve) ................

    def __add__(self, other):
        return linear_combine(1, self, 1, other)

    def __sub__(self, other):
        return linear_combine(1, self, -1, other)

    def __mul__(self, scalar):
        return linear_combine(scalar, self, 0, ZERO_MEASURE)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        if len(self.atoms) != len(other.atoms) or len(self.ac) != len(other.ac):
            return False
        for (a1, w1), (a2, w2) in zip(self.atoms, other.atoms):
            if a1 != a2 or not wt_eq(w1, w2):
                return False
        for (n1, c1), (n2, c2) in zip(self.ac, other.ac):
            if n1 != n2 or not wt_eq(c1, c2):
                return False
        return True

    def __repr__(self):
        return f"Measure(atoms={len(self.atoms)}, ac_support={len(self.ac)})"


def _as_angle(x) -> Angle:
    if isinstance(x, Angle):
        return x
    if isinstance(x, str):
        from .angles import parse_angle

        return parse_angle(x)
    return turns_angle(x)


def measure(atoms=(), ac=()) -> Measure:
    """Build a measure, merging duplicate positions/frequencies and
    pruning exact zeros."""
    acc = {}
    for pos, w in atoms:
        a = _as_angle(pos)
        w = as_weight(w)
        if a in acc:
            acc[a] = wt_add(acc[a], w)
        else:
            acc[a] = w
    atom_list = tuple(
        (a, acc[a]) for a in sorted(acc, key=angle_sort_key) if not wt_is_zero(acc[a])
    )
    table = {}
    items = ac.items() if isinstance(ac, dict) else ac
    for n, c in items:
        c = as_weight(c)
        n = int(n)
        table[n] = wt_add(table[n], c) if n in table else c
    ac_list = tuple((n, table[n]) for n in sorted(table) if not wt_is_zero(table[n]))
    return Measure(atom_list, ac_list)


ZERO_MEASURE = Measure()


def zero_measure() -> Measure:
    return ZERO_MEASURE


def dirac(angle) -> Measure:
    """Unit mass at the given angle; d0 is the unit of convolution."""
    return measure(atoms=[(angle, 1)])


def haar_cyclic(order: int) -> Measure:
    """Normalized Haar measure of the cyclic subgroup {j/order}."""
    if order < 1:
        raise ValueError("order must be >= 1")
    w = Rat(1, order)
    return measure(atoms=[(turns_angle(j, order), w) for j in range(order)])


def linear_combine(c1, m1: Measure, c2, m2: Measure) -> Measure:
    c1 = as_weight(c1)
    c2 = as_weight(c2)
    atoms = []
    if not wt_is_zero(c1):
        atoms += [(a, wt_mul(c1, w)) for a, w in m1.atoms]
    if not wt_is_zero(c2):
        atoms += [(a, wt_mul(c2, w)) for a, w in m2.atoms]
    ac = []
    if not wt_is_zero(c1):
        ac += [(n, wt_mul(c1, c)) for n, c in m1.ac]
    if not wt_is_zero(c2):
        ac += [(n, wt_mul(c2, c)) for n, c in m2.ac]
    return measure(atoms=atoms, ac=ac)


def involution(m: Measure) -> Measure:
    """The *-involution mu*(E) = conj(mu(-E)): weights conjugated and
    positions negated, density conjugated-and-reflected; satisfies
    coeff(mu*, n) = conj(coeff(mu, n)) for every n."""
    atoms = [(negate(a), wt_conj(w)) for a, w in m.atoms]
    ac = [(n, wt_conj(c)) for n, c in m.ac]
    return measure(atoms=atoms, ac=ac)


# -- Fourier-Stieltjes coefficients -----------------------------------

def _exact_eligible(m: Measure) -> bool:
    period = 1
    worst = 1
    for a, w in m.atoms:
        if not wt_is_exact(w):
            return False
        period = lcm(period, int(a.turns.denominator))
        worst = lcm(worst, w.order)
    if period > EXACT_TORSION_CAP:
        return False
    return lcm(worst, period) <= _ORDER_SAFETY_CAP


def _discrete_symbol(m: Measure, n: int):
    """Exact transform of the discrete part at frequency n, as a map

        generator-monomial -> Cyclotomic

    where the key lists (index, power) for exp(2*pi*i*power*g_index)
    factors.  Empty map means exactly zero; a bare () key means the
    value is an honest cyclotomic number.  Returns None when the exact
    path does not apply (float weights or torsion order too large).
    """
    if not _exact_eligible(m):
        return None
    out = {}
    for a, w in m.atoms:
        key = tuple((j, -n * c) for j, c in a.gens) if n else ()
        root = Cyclotomic.from_turns(rat_mod1(-n * a.turns))
        term = wt_mul(w, root)
        if key in out:
            out[key] = out[key] + term
        else:
            out[key] = term
    return {k: v for k, v in out.items() if not v.is_zero}


def _eval_symbol(symbol, values) -> complex:
    total = 0j
    for key in sorted(symbol):
        z = complex(symbol[key])
        if key:
            arg = 0.0
            for j, p in key:
                arg += p * values[j]
            z *= cmath.exp(2j * cmath.pi * (arg % 1.0))
        total += z
    return total


def _discrete_fourier(m: Measure, n: int, values):
    """Transform of the discrete part at n: Cyclotomic when exact, else complex."""
    symbol = _discrete_symbol(m, n)
    if symbol is not None:
        if not symbol:
            return Cyclotomic.zero()
        if len(symbol) == 1 and () in symbol:
            return symbol[()]
        return _eval_symbol(symbol, generator_values_or_default(values))
    total = 0j
    for a, w in m.atoms:
        total += complex(w) * eval_unimodular(a, -n, values)
    return total


def fourier_coefficient(m: Measure, n: int, generator_values=None):
    """n-th Fourier-Stieltjes coefficient.

    Exact (a Cyclotomic) when every atom is torsion of order <= 64 with
    exact weights and the a.c. coefficient at n is exact; an ordinary
    complex number otherwise.
    """
    n = int(n)
    cache_ok = generator_values is None
    if cache_ok:
        period = m.torsion_period()
        key = n % period if period else n
        hit = m._fcache.get(key)
        if hit is None:
            hit = _discrete_fourier(m, key, None)
            m._fcache[key] = hit
        disc = hit
    else:
        disc = _discrete_fourier(m, n, generator_values)
    ac = dict(m.ac).get(n)
    if ac is None:
        return disc
    if isinstance(disc, Cyclotomic) and disc.is_zero:
        return ac
    return wt_add(disc, ac)


def fourier_coefficient_samples(m: Measure, ns, generator_values=None) -> np.ndarray:
    """Vectorized transform samples over an array of frequencies.

    Per atom, the rational part of the argument is reduced exactly via
    the residue class of n before any float enters; generator parts are
    reduced in floats.  Matches fourier_coefficient to ~1e-13.
    """
    values = generator_values_or_default(generator_values)
    ns = np.asarray(ns, dtype=np.int64)
    out = np.zeros(len(ns), dtype=complex)
    for a, w in m.atoms:
        q = int(a.turns.denominator)
        residue_roots = np.array(
            [cmath.exp(-2j * cmath.pi * float(rat_mod1(r * a.turns))) for r in range(q)]
        )
        factor = residue_roots[np.mod(ns, q)]
        if a.gens:
            g = 0.0
            for j, c in a.gens:
                if j not in values:
                    from .errors import MissingGeneratorValue

                    raise MissingGeneratorValue(f"no value assigned to generator g{j}")
                g += c * values[j]
            factor = factor * np.exp(-2j * np.pi * (np.mod(ns * g, 1.0)))
        out += complex(w) * factor
    for n, c in m.ac:
        out[ns == n] += complex(c)
    return out


# -- total variation --------------------------------------------------

def _density_values(ac, ts):
    vals = np.zeros(len(ts), dtype=complex)
    for n, c in ac:
        vals += complex(c) * np.exp(1j * n * ts)
    return vals


def tv_norm(m: Measure, generator_values=None) -> float:
    """Sum of atom weight moduli plus the L1 norm of the density part."""
    total = 0.0
    for _, w in m.atoms:
        total += wt_abs(w)
    if not m.ac:
        return total
    scale = sum(wt_abs(c) for _, c in m.ac)
    ts = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    vals = _density_values(m.ac, ts)
    tol = 1e-9 * max(scale, 1.0)
    if np.abs(vals.imag).max() <= tol and vals.real.min() >= -tol:
        # nonnegative density: its L1 mass is the coefficient at zero
        c0 = dict(m.ac).get(0)
        total += float(complex(c0).real) if c0 is not None else 0.0
        return total
    total += _density_l1(m.ac)
    return total


def _density_l1(ac) -> float:
    from scipy.integrate import quad

    max_freq = max(abs(n) for n, _ in ac)
    coeffs = [(n, complex(c)) for n, c in ac]

    def density_abs(t):
        return abs(sum(c * cmath.exp(1j * n * t) for n, c in coeffs))

    panels = max(8, min(512, 4 * max_freq))
    edges = np.linspace(0.0, 2.0 * np.pi, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, _ = quad(density_abs, a, b, limit=60, epsabs=1e-12, epsrel=1e-10)
        total += val
    return total / (2.0 * np.pi)


# -- convolution and the shift automorphisms ---------------------------

def convolve(m1: Measure, m2: Measure, generator_values=None) -> Measure:
    """Convolution product.  Discrete*discrete is exact atom arithmetic;
    a.c. coefficients multiply frequency-wise, with the discrete factor
    contributing its transform at each stored frequency (exact on the
    torsion path, numeric otherwise)."""
    atoms = {}
    for a1, w1 in m1.atoms:
        for a2, w2 in m2.atoms:
            pos = combine(1, a1, 1, a2)
            w = wt_mul(w1, w2)
            atoms[pos] = wt_add(atoms[pos], w) if pos in atoms else w
    ac = []
    t1 = dict(m1.ac)
    t2 = dict(m2.ac)
    for n, c in t1.items():
        if n in t2:
            ac.append((n, wt_mul(c, t2[n])))
    if m1.ac and m2.atoms:
        for n, c in m1.ac:
            ac.append((n, wt_mul(c, _discrete_fourier(m2, n, generator_values))))
    if m2.ac and m1.atoms:
        for n, c in m2.ac:
            ac.append((n, wt_mul(c, _discrete_fourier(m1, n, generator_values))))
    return measure(atoms=atoms.items(), ac=ac)


def shift_automorphism(m: Measure, k: int, generator_values=None) -> Measure:
    """Density twist by exp(i*k*t): atom weights pick up the unimodular
    factor exp(2*pi*i*k*position) and the coefficient table shifts so
    that coeff(result, n) = coeff(m, n - k)."""
    k = int(k)
    if k == 0:
        return m
    atoms = []
    for a, w in m.atoms:
        if not a.gens and wt_is_exact(w) and int(a.turns.denominator) <= EXACT_TORSION_CAP:
            mult = Cyclotomic.from_turns(rat_mod1(k * a.turns))
            atoms.append((a, wt_mul(w, mult)))
        else:
            atoms.append((a, complex(w) * eval_unimodular(a, k, generator_values)))
    ac = [(n + k, c) for n, c in m.ac]
    return measure(atoms=atoms, ac=ac)
