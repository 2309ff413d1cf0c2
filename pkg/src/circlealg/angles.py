"""Exact points on the circle, measured in turns.

An angle is a rational number of turns plus an integer combination of
formal generators g1, g2, ...  Each generator stands for a real number
assumed rationally independent of 1 and of the other generators, so the
group arithmetic (combine, negate, torsion order) is exact.  Numeric
values enter only when an angle is evaluated to a unit complex number;
the default assignment sends gj to frac(sqrt(p_j)) for the j-th prime.
"""

import cmath
import math
import re
from dataclasses import dataclass

from sympy import prime

from .errors import MissingGeneratorValue, SerializationError
from .rationals import Rat, as_rat, format_rat, parse_rat, rat_mod1


@dataclass(frozen=True)
class Angle:
    """Canonical circle point: turns in [0,1), sorted nonzero generator terms."""

    turns: object  # exact rational
    gens: tuple = ()  # ((index, coeff), ...) sorted by index, coeff != 0

    def __post_init__(self):
        assert 0 <= self.turns < 1, "turns not reduced"

    @property
    def is_torsion(self) -> bool:
        return not self.gens

    def __repr__(self):
        return f"Angle({format_angle(self)!r})"


ZERO_ANGLE = Angle(Rat(0))


def _make_angle(turns, gen_map) -> Angle:
    gens = tuple(sorted((j, c) for j, c in gen_map.items() if c))
    return Angle(rat_mod1(turns), gens)


def turns_angle(value, denominator=None) -> Angle:
    """Angle at an exact rational number of turns."""
    t = Rat(value, denominator) if denominator is not None else as_rat(value)
    return Angle(rat_mod1(t))


def generator_angle(j: int, coeff: int = 1, turns=0) -> Angle:
    if j < 1:
        raise ValueError("generator indices start at 1")
    return _make_angle(as_rat(turns), {j: coeff})


def combine(k1: int, a1: Angle, k2: int, a2: Angle) -> Angle:
    """Canonical form of k1*a1 + k2*a2 modulo one turn; exact."""
    turns = k1 * a1.turns + k2 * a2.turns
    gen_map = {}
    for j, c in a1.gens:
        gen_map[j] = gen_map.get(j, 0) + k1 * c
    for j, c in a2.gens:
        gen_map[j] = gen_map.get(j, 0) + k2 * c
    return _make_angle(turns, gen_map)


def negate(a: Angle) -> Angle:
    return combine(-1, a, 0, ZERO_ANGLE)


def scale(k: int, a: Angle) -> Angle:
    return combine(k, a, 0, ZERO_ANGLE)


def torsion_order(a: Angle):
    """Smallest n >= 1 with n*a = 0, or None if a has generator terms."""
    if a.gens:
        return None
    return int(a.turns.denominator)


def angle_sort_key(a: Angle):
    return (a.turns, a.gens)


class _DefaultGeneratorValues:
    """gj -> frac(sqrt(p_j)), lazily computed and cached."""

    def __init__(self):
        self._cache = {}

    def __contains__(self, j):
        return isinstance(j, int) and j >= 1

    def __getitem__(self, j):
        v = self._cache.get(j)
        if v is None:
            if j not in self:
                raise KeyError(j)
            v = math.sqrt(prime(j)) % 1.0
            self._cache[j] = v
        return v

    def get(self, j, default=None):
        return self[j] if j in self else default


DEFAULT_GENERATOR_VALUES = _DefaultGeneratorValues()


def generator_values_or_default(values):
    return DEFAULT_GENERATOR_VALUES if values is None else values


def angle_value(a: Angle, generator_values=None) -> float:
    """Numeric value in turns, in [0, 1)."""
    values = generator_values_or_default(generator_values)
    g = 0.0
    for j, c in a.gens:
        if j not in values:
            raise MissingGeneratorValue(f"no value assigned to generator g{j}")
        g += c * values[j]
    return (float(a.turns) + g) % 1.0


def eval_unimodular(a: Angle, n: int, generator_values=None) -> complex:
    """exp(2*pi*i * n * a) with the argument reduced modulo one turn first.

    The rational part is reduced exactly before any float enters, so
    torsion angles evaluate to the IEEE-exact value of the reduced
    argument (e.g. half a turn gives exactly -1).
    """
    values = generator_values_or_default(generator_values)
    t = rat_mod1(n * a.turns)
    g = 0.0
    for j, c in a.gens:
        if j not in values:
            raise MissingGeneratorValue(f"no value assigned to generator g{j}")
        g += c * values[j]
    arg = (float(t) + (n * g) % 1.0) % 1.0
    if arg == 0.0:
        return complex(1.0, 0.0)
    if arg == 0.5:
        return complex(-1.0, 0.0)
    if arg == 0.25:
        return complex(0.0, 1.0)
    if arg == 0.75:
        return complex(0.0, -1.0)
    return cmath.exp(2j * cmath.pi * arg)


# -- text syntax ------------------------------------------------------
#
# "p/q" optionally followed by generator terms, e.g. "1/2", "1/3+2*g1",
# "0+1*g1-1*g2".  Canonical printing round-trips bit-exactly.

_TERM_RE = re.compile(r"([+-])\s*(?:(\d+)\s*\*\s*)?g(\d+)")
_HEAD_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)")


def format_angle(a: Angle) -> str:
    out = format_rat(a.turns)
    for j, c in a.gens:
        sign = "-" if c < 0 else "+"
        out += f"{sign}{abs(c)}*g{j}"
    return out


def parse_angle(text: str) -> Angle:
    m = _HEAD_RE.match(text)
    if not m:
        raise SerializationError(f"bad angle syntax: {text!r}")
    try:
        turns = parse_rat(m.group(1))
    except ValueError as exc:
        raise SerializationError(str(exc)) from exc
    pos = m.end()
    gen_map = {}
    for m in _TERM_RE.finditer(text, pos):
        if text[pos:m.start()].strip():
            raise SerializationError(f"bad angle syntax: {text!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        j = int(m.group(3))
        gen_map[j] = gen_map.get(j, 0) + c
        pos = m.end()
    if text[pos:].strip():
        raise SerializationError(f"bad angle syntax: {text!r}")
    return _make_angle(turns, gen_map)
