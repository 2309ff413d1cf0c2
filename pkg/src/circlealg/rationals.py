"""Exact rational scalars.

gmpy2.mpq is used when available (much faster than fractions.Fraction
for the reduction loops in the cyclotomic arithmetic); the interface is
restricted to what both types share.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency in practice
    Rat = Fraction

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)
_RAT_TYPE = type(RAT_ZERO)


def is_rat(value) -> bool:
    return isinstance(value, (_RAT_TYPE, Fraction, int))


def as_rat(value):
    """Coerce int/str/Fraction/Rat to Rat.  Floats are rejected: callers
    must decide explicitly whether a float is exact."""
    if isinstance(value, _RAT_TYPE):
        return value
    if isinstance(value, (int, str)):
        return Rat(value)
    if isinstance(value, Fraction):
        return Rat(value.numerator, value.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


def rat_mod1(value):
    """Reduce into [0, 1)."""
    return value % 1


def format_rat(value) -> str:
    return str(value)


def parse_rat(text: str):
    try:
        return Rat(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal: {text!r}") from exc
