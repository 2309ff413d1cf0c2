"""Exact arithmetic with roots of unity.

A value is stored as an element of Q[x]/Phi_n(x) in the power basis
1, x, ..., x^(phi(n)-1), where x stands for exp(2*pi*i/n).  Reduction
modulo the cyclotomic polynomial makes the representation unique, so
equality, zero tests and conjugation are exact.  This is the splitting
table behind every "exactly zero" identity in the package: sums of
roots of unity with rational (or Gaussian-rational) coefficients either
cancel to the zero vector or they do not.

Orders are mixed freely; binary operations lift both operands into the
compound field Q(zeta_lcm).  Values that turn out to be rational are
demoted to order 1 so that plain rational weights stay cheap.
"""

import cmath
from math import gcd, lcm

from sympy import cyclotomic_poly, totient, Symbol

from .rationals import Rat, as_rat, is_rat, rat_mod1

_X = Symbol("x")
_TABLES = {}


def _field_tables(order):
    """(phi, reduction rows, complex roots) for Q(zeta_order).

    rows[t] expresses x^(phi+t) in the power basis as a sparse tuple of
    (basis index, integer coefficient) pairs; entries are fully reduced,
    so reduction never cascades.
    """
    tab = _TABLES.get(order)
    if tab is None:
        phi = int(totient(order))
        poly = cyclotomic_poly(order, _X, polys=True)
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        assert len(coeffs) == phi + 1 and coeffs[-1] == 1
        rows = []
        if order > phi:
            cur = [-c for c in coeffs[:phi]]
            first = tuple(cur)
            rows.append(first)
            for _ in range(1, order - phi):
                nxt = [0] + cur[: phi - 1]
                top = cur[phi - 1]
                if top:
                    for j, r in enumerate(first):
                        if r:
                            nxt[j] += top * r
                cur = nxt
                rows.append(tuple(cur))
        sparse_rows = tuple(
            tuple((j, r) for j, r in enumerate(row) if r) for row in rows
        )
        roots = tuple(cmath.exp(2j * cmath.pi * k / order) for k in range(order))
        tab = (phi, sparse_rows, roots)
        _TABLES[order] = tab
    return tab


class Cyclotomic:
    """Exact element of a cyclotomic field."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        # trusted constructor: coeffs must already be canonical
        self.order = order
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(value) -> "Cyclotomic":
        return Cyclotomic(1, (as_rat(value),))

    @staticmethod
    def zero() -> "Cyclotomic":
        return _ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _ONE

    @staticmethod
    def root_of_unity(numerator, denominator=1) -> "Cyclotomic":
        """exp(2*pi*i * numerator/denominator), exactly."""
        t = rat_mod1(Rat(numerator, denominator))
        order = int(t.denominator)
        return _from_exponents(order, {int(t.numerator): Rat(1)})

    @staticmethod
    def from_turns(turns) -> "Cyclotomic":
        """exp(2*pi*i*turns) for an exact rational number of turns."""
        t = rat_mod1(as_rat(turns))
        return _from_exponents(int(t.denominator), {int(t.numerator): Rat(1)})

    @staticmethod
    def gaussian(re, im) -> "Cyclotomic":
        re = as_rat(re)
        im = as_rat(im)
        if not im:
            return Cyclotomic(1, (re,))
        return _from_exponents(4, {0: re, 1: im})

    @staticmethod
    def from_exponent_sum(order, mapping) -> "Cyclotomic":
        """sum of coeff * zeta_order^exp over mapping items."""
        return _from_exponents(order, {int(e) % order: as_rat(c) for e, c in mapping.items()})

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return self.order == 1

    def rational_value(self):
        if self.order != 1:
            raise ValueError("not a rational value")
        return self.coeffs[0]

    def gaussian_parts(self):
        """(re, im) as exact rationals, or None if not Gaussian rational."""
        if self.order == 1:
            return (self.coeffs[0], Rat(0))
        conj = self.conjugate()
        re2 = self + conj
        im2 = (self - conj) * Cyclotomic.root_of_unity(3, 4)  # (z - conj z) * (-i)
        if re2.is_rational and im2.is_rational:
            return (re2.coeffs[0] / 2, im2.coeffs[0] / 2)
        return None

    def lift(self, order) -> "Cyclotomic":
        """Re-express in Q(zeta_order); result always has exactly that order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("cannot lift to a non-multiple order")
        step = order // self.order
        el = _from_exponents(
            order, {j * step: c for j, c in enumerate(self.coeffs) if c}
        )
        if el.order != order:  # demoted to a rational: pad back out
            phi = _field_tables(order)[0]
            el = Cyclotomic(order, (el.coeffs[0],) + (Rat(0),) * (phi - 1))
        return el

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) + other
        n = lcm(self.order, other.order)
        a, b = self.lift(n), other.lift(n)
        return _from_basis(n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) - other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return other - complex(self)
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) * other
        if other.order == 1:
            c = other.coeffs[0]
            if not c:
                return _ZERO
            return Cyclotomic(self.order, tuple(x * c for x in self.coeffs))
        if self.order == 1:
            return other * self
        n = lcm(self.order, other.order)
        a, b = self.lift(n), other.lift(n)
        acc = {}
        for i, ci in enumerate(a.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(b.coeffs):
                if not cj:
                    continue
                k = i + j
                if k >= n:
                    k -= n
                acc[k] = acc.get(k, Rat(0)) + ci * cj
        return _from_exponents(n, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) / other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return other / complex(self)
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conjugate(self) -> "Cyclotomic":
        if self.order == 1:
            return self
        n = self.order
        return _from_exponents(
            n, {(n - j) % n: c for j, c in enumerate(self.coeffs) if c}
        )

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via a linear solve over the power basis."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.order == 1:
            return Cyclotomic(1, (1 / self.coeffs[0],))
        n = self.order
        phi, _, _ = _field_tables(n)
        cols = []
        for j in range(phi):
            shifted = _from_exponents(
                n, {(i + j) % n: c for i, c in enumerate(self.coeffs) if c}
            ).lift(n)
            cols.append(shifted.coeffs)
        # solve M a = e0 where M[i][j] = cols[j][i]
        mat = [[cols[j][i] for j in range(phi)] + [Rat(1 if i == 0 else 0)] for i in range(phi)]
        sol = _solve_rational(mat, phi)
        return _from_basis(n, tuple(sol))

    # -- numeric / comparison -----------------------------------------

    def __complex__(self) -> complex:
        _, _, roots = _field_tables(self.order)
        out = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                out += float(c) * roots[j]
        return out

    def __abs__(self) -> float:
        m2 = self * self.conjugate()
        if m2.is_rational:
            return float(m2.coeffs[0]) ** 0.5
        return abs(complex(self))

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            n = lcm(self.order, other.order)
            return self.lift(n).coeffs == other.lift(n).coeffs
        if is_rat(other):
            return self.is_rational and self.coeffs[0] == as_rat(other)
        if isinstance(other, (float, complex)):
            return complex(self) == complex(other)
        return NotImplemented

    def __repr__(self):
        if self.order == 1:
            return f"Cyclotomic({self.coeffs[0]})"
        terms = [f"{c}*z{self.order}^{j}" for j, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"


def _coerce(value):
    if isinstance(value, Cyclotomic):
        return value
    if is_rat(value):
        return Cyclotomic.from_rational(value)
    if isinstance(value, (float, complex)):
        return complex(value)
    return NotImplemented


def _from_basis(order, coeffs) -> Cyclotomic:
    if order != 1 and not any(coeffs[1:]):
        return Cyclotomic(1, (coeffs[0],))
    return Cyclotomic(order, coeffs)


def _from_exponents(order, mapping) -> Cyclotomic:
    """Canonical element from {exponent: rational coefficient}.

    Clears denominators so the reduction loop runs on plain integers.
    """
    if order == 1:
        total = Rat(0)
        for c in mapping.values():
            total += c
        return Cyclotomic(1, (total,))
    phi, rows, _ = _field_tables(order)
    den = 1
    for c in mapping.values():
        d = int(c.denominator)
        den = den * d // gcd(den, d)
    nums = [0] * order
    for e, c in mapping.items():
        nums[e] += int(c * den)
    out = nums[:phi]
    for t in range(order - phi):
        c = nums[phi + t]
        if c:
            for j, r in rows[t]:
                out[j] += c * r
    return _from_basis(order, tuple(Rat(v, den) for v in out))


def _solve_rational(mat, size):
    """Gaussian elimination on an augmented rational matrix; one RHS column."""
    for col in range(size):
        piv = next((r for r in range(col, size) if mat[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for r in range(size):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[r][size] for r in range(size)]


_ZERO = Cyclotomic(1, (Rat(0),))
_ONE = Cyclotomic(1, (Rat(1),))
