"""Annihilator polynomials and the atom-isolation iteration.

Given distinct unimodular points at angles alpha and beta, there is a
polynomial with nonnegative convex coefficient magnitudes vanishing at
the alpha point while attaining its coefficient-sum norm at the beta
point.  The construction: find the minimal N with 0 in the convex hull
of the powers of the difference root gamma = alpha - beta (largest
circular gap at most half a turn), certify it with either an antipodal
pair or an origin-covering triple, solve for the convex weights, and
twist by powers of the beta root.

Filtering a discrete measure by such a polynomial multiplies each atom
by the polynomial's value at that atom's root: the alpha atom dies, the
beta atom is preserved with the full norm, and nothing grows.  Iterating
over atoms isolates any chosen target Dirac in at most (atoms - 1)
steps.  Everything is exact cyclotomic arithmetic when the angle
differences are torsion of order <= 64; float otherwise.
"""

from dataclasses import dataclass

import numpy as np

from .angles import (
    Angle,
    ZERO_ANGLE,
    angle_value,
    combine,
    torsion_order,
)
from .cyclotomic import Cyclotomic
from .errors import (
    DegenerateEqualAngles,
    EmptyDiscretePart,
    NonDiscreteMeasure,
    TargetWeightZero,
)
from .measures import (
    EXACT_TORSION_CAP,
    Measure,
    linear_combine,
    measure,
    wt_abs,
    wt_inverse,
    wt_is_exact,
    wt_is_zero,
    wt_mul,
)
from .rationals import Rat, rat_mod1

MAX_HULL_INDEX = 1_000_000
_GAP_TOL = 1e-12


def _gamma_positions(gamma: Angle, count, generator_values=None):
    """Positions of n*gamma (n = 0..count) in turns; exact for torsion."""
    if gamma.is_torsion:
        return [rat_mod1(n * gamma.turns) for n in range(count + 1)]
    base = angle_value(gamma, generator_values)
    return [(n * base) % 1.0 for n in range(count + 1)]


def _max_gap(positions):
    ts = sorted(positions)
    worst = 1 + ts[0] - ts[-1]
    for a, b in zip(ts, ts[1:]):
        worst = max(worst, b - a)
    return worst


def minimal_hull_index(gamma: Angle, generator_values=None) -> int:
    """Smallest N with 0 in conv{exp(2*pi*i*n*gamma) : n = 0..N}.

    Uses the circular-gap criterion (0 lies in the closed hull iff the
    largest gap between consecutive points is at most half a turn);
    exact gap arithmetic for torsion gamma, 1e-12 tolerance otherwise.
    """
    if gamma == ZERO_ANGLE:
        raise DegenerateEqualAngles("gamma = 0: the two angles coincide")
    order = torsion_order(gamma)
    half = Rat(1, 2) if order else 0.5 + _GAP_TOL
    limit = (order - 1) if order else MAX_HULL_INDEX
    for n in range(1, limit + 1):
        positions = _gamma_positions(gamma, n, generator_values)
        if _max_gap(positions) <= half:
            return n
    raise RuntimeError(f"no hull index below {limit}; gamma too close to zero?")


def _find_antipodal(positions, exact):
    if exact:
        index = {t: i for i, t in enumerate(positions)}
        for i, t in enumerate(positions):
            j = index.get(rat_mod1(t + Rat(1, 2)))
            if j is not None and j != i:
                return (i, j)
        return None
    for i, ti in enumerate(positions):
        for j, tj in enumerate(positions):
            if j > i and abs(abs(ti - tj) - 0.5) <= _GAP_TOL:
                return (i, j)
    return None


def _circular_contains(lo, hi, t):
    # is t in the circular interval [lo, hi]?
    lo, hi, t = lo % 1, hi % 1, t % 1
    if lo <= hi:
        return lo <= t <= hi
    return t >= lo or t <= hi


def _circular_dist(a, b):
    d = abs(a - b) % 1
    return min(d, 1 - d)


def _find_triple(positions):
    """Indices (u, w, v) of points whose triangle contains the origin.

    u, v are the endpoints of the largest circular gap; a third point in
    [v - 1/2, u + 1/2] always exists when the hull criterion holds.
    """
    order = sorted(range(len(positions)), key=lambda i: positions[i])
    ts = [positions[i] for i in order]
    gaps = [(ts[(k + 1) % len(ts)] - ts[k]) % 1 for k in range(len(ts))]
    kmax = max(range(len(gaps)), key=lambda k: gaps[k])
    v_idx, u_idx = order[kmax], order[(kmax + 1) % len(order)]
    tv, tu = positions[v_idx], positions[u_idx]
    half = Rat(1, 2) if not isinstance(tv, float) else 0.5 + _GAP_TOL
    best = None
    for i, t in enumerate(positions):
        if i in (u_idx, v_idx):
            continue
        if _circular_contains(tv - half, tu + half, t):
            sep = min(_circular_dist(float(t), float(tu)), _circular_dist(float(t), float(tv)))
            if best is None or sep > best[1]:
                best = (i, sep)
    if best is None:
        raise RuntimeError("hull certificate not found (should be impossible)")
    return (u_idx, best[0], v_idx)


def _re_im(z: Cyclotomic):
    conj = z.conjugate()
    re = (z + conj) * Rat(1, 2)
    im = (z - conj) * Cyclotomic.root_of_unity(3, 4) * Rat(1, 2)
    return re, im


def _solve_triple_exact(roots, idx):
    """Exact convex weights for three unit roots whose hull contains 0."""
    zs = [roots[i] for i in idx]
    res = [_re_im(z) for z in zs]
    r = [p[0] for p in res]
    s = [p[1] for p in res]

    def det2(a, b, c, d):
        return a * d - b * c

    det = (
        r[0] * det2(s[1], s[2], Cyclotomic.one(), Cyclotomic.one())
        - r[1] * det2(s[0], s[2], Cyclotomic.one(), Cyclotomic.one())
        + r[2] * det2(s[0], s[1], Cyclotomic.one(), Cyclotomic.one())
    )
    # Cramer for rhs (0, 0, 1): cofactors of the bottom row
    d0 = det2(r[1], r[2], s[1], s[2])
    d1 = -det2(r[0], r[2], s[0], s[2])
    d2 = det2(r[0], r[1], s[0], s[1])
    inv = det.inverse()
    weights = [d0 * inv, d1 * inv, d2 * inv]
    check = weights[0] * zs[0] + weights[1] * zs[1] + weights[2] * zs[2]
    assert check.is_zero, "exact Caratheodory solve failed"
    assert (weights[0] + weights[1] + weights[2]) == 1
    for w in weights:
        assert complex(w).real > -1e-12 and abs(complex(w).imag) < 1e-12
    return weights


def _solve_triple_float(positions, idx):
    zs = [np.exp(2j * np.pi * float(positions[i])) for i in idx]
    mat = np.array(
        [[z.real for z in zs], [z.imag for z in zs], [1.0, 1.0, 1.0]]
    )
    sol = np.linalg.solve(mat, np.array([0.0, 0.0, 1.0]))
    assert sol.min() > -1e-9, f"negative convex weight: {sol}"
    sol = np.clip(sol, 0.0, None)
    return [float(x / sol.sum()) for x in sol]


@dataclass(frozen=True)
class AnnihilatorPolynomial:
    """f(z) = sum_j coefficients[j] z^j with f(alpha-point) = 0 and
    f(beta-point) = |f|_1 = sum of convex_weights = 1."""

    coefficients: tuple
    convex_weights: tuple
    hull_index: int
    alpha: Angle
    beta: Angle

    @property
    def one_norm(self) -> float:
        return float(sum(wt_abs(b) for b in self.coefficients))

    def evaluate(self, z: complex) -> complex:
        out = 0j
        for b in reversed(self.coefficients):
            out = out * z + complex(b)
        return out

    def evaluate_at_angle(self, tau: Angle, generator_values=None):
        """f(exp(2*pi*i*tau)) = sum_j a_j exp(2*pi*i*j*(tau - beta)).

        Exact cyclotomic value when tau - beta is torsion of order
        <= 64 and the weights are exact.
        """
        diff = combine(1, tau, -1, self.beta)
        order = torsion_order(diff)
        exact = (
            order is not None
            and order <= EXACT_TORSION_CAP
            and all(wt_is_exact(a) or wt_is_zero(a) for a in self.convex_weights)
        )
        if exact:
            total = Cyclotomic.zero()
            for j, a in enumerate(self.convex_weights):
                if wt_is_zero(a):
                    continue
                total = total + wt_mul(a, Cyclotomic.from_turns(j * diff.turns))
            return total
        from .angles import eval_unimodular

        total = 0j
        for j, a in enumerate(self.convex_weights):
            if wt_is_zero(a):
                continue
            total += complex(a) * eval_unimodular(diff, j, generator_values)
        return total


def annihilator_polynomial(
    alpha: Angle, beta: Angle, generator_values=None
) -> AnnihilatorPolynomial:
    """Construct the minimal-index annihilator for a pair of angles."""
    gamma = combine(1, alpha, -1, beta)
    if gamma == ZERO_ANGLE:
        raise DegenerateEqualAngles("alpha and beta coincide")
    n_hull = minimal_hull_index(gamma, generator_values)
    order = torsion_order(gamma)
    exact = order is not None and order <= EXACT_TORSION_CAP
    positions = _gamma_positions(gamma, n_hull, generator_values)
    pair = _find_antipodal(positions, exact)
    weights = [Rat(0) if exact else 0.0] * (n_hull + 1)
    if pair is not None:
        weights[pair[0]] = Rat(1, 2) if exact else 0.5
        weights[pair[1]] = Rat(1, 2) if exact else 0.5
    elif exact:
        roots = [Cyclotomic.from_turns(t) for t in positions]
        idx = _find_triple(positions)
        for i, w in zip(idx, _solve_triple_exact(roots, idx)):
            weights[i] = w
    else:
        idx = _find_triple(positions)
        for i, w in zip(idx, _solve_triple_float(positions, idx)):
            weights[i] = w
    beta_exact = (
        beta.is_torsion
        and int(beta.turns.denominator) <= EXACT_TORSION_CAP
        and exact
    )
    coeffs = []
    for j, a in enumerate(weights):
        if beta_exact:
            coeffs.append(wt_mul(_as_weight(a), Cyclotomic.from_turns(rat_mod1(-j * beta.turns))))
        else:
            from .angles import eval_unimodular

            coeffs.append(complex(_as_weight(a)) * eval_unimodular(beta, -j, generator_values))
    return AnnihilatorPolynomial(
        coefficients=tuple(coeffs),
        convex_weights=tuple(_as_weight(a) for a in weights),
        hull_index=n_hull,
        alpha=alpha,
        beta=beta,
    )


def _as_weight(a):
    if isinstance(a, Cyclotomic):
        return a
    if isinstance(a, float):
        return complex(a)
    return Cyclotomic.from_rational(a)


def apply_polynomial_filter(
    p: AnnihilatorPolynomial, m: Measure, generator_values=None
) -> Measure:
    """Multiply each atom's weight by f at that atom's root.

    Equals sum_j coefficients[j] * shift_automorphism(m, j); the direct
    per-atom form keeps the exact path exact.
    """
    if m.ac:
        raise NonDiscreteMeasure("polynomial filters act on discrete measures")
    atoms = []
    for a, w in m.atoms:
        mult = p.evaluate_at_angle(a, generator_values)
        atoms.append((a, wt_mul(w, mult)))
    return measure(atoms=atoms)


@dataclass(frozen=True)
class IsolationStep:
    eliminated_index: int
    eliminated_angle: Angle
    polynomial: AnnihilatorPolynomial
    measure_after: Measure
    tail_norm: float


@dataclass(frozen=True)
class IsolationTrace:
    target_angle: Angle
    steps: tuple
    result: Measure
    converged: bool


def isolate_atom(
    m: Measure, target_index: int, max_steps=None, generator_values=None
) -> IsolationTrace:
    """Normalize the target atom to weight 1, then repeatedly annihilate
    the largest remaining atom with an annihilator polynomial.

    Finite inputs converge in at most (atoms - 1) steps; on the exact
    torsion path each eliminated atom's weight is exactly zero, on the
    float path the residual (bounded by the lemma's 1e-10 certificate)
    is dropped and must stay below 1e-9.
    """
    if m.ac:
        raise NonDiscreteMeasure("isolation acts on discrete measures")
    if not m.atoms:
        raise EmptyDiscretePart("measure has no atoms")
    original_angles = [a for a, _ in m.atoms]
    target_angle = original_angles[target_index]
    target_weight = m.atoms[target_index][1]
    if wt_is_zero(target_weight):
        raise TargetWeightZero(f"target atom at {target_angle} has zero weight")
    current = linear_combine(wt_inverse(target_weight), m, 0, measure())
    if max_steps is None:
        max_steps = max(len(m.atoms) - 1, 0)
    steps = []
    for _ in range(max_steps):
        others = [(a, w) for a, w in current.atoms if a != target_angle]
        if not others:
            break
        alpha = max(others, key=lambda aw: wt_abs(aw[1]))[0]
        poly = annihilator_polynomial(alpha, target_angle, generator_values)
        filtered = apply_polynomial_filter(poly, current, generator_values)
        norm = poly.evaluate_at_angle(target_angle, generator_values)
        if not (wt_is_exact(norm) and norm == 1):
            filtered = linear_combine(wt_inverse(norm), filtered, 0, measure())
        residual = filtered.atom_weight(alpha)
        if residual is not None:
            mag = wt_abs(residual)
            if mag > 1e-9:
                raise ArithmeticError(f"filter failed to annihilate: |w| = {mag}")
            filtered = measure(
                atoms=[(a, w) for a, w in filtered.atoms if a != alpha]
            )
        current = filtered
        tail = sum(wt_abs(w) for a, w in current.atoms if a != target_angle)
        steps.append(
            IsolationStep(
                eliminated_index=original_angles.index(alpha),
                eliminated_angle=alpha,
                polynomial=poly,
                measure_after=current,
                tail_norm=float(tail),
            )
        )
    converged = all(a == target_angle for a, _ in current.atoms)
    return IsolationTrace(
        target_angle=target_angle,
        steps=tuple(steps),
        result=current,
        converged=converged,
    )
