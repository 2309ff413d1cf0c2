"""Spectra of representable measures.

Two computable character families cover everything this package can
represent.  Integer characters n give the Fourier orbit, whose closure
decomposes by residue class modulo the torsion period into torus-coset
images (Kronecker equidistribution supplies density in the generator
directions).  Characters of the discrete atom group are parametrized
exactly: the relation lattice of the atom positions is computed by
integer linear algebra, and its Smith normal form labels the character
variety as finitely many torsion labels times a free torus.  The
spectrum of a hybrid measure is the union of the orbit closure and the
discrete-part variety values; for a purely discrete measure the variety
alone already contains the orbit closure.

A brute-force oracle for all-torsion measures (eigenvalues of the
convolution operator on the cyclic group algebra) and the finite-group
functional calculus round out the module.
"""

import cmath
import math
from dataclasses import dataclass
from itertools import product
from math import lcm

import numpy as np

from .angles import turns_angle
from .cyclotomic import Cyclotomic
from .errors import (
    DomainViolation,
    EmptyDiscretePart,
    GroupTooLarge,
    NonDiscreteMeasure,
    NonTorsionAtom,
)
from .intlattice import hnf_row_basis, kernel_rows, smith_decomposition
from .measures import (
    EXACT_TORSION_CAP,
    Measure,
    fourier_coefficient,
    measure,
    wt_mul,
)
from .rationals import Rat, rat_mod1
from .spectrumset import (
    FiniteCell,
    SpectrumSet,
    cell_point_distance,
    hausdorff_distance,
    make_torus_cell,
    normalize_cells,
    sets_structural_equal,
)

LABEL_CAP = 65536
ORACLE_GROUP_CAP = 4096


def _unit_root(turns) -> complex:
    """exp(2*pi*i*turns) for an exact rational, with exact quarter turns."""
    t = rat_mod1(turns)
    if t == 0:
        return 1.0 + 0j
    if 2 * t == 1:
        return -1.0 + 0j
    if 4 * t == 1:
        return 1j
    if 4 * t == 3:
        return -1j
    return cmath.exp(2j * cmath.pi * float(t))


def _root_weight(turns):
    """exp(2*pi*i*turns) as an exact cyclotomic when the order is small.

    Beyond the exact-torsion cap the float root is used; cells then
    carry float coefficients, which is all the large-group oracle
    comparisons need."""
    t = rat_mod1(turns)
    if int(t.denominator) <= EXACT_TORSION_CAP:
        return Cyclotomic.from_turns(t)
    return _unit_root(t)


# -- character structure ------------------------------------------------

@dataclass(frozen=True)
class CharacterStructure:
    """Exact description of the character variety of an atom group."""

    atom_angles: tuple
    relation_basis: tuple   # canonical rows m with sum m_k * angle_k = 0 mod 1
    invariants: tuple       # d_1 | d_2 | ... of the relation lattice
    transform: tuple        # unimodular K x K matrix T from the SNF
    torsion_period: int     # lcm of rational-part denominators
    free_rank: int

    @property
    def label_count(self) -> int:
        count = 1
        for d in self.invariants:
            count *= d
        return count


def structure_from_angles(angles) -> CharacterStructure:
    angles = tuple(angles)
    if not angles:
        raise EmptyDiscretePart("need at least one atom")
    K = len(angles)
    gen_indices = sorted({j for a in angles for j, _ in a.gens})
    J = len(gen_indices)
    col = {j: i for i, j in enumerate(gen_indices)}
    C = []
    for a in angles:
        row = [0] * J
        for j, c in a.gens:
            row[col[j]] = c
        C.append(tuple(row))
    period = 1
    for a in angles:
        period = lcm(period, int(a.turns.denominator))
    # integer combinations killing the generator parts
    V = kernel_rows(tuple(C), J)
    lam_rows = ()
    if V:
        w = []
        for v in V:
            total = Rat(0)
            for k in range(K):
                if v[k]:
                    total += v[k] * angles[k].turns
            scaled = total * period
            assert scaled.denominator == 1
            w.append(int(scaled))
        # sublattice {t : t.w = 0 mod period} of Z^len(V)
        aug = tuple((wi,) for wi in w) + ((period,),)
        tbasis = kernel_rows(aug, 1)
        lam = []
        for row in tbasis:
            t = row[: len(V)]
            vec = tuple(
                sum(t[i] * V[i][k] for i in range(len(V))) for k in range(K)
            )
            if any(vec):
                lam.append(vec)
        lam_rows = hnf_row_basis(tuple(lam), K)
    diag, _, T = smith_decomposition(lam_rows, K)
    invariants = tuple(d for d in diag if d != 0)
    assert len(invariants) == len(lam_rows)
    return CharacterStructure(
        atom_angles=angles,
        relation_basis=lam_rows,
        invariants=invariants,
        transform=T,
        torsion_period=period,
        free_rank=K - len(lam_rows),
    )


def character_structure(m: Measure) -> CharacterStructure:
    if not m.atoms:
        raise EmptyDiscretePart("measure has no atoms")
    return structure_from_angles(a for a, _ in m.atoms)


# -- spectrum cells -----------------------------------------------------

def _variety_cells(struct: CharacterStructure, weight_rows, arity):
    """Cells of {(sum_k w_k u_k)} over the full character variety.

    Characters solve u^m = 1 for every relation m; via the SNF the
    solutions are phi = T psi with psi_i = j_i/d_i on the torsion
    coordinates and free on the rest.
    """
    if struct.label_count > LABEL_CAP:
        raise GroupTooLarge(
            f"character variety has {struct.label_count} torsion labels"
        )
    K = len(struct.atom_angles)
    s = len(struct.invariants)
    T = struct.transform
    zeros = tuple(Cyclotomic.zero() for _ in range(arity))
    cells = []
    for label in product(*(range(d) for d in struct.invariants)):
        terms = []
        for k in range(K):
            phase = Rat(0)
            for i in range(s):
                if T[k][i] and label[i]:
                    phase += Rat(T[k][i] * label[i], struct.invariants[i])
            root = _root_weight(phase)
            coeff = tuple(wt_mul(w, root) for w in weight_rows[k])
            terms.append((coeff, tuple(T[k][s:])))
        cells.append(make_torus_cell(zeros, terms, arity))
    return cells


def _orbit_cells(atom_data, ac_points, arity):
    """Cells of closure{mu-hat(n)} from atoms plus finite a.c. points.

    atom_data: list of (angle, weight_row); the transform at n = mD + r
    splits into the exact torsion factor exp(-2*pi*i*r*turns) and a
    dense free orbit over the generator torus.
    """
    period = 1
    gen_indices = sorted({j for a, _ in atom_data for j, _ in a.gens})
    col = {j: i for i, j in enumerate(gen_indices)}
    J = len(gen_indices)
    for a, _ in atom_data:
        period = lcm(period, int(a.turns.denominator))
    zeros = tuple(Cyclotomic.zero() for _ in range(arity))
    cells = []
    for r in range(period):
        terms = []
        for a, row in atom_data:
            root = _root_weight(rat_mod1(-r * a.turns))
            expo = [0] * J
            for j, c in a.gens:
                expo[col[j]] = c
            coeff = tuple(wt_mul(w, root) for w in row)
            terms.append((coeff, tuple(expo)))
        cells.append(make_torus_cell(zeros, terms, arity))
    if ac_points:
        cells.append(FiniteCell(tuple(ac_points)))
    return cells


def _exact_weight_rows(m: Measure):
    return [(w,) for _, w in m.atoms]


def spectrum(m: Measure, generator_values=None) -> SpectrumSet:
    """Gelfand spectrum of a representable measure, as an exact cell union."""
    cells = []
    if m.atoms:
        struct = character_structure(m)
        cells += _variety_cells(struct, _exact_weight_rows(m), 1)
    if m.ac or not m.atoms:
        cells += _orbit_cells_for(m, generator_values)
    return normalize_cells(cells, 1)


def fourier_orbit_closure(m: Measure, generator_values=None) -> SpectrumSet:
    """Exact description of closure{mu-hat(n) : n in Z}."""
    return normalize_cells(_orbit_cells_for(m, generator_values), 1)


def _orbit_cells_for(m: Measure, generator_values=None):
    atom_data = [(a, (w,)) for a, w in m.atoms]
    ac_points = [
        (complex(fourier_coefficient(m, n, generator_values)),) for n, _ in m.ac
    ]
    return _orbit_cells(atom_data, ac_points, 1)


def _joint_atom_data(m1: Measure, m2: Measure):
    angles = sorted(
        {a for a, _ in m1.atoms} | {a for a, _ in m2.atoms},
        key=lambda a: (a.turns, a.gens),
    )
    w1 = dict(m1.atoms)
    w2 = dict(m2.atoms)
    zero = Cyclotomic.zero()
    return [
        (a, (w1.get(a, zero), w2.get(a, zero)))
        for a in angles
    ]


def joint_spectrum(m1: Measure, m2: Measure, generator_values=None) -> SpectrumSet:
    """Joint spectrum: pairs (phi(m1), phi(m2)) over all characters."""
    data = _joint_atom_data(m1, m2)
    cells = []
    if data:
        struct = structure_from_angles(a for a, _ in data)
        rows = [row for _, row in data]
        cells += _variety_cells(struct, rows, 2)
    if m1.ac or m2.ac or not data:
        cells += _joint_orbit_cells(m1, m2, generator_values)
    return normalize_cells(cells, 2)


def joint_orbit_closure(m1: Measure, m2: Measure, generator_values=None) -> SpectrumSet:
    return normalize_cells(_joint_orbit_cells(m1, m2, generator_values), 2)


def _joint_orbit_cells(m1: Measure, m2: Measure, generator_values=None):
    data = _joint_atom_data(m1, m2)
    support = sorted({n for n, _ in m1.ac} | {n for n, _ in m2.ac})
    points = [
        (
            complex(fourier_coefficient(m1, n, generator_values)),
            complex(fourier_coefficient(m2, n, generator_values)),
        )
        for n in support
    ]
    return _orbit_cells(data, points, 2)


# -- naturality ---------------------------------------------------------

NATURAL = "NATURAL"
UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class NaturalityReport:
    verdict: str
    hausdorff_distance: float
    structural_match: bool
    tol: float
    samples: int

    @property
    def is_natural(self) -> bool:
        return self.verdict == NATURAL


def naturality_report(
    m: Measure,
    tol: float = 1e-6,
    samples: int = 2048,
    other: Measure = None,
    seed: int = 0,
    generator_values=None,
) -> NaturalityReport:
    """Compare the spectrum against the Fourier orbit closure.

    The verdict is NATURAL when the two normalized cell unions agree
    structurally or within the sampled Hausdorff tolerance.  No finitely
    representable measure can fail naturality (integer characters are
    dense in the character variety of a finitely generated atom group),
    so the alternative verdict is UNDETERMINED, never "not natural".
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if other is None:
        spec = spectrum(m, generator_values)
        orbit = fourier_orbit_closure(m, generator_values)
    else:
        spec = joint_spectrum(m, other, generator_values)
        orbit = joint_orbit_closure(m, other, generator_values)
    structural = sets_structural_equal(spec, orbit, 1e-9)
    hd = hausdorff_distance(spec, orbit, samples=samples, seed=seed)
    verdict = NATURAL if structural or hd <= tol else UNDETERMINED
    return NaturalityReport(
        verdict=verdict,
        hausdorff_distance=hd,
        structural_match=structural,
        tol=tol,
        samples=samples,
    )


def isolated_points(s: SpectrumSet, separation: float):
    """Finite-cell points at distance >= separation from everything else."""
    if separation <= 0:
        raise ValueError("separation must be positive")
    pts = s.finite_points
    out = []
    for i, p in enumerate(pts):
        ok = all(
            _pt_dist(p, q) >= separation for j, q in enumerate(pts) if j != i
        )
        if ok:
            ok = all(
                cell_point_distance(cell, p, separation / 10.0) >= separation
                for cell in s.torus_cells
            )
        if ok:
            out.append(p)
    if s.arity == 1:
        return [p[0] for p in out]
    return out


def _pt_dist(p, q):
    return math.sqrt(sum(abs(a - b) ** 2 for a, b in zip(p, q)))


# -- brute-force oracle and functional calculus -------------------------

def circulant_oracle(m: Measure, dense_check=None):
    """Independent spectrum of an all-torsion discrete measure.

    The convolution operator on the group algebra of Z_L is circulant;
    its eigenvalues are the DFT values of the weight vector.  A dense
    eigenvalue routine cross-checks the DFT (always for L <= 512,
    controlled by dense_check otherwise).  Returns the L values.
    """
    if m.ac:
        raise NonDiscreteMeasure("oracle needs a purely discrete measure")
    L = m.torsion_period()
    if L is None:
        raise NonTorsionAtom("oracle needs torsion atoms only")
    if L > ORACLE_GROUP_CAP:
        raise GroupTooLarge(f"group order {L} exceeds {ORACLE_GROUP_CAP}")
    v = np.zeros(L, dtype=complex)
    for a, w in m.atoms:
        idx = int(a.turns * L) % L
        v[idx] += complex(w)
    dft = np.fft.fft(v)
    if dense_check is None:
        dense_check = L <= 512
    if dense_check:
        idx = (np.arange(L)[:, None] - np.arange(L)[None, :]) % L
        mat = v[idx]
        eig = np.linalg.eigvals(mat)
        d = hausdorff_distance(dft[:, None], eig[:, None])
        if d > 1e-8 * max(1.0, np.abs(dft).max()):
            raise AssertionError(f"DFT/eigenvalue mismatch: {d}")
    return [complex(z) for z in dft]


def cyclic_functional_calculus(m: Measure, f, domain_check: bool = True) -> Measure:
    """Apply a pointwise function through the finite-group transform.

    Forward DFT on the cyclic group carrying the atoms, pointwise f,
    inverse DFT back to weights.  The result satisfies the spectral
    mapping identity at float precision; weights below the transform's
    roundoff floor (1e-12 relative) are dropped.
    """
    if m.ac:
        raise NonDiscreteMeasure("functional calculus needs a discrete measure")
    L = m.torsion_period()
    if L is None:
        raise NonTorsionAtom("functional calculus needs torsion atoms only")
    values = [complex(fourier_coefficient(m, n)) for n in range(L)]
    mapped = []
    for z in values:
        try:
            w = complex(f(z))
        except ZeroDivisionError as exc:
            raise DomainViolation(f"callback undefined at {z}") from exc
        if domain_check and not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise DomainViolation(f"callback not finite at {z}")
        mapped.append(w)
    weights = np.fft.ifft(np.array(mapped))
    floor = 1e-12 * max(1.0, max(abs(z) for z in mapped))
    atoms = [
        (turns_angle(j, L), complex(w))
        for j, w in enumerate(weights)
        if abs(w) > floor
    ]
    return measure(atoms=atoms)


def spectral_radius(m: Measure, generator_values=None, seed=0) -> float:
    """max |z| over the spectrum.

    Exact for finite cells and for torus cells with free phases (the
    modulus maximum |const| + sum|coeffs| is attained); degenerate cells
    fall back to quasirandom sampling refined by coordinate descent,
    certified against the sampled lower bound.
    """
    s = spectrum(m, generator_values)
    best = 0.0
    for p in s.finite_points:
        best = max(best, abs(p[0]))
    for cell in s.torus_cells:
        if cell.independent():
            val = abs(cell.constant[0]) + sum(abs(r[0]) for r in cell.coeffs)
            best = max(best, val)
        else:
            best = max(best, _max_modulus(cell, seed))
    return best


def _cell_value(cell, phi):
    val = cell.constant[0]
    for row, expo in zip(cell.coeffs, cell.exponents):
        val += row[0] * cmath.exp(2j * cmath.pi * sum(e * p for e, p in zip(expo, phi)))
    return val


def _max_modulus(cell, seed) -> float:
    from scipy.stats import qmc

    d = cell.dim
    pts = qmc.Halton(d=d, scramble=True, seed=seed).random(
        min(100_000, max(4096, 4096 * d))
    )
    vals = np.zeros(len(pts), dtype=complex)
    vals += cell.constant[0]
    expo = np.array(cell.exponents, dtype=float)
    waves = np.exp(2j * np.pi * (pts @ expo.T))
    vals += waves @ np.array([row[0] for row in cell.coeffs])
    mods = np.abs(vals)
    order = np.argsort(mods)[::-1]
    lower = float(mods[order[0]])
    best = lower
    for idx in order[:64]:
        phi = list(pts[idx])
        val = _coordinate_descent(cell, phi)
        best = max(best, val)
    if best < lower * (1 - 1e-6):
        best = lower
    return best


def _coordinate_descent(cell, phi, rounds=40):
    cur = abs(_cell_value(cell, phi))
    step = 0.25
    for _ in range(rounds):
        improved = False
        for i in range(len(phi)):
            for delta in (step, -step):
                cand = list(phi)
                cand[i] = (cand[i] + delta) % 1.0
                v = abs(_cell_value(cell, cand))
                if v > cur + 1e-15:
                    cur = v
                    phi = cand
                    improved = True
        if not improved:
            step *= 0.5
            if step < 1e-9:
                break
    return cur
