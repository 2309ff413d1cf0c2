"""Closed subsets of C (or C^2) built from finite points and torus images.

A spectrum is represented as a union of cells.  A FiniteCell is a
deduplicated list of points.  A TorusCell is the image of a free torus,

    { constant + sum_k coeffs[k] * exp(2*pi*i * <exponents[k], phi>) },

one value per coordinate for joint (arity-2) spectra.  Cells are kept
in a canonical form: duplicate exponent rows merged, the zero exponent
folded into the constant, and the exponent matrix rewritten over the
canonical (HNF) basis of the saturation of its column lattice, which
makes two parametrizations of the same subtorus comparable.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from .intlattice import saturation_rows

DEDUP_TOL = 1e-12


@dataclass(frozen=True)
class FiniteCell:
    points: tuple  # ((z1, ..., z_arity), ...)

    @property
    def arity(self):
        return len(self.points[0]) if self.points else 1


@dataclass(frozen=True)
class TorusCell:
    constant: tuple    # length arity
    coeffs: tuple      # K' rows, each length arity
    exponents: tuple   # K' rows, each length dim
    dim: int

    @property
    def arity(self):
        return len(self.constant)

    def scale(self) -> float:
        s = max(abs(z) for z in self.constant)
        for row in self.coeffs:
            s += max(abs(z) for z in row)
        return s

    def independent(self) -> bool:
        """True when the exponent rows are a basis (free phases)."""
        return len(self.exponents) == self.dim


def make_torus_cell(constant, terms, arity):
    """Canonical cell from raw (coeff-tuple, exponent-tuple) terms.

    Coefficient entries may be exact (cyclotomic) or complex; merging
    and zero pruning happen before the final conversion to complex, so
    exact cancellations really remove terms.  Returns a TorusCell, or a
    FiniteCell when every term cancels.
    """
    from .measures import wt_add, wt_is_zero

    merged = {}
    for coeff, expo in terms:
        expo = tuple(int(e) for e in expo)
        coeff = tuple(coeff)
        if expo in merged:
            merged[expo] = tuple(wt_add(a, b) for a, b in zip(merged[expo], coeff))
        else:
            merged[expo] = coeff
    zero_key = tuple([0] * (len(next(iter(merged))) if merged else 0))
    if merged and zero_key in merged:
        constant = tuple(wt_add(a, b) for a, b in zip(constant, merged.pop(zero_key)))
    constant = tuple(complex(z) for z in constant)
    merged = {
        e: tuple(complex(z) for z in c)
        for e, c in merged.items()
        if not all(wt_is_zero(z) for z in c)
    }
    if not merged:
        return FiniteCell((constant,))
    expo_rows = sorted(merged)
    ncols = len(expo_rows[0])
    # canonical basis of the saturation of the column lattice
    col_rows = tuple(tuple(row[k] for row in expo_rows) for k in range(ncols))
    basis = saturation_rows(col_rows, len(expo_rows))
    new_expo = tuple(
        tuple(basis[i][k] for i in range(len(basis))) for k in range(len(expo_rows))
    )
    pairs = sorted(zip(new_expo, (merged[e] for e in expo_rows)))
    return TorusCell(
        constant=constant,
        coeffs=tuple(c for _, c in pairs),
        exponents=tuple(e for e, _ in pairs),
        dim=len(basis),
    )


class SpectrumSet:
    """Normalized union of cells; at most one FiniteCell, listed first."""

    __slots__ = ("cells", "arity")

    def __init__(self, cells, arity=1):
        self.cells = tuple(cells)
        self.arity = arity

    @property
    def finite_points(self):
        for cell in self.cells:
            if isinstance(cell, FiniteCell):
                return cell.points
        return ()

    @property
    def torus_cells(self):
        return tuple(c for c in self.cells if isinstance(c, TorusCell))

    def is_finite(self) -> bool:
        return not self.torus_cells

    def sample(self, per_cell=2048, seed=0) -> np.ndarray:
        """Deterministic point cloud, shape (N, arity) complex."""
        chunks = []
        for idx, cell in enumerate(self.cells):
            if isinstance(cell, FiniteCell):
                if cell.points:
                    chunks.append(np.array(cell.points, dtype=complex))
            else:
                chunks.append(_sample_torus(cell, per_cell, seed + 7919 * idx))
        if not chunks:
            return np.zeros((0, self.arity), dtype=complex)
        return np.vstack(chunks)

    def __repr__(self):
        kinds = [
            f"{len(c.points)}pts" if isinstance(c, FiniteCell) else f"torus{c.dim}d"
            for c in self.cells
        ]
        return f"SpectrumSet({', '.join(kinds)})"


def _sample_torus(cell: TorusCell, count, seed) -> np.ndarray:
    phases = qmc.Halton(d=cell.dim, scramble=True, seed=seed).random(count)
    vals = np.zeros((count, cell.arity), dtype=complex)
    vals += np.array(cell.constant)
    expo = np.array(cell.exponents, dtype=float)  # (K', dim)
    waves = np.exp(2j * np.pi * (phases @ expo.T))  # (count, K')
    for j in range(cell.arity):
        cvec = np.array([row[j] for row in cell.coeffs])
        vals[:, j] += waves @ cvec
    return vals


def _point_dist(p, q) -> float:
    return math.sqrt(sum(abs(a - b) ** 2 for a, b in zip(p, q)))


def _dedup_points(points, tol=DEDUP_TOL):
    out = []
    for p in sorted(points, key=lambda q: tuple((z.real, z.imag) for z in q)):
        if not any(_point_dist(p, q) <= tol for q in out):
            out.append(p)
    return tuple(out)


def normalize_cells(cells, arity=1, absorb_tol=1e-9) -> SpectrumSet:
    """Canonical SpectrumSet: merge finite cells, dedupe points, absorb
    points lying inside torus cells, dedupe structurally equal cells."""
    points = []
    torus = []
    for cell in cells:
        if isinstance(cell, FiniteCell):
            points.extend(cell.points)
        else:
            torus.append(cell)
    unique_torus = []
    for cell in sorted(torus, key=_torus_sort_key):
        if not any(cells_structural_equal(cell, other, 1e-9) for other in unique_torus):
            unique_torus.append(cell)
    kept = []
    for p in _dedup_points(points):
        inside = any(
            cell_contains_point(cell, p, absorb_tol) for cell in unique_torus
        )
        if not inside:
            kept.append(p)
    out = []
    if kept:
        out.append(FiniteCell(tuple(kept)))
    out.extend(unique_torus)
    return SpectrumSet(out, arity)


def _torus_sort_key(cell: TorusCell):
    moduli = tuple(sorted(round(abs(z), 9) for row in cell.coeffs for z in row))
    const = tuple((round(z.real, 9), round(z.imag, 9)) for z in cell.constant)
    return (cell.dim, len(cell.coeffs), cell.exponents, moduli, const)


# -- membership and distances ------------------------------------------

def _annulus_range(cell: TorusCell):
    """Reachable |value - constant| interval for independent-phase cells."""
    radii = [abs(row[0]) for row in cell.coeffs]
    hi = sum(radii)
    lo = max(0.0, 2.0 * max(radii) - hi)
    return lo, hi


def cell_contains_point(cell, p, tol=1e-9) -> bool:
    if isinstance(cell, FiniteCell):
        return any(_point_dist(p, q) <= tol for q in cell.points)
    return cell_point_distance(cell, p, tol) <= tol


def cell_point_distance(cell, p, resolution=1e-3) -> float:
    """Distance from p to the cell, analytic for independent arity-1
    cells, otherwise by sampling (error roughly the sampling mesh)."""
    if isinstance(cell, FiniteCell):
        return min(_point_dist(p, q) for q in cell.points)
    if cell.arity == 1 and cell.independent():
        lo, hi = _annulus_range(cell)
        d = abs(p[0] - cell.constant[0])
        if d < lo:
            return lo - d
        if d > hi:
            return d - hi
        return 0.0
    count = _sample_count_for(cell, resolution)
    pts = _sample_torus(cell, count, seed=12345)
    return float(np.min(np.linalg.norm(pts - np.array(p), axis=1)))


def _sample_count_for(cell: TorusCell, resolution) -> int:
    arc = 2.0 * math.pi * cell.scale()
    if cell.dim == 1:
        need = int(arc / max(resolution, 1e-6)) + 1
    else:
        need = int((arc / max(resolution, 1e-6)) ** cell.dim)
    return max(2048, min(200_000, need))


# -- structural equality ------------------------------------------------
#
# Two torus cells describe the same set exactly when some bijection pi
# of the terms, a unimodular reparametrization A of the free torus and
# a phase shift delta satisfy
#
#     E_a[k] = E_b[pi(k)] @ A      and
#     c_a[k] = c_b[pi(k)] * exp(2*pi*i*<E_b[pi(k)], delta>).
#
# Candidate bijections are pruned by the phase-invariant term key
# (coefficient moduli and cross-component ratios).

_PERM_BRANCH_CAP = 2000


def cells_structural_equal(a, b, tol=1e-9) -> bool:
    if isinstance(a, FiniteCell) or isinstance(b, FiniteCell):
        if not (isinstance(a, FiniteCell) and isinstance(b, FiniteCell)):
            return False
        return _point_sets_equal(a.points, b.points, tol)
    if a.dim != b.dim or a.arity != b.arity or len(a.coeffs) != len(b.coeffs):
        return False
    if _point_dist(a.constant, b.constant) > tol:
        return False
    if a.exponents == b.exponents and _phase_match(a, b, list(range(len(a.coeffs))), tol):
        return True
    for perm in _candidate_perms(a, b, tol):
        if perm is None:
            return False
        if _reparam_match(a, b, perm, tol):
            return True
    return False


def _point_sets_equal(pa, pb, tol) -> bool:
    if not pa or not pb:
        return not pa and not pb
    fwd = all(min(_point_dist(p, q) for q in pb) <= tol for p in pa)
    bwd = all(min(_point_dist(q, p) for p in pa) <= tol for q in pb)
    return fwd and bwd


def _term_key_compatible(ca, cb, tol) -> bool:
    if any(abs(abs(x) - abs(y)) > tol for x, y in zip(ca, cb)):
        return False
    # cross-component ratios (phase and all) are invariant under the
    # common unimodular twist, so they must agree outright
    i = max(range(len(ca)), key=lambda t: abs(ca[t]))
    if abs(ca[i]) <= tol:
        return True
    scale = max(abs(ca[i]), 1.0)
    return all(
        abs(ca[j] * cb[i] - cb[j] * ca[i]) <= 4 * tol * scale
        for j in range(len(ca))
    )


def _candidate_perms(a, b, tol):
    """Yield bijections term-of-a -> term-of-b with compatible keys;
    yields None (meaning give up) when the branch count explodes."""
    K = len(a.coeffs)
    options = []
    for k in range(K):
        opts = [j for j in range(K) if _term_key_compatible(a.coeffs[k], b.coeffs[j], tol)]
        if not opts:
            return
        options.append(opts)
    total = 1
    for opts in options:
        total *= len(opts)
        if total > _PERM_BRANCH_CAP:
            yield None
            return
    def backtrack(k, used, acc):
        if k == K:
            yield list(acc)
            return
        for j in options[k]:
            if j not in used:
                used.add(j)
                acc.append(j)
                yield from backtrack(k + 1, used, acc)
                acc.pop()
                used.remove(j)
    yield from backtrack(0, set(), [])


def _reparam_match(a, b, perm, tol) -> bool:
    """Try to realize the bijection `perm` with some unimodular A."""
    Eb_perm = [b.exponents[j] for j in perm]
    piv = _independent_row_indices(Eb_perm, a.dim)
    if piv is None:
        return False
    A = _integral_solve([Eb_perm[i] for i in piv], [a.exponents[i] for i in piv])
    if A is None:
        return False
    # verify every row and unimodularity
    if abs(round(_int_det(A))) != 1:
        return False
    for k in range(len(perm)):
        if tuple(_mat_vec_left(Eb_perm[k], A)) != tuple(a.exponents[k]):
            return False
    return _phase_match(a, b, perm, tol)


def _phase_match(a, b, perm, tol) -> bool:
    """Find delta with c_a[k] = c_b[perm[k]] * e(<E_b[perm[k]], delta>)."""
    K = len(a.coeffs)
    thetas = np.zeros(K)
    Eb = np.array([b.exponents[j] for j in perm], dtype=float)
    for k in range(K):
        ca = a.coeffs[k]
        cb = b.coeffs[perm[k]]
        i = max(range(len(ca)), key=lambda t: abs(ca[t]))
        if abs(ca[i]) <= tol and abs(cb[i]) <= tol:
            continue
        if abs(abs(ca[i]) - abs(cb[i])) > tol:
            return False
        thetas[k] = (np.angle(ca[i] / cb[i]) / (2 * np.pi)) % 1.0
    piv = _independent_row_indices([tuple(int(x) for x in row) for row in Eb], a.dim)
    if piv is None:
        return False
    P = Eb[piv]
    det = abs(round(float(np.linalg.det(P))))
    Pinv = np.linalg.inv(P)
    for z in _lattice_shift_candidates(a.dim, det):
        delta = Pinv @ (thetas[piv] + np.array(z, dtype=float))
        ok = True
        for k in range(K):
            ca = a.coeffs[k]
            cb = b.coeffs[perm[k]]
            rot = np.exp(2j * np.pi * float(Eb[k] @ delta))
            if any(abs(y * rot - x) > 4 * tol for x, y in zip(ca, cb)):
                ok = False
                break
        if ok:
            return True
    return False


def _independent_row_indices(expo, dim):
    from fractions import Fraction

    rows = []
    idx = []
    for k, row in enumerate(expo):
        cand = rows + [[Fraction(int(x)) for x in row]]
        if _rational_rank(cand) == len(cand):
            rows = cand
            idx.append(k)
            if len(idx) == dim:
                return idx
    return None


def _rational_rank(rows):
    mat = [row[:] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _integral_solve(P_rows, Q_rows):
    """Integer matrix A with P @ A = Q for square rational-invertible P,
    or None when the solution is not integral."""
    from fractions import Fraction

    d = len(P_rows)
    aug = [[Fraction(int(x)) for x in P_rows[i]] + [Fraction(int(x)) for x in Q_rows[i]] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    A = []
    for r in range(d):
        row = aug[r][d:]
        if any(x.denominator != 1 for x in row):
            return None
        A.append([int(x) for x in row])
    return A


def _int_det(mat):
    from fractions import Fraction

    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def _mat_vec_left(vec, A):
    # row vector times matrix
    d = len(A)
    return [sum(vec[i] * A[i][j] for i in range(d)) for j in range(len(A[0]))]


def _lattice_shift_candidates(dim, det, cap=512):
    if det <= 1 or det**dim > cap:
        return [tuple([0] * dim)]
    from itertools import product

    return list(product(range(det), repeat=dim))


def sets_structural_equal(A: SpectrumSet, B: SpectrumSet, tol=1e-9) -> bool:
    """Cell-by-cell equality of two normalized spectrum sets."""
    fa, fb = A.finite_points, B.finite_points
    if bool(fa) != bool(fb):
        return False
    if fa and not _point_sets_equal(fa, fb, max(tol, 1e-9)):
        return False
    ta, tb = A.torus_cells, B.torus_cells
    if len(ta) != len(tb):
        return False
    unmatched = list(tb)
    for cell in ta:
        hit = next(
            (o for o in unmatched if cells_structural_equal(cell, o, tol)), None
        )
        if hit is None:
            return False
        unmatched.remove(hit)
    return True


# -- Hausdorff distance -------------------------------------------------

def _as_real(points: np.ndarray) -> np.ndarray:
    return np.column_stack([points.real, points.imag]).reshape(len(points), -1)


def hausdorff_distance(A, B, samples=2048, seed=0) -> float:
    """Symmetric Hausdorff distance between sampled spectrum sets (or
    raw complex point arrays)."""
    pa = A.sample(samples, seed) if isinstance(A, SpectrumSet) else np.asarray(A)
    pb = B.sample(samples, seed + 1) if isinstance(B, SpectrumSet) else np.asarray(B)
    if pa.ndim == 1:
        pa = pa[:, None]
    if pb.ndim == 1:
        pb = pb[:, None]
    if len(pa) == 0 and len(pb) == 0:
        return 0.0
    if len(pa) == 0 or len(pb) == 0:
        return math.inf
    ra, rb = _as_real(pa), _as_real(pb)
    d1 = cKDTree(rb).query(ra)[0].max()
    d2 = cKDTree(ra).query(rb)[0].max()
    return float(max(d1, d2))
