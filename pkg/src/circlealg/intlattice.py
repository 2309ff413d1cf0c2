"""Integer lattice helpers: kernels, Hermite and Smith normal forms.

Thin wrappers around sympy's DomainMatrix normal forms with the edge
cases (empty matrices, rank-deficient input, sign normalisation) made
explicit.  Matrices are plain tuples of tuples of ints; rows act from
the left, so `kernel_rows(M)` spans {v : v @ M = 0}.
"""

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import (
    hermite_normal_form as _hnf,
    smith_normal_decomp as _snd,
)


def _to_dm(rows, ncols):
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (len(rows), ncols), ZZ)


def _to_rows(dm):
    return tuple(tuple(int(x) for x in row) for row in dm.to_list())


def smith_decomposition(rows, ncols):
    """(diag, S, T) with diag = S @ M @ T, S and T unimodular.

    diag's diagonal entries are the invariant factors, made nonnegative
    by flipping columns of T where needed.
    """
    m = len(rows)
    if m == 0 or ncols == 0:
        return (), _identity(m), _identity(ncols)
    D, S, T = _snd(_to_dm(rows, ncols))
    diag = [[int(x) for x in row] for row in D.to_list()]
    Trows = [[int(x) for x in row] for row in T.to_list()]
    for i in range(min(m, ncols)):
        if diag[i][i] < 0:
            diag[i][i] = -diag[i][i]
            for r in range(ncols):
                Trows[r][i] = -Trows[r][i]
    return (
        tuple(diag[i][i] for i in range(min(m, ncols))),
        _to_rows(S),
        tuple(tuple(row) for row in Trows),
    )


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def kernel_rows(rows, ncols):
    """Basis (as rows) of {v in Z^m : v @ M = 0} for M given by `rows`."""
    m = len(rows)
    if m == 0:
        return ()
    if ncols == 0 or all(all(x == 0 for x in row) for row in rows):
        return _identity(m)
    # v @ M = 0  <=>  M^T v^T = 0; with diag = S M^T T the kernel of M^T is
    # spanned by the columns of T beyond the rank, i.e. v = e_i @ T^T.
    mt = tuple(tuple(rows[i][j] for i in range(m)) for j in range(ncols))
    diag, S, T = smith_decomposition(mt, m)
    rank = sum(1 for d in diag if d != 0)
    basis = tuple(tuple(T[i][k] for i in range(m)) for k in range(rank, m))
    return basis


def hnf_row_basis(rows, ncols):
    """Canonical (HNF) basis of the row lattice spanned by `rows`."""
    rows = tuple(row for row in rows if any(row))
    if not rows:
        return ()
    # sympy's HNF canonicalises column lattices; transpose in and out.
    mt = _to_dm(tuple(tuple(row[i] for row in rows) for i in range(ncols)), len(rows))
    h = _hnf(mt)
    cols = h.to_list()
    n_basis = h.shape[1]
    out = []
    for k in range(n_basis):
        vec = tuple(int(cols[i][k]) for i in range(ncols))
        if any(vec):
            out.append(vec)
    return tuple(out)


def saturation_rows(rows, ncols):
    """Canonical basis of {v in Z^ncols : v in Q-span(rows)}."""
    if not rows or not ncols:
        return ()
    m = len(rows)
    # right kernel of M, each element as a length-ncols vector
    right_kernel = kernel_rows(
        tuple(tuple(rows[i][j] for i in range(m)) for j in range(ncols)), m
    )
    if not right_kernel:
        return hnf_row_basis(_identity(ncols), ncols)
    # saturation = orthogonal complement of the right kernel
    sat = kernel_rows(
        tuple(tuple(k[i] for k in right_kernel) for i in range(ncols)),
        len(right_kernel),
    )
    return hnf_row_basis(sat, ncols)


def rank(rows, ncols) -> int:
    if not rows or not ncols:
        return 0
    diag, _, _ = smith_decomposition(rows, ncols)
    return sum(1 for d in diag if d != 0)
