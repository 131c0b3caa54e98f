"""Exact linear algebra: row reduction over a scalar backend and integer SNF.

Matrices are lists of lists of raw backend scalars (or plain ints for the
Smith normal form).  Everything here is deterministic; the optional full
pivoting in `row_reduce` exists so tests can cross-check the default
partial-pivot path against an independently pivoted one.
"""

from __future__ import annotations


def row_reduce(rows, backend, full_pivoting=False):
    """Gaussian elimination to reduced row echelon form.

    Returns (rank, rref_rows, pivot_columns, column_permutation); the column
    permutation is the identity unless full_pivoting is set.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    colperm = list(range(ncols))
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if not backend.is_zero(m[i][c])), None)
        if pr is None and full_pivoting:
            # swap in a later column that still has a nonzero entry
            for c2 in range(c + 1, ncols):
                pr = next((i for i in range(r, nrows) if not backend.is_zero(m[i][c2])), None)
                if pr is not None:
                    for row in m:
                        row[c], row[c2] = row[c2], row[c]
                    colperm[c], colperm[c2] = colperm[c2], colperm[c]
                    break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [backend.div(x, inv) for x in m[r]]
        for i in range(nrows):
            if i != r and not backend.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [backend.sub(x, backend.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return r, m, pivots, colperm


def matrix_rank(rows, backend) -> int:
    return row_reduce(rows, backend)[0]


def solve_affine(rows, rhs, backend):
    """One solution of A x = b, or None if inconsistent.

    Free variables are set to zero; the solution is deterministic.
    """
    if not rows:
        return []
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rank, rref, pivots, _ = row_reduce(aug, backend)
    ncols = len(rows[0])
    for row in rref:
        if all(backend.is_zero(x) for x in row[:ncols]) and not backend.is_zero(row[ncols]):
            return None
    x = [backend.zero] * ncols
    for i, c in enumerate(pivots):
        if c < ncols:
            x[c] = rref[i][ncols]
    return x


def kernel_basis(rows, backend):
    """Basis of the right kernel of the matrix, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    rank, rref, pivots, _ = row_reduce(rows, backend)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [backend.zero] * ncols
        v[free] = backend.one
        for i, c in enumerate(pivots):
            v[c] = backend.neg(rref[i][free])
        basis.append(v)
    return basis


def smith_normal_form(rows):
    """Smith normal form of an integer matrix.

    Returns (rank, divisors) where divisors are the positive diagonal entries
    d1 | d2 | ... of the normal form.  Classical elementary-operation
    algorithm with smallest-pivot selection; fine at desk scale.
    """
    from math import gcd

    m = [list(map(int, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    diag = []
    t = 0
    while t < min(nrows, ncols):
        while True:
            # move the entry of smallest nonzero magnitude to (t, t)
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    v = m[i][j]
                    if v != 0 and (best is None or abs(v) < abs(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _chain_fix(diag, gcd)
            bi, bj = best
            m[t], m[bi] = m[bi], m[t]
            for row in m:
                row[t], row[bj] = row[bj], row[t]
            if m[t][t] < 0:
                m[t] = [-x for x in m[t]]
            piv = m[t][t]
            remainder = False
            for i in range(t + 1, nrows):
                q = m[i][t] // piv
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    remainder = True
            for j in range(t + 1, ncols):
                q = m[t][j] // piv
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    remainder = True
            if not remainder:
                break
        diag.append(m[t][t])
        t += 1
    return _chain_fix(diag, gcd)


def _chain_fix(diag, gcd):
    """Sort a diagonal into the divisibility chain via gcd/lcm sweeps."""
    d = list(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d) - 1):
            a, b = d[i], d[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                d[i], d[i + 1] = g, a * b // g
                changed = True
    return len(d), d
