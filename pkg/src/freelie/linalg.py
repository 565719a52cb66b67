"""Small exact linear solvers: Gaussian elimination over Q and over F_p.

Matrices are lists of row lists.  Nothing here is tuned for size; every
system in this package has at most a few hundred unknowns.
"""

from __future__ import annotations

from fractions import Fraction


def solve_fractions(rows, rhs):
    """One exact solution of ``rows * x = rhs`` over Q, or None.

    Free variables are set to 0.  Inputs are not modified.
    """
    m = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def _rref_mod(rows, p):
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] % p), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] % p:
                f = m[i][c] % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_mod(rows, p) -> int:
    if not rows:
        return 0
    return len(_rref_mod(rows, p)[1])


def nullspace_mod(rows, p, ncols=None):
    """Basis of the right nullspace of ``rows`` mod p."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [
            [1 if j == i else 0 for j in range(ncols)] for i in range(ncols)
        ]
    m, pivots = _rref_mod(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(v)
    return basis


def solve_mod(rows, rhs, p):
    """One solution of ``rows * x = rhs`` mod p, or None (free vars -> 0)."""
    if not rows:
        return []
    aug = [list(row) + [b % p] for row, b in zip(rows, rhs)]
    m, pivots = _rref_mod(aug, p)
    ncols = len(rows[0])
    for i in range(len(m)):
        if all(m[i][c] % p == 0 for c in range(ncols)) and m[i][ncols] % p:
            return None
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols] % p
    return x


def mat_mul_mod(a, b, p):
    n, k = len(a), len(b)
    cols = len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(cols)]
        for i in range(n)
    ]


def mat_vec_mod(a, v, p):
    return [sum(row[j] * v[j] for j in range(len(v))) % p for row in a]


def mat_add_mod(a, b, p):
    return [[(x + y) % p for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def identity_mod(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_inverse_mod(a, p):
    """Inverse of a square matrix mod p, or None if singular."""
    n = len(a)
    aug = [list(row) + ident_row for row, ident_row in zip(a, identity_mod(n))]
    m, pivots = _rref_mod(aug, p)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m[:n]]
