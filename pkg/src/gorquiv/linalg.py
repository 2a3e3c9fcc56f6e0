"""Small exact linear algebra over the rationals.

Matrices are lists of row lists holding ints or Fractions.  Everything here
is sized for module components of quiver representations (dimensions in the
tens), so plain Gaussian elimination is used throughout.  Pivoting prefers
unit entries to keep arithmetic in the integers as long as possible.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(rows: int, cols: int) -> list:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def shape(m: list) -> tuple:
    return (len(m), len(m[0]) if m else 0)


def mat_mul(a: list, b: list) -> list:
    ra = len(a)
    rb = len(b)
    cb = len(b[0]) if b else 0
    out = [[0] * cb for _ in range(ra)]
    for i in range(ra):
        ai = a[i]
        oi = out[i]
        for k in range(rb):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cb):
                    y = bk[j]
                    if y:
                        oi[j] += x * y
    return out


def mat_vec(a: list, v: list) -> list:
    out = [0] * len(a)
    for i, row in enumerate(a):
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out[i] = s
    return out


def hstack(mats: list) -> list:
    mats = [m for m in mats if m and m[0] is not None]
    if not mats:
        return []
    rows = len(mats[0])
    out = []
    for i in range(rows):
        row = []
        for m in mats:
            row.extend(m[i])
        out.append(row)
    return out


def vstack(mats: list) -> list:
    out = []
    for m in mats:
        out.extend([list(r) for r in m])
    return out


def _eliminate(m: list, reduce_up=True):
    """Row reduce in place; returns the list of pivot columns.

    Pivoting prefers +-1 entries, and those rows are handled with integer
    arithmetic only; Fractions appear just when a division is forced.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        best = -1
        for i in range(r, rows):
            x = m[i][c]
            if x:
                if x == 1 or x == -1:
                    best = i
                    break
                if best < 0:
                    best = i
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        piv = m[r][c]
        if piv == -1:
            m[r] = [-x for x in m[r]]
        elif piv != 1:
            inv = Fraction(1, 1) / piv
            m[r] = [x * inv if x else 0 for x in m[r]]
        row_r = m[r]
        start = 0 if reduce_up else r + 1
        for i in range(start, rows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    if f == 1:
                        m[i] = [x - y if y else x for x, y in zip(mi, row_r)]
                    elif f == -1:
                        m[i] = [x + y if y else x for x, y in zip(mi, row_r)]
                    else:
                        m[i] = [x - f * y if y else x for x, y in zip(mi, row_r)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: list) -> tuple:
    """Reduced row echelon form (copy) plus pivot columns."""
    work = [list(r) for r in m]
    pivots = _eliminate(work)
    return work, pivots


def rank(m: list) -> int:
    if not m or not m[0]:
        return 0
    work = [list(r) for r in m]
    return len(_eliminate(work, reduce_up=False))


def nullspace(m: list, cols: int) -> list:
    """Basis of the right kernel, as a list of column vectors."""
    if cols == 0:
        return []
    if not m:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    work, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][fc]
        basis.append(v)
    return basis


def solve_columns(a: list, b: list, a_cols: int, b_cols: int) -> list:
    """Solve A X = B where the columns of A are independent.

    Returns X (a_cols x b_cols) or raises ValueError when inconsistent.
    """
    if b_cols == 0:
        return [[] for _ in range(a_cols)]
    if a_cols == 0:
        for row in b:
            if any(row):
                raise ValueError("inconsistent system")
        return []
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    work, pivots = rref(aug)
    if any(p >= a_cols for p in pivots):
        raise ValueError("inconsistent system")
    if len(pivots) != a_cols:
        raise ValueError("columns of A are not independent")
    x = zeros(a_cols, b_cols)
    for r, pc in enumerate(pivots):
        for j in range(b_cols):
            x[pc][j] = work[r][a_cols + j]
    return x


def column_space_contains(basis_cols: list, cols: int, vec: list) -> bool:
    """Does vec lie in the span of the given column matrix?"""
    if not any(vec):
        return True
    if cols == 0:
        return False
    base_rank = rank_of_columns(basis_cols, cols)
    extended = [row + [v] for row, v in zip(basis_cols, vec)]
    return rank_of_columns(extended, cols + 1) == base_rank


def rank_of_columns(m: list, cols: int) -> int:
    if cols == 0 or not m:
        return 0
    return rank(m)


def transpose(m: list, cols: int) -> list:
    if not m:
        return [[] for _ in range(cols)]
    return [list(col) for col in zip(*m)]
