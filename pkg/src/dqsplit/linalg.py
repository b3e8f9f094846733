"""Gaussian elimination over any exact field (Fractions or tower elements)."""

from __future__ import annotations


def row_reduce(rows):
    """Reduced row echelon form in place; returns the pivot columns."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def nullspace(rows, ncols, zero=0, one=1):
    """Basis of {x : rows * x = 0}.  Each basis vector has a 1 in one free
    column and 0 in the others."""
    rows = [list(r) for r in rows if any(r)]
    pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """Solve a square nonsingular system."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular linear system")
    return [aug[i][n] for i in range(n)]
