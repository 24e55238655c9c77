"""Dense exact linear algebra over the rationals.

Small systems only (graph Laplacians, 3x3 tangency templates), so plain
Gaussian elimination over Fraction is both fast enough and exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from tritrop.exceptions import SolveError

Q = Fraction


def solve(A: Sequence[Sequence], b: Sequence) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Solve A x = b over Q.

    Returns (particular solution, nullspace basis); free variables are set
    to 0 in the particular solution. Raises SolveError when inconsistent.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[Q(x) for x in row] + [Q(b[i])] for i, row in enumerate(A)]
    if m and any(len(r) != n + 1 for r in rows):
        raise SolveError("ragged matrix")
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n] != 0:
            raise SolveError("inconsistent system")
    x = [Q(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    free = [c for c in range(n) if c not in pivots]
    null = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        null.append(v)
    return x, null


def solve_unique(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Unique solution of A x = b, or None if singular or inconsistent."""
    try:
        x, null = solve(A, b)
    except SolveError:
        return None
    return None if null else x
