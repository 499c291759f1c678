"""Dense exact linear algebra over Q(v, t) and over Q.

Matrices are lists of rows.  Over Q(v, t) every pivot test is exact; the
helpers ending in ``_at`` specialize to a rational point first, which is far
cheaper and gives a lower bound on the generic rank.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, RationalFunction

Matrix = List[List[RationalFunction]]

# Points used for specialization.  Chosen away from roots of unity and from
# the small integers where quantum integers tend to vanish.
DEFAULT_POINTS = [
    (Fraction(7, 3), Fraction(11, 5)),
    (Fraction(13, 4), Fraction(5, 7)),
    (Fraction(17, 6), Fraction(19, 9)),
]


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(m):
            s = ZERO
            for k, x in enumerate(row):
                if x:
                    y = b[k][j]
                    if y:
                        s = s + x * y
            new.append(s)
        out.append(new)
    return out


def matvec(a: Matrix, x: Sequence[RationalFunction]) -> List[RationalFunction]:
    out = []
    for row in a:
        s = ZERO
        for c, y in zip(row, x):
            if c and y:
                s = s + c * y
        out.append(s)
    return out


def _complexity(x: RationalFunction) -> int:
    return len(x.num) + len(x.den)


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns (exact)."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        cand = [i for i in range(r, rows) if m[i][c]]
        if not cand:
            continue
        p = min(cand, key=lambda i: _complexity(m[i][c]))
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> List[List[RationalFunction]]:
    """Basis of ``{x : a x = 0}``."""
    if not a:
        return []
    cols = len(a[0])
    r, piv = rref(a)
    free = [c for c in range(cols) if c not in piv]
    out = []
    for f in free:
        x = [ZERO] * cols
        x[f] = ONE
        for row, p in zip(r, piv):
            if row[f]:
                x[p] = -row[f]
        out.append(x)
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve ``a x = b`` for square invertible ``a``."""
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n : n + m] for row in r]


def det(a: Matrix) -> RationalFunction:
    m = [list(r) for r in a]
    n = len(m)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[c])]
    return d


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------


def specialize(a: Matrix, point=DEFAULT_POINTS[0]) -> List[List[Fraction]]:
    v0, t0 = point
    return [[x.evaluate(v0, t0) if x else Fraction(0) for x in row] for row in a]


def rref_q(a: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_at(a: Matrix, point=DEFAULT_POINTS[0]) -> int:
    """Rank of the specialization; never exceeds the generic rank."""
    if not a or not a[0]:
        return 0
    return len(rref_q(specialize(a, point))[1])


def independent_columns_at(a: Matrix, point=DEFAULT_POINTS[0]) -> List[int]:
    """Greedy left-to-right maximal independent column set at a point."""
    if not a or not a[0]:
        return []
    return rref_q(specialize(a, point))[1]


def independent_rows_at(a: Matrix, point=DEFAULT_POINTS[0]) -> List[int]:
    return independent_columns_at(transpose(a), point)


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def integer_kernel(a: List[List[int]]) -> List[List[int]]:
    """Basis of the integer lattice ``{x in Z^n : a x = 0}``.

    Unimodular column operations bring ``a`` to column echelon form; the
    accumulated transform's columns that end up over zero columns span the
    (saturated) kernel lattice.
    """
    rows = len(a)
    n = len(a[0]) if rows else 0
    m = [list(map(int, r)) for r in a]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colop(dst: int, src: int, k: int) -> None:
        # column dst -= k * column src
        for row in m:
            row[dst] -= k * row[src]
        for row in u:
            row[dst] -= k * row[src]

    def swap(c1: int, c2: int) -> None:
        for row in m:
            row[c1], row[c2] = row[c2], row[c1]
        for row in u:
            row[c1], row[c2] = row[c2], row[c1]

    col = 0
    for r in range(rows):
        if col >= n:
            break
        while True:
            nz = [c for c in range(col, n) if m[r][c]]
            if not nz:
                break
            piv = min(nz, key=lambda c: abs(m[r][c]))
            swap(col, piv)
            done = True
            for c in range(col + 1, n):
                if m[r][c]:
                    colop(c, col, m[r][c] // m[r][col])
                    if m[r][c]:
                        done = False
            if done:
                col += 1
                break
    basis = [[u[i][c] for i in range(n)] for c in range(col, n)]
    # tidy: make the first nonzero coordinate positive
    out = []
    for b in basis:
        lead = next((x for x in b if x), 0)
        out.append([-x for x in b] if lead < 0 else b)
    return out


def as_matrix(rows: Sequence[Sequence], coerce=RationalFunction) -> Matrix:
    return [[x if isinstance(x, RationalFunction) else coerce(x) for x in r] for r in rows]


def first_nonzero(xs: Sequence[RationalFunction]) -> Optional[int]:
    return next((i for i, x in enumerate(xs) if x), None)
