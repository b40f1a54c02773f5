"""Exact integer matrix routines on plain Python ``int`` lists.

Matrices are lists of rows.  Every routine copies its input, so callers may
pass tuples or shared data without fear of mutation.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``a*s + b*t = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in m]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int | None = None,
           cols: int | None = None) -> Matrix:
    """Product of an ``r x k`` and a ``k x c`` matrix.

    ``inner`` and ``cols`` are only needed when a factor has no rows.
    """
    if cols is None:
        cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], cols: int) -> list[int]:
    acc = [0] * cols
    for k, x in enumerate(v):
        if x:
            row = m[k]
            for j in range(cols):
                y = row[j]
                if y:
                    acc[j] += x * y
    return acc


def transpose(m: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def _row_axpy(dst: list[int], src: list[int], q: int) -> None:
    """dst -= q * src, in place."""
    if q:
        for j, x in enumerate(src):
            if x:
                dst[j] -= q * x


def hnf(rows: Sequence[Sequence[int]], ncols: int, transform: bool = False):
    """Row Hermite normal form.

    Returns ``(H, U, rank)`` where ``U @ rows == H`` (``U`` unimodular, or
    ``None`` if ``transform`` is false), the first ``rank`` rows of ``H`` are
    in echelon form with positive pivots and reduced entries above each
    pivot, and the remaining rows are zero.
    """
    a = copy(rows)
    m = len(a)
    u = identity(m) if transform else None
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            best = None
            for i in range(r, m):
                x = a[i][c]
                if x and (best is None or abs(x) < abs(a[best][c])):
                    best = i
            if best is None:
                break
            if best != r:
                a[r], a[best] = a[best], a[r]
                if u is not None:
                    u[r], u[best] = u[best], u[r]
            piv = a[r][c]
            clean = True
            for i in range(r + 1, m):
                x = a[i][c]
                if x:
                    q = x // piv
                    _row_axpy(a[i], a[r], q)
                    if u is not None:
                        _row_axpy(u[i], u[r], q)
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                _row_axpy(a[i], a[r], q)
                if u is not None:
                    _row_axpy(u[i], u[r], q)
        r += 1
    return a, u, r


def pivots(h: Sequence[Sequence[int]], rank: int) -> list[int]:
    out = []
    for i in range(rank):
        row = h[i]
        out.append(next(j for j, x in enumerate(row) if x))
    return out


class LeftSolver:
    """Solves ``x @ A = b`` over the integers for a fixed matrix ``A``.

    The HNF with transform is computed once; each solve is a forward
    substitution along the pivots.
    """

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        self.nrows = len(rows)
        self.ncols = ncols
        self.h, self.u, self.rank = hnf(rows, ncols, transform=True)
        self.piv = pivots(self.h, self.rank)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        res = list(map(int, b))
        y = [0] * self.rank
        for r, c in enumerate(self.piv):
            x = res[c]
            if x:
                p = self.h[r][c]
                if x % p:
                    return None
                q = x // p
                y[r] = q
                _row_axpy(res, self.h[r], q)
        if any(res):
            return None
        return vecmat(y, self.u, self.nrows) if self.rank else [0] * self.nrows

    def left_kernel(self) -> Matrix:
        return [list(row) for row in self.u[self.rank:]]


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """A basis (not reduced) of ``{x : x @ rows = 0}``."""
    if not rows:
        return []
    _, u, rank = hnf(rows, ncols, transform=True)
    return [list(r) for r in u[rank:]]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form with transforms.

    Returns ``(U, D, V, Vinv)`` with ``U @ m @ V == D``; ``U`` and ``V`` are
    unimodular, ``Vinv`` is the inverse of ``V`` and ``D`` is diagonal with
    non-negative entries ``d1 | d2 | ...``.  Pivots are chosen by smallest
    absolute value.
    """
    a = copy(m)
    rows = len(a)
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    u = identity(rows)
    v = identity(cols)
    vinv = identity(cols)

    def col_op(j: int, t: int, q: int) -> None:
        # column j -= q * column t, on D and V; matching row op on Vinv
        for row in a:
            row[j] -= q * row[t]
        for row in v:
            row[j] -= q * row[t]
        rj, rt = vinv[j], vinv[t]
        for k in range(cols):
            rt[k] += q * rj[k]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            ri = a[i]
            for j in range(t, cols):
                x = ri[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                x = a[i][t]
                if x:
                    q = x // piv
                    _row_axpy(a[i], a[t], q)
                    _row_axpy(u[i], u[t], q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                x = a[t][j]
                if x:
                    col_op(j, t, x // piv)
                    if a[t][j]:
                        dirty = True
            if dirty:
                best = (abs(a[t][t]), t, t)
                for i in range(t + 1, rows):
                    x = a[i][t]
                    if x and abs(x) < best[0]:
                        best = (abs(x), i, t)
                for j in range(t + 1, cols):
                    x = a[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                _, bi, bj = best
                if bi != t:
                    row_swap(t, bi)
                if bj != t:
                    col_swap(t, bj)
                continue
            bad = None
            for i in range(t + 1, rows):
                ri = a[i]
                for j in range(t + 1, cols):
                    if ri[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for k in range(cols):
                a[t][k] += a[bad][k]
            for k in range(rows):
                u[t][k] += u[bad][k]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v, vinv


def diagonal(d: Sequence[Sequence[int]]) -> list[int]:
    n = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(n)]


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss elimination)."""
    a = copy(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
