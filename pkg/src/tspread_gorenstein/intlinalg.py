"""Exact linear algebra over the integers and the rationals.

Matrices are plain lists of rows. Entries are ``int`` or ``Fraction``; nothing
here ever touches floating point.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from math import gcd

Matrix = list[list[int]]


def content(row: Sequence[int]) -> int:
    g = 0
    for x in row:
        g = gcd(g, x)
    return g


def primitive(row: Sequence[int]) -> list[int]:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = content(row)
    if g in (0, 1):
        return list(row)
    return [x // g for x in row]


def integral_scale(row: Sequence[Fraction | int]) -> tuple[list[int], Fraction]:
    """Return ``(v, s)`` with ``v = s * row`` primitive integral and ``s > 0``."""
    den = 1
    for x in row:
        q = Fraction(x).denominator
        den = den * q // gcd(den, q)
    ints = [int(Fraction(x) * den) for x in row]
    g = content(ints)
    if g == 0:
        return ints, Fraction(1)
    return [x // g for x in ints], Fraction(den, g)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns the nonzero rows and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q, by fraction-free elimination on integer rows."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    if any(isinstance(x, Fraction) for r in m for x in r):
        m = [integral_scale(r)[0] for r in m]
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                a = piv[c]
                m[i] = primitive([a * x - f * y for x, y in zip(m[i], piv)])
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of ``{x : A x = 0}`` as primitive integer vectors."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(integral_scale(v)[0])
    return basis


def independent_rows(rows: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a greedily chosen maximal linearly independent subset of rows."""
    chosen: list[int] = []
    echelon: list[tuple[int, list[int]]] = []
    for idx, row in enumerate(rows):
        v = list(row)
        for c, e in echelon:
            if v[c]:
                a, f = e[c], v[c]
                v = [a * x - f * y for x, y in zip(v, e)]
        c = next((j for j, x in enumerate(v) if x), None)
        if c is not None:
            echelon.append((c, primitive(v)))
            chosen.append(idx)
    return chosen


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def det(a: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class _Tracked:
    """Integer matrix with recorded unimodular row/column operations.

    Keeps ``U @ A0 @ V == A`` and ``Vinv @ V == I`` at every step.
    """

    def __init__(self, a: Sequence[Sequence[int]], ncols: int):
        self.a = [list(r) for r in a]
        self.m = len(self.a)
        self.n = ncols
        self.u = identity(self.m)
        self.v = identity(self.n)
        self.vinv = identity(self.n)

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def add_row(self, dst: int, src: int, c: int) -> None:
        # row_dst += c * row_src
        if c:
            self.a[dst] = [x + c * y for x, y in zip(self.a[dst], self.a[src])]
            self.u[dst] = [x + c * y for x, y in zip(self.u[dst], self.u[src])]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.v):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def add_col(self, dst: int, src: int, c: int) -> None:
        # col_dst += c * col_src; the inverse subtracts c * row_dst from row_src
        if not c:
            return
        for mat in (self.a, self.v):
            for row in mat:
                row[dst] += c * row[src]
        self.vinv[src] = [x - c * y for x, y in zip(self.vinv[src], self.vinv[dst])]

    def negate_col(self, i: int) -> None:
        for mat in (self.a, self.v):
            for row in mat:
                row[i] = -row[i]
        self.vinv[i] = [-x for x in self.vinv[i]]


def smith_normal_form(
    a: Sequence[Sequence[int]], ncols: int | None = None
) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Smith normal form with transforms.

    Returns ``(D, U, V, Vinv)`` such that ``U @ A @ V == D``, ``D`` is diagonal
    with nonnegative entries each dividing the next, and ``U``, ``V`` are
    unimodular with ``Vinv @ V == I``.
    """
    if ncols is None:
        ncols = len(a[0]) if a else 0
    t = _Tracked(a, ncols)
    m, n = t.m, t.n
    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    x = t.a[i][j]
                    if x and (best is None or abs(x) < abs(t.a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return t.a, t.u, t.v, t.vinv
            t.swap_rows(k, best[0])
            t.swap_cols(k, best[1])
            if t.a[k][k] < 0:
                t.negate_row(k)
            p = t.a[k][k]
            dirty = False
            for i in range(k + 1, m):
                q = t.a[i][k] // p
                t.add_row(i, k, -q)
                dirty |= t.a[i][k] != 0
            for j in range(k + 1, n):
                q = t.a[k][j] // p
                t.add_col(j, k, -q)
                dirty |= t.a[k][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if t.a[i][j] % p),
                None,
            )
            if bad is None:
                break
            t.add_row(k, bad, 1)
    return t.a, t.u, t.v, t.vinv


def column_hermite(a: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Column-style echelon form by unimodular column operations.

    Returns ``(H, V, Vinv)`` with ``A @ V == H``; the nonzero columns of ``H``
    come first and form a lower echelon block with positive pivots, and
    entries left of each pivot are reduced modulo it.
    """
    if ncols is None:
        ncols = len(a[0]) if a else 0
    t = _Tracked(a, ncols)
    c = 0
    pivots: list[tuple[int, int]] = []
    for i in range(t.m):
        if c == t.n:
            break
        while True:
            nz = [j for j in range(c, t.n) if t.a[i][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(t.a[i][j]))
            t.swap_cols(c, j0)
            p = t.a[i][c]
            done = True
            for j in range(c + 1, t.n):
                if t.a[i][j]:
                    t.add_col(j, c, -(t.a[i][j] // p))
                    done = done and t.a[i][j] == 0
            if done:
                break
        if any(t.a[i][j] for j in range(c, t.n)):
            if t.a[i][c] < 0:
                t.negate_col(c)
            pivots.append((i, c))
            c += 1
    for i, pc in pivots:
        p = t.a[i][pc]
        for j in range(pc):
            q = t.a[i][j] // p
            t.add_col(j, pc, -q)
    return t.a, t.v, t.vinv
