"""Exact integer and rational linear algebra for lattice computations.

Everything here runs on Python's arbitrary-precision integers and on
``fractions.Fraction``; no floating point is used anywhere in the package.
The exposed normal forms are deterministic, so matrices can serve as
dictionary keys for canonical lattice identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import floor, gcd
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable integer matrix, stored row-major as nested tuples.

    ``cols`` must be passed explicitly only for matrices with zero rows,
    where the width cannot be inferred.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: Optional[int] = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
        else:
            width = 0 if cols is None else cols
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        if columns:
            height = len(columns[0])
            if any(len(c) != height for c in columns):
                raise ValueError("ragged columns")
        else:
            if rows is None:
                raise ValueError("rows required for a matrix with no columns")
            height = rows
        return cls([[c[i] for c in columns] for i in range(height)], cols=len(columns))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def column_submatrix(self, js: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[row[j] for j in js] for row in self.entries], cols=len(js))

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return IntMatrix([ra + rb for ra, rb in zip(self.entries, other.entries)], cols=self.cols + other.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries],
            cols=other.cols,
        )

    def mat_vec(self, v: Sequence) -> list:
        """Matrix times vector; accepts int or Fraction coordinates."""
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return [sum(a * x for a, x in zip(row, v)) for row in self.entries]

    def diagonal(self) -> list:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("square matrix required")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self.entries))!r}, cols={self.cols})"


@dataclass(frozen=True)
class SnfDecomposition:
    """Unimodular U, V and diagonal D with U @ A @ V == D."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix


def _argmin_pivot(m: list, t: int, rows: int, cols: int):
    best = None
    pos = None
    for i in range(t, rows):
        row = m[i]
        for j in range(t, cols):
            v = row[j]
            if v:
                key = (abs(v), i, j)
                if best is None or key < best:
                    best = key
                    pos = (i, j)
    return pos


@lru_cache(maxsize=65536)
def smith_normal_form(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form with deterministic pivoting.

    Pivots are chosen as the smallest-magnitude nonzero entry of the
    working submatrix, ties broken by position, so U and V are
    reproducible across runs.  Diagonal entries are nonnegative and form
    a divisibility chain.
    """
    rows, cols = A.rows, A.cols
    d = [list(r) for r in A.entries]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_sub(i, k, q):
        if q:
            di, dk = d[i], d[k]
            ui, uk = u[i], u[k]
            for j in range(cols):
                di[j] -= q * dk[j]
            for j in range(rows):
                ui[j] -= q * uk[j]

    def row_add(i, k):
        row_sub(i, k, -1)

    def col_sub(j, k, q):
        if q:
            for r in d:
                r[j] -= q * r[k]
            for r in v:
                r[j] -= q * r[k]

    def row_swap(i, k):
        if i != k:
            d[i], d[k] = d[k], d[i]
            u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        if j != k:
            for r in d:
                r[j], r[k] = r[k], r[j]
            for r in v:
                r[j], r[k] = r[k], r[j]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        pos = _argmin_pivot(d, t, rows, cols)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            restart = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_sub(i, t, q)
                    if d[i][t]:
                        # remainder becomes the new, smaller pivot
                        row_swap(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_sub(j, t, q)
                    if d[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            # pivot must divide the remaining submatrix for the chain
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender)
        t += 1

    for k in range(limit):
        if d[k][k] < 0:
            for j in range(cols):
                d[k][j] = -d[k][j]
            for j in range(rows):
                u[k][j] = -u[k][j]

    return SnfDecomposition(
        IntMatrix(u, cols=rows), IntMatrix(d, cols=cols), IntMatrix(v, cols=cols)
    )


def elementary_divisors(A: IntMatrix) -> list:
    return [x for x in smith_normal_form(A).D.diagonal() if x]


def multiplicity(A: IntMatrix) -> int:
    """Product of the nonzero elementary divisors; 1 for an empty matrix.

    For independent columns this is the number of connected components of
    the common kernel of the corresponding torus characters.
    """
    out = 1
    for x in elementary_divisors(A):
        out *= x
    return out


def int_rank(A: IntMatrix) -> int:
    return rank_of_rows([list(r) for r in A.entries])


def rank_of_rows(rows: list) -> int:
    """Rank of a list of integer rows, fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    width = len(mat[0])
    rank = 0
    prev = 1
    for col in range(width):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for i in range(rank + 1, len(mat)):
            c = mat[i][col]
            for j in range(col, width):
                mat[i][j] = (mat[i][j] * p - c * mat[rank][j]) // prev
        prev = p
        rank += 1
        if rank == len(mat):
            break
    return rank


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of rows with int or Fraction entries (rows scaled to integers)."""
    scaled = []
    for row in rows:
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
        scaled.append([int(x * denom) for x in row])
    return rank_of_rows(scaled)


def _xgcd(a: int, b: int):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def _row_hermite(rows: list, width: int) -> list:
    """Canonical row echelon over the integers.

    Pivot columns strictly increase, pivots are positive, and entries above
    each pivot are reduced into [0, pivot).
    """
    mat = [list(r) for r in rows if any(r)]
    cur = 0
    pivot_cols = []
    for col in range(width):
        piv = None
        for i in range(cur, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[cur], mat[piv] = mat[piv], mat[cur]
        for i in range(cur + 1, len(mat)):
            b = mat[i][col]
            if b == 0:
                continue
            a = mat[cur][col]
            g, x, y = _xgcd(a, b)
            ca, cb = a // g, b // g
            ri, rc = mat[i], mat[cur]
            mat[cur] = [x * p + y * q for p, q in zip(rc, ri)]
            mat[i] = [-cb * p + ca * q for p, q in zip(rc, ri)]
        if mat[cur][col] < 0:
            mat[cur] = [-x for x in mat[cur]]
        pivot_cols.append(col)
        cur += 1
    mat = mat[:cur]
    for k, col in enumerate(pivot_cols):
        p = mat[k][col]
        for i in range(k):
            q = mat[i][col] // p
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[k])]
    return mat


def column_hermite_form(M: IntMatrix) -> IntMatrix:
    """Canonical column-style Hermite form of the column lattice of M.

    Zero columns are dropped; the result has strictly increasing pivot
    rows, positive pivots, and the remaining pivot-row entries reduced
    modulo the pivot.  Two matrices span the same column lattice iff their
    forms coincide, which is the only property the rest of the package
    relies on.
    """
    reduced = _row_hermite([list(c) for c in M.columns()], M.rows)
    return IntMatrix.from_columns(reduced, rows=M.rows)


def kernel_lattice(A: IntMatrix) -> IntMatrix:
    """Canonical basis of the integer kernel {v : A @ v = 0}."""
    snf = smith_normal_form(A)
    r = len([x for x in snf.D.diagonal() if x])
    basis = [snf.V.column(j) for j in range(r, A.cols)]
    return column_hermite_form(IntMatrix.from_columns(basis, rows=A.cols))


def saturation(L: IntMatrix) -> IntMatrix:
    """Canonical basis of (rational column span of L) meet Z^rows."""
    annihilator = kernel_lattice(L.transpose())
    return kernel_lattice(annihilator.transpose())


def hnf_solve(H: IntMatrix, v: Sequence[int]):
    """Integer coordinates of v in the column-Hermite basis H, else None."""
    rem = [int(x) for x in v]
    if len(rem) != H.rows:
        raise ValueError("length mismatch")
    coords = []
    for j in range(H.cols):
        p = 0
        while p < H.rows and H.entries[p][j] == 0:
            p += 1
        q, r = divmod(rem[p], H.entries[p][j])
        if r:
            return None
        if q:
            for i in range(H.rows):
                rem[i] -= q * H.entries[i][j]
        coords.append(q)
    if any(rem):
        return None
    return tuple(coords)


def in_lattice(H: IntMatrix, v: Sequence[int]) -> bool:
    return hnf_solve(H, v) is not None


def frac_mod1(x: Fraction) -> Fraction:
    return x - floor(x)


def torsion_cosets(A: IntMatrix) -> list:
    """Rational labels of the components of the common kernel of the columns.

    The columns of A must be linearly independent.  Returns exactly
    multiplicity(A) vectors x in [0,1)^rows with A^T x integral, pairwise
    inequivalent modulo Z^rows plus the rational kernel of A^T.  The
    enumeration is canonical: tuples (a_1/d_1, ..., a_k/d_k) over the
    elementary divisors d_i, pushed through the Smith transform of A^T.
    """
    k, d = A.cols, A.rows
    snf = smith_normal_form(A.transpose())
    divisors = snf.D.diagonal()
    if len([x for x in divisors if x]) < k:
        raise ValueError("columns must be linearly independent")
    out = []
    for tup in cartesian(*(range(di) for di in divisors)):
        y = [Fraction(a, di) for a, di in zip(tup, divisors)]
        y += [Fraction(0)] * (d - k)
        x = snf.V.mat_vec(y)
        out.append(tuple(frac_mod1(c) for c in x))
    return out
