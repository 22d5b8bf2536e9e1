"""Exact linear algebra over the integers and rationals.

Small dense matrices with arbitrary-precision integer entries, rational
vectors built on :class:`fractions.Fraction`, Smith normal form with
transformation matrices, and the lattice predicates built on top of it:
coset representatives, image membership, exact solving and GF(2) solution
counting.  Everything here is a pure function on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _mixed_radix
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]
Vec = tuple[Fraction, ...]


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("matrix entries must be integers, not bool")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    raise TypeError(f"expected an exact integer, got {x!r}")


def vector(entries: Iterable) -> Vec:
    """Exact rational vector from ints, Fractions or strings like ``"3/4"``."""
    return tuple(Fraction(e) for e in entries)


def zero_vector(n: int) -> Vec:
    return (Fraction(0),) * n


def _check_same_length(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"vector lengths differ: {len(u)} vs {len(v)}")


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    _check_same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    _check_same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u: Sequence[Scalar]) -> tuple:
    return tuple(-a for a in u)


def vec_scale(c: Scalar, u: Sequence[Scalar]) -> tuple:
    return tuple(c * a for a in u)


def vec_mod1(u: Sequence[Scalar]) -> tuple:
    """Reduce every component into [0, 1)."""
    return tuple(a % 1 for a in u)


def is_integral(u: Sequence[Scalar]) -> bool:
    return all(a % 1 == 0 for a in u)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable and hashable."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_as_int(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged rows in matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "IntMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(((0,) * ncols,) * nrows)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def vstack(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        if not mats:
            raise ValueError("nothing to stack")
        width = mats[0].ncols
        if any(m.ncols != width for m in mats):
            raise ValueError("column counts differ in vertical stack")
        return cls(tuple(row for m in mats for row in m.rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions do not match")
        cols = tuple(zip(*other.rows))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shapes do not match")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shapes do not match")
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in row) for row in self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def apply(self, v: Sequence[Scalar]) -> tuple:
        """Matrix-vector product; int vectors stay int, rationals stay exact."""
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace requires a square matrix")
        return sum(self.rows[i][i] for i in range(self.nrows))

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant requires a square matrix")
        n = self.nrows
        a = [list(row) for row in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square and self.det() in (1, -1)

    def int_inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix, exact and integral."""
        inv = rational_inverse(self)
        return IntMatrix(tuple(tuple(_as_int(x) for x in row) for row in inv))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows) + "]"


def rational_inverse(m: IntMatrix) -> tuple[Vec, ...]:
    """Exact inverse of a nonsingular square matrix, as rows of Fractions."""
    if not m.is_square:
        raise ValueError("inverse requires a square matrix")
    n = m.nrows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def rat_apply(rows: Sequence[Sequence[Fraction]], v: Sequence[Scalar]) -> Vec:
    """Apply a rational matrix (as rows) to a vector."""
    if len(v) != len(rows[0]):
        raise ValueError("vector length does not match column count")
    return tuple(sum(a * x for a, x in zip(row, v)) for row in rows)


@dataclass(frozen=True)
class SnfDecomposition:
    """Smith normal form data: p @ matrix @ q == s exactly.

    ``p`` and ``q`` are unimodular, ``s`` is diagonal with nonnegative
    entries and each diagonal entry divides the next.  ``p_inv`` and
    ``q_inv`` are the exact inverses, tracked during the reduction.
    """

    p: IntMatrix
    s: IntMatrix
    q: IntMatrix
    p_inv: IntMatrix
    q_inv: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(m: IntMatrix) -> SnfDecomposition:
    """Smith normal form with transformations, by elementary row/column ops.

    Pivots are chosen with minimal absolute value; a pivot only advances once
    it divides every entry of the remaining submatrix, which yields the
    divisibility chain directly.  Invariant factors are returned positive.
    """
    nrows, ncols = m.shape
    a = [list(row) for row in m.rows]
    p = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    p_inv = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    q = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    q_inv = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]
        for row in p_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]
        q_inv[i], q_inv[j] = q_inv[j], q_inv[i]

    def add_row(i, j, k):
        # row_i += k * row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        p[i] = [x + k * y for x, y in zip(p[i], p[j])]
        for row in p_inv:
            row[j] -= k * row[i]

    def add_col(j, i, k):
        # col_j += k * col_i
        for row in a:
            row[j] += k * row[i]
        for row in q:
            row[j] += k * row[i]
        q_inv[i] = [x - k * y for x, y in zip(q_inv[i], q_inv[j])]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        p[i] = [-x for x in p[i]]
        for row in p_inv:
            row[i] = -row[i]

    t = 0
    while t < min(nrows, ncols):
        # Smallest nonzero entry of the remaining submatrix becomes the pivot.
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        stable = True
        for i in range(t + 1, nrows):
            if a[i][t] != 0:
                add_row(i, t, -(a[i][t] // a[t][t]))
                if a[i][t] != 0:
                    stable = False
        for j in range(t + 1, ncols):
            if a[t][j] != 0:
                add_col(j, t, -(a[t][j] // a[t][t]))
                if a[t][j] != 0:
                    stable = False
        if not stable:
            continue
        # Row and column are clear; enforce divisibility over the submatrix.
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    factors = tuple(a[i][i] for i in range(min(nrows, ncols)) if a[i][i] != 0)
    return SnfDecomposition(
        p=IntMatrix.from_rows(p),
        s=IntMatrix.from_rows(a),
        q=IntMatrix.from_rows(q),
        p_inv=IntMatrix.from_rows(p_inv),
        q_inv=IntMatrix.from_rows(q_inv),
        invariant_factors=factors,
    )


def mod2_solution_count(b_mat: IntMatrix, b_vec: Sequence[Scalar]) -> int:
    """Number of solutions over GF(2) of the reduced system b_mat . x = b_vec.

    Returns 0 for an inconsistent system, 2**(n - rank) otherwise; always 1
    when det(b_mat) is odd.
    """
    if not b_mat.is_square:
        raise ValueError("coefficient matrix must be square")
    n = b_mat.nrows
    if len(b_vec) != n:
        raise ValueError("right-hand side length does not match matrix")
    aug = [[x % 2 for x in row] + [_as_int(b) % 2] for row, b in zip(b_mat.rows, b_vec)]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        for r in range(n):
            if r != rank and aug[r][col]:
                aug[r] = [(x ^ y) for x, y in zip(aug[r], aug[rank])]
        rank += 1
    if any(row[n] for row in aug[rank:]):
        return 0
    return 2 ** (n - rank)


def coset_representatives(b: IntMatrix) -> list[tuple[int, ...]]:
    """Representatives of the cosets of b . Z^n in Z^n, one per coset.

    Requires det(b) != 0 (finite index); yields exactly |det(b)| vectors in
    the deterministic order induced by mixed-radix enumeration through the
    Smith normal form.
    """
    if not b.is_square:
        raise ValueError("lattice image requires a square matrix")
    if b.det() == 0:
        raise ValueError("matrix is singular: infinitely many cosets")
    snf = smith_normal_form(b)
    reps = []
    for combo in _mixed_radix(*(range(s) for s in snf.invariant_factors)):
        reps.append(snf.p_inv.apply(combo))
    return reps


def in_lattice_image(b: IntMatrix, v: Sequence[Scalar]) -> bool:
    """Whether v = b . z for some integer vector z (b square, may be singular)."""
    if not b.is_square:
        raise ValueError("lattice image requires a square matrix")
    if len(v) != b.ncols:
        raise ValueError("vector length does not match matrix")
    snf = smith_normal_form(b)
    t = snf.p.apply(tuple(Fraction(x) for x in v))
    r = snf.rank
    for i, s in enumerate(snf.invariant_factors):
        if t[i] % s != 0:
            return False
    return all(t[i] == 0 for i in range(r, b.nrows))


def solve_exact(b: IntMatrix, v: Sequence[Scalar]) -> Vec:
    """The unique exact rational solution of b . x = v, for nonsingular b."""
    if not b.is_square:
        raise ValueError("exact solve requires a square matrix")
    n = b.nrows
    if len(v) != n:
        raise ValueError("vector length does not match matrix")
    a = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(b.rows, v)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))
