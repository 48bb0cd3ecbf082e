"""Exact dense linear algebra over prime fields F_p.

Everything downstream (module theory, resolutions, cohomology, Groebner
bases) reduces to the handful of primitives in this file: reduced row
echelon form with deterministic pivoting, kernels, and linear solving.
Matrices are immutable, stored dense row-major as numpy int64 with
entries normalized to [0, p).
"""

from __future__ import annotations

import numpy as np


class DimensionMismatch(ValueError):
    """Shapes do not line up.  A usage error, never a math answer."""


class NotPrime(ValueError):
    pass


class PrimeField:
    """The field F_p for a prime 2 <= p < 2**31."""

    def __init__(self, p: int):
        if not (2 <= p < 2**31):
            raise NotPrime(f"modulus out of range: {p}")
        if p % 2 == 0 and p != 2:
            raise NotPrime(f"not prime: {p}")
        d = 3
        while d * d <= p:
            if p % d == 0:
                raise NotPrime(f"not prime: {p}")
            d += 2
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class Matrix:
    """Immutable dense matrix over a prime field."""

    __slots__ = ("field", "rows", "cols", "a")

    def __init__(self, field: PrimeField, data):
        a = np.asarray(data, dtype=np.int64)
        if a.ndim != 2:
            raise DimensionMismatch(f"expected 2-d data, got shape {a.shape}")
        a = np.mod(a, field.p)
        a.flags.writeable = False
        self.field = field
        self.rows, self.cols = a.shape
        self.a = a

    @staticmethod
    def zeros(field: PrimeField, rows: int, cols: int) -> "Matrix":
        return Matrix(field, np.zeros((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(field: PrimeField, n: int) -> "Matrix":
        return Matrix(field, np.eye(n, dtype=np.int64))

    @staticmethod
    def from_rows(field: PrimeField, rows: list, cols: int | None = None) -> "Matrix":
        if not rows:
            return Matrix.zeros(field, 0, 0 if cols is None else cols)
        return Matrix(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @staticmethod
    def column(field: PrimeField, entries) -> "Matrix":
        e = np.asarray(list(entries), dtype=np.int64)
        return Matrix(field, e.reshape(len(e), 1))

    @property
    def entries(self) -> list[int]:
        """Row-major flat entry list."""
        return [int(x) for x in self.a.reshape(-1)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.field.p, self.rows, self.cols, self.a.tobytes()))

    def is_zero(self) -> bool:
        return bool(np.all(self.a == 0))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, self.a + other.a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, self.a - other.a)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, -self.a)

    def scale(self, c: int) -> "Matrix":
        return Matrix(self.field, self.a * (c % self.field.p))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        # int64 products are safe only while inner_dim * (p-1)^2 < 2^62
        if self.cols and (p - 1) ** 2 > (2**62) // max(self.cols, 1):
            prod = (self.a.astype(object) @ other.a.astype(object)) % p
            return Matrix(self.field, prod.astype(np.int64))
        return Matrix(self.field, self.a @ other.a)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.a.T)

    @staticmethod
    def hstack(mats: list["Matrix"]) -> "Matrix":
        return Matrix(mats[0].field, np.hstack([m.a for m in mats]))

    @staticmethod
    def vstack(mats: list["Matrix"]) -> "Matrix":
        field = mats[0].field
        return Matrix(field, np.vstack([m.a for m in mats]))

    def col(self, j: int) -> "Matrix":
        return Matrix(self.field, self.a[:, j : j + 1])

    def submatrix(self, row_slice, col_slice) -> "Matrix":
        return Matrix(self.field, self.a[row_slice, col_slice])

    def __repr__(self):
        return f"Matrix({self.field}, {self.a.tolist()})"

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    m = a.copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # deterministic pivoting: first row with a nonzero entry in column c
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            m[mask] = (m[mask] - np.outer(col[mask], m[r])) % p
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rref(A: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the ascending pivot columns."""
    m, pivots = _rref_array(A.a, A.field.p)
    return Matrix(A.field, m), pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a basis of the right null space; count = cols - rank."""
    R, pivots = rref(A)
    p = A.field.p
    free = [c for c in range(A.cols) if c not in set(pivots)]
    K = np.zeros((A.cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        K[fc, j] = 1
        for r, pc in enumerate(pivots):
            K[pc, j] = (-int(R.a[r, fc])) % p
    return Matrix(A.field, K)


def solve(A: Matrix, b) -> Matrix | None:
    """Solve Ax = b; None when inconsistent.

    The solution is the particular one with zeros in all non-pivot
    coordinates, so results are reproducible bit-for-bit.
    """
    if not isinstance(b, Matrix):
        b = Matrix.column(A.field, b)
    if b.rows != A.rows or b.cols != 1:
        raise DimensionMismatch(f"rhs of shape {b.shape} for matrix {A.shape}")
    X = solve_matrix(A, b)
    return X


def solve_matrix(A: Matrix, B: Matrix) -> Matrix | None:
    """Solve AX = B columnwise; None when any column is inconsistent."""
    if B.rows != A.rows:
        raise DimensionMismatch(f"rhs rows {B.rows} != matrix rows {A.rows}")
    aug = np.hstack([A.a, B.a])
    R, pivots = _rref_array(aug, A.field.p)
    for c in pivots:
        if c >= A.cols:
            return None
    X = np.zeros((A.cols, B.cols), dtype=np.int64)
    for r, pc in enumerate(pivots):
        X[pc] = R[r, A.cols :]
    return Matrix(A.field, X)


def column_space_basis(A: Matrix) -> Matrix:
    """Columns of A at the pivot positions: a deterministic image basis."""
    _, piv = rref(A)
    cols = [A.a[:, j] for j in piv]
    if not cols:
        return Matrix.zeros(A.field, A.rows, 0)
    return Matrix(A.field, np.stack(cols, axis=1))


def in_column_span(B: Matrix, v: Matrix) -> bool:
    return solve_matrix(B, v) is not None
