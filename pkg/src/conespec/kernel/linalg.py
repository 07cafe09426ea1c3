"""Exact dense linear algebra over any field whose elements support + - * / and
an exact zero test (``Fraction`` or :class:`NFElement`)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import as_fraction, poly

Matrix = list  # list of rows


class RationalMatrix:
    """Immutable square matrix with rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        r = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        n = len(r)
        if n == 0 or any(len(row) != n for row in r):
            raise ValueError("RationalMatrix must be square with dimension >= 1")
        object.__setattr__(self, "rows", r)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def coerce(cls, m) -> "RationalMatrix":
        return m if isinstance(m, RationalMatrix) else cls(m)

    @property
    def n(self) -> int:
        return len(self.rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(transpose(self.rows))

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            return RationalMatrix(mat_mul(self.rows, other.rows))
        return mat_vec(self.rows, other)

    def __mul__(self, c):
        c = as_fraction(c)
        return RationalMatrix([[x * c for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __pow__(self, k: int) -> "RationalMatrix":
        return RationalMatrix(mat_pow(self.rows, k))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "RationalMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    def block_diag(self, other: "RationalMatrix") -> "RationalMatrix":
        n, m = self.n, other.n
        rows = [list(r) + [0] * m for r in self.rows] + [[0] * n + list(r) for r in other.rows]
        return RationalMatrix(rows)


# ---------------------------------------------------------------------------
# generic helpers

def zeros(r: int, c: int, zero=Fraction(0)) -> Matrix:
    return [[zero] * c for _ in range(r)]


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> Matrix:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            out_row.append(acc if not isinstance(acc, int) else Fraction(acc))
        out.append(out_row)
    return out


def mat_vec(A: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc if not isinstance(acc, int) else Fraction(acc))
    return out


def vec_mat(v: Sequence, A: Sequence[Sequence]) -> list:
    return mat_vec(transpose(A), v)


def dot(u: Sequence, v: Sequence):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc if not isinstance(acc, int) else Fraction(acc)


def mat_add(A, B) -> Matrix:
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A, B) -> Matrix:
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(A, c) -> Matrix:
    return [[a * c for a in r] for r in A]


def mat_pow(A, k: int) -> Matrix:
    n = len(A)
    result = identity(n)
    base = [list(r) for r in A]
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def shifted(A, c) -> Matrix:
    """A - c*I."""
    return [[(a - c) if i == j else a for j, a in enumerate(r)] for i, r in enumerate(A)]


def poly_of_matrix(p: Sequence, A, one=None) -> Matrix:
    """Evaluate a polynomial (constant term first, coefficients in the field) at A."""
    n = len(A)
    acc = zeros(n, n)
    for c in reversed(p):
        acc = mat_mul(acc, A)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c] if not isinstance(M[r][c], int) else Fraction(1, M[r][c])
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A: Sequence[Sequence], ncols: int | None = None, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    """Basis of {x : A x = 0}."""
    if not A:
        n = ncols or 0
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    R, piv = rref(A)
    n = len(A[0])
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def independent_columns(A: Sequence[Sequence]) -> list[int]:
    if not A:
        return []
    return rref(A)[1]


def column_space(A: Sequence[Sequence]) -> list[list]:
    """Basis (as vectors) of the column space, taken from the original columns."""
    cols = independent_columns(A)
    return [[row[j] for row in A] for j in cols]


def row_space_basis(vectors: Sequence[Sequence]) -> list[list]:
    """A basis of the span of the given vectors (subset of the input)."""
    if not vectors:
        return []
    cols = independent_columns(transpose(vectors))
    return [list(vectors[j]) for j in cols]


def solve(A: Sequence[Sequence], b: Sequence) -> list | None:
    """One solution x of A x = b, or None when inconsistent."""
    rows = len(A)
    if rows == 0:
        return []
    n = len(A[0])
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, piv = rref(aug)
    if n in piv:
        return None
    zero = b[0] * 0 if b else Fraction(0)
    x = [zero] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def solve_matrix(A, B) -> Matrix | None:
    """X with A X = B (column by column)."""
    cols = []
    for col in transpose(B):
        x = solve(A, col)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


def inverse(A) -> Matrix | None:
    n = len(A)
    aug = [list(A[i]) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


def determinant(A) -> Fraction:
    M = [list(r) for r in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not basis:
        return not any(v)
    return rank(list(basis) + [list(v)]) == rank(basis)


def char_poly_of_rows(A: Sequence[Sequence]) -> tuple:
    """Monic characteristic polynomial det(tI - A), constant term first
    (Faddeev-LeVerrier recursion)."""
    n = len(A)
    A = [[as_fraction(x) for x in r] for r in A]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = mat_mul(A, Mk)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            Mk[i][i] += c_prev
        AM = mat_mul(A, Mk)
        tr = sum((AM[i][i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -tr / k
    return poly(coeffs)


def char_poly(M) -> tuple:
    """Monic characteristic polynomial of a rational matrix (constant term first)."""
    return char_poly_of_rows(RationalMatrix.coerce(M).rows)
