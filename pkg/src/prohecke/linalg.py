"""Dense exact matrices over a finite field.

Matrices are immutable; rows are tuples of field ints.  Modules use the
row-vector convention (v -> v @ A), so images and invariant subspaces are
row spaces throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import GF


class LinAlgError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: GF, rows: Iterable[Sequence[int]], ncols: int | None = None):
        self.field = field
        rs = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise LinAlgError("ncols required for a matrix with no rows")
            ncols = len(rs[0])
        for r in rs:
            if len(r) != ncols:
                raise LinAlgError("ragged rows")
            for x in r:
                if not 0 <= x < field.q:
                    raise LinAlgError(f"{x} is not an element of {field}")
        self.rows = rs
        self.nrows = len(rs)
        self.ncols = ncols
        self._hash = None

    # -- constructors
    @classmethod
    def _make(cls, field: GF, rows, ncols: int) -> "Matrix":
        """Trusted constructor for results of exact arithmetic (no validation)."""
        self = object.__new__(cls)
        self.field = field
        self.rows = rows if isinstance(rows, tuple) else tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = ncols
        self._hash = None
        return self

    @classmethod
    def zeros(cls, field: GF, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls(field, [[0] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def scalar(cls, field: GF, n: int, c: int) -> "Matrix":
        return cls(field, [[c if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field: GF, entries: Sequence[int]) -> "Matrix":
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_ints(cls, field: GF, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "Matrix":
        """Reduce arbitrary integers into the prime field."""
        return cls(field, [[field(x) for x in r] for r in rows], ncols)

    @classmethod
    def block_diag(cls, field: GF, blocks: Sequence["Matrix"]) -> "Matrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls(field, out, m)

    @classmethod
    def blocks(cls, field: GF, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        rows: list[list[int]] = []
        for brow in grid:
            h = brow[0].nrows
            for i in range(h):
                row: list[int] = []
                for b in brow:
                    if b.nrows != h:
                        raise LinAlgError("block heights differ")
                    row.extend(b.rows[i])
                rows.append(row)
        ncols = sum(b.ncols for b in grid[0])
        return cls(field, rows, ncols)

    # -- basic protocol
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.q, self.ncols, self.rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.rows]})"

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def _check(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise LinAlgError("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise LinAlgError("shape mismatch in addition")
        F = self.field
        if F.e == 1:
            p = F.p
            return Matrix._make(F, tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)
        return Matrix._make(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        F = self.field
        return Matrix._make(F, [[F.neg(a) for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: int) -> "Matrix":
        F = self.field
        return Matrix._make(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        if F.e == 1:
            p = F.p
            out = tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows)
        else:
            out = [[F.sum(F.mul(a, b) for a, b in zip(r, c)) for c in cols] for r in self.rows]
        return Matrix._make(F, out, other.ncols)

    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix(self.field, [[] for _ in range(self.ncols)], 0)
        return Matrix(self.field, list(zip(*self.rows)), self.nrows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row_vector(self, i: int) -> "Matrix":
        return Matrix(self.field, [self.rows[i]], self.ncols)

    def stack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.ncols:
            raise LinAlgError("column mismatch in stack")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    # -- elimination
    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and pivot columns."""
        F = self.field
        m = [list(r) for r in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, self.nrows) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = F.inv(m[r][c])
            m[r] = [F.mul(inv, x) for x in m[r]]
            for i in range(self.nrows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix._make(F, m, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_space(self) -> "Matrix":
        """Basis (rows, in reduced echelon form) of the row space."""
        R, piv = self.rref()
        return Matrix(self.field, R.rows[:len(piv)], self.ncols)

    def nullspace(self) -> "Matrix":
        """Rows spanning {x : self @ x^T = 0}."""
        F = self.field
        R, piv = self.rref()
        free = [c for c in range(self.ncols) if c not in piv]
        basis = []
        for f in free:
            v = [0] * self.ncols
            v[f] = 1
            for i, c in enumerate(piv):
                v[c] = F.neg(R.rows[i][f])
            basis.append(v)
        return Matrix(F, basis, self.ncols)

    def left_kernel(self) -> "Matrix":
        """Rows spanning {x : x @ self = 0}."""
        return self.T().nullspace()

    def det(self) -> int:
        if not self.is_square():
            raise LinAlgError("determinant of a non-square matrix")
        F = self.field
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = F.neg(d)
            d = F.mul(d, m[c][c])
            inv = F.inv(m[c][c])
            for i in range(c + 1, n):
                if m[i][c]:
                    f = F.mul(m[i][c], inv)
                    m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
        return d

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise LinAlgError("inverse of a non-square matrix")
        n = self.nrows
        F = self.field
        aug = Matrix(F, [r + tuple(1 if i == j else 0 for j in range(n)) for i, r in enumerate(self.rows)], 2 * n)
        R, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise LinAlgError("matrix is singular")
        return Matrix._make(F, [r[n:] for r in R.rows], n)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square():
            raise LinAlgError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 1:
            return self
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_nilpotent(self) -> bool:
        return (self ** self.nrows).is_zero() if self.nrows else True


@dataclass(frozen=True)
class SolveResult:
    """Outcome of solving A x = b for column vectors x."""
    rank: int
    consistent: bool
    particular: tuple[int, ...] | None
    kernel: Matrix  # rows span the solution space of A x = 0


def rank_solve(A: Matrix, b: Sequence[int]) -> SolveResult:
    if len(b) != A.nrows:
        raise LinAlgError("right-hand side has the wrong length")
    F = A.field
    aug = Matrix(F, [r + (bi,) for r, bi in zip(A.rows, b)], A.ncols + 1)
    R, piv = aug.rref()
    kernel = A.nullspace()
    rank = len([c for c in piv if c < A.ncols])
    if A.ncols in piv:
        return SolveResult(rank, False, None, kernel)
    x = [0] * A.ncols
    for i, c in enumerate(piv):
        x[c] = R.rows[i][A.ncols]
    return SolveResult(rank, True, tuple(x), kernel)


def solve_rows(B: Matrix, v: Sequence[int]) -> tuple[int, ...] | None:
    """Coefficients c with c @ B = v, or None when v is not in the row space of B."""
    res = rank_solve(B.T(), v)
    return res.particular if res.consistent else None


@dataclass(frozen=True)
class EventualImage:
    """The stable image of v -> v @ A and the restriction of A to it."""
    basis: Matrix        # rows form a basis of E
    restriction: Matrix  # basis @ A == restriction @ basis

    @property
    def dim(self) -> int:
        return self.basis.nrows


def restrict(basis: Matrix, A: Matrix) -> Matrix:
    """Matrix R with basis @ A == R @ basis; the row space of basis must be A-stable."""
    F = A.field
    img = basis @ A
    out = []
    for row in img.rows:
        c = solve_rows(basis, row)
        if c is None:
            raise LinAlgError("subspace is not stable")
        out.append(c)
    return Matrix(F, out, basis.nrows)


def eventual_image(A: Matrix) -> EventualImage:
    if not A.is_square():
        raise LinAlgError("eventual image of a non-square matrix")
    n = A.nrows
    F = A.field
    if n == 0:
        return EventualImage(Matrix(F, [], 0), Matrix(F, [], 0))
    basis = (A ** n).row_space()
    if basis.nrows == 0:
        return EventualImage(Matrix(F, [], n), Matrix(F, [], 0))
    return EventualImage(basis, restrict(basis, A))


def complement_basis(basis: Matrix) -> Matrix:
    """Standard basis vectors completing the rows of basis to a basis of the ambient space."""
    F = basis.field
    n = basis.ncols
    current = basis
    extra = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        trial = current.stack(Matrix(F, [e], n))
        if trial.rank() > current.rank():
            current = trial
            extra.append(e)
    return Matrix(F, extra, n)
