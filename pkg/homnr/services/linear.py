"""
Exact linear algebra over the rationals.

Every rank, kernel and solve in the package ends up here. Scalars are
``fractions.Fraction``; elimination is delegated to sympy's ``DomainMatrix``
over ``QQ`` so nothing ever touches floating point.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from homnr.errors import InputError

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]

ZERO = Fraction(0)
ONE  = Fraction(1)


def vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in v)


# ─── Matrices ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InputError(
                f"entry grid does not match shape {self.rows}x{self.cols}", field="matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        grid = tuple(vector(r) for r in rows)
        width = cols if cols is not None else (len(grid[0]) if grid else 0)
        return cls(len(grid), width, grid)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        grid = tuple(
            tuple(Fraction(col[i]) for col in columns) for i in range(rows)
        )
        return cls(rows, len(columns), grid)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, tuple(
            tuple(Fraction(values[i]) if i == j else ZERO for j in range(n)) for i in range(n)
        ))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise InputError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in self.entries)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.columns()
        return Matrix.from_columns([self.apply(c) for c in cols], self.rows) if cols else Matrix.zeros(self.rows, 0)

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result.matmul(self)
        return result

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(list(self.entries), self.cols) if self.rows else Matrix.zeros(self.cols, 0)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise InputError("hstack of matrices with different row counts")
        return Matrix(self.rows, self.cols + other.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def is_zero(self) -> bool:
        return all(is_zero_vector(r) for r in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as columns."""
        return Matrix.from_columns(self.basis, self.ambient_dim)


# ─── Elimination ─────────────────────────────────────────────────────────────

def _to_domain(m: Matrix) -> DomainMatrix:
    rows = [[QQ(int(x.numerator), int(x.denominator)) for x in r] for r in m.entries]
    return DomainMatrix(rows, (m.rows, m.cols), QQ)


def rref(m: Matrix) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return [list(r) for r in m.entries], ()
    reduced, pivots = _to_domain(m).rref()
    grid = reduced.to_Matrix()
    rows = [
        [Fraction(int(grid[i, j].p), int(grid[i, j].q)) for j in range(m.cols)]
        for i in range(m.rows)
    ]
    return rows, tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Subspace:
    """Basis of {x : m·x = 0}, one vector per free column."""
    reduced, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis: List[Vector] = []
    for f in free:
        x = [ZERO] * m.cols
        x[f] = ONE
        for row, p in enumerate(pivots):
            x[p] = -reduced[row][f]
        basis.append(tuple(x))
    return Subspace(m.cols, tuple(basis))


def solve_linear(m: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """Some x with m·x = b, or None when the system is inconsistent.

    Free variables are set to zero, so b = 0 always yields the zero vector.
    """
    if len(b) != m.rows:
        raise InputError(f"right-hand side of length {len(b)} for {m.rows} rows")
    if m.cols == 0:
        return () if is_zero_vector(b) else None
    augmented = m.hstack(Matrix.from_columns([b], m.rows))
    reduced, pivots = rref(augmented)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for row, p in enumerate(pivots):
        x[p] = reduced[row][m.cols]
    solution = tuple(x)
    if m.apply(solution) != tuple(Fraction(v) for v in b):
        raise RuntimeError("exact substitution failed after elimination")
    return solution


def span_basis(vectors: Sequence[Sequence[Fraction]], ambient_dim: int) -> Subspace:
    """Linearly independent subset spanning the same space (pivot columns)."""
    if not vectors:
        return Subspace(ambient_dim, ())
    _, pivots = rref(Matrix.from_columns(vectors, ambient_dim))
    return Subspace(ambient_dim, tuple(vector(vectors[p]) for p in pivots))


def subspace_membership(v: Sequence[Fraction], s: Subspace) -> bool:
    if len(v) != s.ambient_dim:
        raise InputError(f"vector of length {len(v)} for subspace of R^{s.ambient_dim}")
    if is_zero_vector(v):
        return True
    if not s.basis:
        return False
    base = s.matrix()
    return rank(base.hstack(Matrix.from_columns([v], s.ambient_dim))) == rank(base)


def coordinates(v: Sequence[Fraction], s: Subspace) -> Optional[Vector]:
    """Coefficients of v in the basis of s, or None when v is outside s."""
    if not s.basis:
        return () if is_zero_vector(v) else None
    return solve_linear(s.matrix(), v)


def intersection_dim(a: Subspace, b: Subspace) -> int:
    if not a.basis or not b.basis:
        return 0
    return a.dim + b.dim - rank(a.matrix().hstack(b.matrix()))


def intersection(a: Subspace, b: Subspace) -> Subspace:
    if not a.basis or not b.basis:
        return Subspace(a.ambient_dim, ())
    amat = a.matrix()
    relations = kernel_basis(amat.hstack(b.matrix()))
    return span_basis([amat.apply(v[:a.dim]) for v in relations.basis], a.ambient_dim)


def complement_basis(inner: Subspace, outer: Subspace) -> Subspace:
    """Vectors of ``outer``'s basis completing ``inner`` to a basis of inner + outer."""
    chosen = list(inner.basis)
    extra: List[Vector] = []
    current = rank(Matrix.from_columns(chosen, inner.ambient_dim)) if chosen else 0
    for v in outer.basis:
        trial = chosen + [v]
        r = rank(Matrix.from_columns(trial, inner.ambient_dim))
        if r > current:
            chosen, current = trial, r
            extra.append(v)
    return Subspace(inner.ambient_dim, tuple(extra))


def stack_rows(rows: Sequence[Sequence[Fraction]], cols: int) -> Matrix:
    return Matrix.from_rows(rows, cols) if rows else Matrix.zeros(0, cols)


def inverse(m: Matrix) -> Optional[Matrix]:
    if not m.is_square():
        raise InputError(f"cannot invert a {m.rows}x{m.cols} matrix")
    if rank(m) < m.rows:
        return None
    columns = [solve_linear(m, unit_vector(m.rows, j)) for j in range(m.rows)]
    return Matrix.from_columns(columns, m.rows)


def solve_affine(residual: Callable[[Vector], Sequence[Fraction]], unknowns: int) -> Optional[Vector]:
    """Some x with residual(x) = 0 for an affine residual, or None.

    The system is recovered by probing residual at 0 and at each unit vector.
    """
    offset = vector(residual(zero_vector(unknowns)))
    columns = [
        tuple(a - b for a, b in zip(residual(unit_vector(unknowns, j)), offset))
        for j in range(unknowns)
    ]
    if not offset and not columns:
        return ()
    m = Matrix.from_columns(columns, len(offset)) if columns else Matrix.zeros(len(offset), 0)
    x = solve_linear(m, scale_vector(Fraction(-1), offset))
    if x is not None and not is_zero_vector(residual(x)):
        raise RuntimeError("residual is not affine in the unknowns")
    return x


def add_matrices(a: Matrix, b: Matrix) -> Matrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise InputError(f"cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols} matrices")
    return Matrix(a.rows, a.cols, tuple(add_vectors(r, s) for r, s in zip(a.entries, b.entries)))
