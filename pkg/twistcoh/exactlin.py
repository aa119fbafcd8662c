"""Exact linear algebra over the rationals.

Every value here is immutable and every result canonical: reduced row-echelon
bases, particular solutions with free variables set to zero.
"""
import logging
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError

log = logging.getLogger(__name__)

Vector = tuple


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def is_zero_vector(v: Sequence) -> bool:
    return all(e == 0 for e in v)


def add_vectors(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c, v: Sequence) -> Vector:
    c = to_fraction(c)
    return tuple(c * e for e in v)


class Matrix:
    """Dense row-major matrix of Fractions."""

    def __init__(self, rows: int, cols: int, entries: Optional[Iterable[Iterable]] = None):
        if rows < 0 or cols < 0:
            raise DimensionError('matrix shape must be non-negative')
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = tuple(zero_vector(cols) for _ in range(rows))
        else:
            self.entries = tuple(vector(row) for row in entries)
        if len(self.entries) != rows or any(len(row) != cols for row in self.entries):
            raise DimensionError(f'entries do not fit a {rows}x{cols} matrix')

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> 'Matrix':
        rows = list(rows)
        if cols is None:
            if not rows:
                raise DimensionError('column count needed for an empty matrix')
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> 'Matrix':
        columns = list(columns)
        return cls(rows, len(columns), [[col[i] for col in columns] for i in range(rows)])

    @classmethod
    def identity(cls, n: int) -> 'Matrix':
        return cls(n, n, [unit_vector(n, i) for i in range(n)])

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f'Matrix({self.rows}x{self.cols})'

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> 'Matrix':
        return Matrix(self.cols, self.rows, self.columns())

    def is_zero(self) -> bool:
        return all(is_zero_vector(row) for row in self.entries)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f'vector of length {len(v)} against {self.cols} columns')
        nz = [(j, e) for j, e in enumerate(v) if e != 0]
        return tuple(sum((row[j] * e for j, e in nz), Fraction(0)) for row in self.entries)

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if self.cols != other.rows:
            raise DimensionError(f'cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}')
        columns = [self.apply(col) for col in other.columns()]
        return Matrix.from_columns(columns, self.rows)

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      [add_vectors(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        return self + other.scaled(-1)

    def scaled(self, c) -> 'Matrix':
        return Matrix(self.rows, self.cols, [scale_vector(c, row) for row in self.entries])

    def _same_shape(self, other: 'Matrix'):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(f'shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}')


def _eliminate(rows: list, limit: int) -> list:
    """In-place Gauss-Jordan on mutable rows; pivots only in the first `limit` columns."""
    pivots = []
    r = 0
    for c in range(limit):
        if r == len(rows):
            break
        found = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [e / pv for e in rows[r]]
        prow = rows[r]
        nz = [(j, e) for j, e in enumerate(prow) if e != 0]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            row = rows[i]
            for j, e in nz:
                row[j] -= f * e
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple:
    rows = [list(row) for row in m.entries]
    pivots = _eliminate(rows, m.cols)
    return Matrix(m.rows, m.cols, rows), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel(m: Matrix) -> 'Subspace':
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, free]
        basis.append(v)
    return Subspace.span(basis, m.cols)


def image(m: Matrix) -> 'Subspace':
    return Subspace.span(m.columns(), m.rows)


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    if len(b) != m.rows:
        raise DimensionError(f'right-hand side of length {len(b)} against {m.rows} rows')
    rows = [list(row) + [to_fraction(e)] for row, e in zip(m.entries, b)]
    pivots = _eliminate(rows, m.cols)
    for row in rows[len(pivots):]:
        if row[-1] != 0:
            return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][-1]
    return tuple(x)


class Subspace:
    """Subspace of Q^n held as the rows of a reduced row-echelon basis."""

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence] = ()):
        rows = [list(vector(v)) for v in basis]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionError(f'vector of length {len(v)} in a {ambient_dim}-dimensional space')
        pivots = _eliminate(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(rows[i]) for i in range(len(pivots)))
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim, list(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)])

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> 'Subspace':
        return cls(ambient_dim, [unit_vector(ambient_dim, i) for i in sorted(set(indices))])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f'Subspace(dim={self.dim}, ambient={self.ambient_dim})'

    def matrix(self) -> Matrix:
        return Matrix(self.dim, self.ambient_dim, self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Residual of v after clearing the pivot columns of this basis."""
        self._check(v)
        r = list(vector(v))
        for p, row in zip(self.pivots, self.basis):
            f = r[p]
            if f != 0:
                for j, e in enumerate(row):
                    if e != 0:
                        r[j] -= f * e
        return tuple(r)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def contains_subspace(self, other: 'Subspace') -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence) -> Vector:
        if not self.contains(v):
            raise DimensionError('vector does not lie in the subspace')
        return tuple(to_fraction(v[p]) for p in self.pivots)

    def combine(self, coords: Sequence) -> Vector:
        out = zero_vector(self.ambient_dim)
        for c, row in zip(coords, self.basis):
            if c != 0:
                out = add_vectors(out, scale_vector(c, row))
        return out

    def annihilator(self) -> 'Subspace':
        return kernel(Matrix(self.dim, self.ambient_dim, self.basis))

    def _check(self, v: Sequence):
        if len(v) != self.ambient_dim:
            raise DimensionError(f'vector of length {len(v)} in a {self.ambient_dim}-dimensional space')


def _same_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f'ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}')


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    return Subspace(u.ambient_dim, u.basis + v.basis)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    return subspace_sum(u.annihilator(), v.annihilator()).annihilator()


def contains(u: Subspace, v: Sequence) -> bool:
    return u.contains(v)


class Quotient:
    """V/W with canonical representatives: V reduced modulo W, then echelonized."""

    def __init__(self, big: Subspace, small: Subspace):
        _same_ambient(big, small)
        if not big.contains_subspace(small):
            raise DimensionError('quotient requires the smaller space to lie inside the larger one')
        self.big = big
        self.small = small
        self.representatives = Subspace(big.ambient_dim, [small.reduce(v) for v in big.basis])

    @property
    def dim(self) -> int:
        return self.representatives.dim

    def basis(self) -> tuple:
        return self.representatives.basis

    def coordinates(self, v: Sequence) -> Vector:
        if not self.big.contains(v):
            raise DimensionError('vector does not lie in the numerator space')
        return self.representatives.coordinates(self.small.reduce(v))

    def is_zero(self, v: Sequence) -> bool:
        return is_zero_vector(self.coordinates(v))


def quotient_basis(big: Subspace, small: Subspace) -> tuple:
    return Quotient(big, small).basis()
