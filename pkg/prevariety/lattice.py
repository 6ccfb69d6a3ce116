"""
lattice.py

Exact integer linear algebra over Python integers: Hermite and Smith normal forms,
integer kernels, cokernel presentations, image membership and saturation.

Matrices are immutable IntegerMatrix values; products go through numpy object arrays so
no entry is ever converted to a machine integer or a float. The elimination routines work
on plain lists of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np
import sympy
from loguru import logger

from errors import DimensionMismatch

Vector = tuple[int, ...]


# ================================
# Vectors
# ================================
def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def content(v: Sequence[int]) -> int:
    g = 0
    for entry in v:
        g = gcd(g, entry)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Divide by the gcd of the entries; the zero vector is returned unchanged."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(entry // g for entry in v)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ================================
# IntegerMatrix
# ================================
@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise DimensionMismatch("column count required for a matrix without rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntegerMatrix:
        return cls.from_rows(zip(*columns), len(columns)) if columns else cls.zeros(rows, 0)

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def from_array(cls, array: np.ndarray) -> IntegerMatrix:
        rows, cols = array.shape
        return cls(rows, cols, tuple(tuple(int(x) for x in array[i]) for i in range(rows)))

    def to_array(self) -> np.ndarray:
        array = np.empty((self.rows, self.cols), dtype=object)
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                array[i, j] = value
        return array

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.cols, self.rows, tuple(self.columns()))

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return IntegerMatrix.zeros(self.rows, other.cols)
        return IntegerMatrix.from_array(np.dot(self.to_array(), other.to_array()))

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for a matrix with {self.cols} columns")
        return tuple(dot(row, v) for row in self.entries)

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(sympy.Matrix(self.to_lists()).det())

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.determinant() in (1, -1)

    def rank(self) -> int:
        return matrix_rank(self.to_lists(), self.cols)

    def __str__(self) -> str:
        return "[" + ", ".join(str(list(row)) for row in self.entries) + "]"


# ================================
# Hermite normal form
# ================================
def _hnf_in_place(h: list[list[int]], ncols: int, u: list[list[int]] | None) -> int:
    """Row-reduce h to Hermite normal form, mirroring every row operation on u.

    Returns the rank (number of pivot rows).
    """
    m = len(h)
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= m:
            break
        for i in range(pivot_row + 1, m):
            b = h[i][col]
            if b == 0:
                continue
            a = h[pivot_row][col]
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            _combine(h, pivot_row, i, s, t, -bg, ag)
            if u is not None:
                _combine(u, pivot_row, i, s, t, -bg, ag)
        pivot = h[pivot_row][col]
        if pivot == 0:
            continue
        if pivot < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            if u is not None:
                u[pivot_row] = [-x for x in u[pivot_row]]
            pivot = -pivot
        for i in range(pivot_row):
            q = h[i][col] // pivot
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[pivot_row])]
                if u is not None:
                    u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivot_row += 1
    return pivot_row


def _combine(rows: list[list[int]], p: int, i: int, a: int, b: int, c: int, d: int) -> None:
    # (row_p, row_i) <- (a*row_p + b*row_i, c*row_p + d*row_i); ad - bc = 1
    rp, ri = rows[p], rows[i]
    rows[p] = [a * x + b * y for x, y in zip(rp, ri)]
    rows[i] = [c * x + d * y for x, y in zip(rp, ri)]


def hnf(m: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form: returns (H, U) with H = U @ m and U unimodular."""
    h = m.to_lists()
    u = [list(row) for row in IntegerMatrix.identity(m.rows).entries]
    _hnf_in_place(h, m.cols, u)
    return IntegerMatrix.from_rows(h, m.cols), IntegerMatrix.from_rows(u, m.rows)


def matrix_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    h = [list(row) for row in rows]
    return _hnf_in_place(h, ncols, None)


def hnf_basis(vectors: Iterable[Sequence[int]], ncols: int) -> list[Vector]:
    """Deterministic basis of the lattice generated by the given vectors."""
    h = [list(v) for v in vectors]
    rank = _hnf_in_place(h, ncols, None)
    return [tuple(row) for row in h[:rank]]


def kernel_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Saturated basis of {v in Z^ncols : <row, v> = 0 for every row}, HNF-reduced."""
    # transpose, then read the kernel off the transform rows of the zero rows of the HNF
    transposed = [[row[j] for row in rows] for j in range(ncols)]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    rank = _hnf_in_place(transposed, len(rows), u)
    return hnf_basis(u[rank:], ncols)


# ================================
# Smith normal form
# ================================
@dataclass(frozen=True)
class SnfResult:
    diag: tuple[int, ...]
    left: IntegerMatrix
    right: IntegerMatrix
    left_inverse: IntegerMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diag if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def snf(m: IntegerMatrix) -> SnfResult:
    """Smith normal form U @ m @ V = diag(d_1, d_2, ...) with d_1 | d_2 | ... and d_i >= 0.

    Pivots are chosen by minimal absolute value; U^-1 is tracked alongside U.
    """
    rows, cols = m.rows, m.cols
    d = m.to_lists()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    u_inv = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def add_row(target: int, source: int, factor: int) -> None:
        d[target] = [x + factor * y for x, y in zip(d[target], d[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]
        for row in u_inv:
            row[source] -= factor * row[target]

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def negate_row(i: int) -> None:
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    def add_col(target: int, source: int, factor: int) -> None:
        for matrix in (d, v):
            for row in matrix:
                row[target] += factor * row[source]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        for matrix in (d, v):
            for row in matrix:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(rows, cols):
        entries = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j] != 0]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            pivot = d[t][t]
            for i in range(t + 1, rows):
                q = d[i][t] // pivot
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, cols):
                q = d[t][j] // pivot
                if q:
                    add_col(j, t, -q)
            leftovers = [(abs(d[i][t]), i, "row") for i in range(t + 1, rows) if d[i][t] != 0]
            leftovers += [(abs(d[t][j]), j, "col") for j in range(t + 1, cols) if d[t][j] != 0]
            if leftovers:
                _, index, kind = min(leftovers)
                if kind == "row":
                    swap_rows(t, index)
                else:
                    swap_cols(t, index)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % pivot != 0),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    diag = tuple(d[i][i] for i in range(min(rows, cols)))
    logger.debug(f"SNF of {rows}x{cols} matrix: diag={diag}")
    return SnfResult(
        diag=diag,
        left=IntegerMatrix.from_rows(u, rows),
        right=IntegerMatrix.from_rows(v, cols),
        left_inverse=IntegerMatrix.from_rows(u_inv, rows),
    )


# ================================
# Finitely generated abelian groups
# ================================
@dataclass(frozen=True)
class Degree:
    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()

    def lifted(self) -> Vector:
        return self.free + self.torsion

    def __str__(self) -> str:
        parts = [str(x) for x in self.free] + [f"{x}~" for x in self.torsion]
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_t with d_1 | d_2 | ... and every d_j >= 2."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise DimensionMismatch("negative free rank")
        if any(d < 2 for d in self.torsion):
            raise DimensionMismatch(f"torsion factors must be >= 2, got {self.torsion}")
        if any(b % a != 0 for a, b in zip(self.torsion, self.torsion[1:])):
            raise DimensionMismatch(f"torsion factors {self.torsion} do not form a divisibility chain")

    @property
    def generator_count(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.generator_count == 0

    def element(self, free: Sequence[int], torsion: Sequence[int] = ()) -> Degree:
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise DimensionMismatch(
                f"element ({list(free)}, {list(torsion)}) does not fit Z^{self.free_rank} x {self.torsion}"
            )
        return Degree(tuple(int(x) for x in free), tuple(int(x) % d for x, d in zip(torsion, self.torsion)))

    def from_lifted(self, vector: Sequence[int]) -> Degree:
        return self.element(vector[: self.free_rank], vector[self.free_rank :])

    def zero(self) -> Degree:
        return Degree((0,) * self.free_rank, (0,) * len(self.torsion))

    def generator(self, k: int) -> Degree:
        unit = [int(i == k) for i in range(self.generator_count)]
        return self.from_lifted(unit)

    def add(self, a: Degree, b: Degree) -> Degree:
        return self.from_lifted([x + y for x, y in zip(a.lifted(), b.lifted())])

    def scale(self, a: Degree, factor: int) -> Degree:
        return self.from_lifted([factor * x for x in a.lifted()])

    def combination(self, coefficients: Sequence[int], elements: Sequence[Degree]) -> Degree:
        total = [0] * self.generator_count
        for c, e in zip(coefficients, elements):
            if c:
                total = [x + c * y for x, y in zip(total, e.lifted())]
        return self.from_lifted(total)

    def contains(self, a: Degree) -> bool:
        return (
            len(a.free) == self.free_rank
            and len(a.torsion) == len(self.torsion)
            and all(0 <= x < d for x, d in zip(a.torsion, self.torsion))
        )

    def relations(self) -> IntegerMatrix:
        """Columns d_j * t_j presenting the group as a quotient of Z^generator_count."""
        n = self.generator_count
        columns = [[d if i == self.free_rank + j else 0 for i in range(n)] for j, d in enumerate(self.torsion)]
        return IntegerMatrix.from_columns(columns, n)

    def __str__(self) -> str:
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}Z" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class CokernelPresentation:
    """Z^rows / im(M) presented through the Smith normal form of M."""

    group: FgAbGroup
    projection_matrix: IntegerMatrix
    lift_vectors: tuple[Vector, ...]

    def project(self, x: Sequence[int]) -> Degree:
        return self.group.from_lifted(self.projection_matrix.apply(x))

    def lift(self, k: int) -> Vector:
        """A preimage in Z^rows of the k-th generator of the group."""
        return self.lift_vectors[k]


def cokernel_presentation(m: IntegerMatrix) -> CokernelPresentation:
    result = snf(m)
    factors = list(result.diag) + [0] * (m.rows - len(result.diag))
    free = [i for i, f in enumerate(factors) if f == 0]
    torsion = [i for i, f in enumerate(factors) if f > 1]
    kept = free + torsion
    group = FgAbGroup(len(free), tuple(factors[i] for i in torsion))
    projection = IntegerMatrix.from_rows([result.left.row(i) for i in kept], m.rows)
    lifts = tuple(result.left_inverse.column(i) for i in kept)
    return CokernelPresentation(group, projection, lifts)


# ================================
# Sublattices
# ================================
@dataclass(frozen=True)
class Sublattice:
    ambient_rank: int
    basis: IntegerMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_rank:
            raise DimensionMismatch(f"basis has {self.basis.cols} columns in ambient rank {self.ambient_rank}")
        if self.basis.rank() != self.basis.rows:
            raise DimensionMismatch("sublattice basis rows are linearly dependent")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], ambient_rank: int) -> Sublattice:
        """The lattice generated by arbitrary (possibly dependent) vectors."""
        return cls(ambient_rank, IntegerMatrix.from_rows(hnf_basis(vectors, ambient_rank), ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> Sublattice:
        return cls(ambient_rank, IntegerMatrix.zeros(0, ambient_rank))

    @classmethod
    def full(cls, ambient_rank: int) -> Sublattice:
        return cls(ambient_rank, IntegerMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return self.basis.entries

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Coefficients of v in this basis, or None when v is not in the lattice."""
        return image_membership(self.basis.transpose(), v)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def same_lattice(self, other: Sublattice) -> bool:
        return (
            self.ambient_rank == other.ambient_rank
            and self.rank == other.rank
            and all(self.contains(v) for v in other.vectors)
            and all(other.contains(v) for v in self.vectors)
        )

    def is_saturated(self) -> bool:
        return self.same_lattice(saturate(self))


def kernel_basis(m: IntegerMatrix) -> Sublattice:
    return Sublattice(m.cols, IntegerMatrix.from_rows(kernel_rows(m.entries, m.cols), m.cols))


def image_membership(m: IntegerMatrix, v: Sequence[int]) -> Vector | None:
    """Solve m @ x = v over the integers; None when no integral solution exists."""
    if len(v) != m.rows:
        raise DimensionMismatch(f"vector of length {len(v)} against a matrix with {m.rows} rows")
    result = snf(m)
    w = result.left.apply(v)
    y = [0] * m.cols
    for i, entry in enumerate(w):
        factor = result.diag[i] if i < len(result.diag) else 0
        if factor == 0:
            if entry != 0:
                return None
        elif entry % factor != 0:
            return None
        else:
            y[i] = entry // factor
    return result.right.apply(y)


def saturate(lattice: Sublattice) -> Sublattice:
    """Smallest direct summand of Z^ambient containing the lattice (same rational span)."""
    return _saturate_cached(lattice.vectors, lattice.ambient_rank)


@lru_cache(maxsize=4096)
def _saturate_cached(vectors: tuple[Vector, ...], ambient_rank: int) -> Sublattice:
    orthogonal = kernel_rows(vectors, ambient_rank)
    return Sublattice(ambient_rank, IntegerMatrix.from_rows(kernel_rows(orthogonal, ambient_rank), ambient_rank))
