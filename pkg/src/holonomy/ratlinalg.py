"""Exact rational linear algebra: dense matrices, row reduction, subspaces.

Every criterion in this package reduces to kernels, spans, intersections
and membership tests over the rationals.  A subspace is stored through its
reduced row echelon basis, which is a unique representative, so two
subspaces are equal as sets exactly when their stored bases are equal
entry by entry.

Scalars are `fractions.Fraction` values throughout; no floats enter any
computation in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Raised when operand shapes or ambient dimensions disagree."""


def _to_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational value: {x!r}")


@dataclass(frozen=True)
class MatrixQ:
    """Dense rational matrix; entries stored row-major as a flat tuple."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match the declared shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> "MatrixQ":
        """Build a matrix from an iterable of rows of rational-like entries.

        `cols` is only needed to disambiguate a matrix with zero rows.
        """
        rows = list(rows)
        r = len(rows)
        if r == 0:
            return MatrixQ(0, 0 if cols is None else cols, ())
        c = len(rows[0])
        ents = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            ents.extend(_to_q(x) for x in row)
        return MatrixQ(r, c, tuple(ents))

    @staticmethod
    def zeros(rows: int, cols: int) -> "MatrixQ":
        return MatrixQ(rows, cols, (_ZERO,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "MatrixQ":
        ents = [_ZERO] * (n * n)
        for i in range(n):
            ents[i * n + i] = _ONE
        return MatrixQ(n, n, tuple(ents))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "MatrixQ":
        ents = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return MatrixQ(self.cols, self.rows, ents)

    def mul(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise DimensionMismatch("matrix product shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(
                    sum(
                        (ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)),
                        _ZERO,
                    )
                )
        return MatrixQ(self.rows, other.cols, tuple(out))

    def add(self, other: "MatrixQ") -> "MatrixQ":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix sum shape mismatch")
        return MatrixQ(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def sub(self, other: "MatrixQ") -> "MatrixQ":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix difference shape mismatch")
        return MatrixQ(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def scale(self, c) -> "MatrixQ":
        c = _to_q(c)
        return MatrixQ(self.rows, self.cols, tuple(c * a for a in self.entries))

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector, returned as a tuple."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        vv = [_to_q(x) for x in v]
        return tuple(
            sum((self.row(i)[k] * vv[k] for k in range(self.cols)), _ZERO)
            for i in range(self.rows)
        )

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def inverse(self) -> "MatrixQ":
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices can be inverted")
        n = self.rows
        _, rank = _rref_rows([list(self.row(i)) for i in range(n)])
        if rank != n:
            raise ZeroDivisionError("matrix is singular")
        aug = [list(self.row(i)) + [_ONE if j == i else _ZERO for j in range(n)] for i in range(n)]
        red, _ = _rref_rows(aug)
        return MatrixQ.from_rows([r[n:] for r in red])


def _rref_rows(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], int]:
    """In-place style reduced row echelon form on a list of rows; returns rank."""
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    piv = 0
    for col in range(nc):
        sel = None
        for r in range(piv, nr):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[piv], rows[sel] = rows[sel], rows[piv]
        inv = _ONE / rows[piv][col]
        rows[piv] = [x * inv for x in rows[piv]]
        for r in range(nr):
            if r != piv and rows[r][col] != 0:
                f = rows[r][col]
                rp = rows[piv]
                rows[r] = [a - f * b for a, b in zip(rows[r], rp)]
        piv += 1
        if piv == nr:
            break
    return rows, piv


def rref(m: MatrixQ) -> tuple[MatrixQ, int]:
    """Canonical reduced row echelon form of `m` together with its rank.

    The row space is preserved; pivots are 1 with zeros above and below,
    and pivot columns increase strictly.
    """
    if m.rows == 0:
        return m, 0
    red, rank = _rref_rows(m.to_rows())
    return MatrixQ.from_rows(red, cols=m.cols), rank


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim in canonical form.

    `basis` holds one basis vector per row, in reduced row echelon form with
    zero rows dropped, so dataclass equality is exactly set equality.
    """

    ambient_dim: int
    basis: MatrixQ

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim and self.basis.rows > 0:
            raise DimensionMismatch("basis width differs from ambient dimension")

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_vectors(self) -> list[tuple]:
        return [self.basis.row(i) for i in range(self.basis.rows)]

    def __contains__(self, v) -> bool:
        return contains(self, v)


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, MatrixQ(0, ambient_dim, ()))


def full_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, MatrixQ.identity(ambient_dim))


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    """Canonical subspace spanned by the given coordinate vectors."""
    rows = []
    for v in vectors:
        v = [_to_q(x) for x in v]
        if len(v) != ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        rows.append(v)
    if not rows:
        return zero_subspace(ambient_dim)
    red, rank = _rref_rows(rows)
    return Subspace(ambient_dim, MatrixQ.from_rows(red[:rank], cols=ambient_dim))


def kernel(m: MatrixQ) -> Subspace:
    """The nullspace {v : m v = 0} of `m`, in canonical form."""
    red, rank = _rref_rows(m.to_rows()) if m.rows else ([], 0)
    n = m.cols
    pivots = [next(c for c, x in enumerate(red[r]) if x != 0) for r in range(rank)]
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for f in free:
        v = [_ZERO] * n
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        vecs.append(v)
    return span(vecs, n)


def rowspace(m: MatrixQ) -> Subspace:
    red, rank = rref(m)
    return Subspace(m.cols, MatrixQ.from_rows(red.to_rows()[:rank], cols=m.cols))


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    return span(list(a.basis_vectors()) + list(b.basis_vectors()), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical intersection of two subspaces of the same ambient space.

    Solves u^T A = v^T B by taking the kernel of the stacked system
    [A^T | -B^T] and mapping the u parts back through A.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    ka, kb = a.dim, b.dim
    if ka == 0 or kb == 0:
        return zero_subspace(a.ambient_dim)
    n = a.ambient_dim
    stacked_rows = []
    for i in range(n):
        row = [a.basis.at(r, i) for r in range(ka)] + [-b.basis.at(r, i) for r in range(kb)]
        stacked_rows.append(row)
    ker = kernel(MatrixQ.from_rows(stacked_rows, cols=ka + kb))
    vecs = []
    for w in ker.basis_vectors():
        u = w[:ka]
        vec = [_ZERO] * n
        for r in range(ka):
            if u[r] != 0:
                br = a.basis.row(r)
                for c in range(n):
                    vec[c] += u[r] * br[c]
        vecs.append(vec)
    return span(vecs, n)


def contains(s: Subspace, v: Sequence) -> bool:
    """Exact membership of a coordinate vector in a canonical subspace."""
    v = [_to_q(x) for x in v]
    if len(v) != s.ambient_dim:
        raise DimensionMismatch("vector length differs from ambient dimension")
    for i in range(s.dim):
        row = s.basis.row(i)
        p = next(c for c, x in enumerate(row) if x != 0)
        if v[p] != 0:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def contains_space(big: Subspace, small: Subspace) -> bool:
    return all(contains(big, v) for v in small.basis_vectors())


def reduce_against(s: Subspace, v: Sequence) -> list[Fraction]:
    """Residual of `v` after elimination against the RREF basis of `s`.

    The residual is zero exactly when v lies in s; the map v -> residual is
    linear, which lets membership be imposed as rows of a constraint system.
    """
    v = [_to_q(x) for x in v]
    for i in range(s.dim):
        row = s.basis.row(i)
        p = next(c for c, x in enumerate(row) if x != 0)
        if v[p] != 0:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return v
