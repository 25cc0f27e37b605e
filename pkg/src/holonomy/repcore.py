"""Linear Lie algebra representations and their structural tests.

A representation is a list of independent n x n rational matrices closed
under the commutator bracket.  This module builds duals, the two block
sums V + V* and V + V (alias V tensor R^2), finds invariant lines in
dimension 2 exactly (quadratic extensions included), and decides
decomposability along an invariant splitting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .ratlinalg import (
    MatrixQ,
    Subspace,
    contains,
    intersect,
    kernel,
    span,
    zero_subspace,
)

Q = Fraction


class InvalidSplit(ValueError):
    """Raised when a proposed direct-sum splitting is not usable."""


class NotClosed(ValueError):
    """Raised when a matrix basis is not closed under the bracket."""


def bracket(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    """Commutator ab - ba of two square matrices of equal size."""
    if a.rows != a.cols or b.rows != b.cols or a.rows != b.rows:
        raise ValueError("bracket needs square matrices of equal size")
    return a.mul(b).sub(b.mul(a))


def _flatten(m: MatrixQ) -> tuple:
    return m.entries


def span_of_matrices(mats: Sequence[MatrixQ], n: int) -> Subspace:
    """Canonical span of matrices inside the n*n coefficient space."""
    return span([_flatten(m) for m in mats], n * n)


def check_lie_closure(basis: Sequence[MatrixQ]) -> tuple[bool, Optional[tuple[int, int]]]:
    """Whether every pairwise bracket stays in the span of the basis.

    Returns (True, None) or (False, (i, j)) with the first offending pair.
    """
    if not basis:
        return True, None
    n = basis[0].rows
    sp = span_of_matrices(basis, n)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not contains(sp, _flatten(bracket(basis[i], basis[j]))):
                return False, (i, j)
    return True, None


@dataclass(frozen=True)
class LinearRep:
    """A linear Lie algebra given by a basis of n x n rational matrices.

    The basis must be linearly independent and closed under the bracket;
    both conditions are checked at construction time.
    """

    n: int
    basis: tuple
    name: str = ""
    params: tuple = ()

    def __post_init__(self):
        for b in self.basis:
            if not (isinstance(b, MatrixQ) and b.rows == self.n and b.cols == self.n):
                raise ValueError("basis entries must be n x n MatrixQ values")
        if span_of_matrices(self.basis, self.n).dim != len(self.basis):
            raise ValueError("basis matrices are linearly dependent")
        ok, pair = check_lie_closure(self.basis)
        if not ok:
            raise NotClosed(f"bracket closure violated at pair {pair}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix_span(self) -> Subspace:
        return span_of_matrices(self.basis, self.n)


def rep_from_rows(n: int, mats: Sequence[Sequence[Sequence]], name: str = "",
                  params: Sequence = ()) -> LinearRep:
    basis = tuple(MatrixQ.from_rows(m) for m in mats)
    return LinearRep(n, basis, name, tuple(Q(p) if not isinstance(p, Fraction) else p
                                           for p in params))


def dual_rep(g: LinearRep) -> LinearRep:
    """The dual action B -> -B^T on V*."""
    return LinearRep(g.n, tuple(b.transpose().scale(-1) for b in g.basis),
                     name=g.name + "*" if g.name else "", params=g.params)


def _block_diag(top: MatrixQ, bottom: MatrixQ) -> MatrixQ:
    n1, n2 = top.rows, bottom.rows
    n = n1 + n2
    rows = []
    for i in range(n1):
        rows.append(list(top.row(i)) + [Q(0)] * n2)
    for i in range(n2):
        rows.append([Q(0)] * n1 + list(bottom.row(i)))
    return MatrixQ.from_rows(rows, cols=n)


def block_of(m: MatrixQ, n1: int, which: int) -> MatrixQ:
    """Extract the top-left (which=0) or bottom-right (which=1) diagonal block."""
    n2 = m.rows - n1
    if which == 0:
        return MatrixQ.from_rows([[m.at(i, j) for j in range(n1)] for i in range(n1)], cols=n1)
    return MatrixQ.from_rows(
        [[m.at(n1 + i, n1 + j) for j in range(n2)] for i in range(n2)], cols=n2
    )


@dataclass(frozen=True)
class SplitRep:
    """A representation preserving V = V1 + V2 with faithful block actions.

    kind is one of "generic-split", "v-dual" (blocks (B, -B^T)) or "v-twice"
    (blocks (B, B)).
    """

    rep: LinearRep
    n1: int
    n2: int
    kind: str = "generic-split"

    def __post_init__(self):
        if self.n1 + self.n2 != self.rep.n:
            raise InvalidSplit("block sizes do not add up to the representation size")
        for b in self.rep.basis:
            for i in range(self.n1):
                for j in range(self.n2):
                    if b.at(i, self.n1 + j) != 0 or b.at(self.n1 + j, i) != 0:
                        raise InvalidSplit("basis matrix is not block diagonal")
        for which, size in ((0, self.n1), (1, self.n2)):
            blocks = [block_of(b, self.n1, which) for b in self.rep.basis]
            if span([b.entries for b in blocks], size * size).dim != len(self.rep.basis):
                raise InvalidSplit("block restriction is not faithful")

    def blocks(self, which: int) -> list[MatrixQ]:
        return [block_of(b, self.n1, which) for b in self.rep.basis]


def direct_sum_dual(g: LinearRep) -> SplitRep:
    """The block representation of g on V + V*, blocks (B, -B^T)."""
    basis = tuple(_block_diag(b, b.transpose().scale(-1)) for b in g.basis)
    rep = LinearRep(2 * g.n, basis, name=(g.name + " on V+V*") if g.name else "",
                    params=g.params)
    return SplitRep(rep, g.n, g.n, kind="v-dual")


def direct_sum_twice(g: LinearRep) -> SplitRep:
    """The block representation of g on V + V, blocks (B, B)."""
    basis = tuple(_block_diag(b, b) for b in g.basis)
    rep = LinearRep(2 * g.n, basis, name=(g.name + " on V+V") if g.name else "",
                    params=g.params)
    return SplitRep(rep, g.n, g.n, kind="v-twice")


# ------------------------------------------------------------------
# Quadratic extension scalars, used only for exact eigenlines in dim 2
# with irrational real eigenvalues.
# ------------------------------------------------------------------


@dataclass(frozen=True)
class QuadExt:
    """An element a + b sqrt(d) of the real quadratic field Q(sqrt(d)).

    d is a fixed positive non-square rational shared by both operands of
    every arithmetic operation.
    """

    a: Fraction
    b: Fraction
    d: Fraction

    def _check(self, o: "QuadExt"):
        if self.d != o.d:
            raise ValueError("mixed quadratic extensions")

    def __add__(self, o):
        o = self._coerce(o)
        self._check(o)
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    def __sub__(self, o):
        o = self._coerce(o)
        self._check(o)
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __mul__(self, o):
        o = self._coerce(o)
        self._check(o)
        return QuadExt(self.a * o.a + self.d * self.b * o.b,
                       self.a * o.b + self.b * o.a, self.d)

    def __truediv__(self, o):
        o = self._coerce(o)
        self._check(o)
        norm = o.a * o.a - self.d * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        inv = QuadExt(o.a / norm, -o.b / norm, self.d)
        return self * inv

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def _coerce(self, o):
        if isinstance(o, QuadExt):
            return o
        return QuadExt(Q(o), Q(0), self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)


def _quad(a, b, d) -> QuadExt:
    return QuadExt(Q(a), Q(b), Q(d))


def _field_rank(rows: list[list], zero_test) -> int:
    """Gaussian elimination rank over any exact field; rows are mutated copies."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    nc = len(rows[0])
    piv = 0
    for col in range(nc):
        sel = None
        for r in range(piv, len(rows)):
            if not zero_test(rows[r][col]):
                sel = r
                break
        if sel is None:
            continue
        rows[piv], rows[sel] = rows[sel], rows[piv]
        pr = rows[piv]
        for r in range(len(rows)):
            if r != piv and not zero_test(rows[r][col]):
                f = rows[r][col] / pr[col]
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        piv += 1
        if piv == len(rows):
            break
    return piv


# ------------------------------------------------------------------
# Invariant lines in dimension 2
# ------------------------------------------------------------------


@dataclass(frozen=True)
class QuadLine:
    """A line spanned by a vector with entries in Q(sqrt(d))."""

    v: tuple  # pair of QuadExt
    d: Fraction


@dataclass(frozen=True)
class InvariantLines:
    """Invariant lines of a 2-dimensional representation.

    If every basis matrix is scalar, all lines are invariant and
    `all_lines` is set instead of an infinite enumeration.  Rational lines
    are canonical 1-dimensional subspaces; lines with irrational direction
    come in conjugate pairs over a quadratic extension and carry the
    discriminant of the characteristic polynomial that produced them.
    """

    all_lines: bool
    rational_lines: tuple = ()
    quad_lines: tuple = ()  # QuadLine values, conjugate pairs

    @property
    def count(self) -> Optional[int]:
        if self.all_lines:
            return None
        return len(self.rational_lines) + len(self.quad_lines)


def _is_scalar(m: MatrixQ) -> bool:
    return m.at(0, 1) == 0 and m.at(1, 0) == 0 and m.at(0, 0) == m.at(1, 1)


def _rational_eigenlines(m: MatrixQ) -> list[Subspace]:
    """Exact real eigenlines of a non-scalar 2x2 matrix with rational spectrum.

    Returns [] when the spectrum is not rational (negative or non-square
    discriminant handled by the caller).
    """
    tr = m.at(0, 0) + m.at(1, 1)
    det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)
    disc = tr * tr - 4 * det
    root = _sqrt_fraction(disc)
    if root is None:
        return []
    lines = []
    for sign in (1, -1):
        lam = (tr + sign * root) / 2
        shifted = m.sub(MatrixQ.identity(2).scale(lam))
        ker = kernel(shifted)
        if ker.dim == 1:
            lines.append(ker)
    uniq = []
    for l in lines:
        if l not in uniq:
            uniq.append(l)
    return uniq


def _sqrt_fraction(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    if x == 0:
        return Q(0)
    num, den = x.numerator, x.denominator
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Q(rn, rd)


def _isqrt_exact(n: int) -> Optional[int]:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def _quad_eigenlines(m: MatrixQ) -> list[QuadLine]:
    """Conjugate pair of eigenlines when the discriminant is positive non-square."""
    tr = m.at(0, 0) + m.at(1, 1)
    det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)
    disc = tr * tr - 4 * det
    if disc <= 0 or _sqrt_fraction(disc) is not None:
        return []
    d = disc
    out = []
    a, b, c = m.at(0, 0), m.at(0, 1), m.at(1, 0)
    for sign in (1, -1):
        lam = QuadExt(tr / 2, Q(sign, 2), d)  # (tr + sign sqrt(d)) / 2
        if b != 0:
            v = (_quad(b, 0, d), lam - _quad(a, 0, d))
        else:
            # b = 0 with irrational eigenvalues forces c != 0
            dd = m.at(1, 1)
            v = (lam - _quad(dd, 0, d), _quad(c, 0, d))
        out.append(QuadLine(v, d))
    return out


def _line_invariant_rational(line: Subspace, mats: Sequence[MatrixQ]) -> bool:
    v = line.basis.row(0)
    for m in mats:
        w = m.apply(v)
        # cross product test: w parallel to v
        if v[0] * w[1] - v[1] * w[0] != 0:
            return False
    return True


def _line_invariant_quad(line: QuadLine, mats: Sequence[MatrixQ]) -> bool:
    v0, v1 = line.v
    d = line.d
    for m in mats:
        w0 = _quad(m.at(0, 0), 0, d) * v0 + _quad(m.at(0, 1), 0, d) * v1
        w1 = _quad(m.at(1, 0), 0, d) * v0 + _quad(m.at(1, 1), 0, d) * v1
        if not (v0 * w1 - v1 * w0).is_zero():
            return False
    return True


def invariant_lines_2d(g: LinearRep) -> InvariantLines:
    """All lines L of V (dim 2) with B L inside L for every basis matrix B.

    A common invariant line must be an eigenline of every non-scalar basis
    matrix, so candidates are taken from the first non-scalar matrix and
    filtered by the rest.  Rational eigenvalues are solved exactly;
    irrational real eigenvalues are handled in the quadratic extension
    Q(sqrt(disc)).
    """
    if g.n != 2:
        raise ValueError("invariant_lines_2d only handles dimension 2")
    non_scalar = [m for m in g.basis if not _is_scalar(m)]
    if not non_scalar:
        return InvariantLines(all_lines=True)
    first = non_scalar[0]
    rational = [l for l in _rational_eigenlines(first)
                if _line_invariant_rational(l, g.basis)]
    quads = [l for l in _quad_eigenlines(first) if _line_invariant_quad(l, g.basis)]
    return InvariantLines(all_lines=False, rational_lines=tuple(rational),
                          quad_lines=tuple(quads))


# ------------------------------------------------------------------
# Decomposability
# ------------------------------------------------------------------


def _invariant_subspace(s: Subspace, mats: Sequence[MatrixQ]) -> bool:
    for m in mats:
        for v in s.basis_vectors():
            if not contains(s, m.apply(v)):
                return False
    return True


def is_decomposable(g: LinearRep, split: tuple[Subspace, Subspace]) -> bool:
    """Whether g splits as the sum of its parts supported on each factor.

    The condition is dim(g cap End(V1)) + dim(g cap End(V2)) = dim g,
    where End(Vi) means endomorphisms mapping Vi to itself and killing the
    complementary factor, computed in a basis adapted to the splitting.
    """
    s1, s2 = split
    n = g.n
    if s1.ambient_dim != n or s2.ambient_dim != n:
        raise InvalidSplit("split subspaces live in the wrong ambient space")
    if s1.dim + s2.dim != n or intersect(s1, s2).dim != 0:
        raise InvalidSplit("split subspaces are not complementary")
    for s in (s1, s2):
        if not _invariant_subspace(s, g.basis):
            raise InvalidSplit("split subspace is not invariant")
    cols = [list(v) for v in s1.basis_vectors()] + [list(v) for v in s2.basis_vectors()]
    p = MatrixQ.from_rows(cols, cols=n).transpose()
    pinv = p.inverse()
    adapted = [pinv.mul(b).mul(p) for b in g.basis]
    gspan = span([m.entries for m in adapted], n * n)
    n1 = s1.dim
    end1 = span(
        [_unit_matrix_vec(n, i, j) for i in range(n1) for j in range(n1)],
        n * n,
    )
    end2 = span(
        [_unit_matrix_vec(n, n1 + i, n1 + j) for i in range(n - n1) for j in range(n - n1)],
        n * n,
    )
    d1 = intersect(gspan, end1).dim
    d2 = intersect(gspan, end2).dim
    return d1 + d2 == g.dim


def _unit_matrix_vec(n: int, i: int, j: int) -> list[Fraction]:
    v = [Q(0)] * (n * n)
    v[i * n + j] = Q(1)
    return v


def _decomposable_quad_pair(g: LinearRep, pair: tuple[QuadLine, QuadLine]) -> bool:
    """Decomposability along two conjugate irrational eigenlines.

    Works over Q(sqrt(d)): ranks over the extension field equal ranks over
    the reals, so the dimension count transfers unchanged.
    """
    l1, l2 = pair
    d = l1.d
    p = [[l1.v[0], l2.v[0]], [l1.v[1], l2.v[1]]]
    det = p[0][0] * p[1][1] - p[0][1] * p[1][0]
    if det.is_zero():
        raise InvalidSplit("conjugate lines do not span the plane")
    pinv = [[p[1][1] / det, (-p[0][1]) / det], [(-p[1][0]) / det, p[0][0] / det]]
    adapted = []
    for m in g.basis:
        mq = [[_quad(m.at(i, j), 0, d) for j in range(2)] for i in range(2)]
        tmp = [[sum((pinv[i][k] * mq[k][j] for k in range(2)), _quad(0, 0, d))
                for j in range(2)] for i in range(2)]
        ad = [[sum((tmp[i][k] * p[k][j] for k in range(2)), _quad(0, 0, d))
               for j in range(2)] for i in range(2)]
        adapted.append([ad[0][0], ad[0][1], ad[1][0], ad[1][1]])
    zero = lambda x: x.is_zero()
    dim_g = _field_rank(adapted, zero)
    # intersect with endomorphisms supported on one diagonal coordinate:
    # elements with all coordinates outside position (i, i) equal to zero.
    d1 = dim_g - _field_rank([[r[1], r[2], r[3]] for r in adapted], zero)
    d2 = dim_g - _field_rank([[r[0], r[1], r[2]] for r in adapted], zero)
    return d1 + d2 == g.dim


def decomposable_along_invariant_lines(g: LinearRep) -> bool:
    """Exhaustive decomposability test over invariant-line pairs, n = 2.

    For a scalar algebra every line is invariant and the dimension count is
    basis independent, so the coordinate split decides.  Otherwise every
    unordered pair of distinct invariant lines is tried, including the
    conjugate pair over a quadratic extension when present.
    """
    if g.n != 2:
        raise ValueError("decomposable_along_invariant_lines only handles dimension 2")
    lines = invariant_lines_2d(g)
    e1 = span([[1, 0]], 2)
    e2 = span([[0, 1]], 2)
    if lines.all_lines:
        return is_decomposable(g, (e1, e2))
    rl = list(lines.rational_lines)
    for i in range(len(rl)):
        for j in range(i + 1, len(rl)):
            if is_decomposable(g, (rl[i], rl[j])):
                return True
    if len(lines.quad_lines) == 2:
        if _decomposable_quad_pair(g, (lines.quad_lines[0], lines.quad_lines[1])):
            return True
    return False


# ------------------------------------------------------------------
# Quotients
# ------------------------------------------------------------------


def quotient_rep(g: LinearRep, w: Subspace) -> LinearRep:
    """The induced representation on V / W for an invariant subspace W.

    The returned basis is pruned to an independent set; the quotient action
    need not be faithful.
    """
    if w.ambient_dim != g.n:
        raise InvalidSplit("subspace lives in the wrong ambient space")
    if not _invariant_subspace(w, g.basis):
        raise InvalidSplit("subspace is not invariant")
    k = w.dim
    n = g.n
    if k == 0:
        return g
    cols = [list(v) for v in w.basis_vectors()]
    taken = span(cols, n)
    for i in range(n):
        if taken.dim == n:
            break
        cand = [Q(0)] * n
        cand[i] = Q(1)
        if not contains(taken, cand):
            cols.append(cand)
            taken = span(cols, n)
    p = MatrixQ.from_rows(cols, cols=n).transpose()
    pinv = p.inverse()
    q = n - k
    quots = []
    for b in g.basis:
        ad = pinv.mul(b).mul(p)
        quots.append(
            MatrixQ.from_rows(
                [[ad.at(k + i, k + j) for j in range(q)] for i in range(q)], cols=q
            )
        )
    pruned: list[MatrixQ] = []
    for m in quots:
        cur = span([x.entries for x in pruned], q * q)
        if not m.is_zero() and not contains(cur, m.entries):
            pruned.append(m)
    return LinearRep(q, tuple(pruned), name=(g.name + "/W") if g.name else "",
                     params=g.params)
