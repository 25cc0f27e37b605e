"""Curvature criterion spaces for linear Lie algebra representations.

Every space here is an exact kernel computation over the rationals:

* ``curvature_space``        formal curvature tensors K(g), first Bianchi identity
* ``generated_holonomy``     the algebra spanned by curvature evaluations
* ``curvature_derivative_space``  first covariant-derivative space K1(g)
* ``split_curvature_space``  the specialization k(g) for block representations
                             V1 + V2 with both blocks faithful
* ``split_curvature_derivative``  its derivative space k1(g)
* ``prolongation``           g^(k) = S^{k+1}V* (x) V  intersected with
                             (V*)^{(x)k} (x) g
* ``weak_criterion``         span of first-prolongation evaluations equals g
* ``vdual_tilde_k``          the S2V* (x) S2V model used for V + V* actions
* ``vdual_tilde_k1``         its two derivative summands
* ``vtwice_g2_and_ghat``     g^(2) and the evaluation algebra ghat for V (x) R2
* ``vtwice_g3``              g^(3), the second-criterion analogue for V (x) R2

Coefficient orderings are lexicographic throughout: antisymmetric index pairs
enumerate a < b, symmetric slots enumerate non-decreasing tuples, and the
position of a label in ``index_map`` is its coordinate in the coefficient
vector.  This makes every returned subspace a canonical object that can be
compared across independent implementations.
"""

import time
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .ratlinalg import (
    MatrixQ,
    Subspace,
    full_subspace,
    kernel,
    reduce_against,
    span,
)
from .repcore import LinearRep, SplitRep

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class CurvatureSpace:
    """A constraint-space result: which tensor model, and the solution span.

    ``index_map`` is the tuple of coefficient labels; position i of any
    vector in ``space`` is the coefficient of ``index_map[i]``.  For spaces
    that carry one, ``generated`` is the evaluation algebra inside the
    n*n endomorphism coefficient space and ``verdict`` the associated
    criterion truth value.
    """

    ambient: str
    coefficient_dim: int
    space: Subspace
    index_map: tuple
    generated: Subspace | None = None
    verdict: bool | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def __post_init__(self):
        if self.space.ambient_dim != self.coefficient_dim:
            raise ValueError("coefficient space dimension mismatch")
        if len(self.index_map) != self.coefficient_dim:
            raise ValueError("index map must label every coefficient")


@dataclass
class BergerReport:
    """Criterion summary for one representation.

    ``first_criterion`` is the equality of the generated algebra with g as
    canonical subspaces of the endomorphism coefficient space;
    ``second_criterion`` is dim K1 > 0.  ``wall_time`` is informational
    only and is dropped from serialized reports.
    """

    algebra: str
    kind: str
    dim_g: int
    dim_k: int
    dim_generated: int
    first_criterion: bool
    dim_k1: int | None = None
    second_criterion: bool | None = None
    decomposable: bool | None = None
    wall_time: float | None = None


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _multisets(n: int, size: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(n), size))


def _kernel_of_rows(rows: list[list[Fraction]], cdim: int) -> Subspace:
    if not rows or cdim == 0:
        return full_subspace(cdim)
    return kernel(MatrixQ.from_rows(rows, cols=cdim))


def _residual_rows(sub: Subspace) -> list[list[Fraction]]:
    """Matrix of the residual map v -> v - (projection of v onto sub).

    The residual of ``reduce_against`` is linear in v, so applying it to
    the unit vectors yields the columns of a matrix P with P v = 0 exactly
    when v lies in sub.  Used to turn membership conditions into rows of
    a constraint system.
    """
    amb = sub.ambient_dim
    cols = []
    for j in range(amb):
        unit = [_ZERO] * amb
        unit[j] = _ONE
        cols.append(reduce_against(sub, unit))
    return [[cols[j][i] for j in range(amb)] for i in range(amb)]


def _membership_rows(resid: list[list[Fraction]], column_of: list[int], cdim: int):
    """Rows forcing the endomorphism whose flattened entry e sits at
    coefficient position column_of[e] to lie in the subspace of resid."""
    rows = []
    nn = len(resid)
    for i in range(nn):
        if all(x == 0 for x in resid[i]):
            continue
        row = [_ZERO] * cdim
        for e in range(nn):
            if resid[i][e]:
                row[column_of[e]] += resid[i][e]
        rows.append(row)
    return rows


# --------------------------------------------------------------------------
# K(g) and the first criterion
# --------------------------------------------------------------------------


def curvature_space(g: LinearRep) -> CurvatureSpace:
    """Formal curvature tensors of g.

    Coefficients c[(a,b), s] with a < b and s over the basis of g encode
    R(e_a, e_b) = sum_s c[(a,b), s] B_s.  The first Bianchi identity
    R(x,y)z + R(y,z)x + R(z,x)y = 0 is imposed for basis triples
    a < b < c only; all other triples follow by antisymmetry.
    """
    n, d = g.n, g.dim
    pairs = _pairs(n)
    index_map = tuple((p, s) for p in pairs for s in range(d))
    cdim = len(index_map)
    pos = {lab: i for i, lab in enumerate(index_map)}
    rows = []
    for a, b, c in combinations(range(n), 3):
        for m in range(n):
            row = [_ZERO] * cdim
            for s, mat in enumerate(g.basis):
                row[pos[((a, b), s)]] += mat.at(m, c)
                row[pos[((b, c), s)]] += mat.at(m, a)
                row[pos[((a, c), s)]] -= mat.at(m, b)
            rows.append(row)
    ker = _kernel_of_rows(rows, cdim)
    return CurvatureSpace("alt2(V*) (x) g", cdim, ker, index_map)


def _eval_pair(g: LinearRep, coeffs, pair_index: int) -> list[Fraction]:
    """Flattened endomorphism sum_s coeffs[pair_index*d + s] B_s."""
    n, d = g.n, g.dim
    out = [_ZERO] * (n * n)
    base = pair_index * d
    for s, mat in enumerate(g.basis):
        c = coeffs[base + s]
        if c:
            for e in range(n * n):
                out[e] += c * mat.entries[e]
    return out


def generated_holonomy(g: LinearRep, k: CurvatureSpace) -> Subspace:
    """Span of all evaluations R(e_a, e_b) over a basis of K(g).

    Always contained in the span of g; the first criterion asks for
    equality.
    """
    n = g.n
    pairs = _pairs(n)
    vecs = []
    for kv in k.space.basis_vectors():
        for pi in range(len(pairs)):
            vecs.append(_eval_pair(g, kv, pi))
    return span(vecs, n * n)


def first_criterion(g: LinearRep, kind: str = "plain") -> BergerReport:
    t0 = time.perf_counter()
    k = curvature_space(g)
    gen = generated_holonomy(g, k)
    ok = gen == g.matrix_span()
    return BergerReport(
        algebra=g.name or "unnamed",
        kind=kind,
        dim_g=g.dim,
        dim_k=k.dim,
        dim_generated=gen.dim,
        first_criterion=ok,
        wall_time=time.perf_counter() - t0,
    )


def curvature_derivative_space(g: LinearRep, k: CurvatureSpace) -> CurvatureSpace:
    """First derivative space K1(g) inside V* (x) K(g).

    Coefficients d[x, i] encode D_{e_x} = sum_i d[x, i] R_i over a basis
    R_i of K(g).  The second Bianchi identity
    D_x(y,z) + D_y(z,x) + D_z(x,y) = 0 is fully alternating in (x,y,z),
    so basis triples x < y < z generate all constraints.
    """
    n = g.n
    kb = k.space.basis_vectors()
    dk = len(kb)
    pairs = _pairs(n)
    pidx = {p: i for i, p in enumerate(pairs)}
    index_map = tuple((x, i) for x in range(n) for i in range(dk))
    cdim = n * dk

    def rmat(kv, a, b):
        if a < b:
            return _eval_pair(g, kv, pidx[(a, b)])
        return [-x for x in _eval_pair(g, kv, pidx[(b, a)])]

    rows = []
    for x, y, z in combinations(range(n), 3):
        mats = [(x, [rmat(kv, y, z) for kv in kb]),
                (y, [rmat(kv, z, x) for kv in kb]),
                (z, [rmat(kv, x, y) for kv in kb])]
        for e in range(n * n):
            row = [_ZERO] * cdim
            for slot, rk in mats:
                for i in range(dk):
                    row[slot * dk + i] += rk[i][e]
            rows.append(row)
    ker = _kernel_of_rows(rows, cdim)
    return CurvatureSpace("V* (x) K(g)", cdim, ker, index_map)


def berger_report(g: LinearRep, kind: str = "plain",
                  decomposable: bool | None = None) -> BergerReport:
    """Both criteria in one report: K(g), the generated algebra, and K1(g)."""
    t0 = time.perf_counter()
    k = curvature_space(g)
    gen = generated_holonomy(g, k)
    k1 = curvature_derivative_space(g, k)
    return BergerReport(
        algebra=g.name or "unnamed",
        kind=kind,
        dim_g=g.dim,
        dim_k=k.dim,
        dim_generated=gen.dim,
        first_criterion=gen == g.matrix_span(),
        dim_k1=k1.dim,
        second_criterion=k1.dim > 0,
        decomposable=decomposable,
        wall_time=time.perf_counter() - t0,
    )


# --------------------------------------------------------------------------
# Split specialization k(g), k1(g)
# --------------------------------------------------------------------------


def split_curvature_space(s: SplitRep) -> CurvatureSpace:
    """Curvature tensors specialized to a two-block representation.

    Coefficients c[(a, b'), s] encode R(e_a, f_b') = sum_s c B_s with e_a
    ranging over the first block and f_b' over the second.  Two constraint
    families cut the space:

      R(x, y') z' = R(x, z') y'   for x in V1 and y' < z' in V2,
      R(x, y') t  = R(t, y') x    for x < t in V1 and y' in V2.

    The result carries ``generated`` (span of all evaluations) and the
    first-criterion ``verdict``.
    """
    g = s.rep
    n, d = g.n, g.dim
    n1, n2 = s.n1, s.n2
    index_map = tuple(((a, b), i) for a in range(n1) for b in range(n2)
                      for i in range(d))
    cdim = n1 * n2 * d

    def base(a, b):
        return (a * n2 + b) * d

    rows = []
    for x in range(n1):
        for yp, zp in combinations(range(n2), 2):
            for m in range(n):
                row = [_ZERO] * cdim
                for i, mat in enumerate(g.basis):
                    row[base(x, yp) + i] += mat.at(m, n1 + zp)
                    row[base(x, zp) + i] -= mat.at(m, n1 + yp)
                rows.append(row)
    for x, t in combinations(range(n1), 2):
        for yp in range(n2):
            for m in range(n):
                row = [_ZERO] * cdim
                for i, mat in enumerate(g.basis):
                    row[base(x, yp) + i] += mat.at(m, t)
                    row[base(t, yp) + i] -= mat.at(m, x)
                rows.append(row)
    ker = _kernel_of_rows(rows, cdim)

    vecs = []
    for kv in ker.basis_vectors():
        for pi in range(n1 * n2):
            vecs.append(_eval_pair(g, kv, pi))
    gen = span(vecs, n * n)
    return CurvatureSpace("V1* (x) V2* (x) g", cdim, ker, index_map,
                          generated=gen, verdict=gen == g.matrix_span())


def split_curvature_derivative(s: SplitRep, k: CurvatureSpace,
                               family2: str = "symmetric") -> CurvatureSpace:
    """Derivative space k1(g) inside V* (x) k(g).

    The first constraint family is symmetry of D in its two V1 arguments,
    D_x(y, z') = D_y(x, z').  The second family is pluggable:

      "symmetric"  D_t'(x, z') = D_z'(x, t')  (V2 symmetry, the default)
      "literal"    D_t'(y, z') = D_z'(x, t')  over all 4-tuples (x, y, t', z')

    The literal form leaves two of its variables unbound on opposite
    sides, so both readings are available for comparison.
    """
    if family2 not in ("symmetric", "literal"):
        raise ValueError("family2 must be 'symmetric' or 'literal'")
    g = s.rep
    n, d = g.n, g.dim
    n1, n2 = s.n1, s.n2
    kb = k.space.basis_vectors()
    dk = len(kb)
    index_map = tuple((u, i) for u in range(n) for i in range(dk))
    cdim = n * dk

    # rk[i][a][b] = flattened R_i(e_a, f_b')
    rk = [[[_eval_pair(g, kv, a * n2 + b) for b in range(n2)]
           for a in range(n1)] for kv in kb]

    rows = []
    for x, y in combinations(range(n1), 2):
        for zp in range(n2):
            for e in range(n * n):
                row = [_ZERO] * cdim
                for i in range(dk):
                    row[x * dk + i] += rk[i][y][zp][e]
                    row[y * dk + i] -= rk[i][x][zp][e]
                rows.append(row)
    if family2 == "symmetric":
        quads = [(x, x, tp, zp) for tp, zp in combinations(range(n2), 2)
                 for x in range(n1)]
    else:
        quads = [(x, y, tp, zp) for x in range(n1) for y in range(n1)
                 for tp in range(n2) for zp in range(n2)]
    for x, y, tp, zp in quads:
        for e in range(n * n):
            row = [_ZERO] * cdim
            for i in range(dk):
                row[(n1 + tp) * dk + i] += rk[i][y][zp][e]
                row[(n1 + zp) * dk + i] -= rk[i][x][tp][e]
            rows.append(row)
    ker = _kernel_of_rows(rows, cdim)
    return CurvatureSpace("V* (x) k(g)", cdim, ker, index_map)


# --------------------------------------------------------------------------
# Prolongations
# --------------------------------------------------------------------------


def prolongation(g: LinearRep, order: int) -> CurvatureSpace:
    """g^(order): totally symmetric g-valued tensors.

    Coefficients T[m, c] are indexed by non-decreasing multi-indices m of
    size order+1 (the symmetric lower slots) and an output coordinate c.
    Symmetry is built into the coordinates; the only constraints are
    membership: for every size-order multi-index m' the endomorphism
    E[c][b] = T[sort(m' + (b)), c] must lie in the span of g.
    """
    if not 1 <= order <= 3:
        raise ValueError("supported prolongation orders are 1, 2, 3")
    n = g.n
    msets = _multisets(n, order + 1)
    mpos = {m: i for i, m in enumerate(msets)}
    index_map = tuple((m, c) for m in msets for c in range(n))
    cdim = len(msets) * n
    resid = _residual_rows(g.matrix_span())
    rows = []
    for mp in _multisets(n, order):
        column_of = [mpos[tuple(sorted(mp + (b,)))] * n + c
                     for c in range(n) for b in range(n)]
        rows.extend(_membership_rows(resid, column_of, cdim))
    ker = _kernel_of_rows(rows, cdim)
    return CurvatureSpace(f"sym{order + 1}(V*) (x) V, g-valued",
                          cdim, ker, index_map)


def weak_criterion(g: LinearRep) -> bool:
    """True when first-prolongation evaluations r(e_a) span g."""
    p1 = prolongation(g, 1)
    n = g.n
    mpos = {m: i for i, m in enumerate(_multisets(n, 2))}
    vecs = []
    for r in p1.space.basis_vectors():
        for a in range(n):
            vecs.append([r[mpos[tuple(sorted((a, b)))] * n + c]
                         for c in range(n) for b in range(n)])
    return span(vecs, n * n) == g.matrix_span()


# --------------------------------------------------------------------------
# V + V* model
# --------------------------------------------------------------------------


def vdual_tilde_k(g: LinearRep) -> CurvatureSpace:
    """The space used for actions on V + V*: sym2(V*) (x) sym2(V)
    intersected with V* (x) g (x) V.

    Coefficients r[(a,b), (c,d)] over non-decreasing pairs.  Membership:
    for every x and t' the endomorphism E[c][y] = r[sort(x,y), sort(c,t')]
    lies in the span of g.  Carries the generated algebra
    span{ r(e_a, ., ., eps_b) } and the first-criterion verdict.
    """
    n = g.n
    ms2 = _multisets(n, 2)
    mpos = {m: i for i, m in enumerate(ms2)}
    index_map = tuple((lo, up) for lo in ms2 for up in ms2)
    cdim = len(ms2) ** 2

    def pos(lo, up):
        return mpos[lo] * len(ms2) + mpos[up]

    resid = _residual_rows(g.matrix_span())
    rows = []
    slices = []
    for x in range(n):
        for tp in range(n):
            column_of = [pos(tuple(sorted((x, y))), tuple(sorted((c, tp))))
                         for c in range(n) for y in range(n)]
            slices.append(column_of)
            rows.extend(_membership_rows(resid, column_of, cdim))
    ker = _kernel_of_rows(rows, cdim)
    vecs = []
    for kv in ker.basis_vectors():
        for column_of in slices:
            vecs.append([kv[column_of[e]] for e in range(n * n)])
    gen = span(vecs, n * n)
    return CurvatureSpace("sym2(V*) (x) sym2(V)", cdim, ker, index_map,
                          generated=gen, verdict=gen == g.matrix_span())


def vdual_tilde_k1(g: LinearRep) -> tuple[CurvatureSpace, CurvatureSpace]:
    """The two derivative summands for the V + V* model.

    Summand A: sym3(V*) (x) sym2(V) cut by sym2(V*) (x) g (x) V
    membership; summand B: sym2(V*) (x) sym3(V) cut by
    V* (x) g (x) sym2(V) membership.  The second-criterion verdict is
    dim A + dim B > 0.
    """
    n = g.n
    ms2 = _multisets(n, 2)
    ms3 = _multisets(n, 3)
    p2 = {m: i for i, m in enumerate(ms2)}
    p3 = {m: i for i, m in enumerate(ms3)}
    resid = _residual_rows(g.matrix_span())

    map_a = tuple((lo, up) for lo in ms3 for up in ms2)
    cdim_a = len(ms3) * len(ms2)
    rows = []
    for a, b in ms2:
        for tp in range(n):
            column_of = [p3[tuple(sorted((a, b, y)))] * len(ms2)
                         + p2[tuple(sorted((c, tp)))]
                         for c in range(n) for y in range(n)]
            rows.extend(_membership_rows(resid, column_of, cdim_a))
    ker_a = _kernel_of_rows(rows, cdim_a)
    sa = CurvatureSpace("sym3(V*) (x) sym2(V)", cdim_a, ker_a, map_a)

    map_b = tuple((lo, up) for lo in ms2 for up in ms3)
    cdim_b = len(ms2) * len(ms3)
    rows = []
    for x in range(n):
        for d, e in ms2:
            column_of = [p2[tuple(sorted((x, y)))] * len(ms3)
                         + p3[tuple(sorted((c, d, e)))]
                         for c in range(n) for y in range(n)]
            rows.extend(_membership_rows(resid, column_of, cdim_b))
    ker_b = _kernel_of_rows(rows, cdim_b)
    sb = CurvatureSpace("sym2(V*) (x) sym3(V)", cdim_b, ker_b, map_b)
    return sa, sb


# --------------------------------------------------------------------------
# V (x) R2 model
# --------------------------------------------------------------------------


def vtwice_g2_and_ghat(g: LinearRep) -> tuple[CurvatureSpace, Subspace]:
    """g^(2) together with its evaluation algebra ghat.

    ghat is the span of all T(e_a, e_b, .) as T runs over g^(2); the
    first-criterion verdict for the doubled representation is ghat = g
    and is stored on the returned space.
    """
    p2 = prolongation(g, 2)
    n = g.n
    mpos = {m: i for i, m in enumerate(_multisets(n, 3))}
    vecs = []
    for t in p2.space.basis_vectors():
        for a, b in _multisets(n, 2):
            vecs.append([t[mpos[tuple(sorted((a, b, x)))] * n + c]
                         for c in range(n) for x in range(n)])
    ghat = span(vecs, n * n)
    out = replace(p2, generated=ghat, verdict=ghat == g.matrix_span())
    return out, ghat


def vtwice_g3(g: LinearRep) -> CurvatureSpace:
    """g^(3); the second-criterion analogue for the doubled model is
    that this space is nonzero."""
    p3 = prolongation(g, 3)
    return replace(p3, verdict=p3.dim > 0)
