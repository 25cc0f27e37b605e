"""The dimension-2 family catalog and the two classification sweeps.

Nineteen families of Lie subalgebras of gl(2, R), each with an exact
basis constructor, expected verdicts for the V + V* and V + V block
models, and the sweep ``classify`` that recomputes every verdict from
scratch and compares.

A verdict for a family is one of three strings:

* ``"decomposable"``  the plain 2-dimensional representation splits
                      along invariant lines,
* ``"pass"``          indecomposable and the first criterion holds for
                      the block representation,
* ``"fail"``          indecomposable and the criterion fails.

Three families take a rational parameter lambda.  CO2_lambda excludes
lambda = 0 (that value degenerates into Hom); SO_lambda and
Tr-SO_lambda accept any lambda, overlapping other rows at special
values (SO_lambda at 1 spans the same algebra as Hom, Tr-SO_lambda at
0 the same as Tr-SO-1_1, and so on).  The sweep keeps such rows: their
recomputed verdicts must still match.
"""

from dataclasses import dataclass
from fractions import Fraction

from .ratlinalg import MatrixQ
from .repcore import (
    LinearRep,
    SplitRep,
    decomposable_along_invariant_lines,
    direct_sum_dual,
    direct_sum_twice,
    dual_rep,
    rep_from_rows,
)
from .bergerkit import (
    first_criterion,
    split_curvature_space,
    vdual_tilde_k,
    vtwice_g2_and_ghat,
)

DEFAULT_LAMBDA_GRID = (
    Fraction(-2),
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(0),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
)


class UnknownFamily(ValueError):
    pass


class LambdaRule(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row: constructor plus expected sweep verdicts.

    ``expected_vdual`` and ``expected_vtwice`` are either a verdict
    string or, for parametrized families, a callable of lambda.
    """

    key: str
    takes_lambda: bool
    build: callable
    expected_vdual: object
    expected_vtwice: object
    forbidden: tuple = ()


def _rep(key, rows, lam=None):
    params = () if lam is None else (lam,)
    return rep_from_rows(2, rows, name=key, params=params)


def _tr_so(key, lam):
    return _rep(key, [[[1, 0], [0, lam]], [[0, 1], [0, 0]]], lam)


_PASS = "pass"
_FAIL = "fail"
_DEC = "decomposable"


def _so_lambda_expected(lam):
    return _DEC if lam == 0 else _FAIL


CATALOG = (
    CatalogEntry("Gl+", False, lambda lam: _rep("Gl+", [
        [[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]),
        _PASS, _PASS),
    CatalogEntry("Sl2", False, lambda lam: _rep("Sl2", [
        [[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]]),
        _PASS, _PASS),
    CatalogEntry("SO2", False, lambda lam: _rep("SO2", [[[0, 1], [-1, 0]]]),
                 _FAIL, _FAIL),
    CatalogEntry("CO2", False, lambda lam: _rep("CO2", [
        [[1, 0], [0, 1]], [[0, -1], [1, 0]]]),
        _PASS, _PASS),
    CatalogEntry("CO2_lambda", True, lambda lam: _rep(
        "CO2_lambda", [[[1, -lam], [lam, 1]]], lam),
        lambda lam: _FAIL, lambda lam: _FAIL, forbidden=(Fraction(0),)),
    CatalogEntry("Id", False, lambda lam: LinearRep(2, (), name="Id"),
                 _DEC, _DEC),
    CatalogEntry("Hom", False, lambda lam: _rep("Hom", [[[1, 0], [0, 1]]]),
                 _FAIL, _FAIL),
    CatalogEntry("SO11", False, lambda lam: _rep("SO11", [[[1, 0], [0, -1]]]),
                 _FAIL, _FAIL),
    CatalogEntry("SO_lambda", True, lambda lam: _rep(
        "SO_lambda", [[[1, 0], [0, lam]]], lam),
        _so_lambda_expected, _so_lambda_expected),
    CatalogEntry("SO-1_1", False, lambda lam: _rep("SO-1_1", [[[1, 0], [0, 0]]]),
                 _DEC, _DEC),
    CatalogEntry("CO11", False, lambda lam: _rep("CO11", [
        [[1, 0], [0, 0]], [[0, 0], [0, 1]]]),
        _DEC, _DEC),
    CatalogEntry("He", False, lambda lam: _rep("He", [[[0, 1], [0, 0]]]),
                 _PASS, _PASS),
    CatalogEntry("Tr-X", False, lambda lam: _rep("Tr-X", [[[1, 1], [0, 1]]]),
                 _FAIL, _FAIL),
    CatalogEntry("Tr-H", False, lambda lam: _rep("Tr-H", [
        [[1, 0], [0, 1]], [[0, 1], [0, 0]]]),
        _PASS, _PASS),
    CatalogEntry("Tr-SO11", False, lambda lam: _rep("Tr-SO11", [
        [[1, 0], [0, -1]], [[0, 1], [0, 0]]]),
        _PASS, _PASS),
    CatalogEntry("Tr-SO_lambda", True, lambda lam: _tr_so("Tr-SO_lambda", lam),
                 lambda lam: _PASS, lambda lam: _PASS),
    CatalogEntry("Tr-SO-1_1", False, lambda lam: _rep("Tr-SO-1_1", [
        [[1, 0], [0, 0]], [[0, 1], [0, 0]]]),
        _PASS, _PASS),
    CatalogEntry("Tr-SO-1_2", False, lambda lam: _rep("Tr-SO-1_2", [
        [[0, 0], [0, 1]], [[0, 1], [0, 0]]]),
        _PASS, _PASS),
    CatalogEntry("Tr", False, lambda lam: _rep("Tr", [
        [[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]]),
        _PASS, _PASS),
)

_BY_KEY = {e.key: e for e in CATALOG}


def catalog_keys() -> tuple:
    return tuple(e.key for e in CATALOG)


def catalog_entry(key: str) -> CatalogEntry:
    try:
        return _BY_KEY[key]
    except KeyError:
        raise UnknownFamily(f"unknown catalog family {key!r}") from None


def catalog_algebra(key: str, lam: Fraction | None = None) -> LinearRep:
    """Construct the table algebra for a family, validating lambda rules."""
    entry = catalog_entry(key)
    if entry.takes_lambda:
        if lam is None:
            raise LambdaRule(f"family {key!r} requires a lambda value")
        lam = Fraction(lam)
        if lam in entry.forbidden:
            raise LambdaRule(f"family {key!r} excludes lambda = {lam}")
    elif lam is not None:
        raise LambdaRule(f"family {key!r} takes no lambda")
    return entry.build(lam)


def expected_verdicts(key: str, lam: Fraction | None, kind: str) -> str:
    """The classification verdict a sweep row is expected to produce."""
    if kind not in ("v-dual", "v-twice"):
        raise ValueError("kind must be 'v-dual' or 'v-twice'")
    entry = catalog_entry(key)
    expected = entry.expected_vdual if kind == "v-dual" else entry.expected_vtwice
    if callable(expected):
        if lam is None:
            raise LambdaRule(f"family {key!r} requires a lambda value")
        return expected(Fraction(lam))
    return expected


def dual_partner(key: str, lam: Fraction | None):
    """The family whose algebra is conjugate to the dual of this one.

    Duality sends an algebra to its negated transpose; for the
    triangular families a coordinate swap brings that back into table
    form, exchanging lambda with 1/lambda.  Families whose span is
    preserved outright are their own partner.
    """
    if key == "Tr-SO_lambda":
        lam = Fraction(lam)
        if lam == 0:
            return "Tr-SO-1_2", None
        return "Tr-SO_lambda", 1 / lam
    if key == "Tr-SO-1_1":
        return "Tr-SO-1_2", None
    if key == "Tr-SO-1_2":
        return "Tr-SO-1_1", None
    return key, lam


_SWAP = MatrixQ.from_rows([[0, 1], [1, 0]])


def dual_partner_verified(key: str, lam: Fraction | None) -> bool:
    """Check the dual_partner derivation by explicit conjugation.

    The dual of the family algebra must equal the partner algebra as a
    span, after one of the two coordinate permutations of the plane.
    """
    g = catalog_algebra(key, lam)
    pkey, plam = dual_partner(key, lam)
    partner = catalog_algebra(pkey, plam)
    d = dual_rep(g)
    for p in (MatrixQ.identity(2), _SWAP):
        conj = [p.mul(m).mul(p.inverse()) for m in d.basis]
        from .repcore import span_of_matrices

        if span_of_matrices(conj, 2) == partner.matrix_span():
            return True
    return False


@dataclass(frozen=True)
class ClassificationRow:
    key: str
    lam: Fraction | None
    decomposable: bool
    computed: str
    expected: str
    dim_g: int
    dim_k: int
    dim_generated: int

    @property
    def match(self) -> bool:
        return self.computed == self.expected


@dataclass(frozen=True)
class ClassificationReport:
    kind: str
    lambda_grid: tuple
    rows: tuple

    @property
    def overall_match(self) -> bool:
        return all(r.match for r in self.rows)

    def mismatches(self) -> list:
        return [r for r in self.rows if not r.match]


def _block(g: LinearRep, kind: str) -> SplitRep:
    return direct_sum_dual(g) if kind == "v-dual" else direct_sum_twice(g)


def classify_row(key: str, lam: Fraction | None, kind: str) -> ClassificationRow:
    """Recompute one sweep row through all three criterion pipelines.

    The generic curvature-space pipeline on the 4-dimensional block
    representation, the split specialization, and the model-specific
    space (the V + V* space or ghat) must agree; a disagreement would
    be an internal inconsistency, not a classification mismatch, so it
    raises instead of reporting.
    """
    g = catalog_algebra(key, lam)
    dec = decomposable_along_invariant_lines(g)
    s = _block(g, kind)
    generic = first_criterion(s.rep, kind=kind)
    split = split_curvature_space(s)
    if kind == "v-dual":
        model_verdict = vdual_tilde_k(g).verdict
    else:
        model_verdict = vtwice_g2_and_ghat(g)[0].verdict
    if not generic.first_criterion == split.verdict == model_verdict:
        raise RuntimeError(
            f"criterion pipelines disagree on {key} lambda={lam} kind={kind}")
    computed = _DEC if dec else (_PASS if generic.first_criterion else _FAIL)
    return ClassificationRow(
        key=key,
        lam=lam,
        decomposable=dec,
        computed=computed,
        expected=expected_verdicts(key, lam, kind),
        dim_g=g.dim,
        dim_k=generic.dim_k,
        dim_generated=generic.dim_generated,
    )


def classify(kind: str, lambda_grid=DEFAULT_LAMBDA_GRID) -> ClassificationReport:
    """Sweep every catalog family (every grid lambda for parametrized
    ones, minus excluded values) and compare with the expected verdicts."""
    if kind not in ("v-dual", "v-twice"):
        raise ValueError("kind must be 'v-dual' or 'v-twice'")
    grid = tuple(Fraction(x) for x in lambda_grid)
    rows = []
    for entry in CATALOG:
        if entry.takes_lambda:
            lams = [x for x in grid if x not in entry.forbidden]
        else:
            lams = [None]
        for lam in lams:
            rows.append(classify_row(entry.key, lam, kind))
    return ClassificationReport(kind=kind, lambda_grid=grid, rows=tuple(rows))
