"""Exact verification of holonomy criteria for linear Lie algebra representations.

The package decides, in exact rational arithmetic, the classical necessary
conditions for a matrix Lie algebra to be the holonomy algebra of a
torsion-free affine connection: curvature-space criteria, their
specializations to split representations V1 + V2, to V + V* and to V + V,
prolongations, and decomposability.  A floating-point module checks the
explicit coordinate connections that realize the dimension-2 families.
"""

__version__ = "0.1.0"

from .ratlinalg import MatrixQ, Subspace, rref, kernel, span, intersect, contains
from .repcore import (
    LinearRep,
    SplitRep,
    bracket,
    check_lie_closure,
    dual_rep,
    direct_sum_dual,
    direct_sum_twice,
    invariant_lines_2d,
    is_decomposable,
    quotient_rep,
)
from .bergerkit import (
    BergerReport,
    CurvatureSpace,
    berger_report,
    curvature_space,
    curvature_derivative_space,
    first_criterion,
    generated_holonomy,
    prolongation,
    split_curvature_space,
    split_curvature_derivative,
    vdual_tilde_k,
    vdual_tilde_k1,
    vtwice_g2_and_ghat,
    vtwice_g3,
    weak_criterion,
)
from .catalog2d import (
    CatalogEntry,
    ClassificationReport,
    ClassificationRow,
    DEFAULT_LAMBDA_GRID,
    LambdaRule,
    UnknownFamily,
    catalog_algebra,
    catalog_entry,
    catalog_keys,
    classify,
    classify_row,
    dual_partner,
    expected_verdicts,
)
from .connlab import (
    ConnectionExample,
    ConnectionVerdict,
    SingularTransition,
    UnregisteredFamily,
    available_families,
    connection_example,
    christoffel,
    curvature_block,
    second_mixed,
    transition,
    verify_connection,
)

__all__ = [
    "MatrixQ",
    "Subspace",
    "rref",
    "kernel",
    "span",
    "intersect",
    "contains",
    "LinearRep",
    "SplitRep",
    "bracket",
    "check_lie_closure",
    "dual_rep",
    "direct_sum_dual",
    "direct_sum_twice",
    "invariant_lines_2d",
    "is_decomposable",
    "quotient_rep",
    "BergerReport",
    "CurvatureSpace",
    "berger_report",
    "curvature_space",
    "curvature_derivative_space",
    "first_criterion",
    "generated_holonomy",
    "prolongation",
    "split_curvature_space",
    "split_curvature_derivative",
    "vdual_tilde_k",
    "vdual_tilde_k1",
    "vtwice_g2_and_ghat",
    "vtwice_g3",
    "weak_criterion",
    "CatalogEntry",
    "ClassificationReport",
    "ClassificationRow",
    "DEFAULT_LAMBDA_GRID",
    "LambdaRule",
    "UnknownFamily",
    "catalog_algebra",
    "catalog_entry",
    "catalog_keys",
    "classify",
    "classify_row",
    "dual_partner",
    "expected_verdicts",
    "ConnectionExample",
    "ConnectionVerdict",
    "SingularTransition",
    "UnregisteredFamily",
    "available_families",
    "connection_example",
    "christoffel",
    "curvature_block",
    "second_mixed",
    "transition",
    "verify_connection",
    "__version__",
]
