"""Tests for the criterion spaces: fixtures, oracles, and invariants."""

from fractions import Fraction

import pytest

from holonomy.ratlinalg import span, zero_subspace
from holonomy.repcore import (
    LinearRep,
    direct_sum_dual,
    direct_sum_twice,
    dual_rep,
    invariant_lines_2d,
    quotient_rep,
    rep_from_rows,
)
from holonomy.bergerkit import (
    _multisets,
    berger_report,
    curvature_derivative_space,
    curvature_space,
    first_criterion,
    generated_holonomy,
    prolongation,
    split_curvature_derivative,
    split_curvature_space,
    vdual_tilde_k,
    vdual_tilde_k1,
    vtwice_g2_and_ghat,
    vtwice_g3,
    weak_criterion,
)
from oracles import (
    k1_space_all_triples,
    k_space_all_triples,
    prolongation_full_tensor,
    split_k1_all_ranges,
    split_k_all_ranges,
    tilde_k1_full,
    tilde_k_full,
)

Q = Fraction

HE = rep_from_rows(2, [[[0, 1], [0, 0]]], name="He")
SO2 = rep_from_rows(2, [[[0, 1], [-1, 0]]], name="SO2")
SO11 = rep_from_rows(2, [[[1, 0], [0, -1]]], name="SO11")
HOM = rep_from_rows(2, [[[1, 0], [0, 1]]], name="Hom")
CO2 = rep_from_rows(2, [[[1, 0], [0, 1]], [[0, -1], [1, 0]]], name="CO2")
TR = rep_from_rows(2, [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]], name="Tr")
SL2 = rep_from_rows(2, [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]], name="Sl2")
GL2 = rep_from_rows(
    2, [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]], name="Gl"
)
ONE = rep_from_rows(1, [[[1]]], name="R")

TWO_DIM_REPS = [HE, SO2, SO11, HOM, CO2, TR, SL2, GL2]


# ---------------------------------------------------------------- K(g)


def test_k_zero_algebra():
    g = LinearRep(3, (), name="0")
    assert curvature_space(g).dim == 0


def test_k_dim_two_equals_dim_g():
    # the Bianchi cyclic sum vanishes identically when n = 2
    for g in TWO_DIM_REPS:
        k = curvature_space(g)
        assert k.dim == g.dim


def test_k_vdual_gl2_fixture():
    s = direct_sum_dual(GL2)
    k = curvature_space(s.rep)
    assert k.dim == 9
    assert k.space == k_space_all_triples(s.rep)


def test_k_oracle_all_triples():
    for g in TWO_DIM_REPS:
        for block in (direct_sum_dual(g), direct_sum_twice(g)):
            k = curvature_space(block.rep)
            assert k.space == k_space_all_triples(block.rep)


def test_k_coefficient_dim_invariant():
    k = curvature_space(GL2)
    assert k.coefficient_dim == 1 * GL2.dim  # one a<b pair when n=2
    assert len(k.index_map) == k.coefficient_dim


# ---------------------------------------------------------------- underline g


def test_generated_he_equals_g():
    k = curvature_space(HE)
    assert generated_holonomy(HE, k) == HE.matrix_span()


def test_generated_homotheties_doubled_zero():
    s = direct_sum_twice(HOM)
    k = curvature_space(s.rep)
    assert k.dim == 0
    assert generated_holonomy(s.rep, k) == zero_subspace(16)


def test_generated_contained_in_g():
    for g in TWO_DIM_REPS:
        for rep in (g, direct_sum_dual(g).rep, direct_sum_twice(g).rep):
            k = curvature_space(rep)
            gen = generated_holonomy(rep, k)
            merged = span(
                list(gen.basis_vectors()) + list(rep.matrix_span().basis_vectors()),
                rep.n * rep.n,
            )
            assert merged == rep.matrix_span()


def test_first_criterion_plain_dim_two_always_passes():
    for g in TWO_DIM_REPS:
        assert first_criterion(g).first_criterion


def test_first_criterion_so11_one_plus_one():
    s = direct_sum_dual(ONE)
    rep = first_criterion(s.rep)
    assert rep.first_criterion
    assert rep.dim_k == 1


def test_first_criterion_homotheties_doubled_fails():
    assert not first_criterion(direct_sum_twice(HOM).rep).first_criterion


# ---------------------------------------------------------------- K1(g)


def test_k1_zero_algebra():
    g = LinearRep(3, (), name="0")
    k = curvature_space(g)
    assert curvature_derivative_space(g, k).dim == 0


def test_k1_gl2_plain():
    k = curvature_space(GL2)
    k1 = curvature_derivative_space(GL2, k)
    assert k1.dim == 8  # n * dim K when n = 2: no triples, no constraints
    assert k1.space == k1_space_all_triples(GL2, k)


def test_k1_he_doubled_positive():
    s = direct_sum_twice(HE)
    k = curvature_space(s.rep)
    k1 = curvature_derivative_space(s.rep, k)
    assert k1.dim == 2
    assert k1.dim > 0
    assert k1.space == k1_space_all_triples(s.rep, k)


def test_k1_oracle_vdual_gl2():
    s = direct_sum_dual(GL2)
    k = curvature_space(s.rep)
    k1 = curvature_derivative_space(s.rep, k)
    assert k1.dim == 24
    assert k1.space == k1_space_all_triples(s.rep, k)


def test_berger_report_fields():
    rep = berger_report(GL2)
    assert rep.dim_g == 4 and rep.dim_k == 4
    assert rep.first_criterion and rep.second_criterion
    assert rep.dim_k1 == 8
    assert rep.wall_time is not None


# ---------------------------------------------------------------- split k(g)


def test_split_k_one_plus_one():
    s = direct_sum_dual(ONE)
    k = split_curvature_space(s)
    assert k.dim == 1
    assert k.generated == s.rep.matrix_span()
    assert k.verdict


def test_split_k_zero_algebra():
    s = direct_sum_twice(LinearRep(2, (), name="0"))
    assert split_curvature_space(s).dim == 0


def test_split_k_he_vdual_matches_generic():
    s = direct_sum_dual(HE)
    k = split_curvature_space(s)
    kg = curvature_space(s.rep)
    assert k.dim == kg.dim
    assert k.verdict == (generated_holonomy(s.rep, kg) == s.rep.matrix_span())


def test_split_generic_equivalence_suite():
    for g in TWO_DIM_REPS:
        for s in (direct_sum_dual(g), direct_sum_twice(g)):
            k = split_curvature_space(s)
            kg = curvature_space(s.rep)
            assert k.dim == kg.dim
            assert k.generated == generated_holonomy(s.rep, kg)


def test_split_k_oracle_all_ranges():
    for g in (HE, CO2, TR, GL2):
        s = direct_sum_dual(g)
        assert split_curvature_space(s).space == split_k_all_ranges(s)


# ---------------------------------------------------------------- split k1(g)


def test_split_k1_one_plus_one():
    s = direct_sum_dual(ONE)
    k = split_curvature_space(s)
    assert split_curvature_derivative(s, k).dim == 2


def test_split_k1_gl2_vdual_positive():
    s = direct_sum_dual(GL2)
    k = split_curvature_space(s)
    k1 = split_curvature_derivative(s, k)
    assert k1.dim > 0
    assert k1.space == split_k1_all_ranges(s, k)


def test_split_k1_both_readings():
    s = direct_sum_twice(HE)
    k = split_curvature_space(s)
    sym = split_curvature_derivative(s, k, family2="symmetric")
    lit = split_curvature_derivative(s, k, family2="literal")
    assert sym.dim == 2
    assert lit.dim == 1
    with pytest.raises(ValueError):
        split_curvature_derivative(s, k, family2="bogus")


def test_split_k1_oracle():
    for g in (HE, SO2, TR):
        s = direct_sum_twice(g)
        k = split_curvature_space(s)
        k1 = split_curvature_derivative(s, k)
        assert k1.space == split_k1_all_ranges(s, k)


# ---------------------------------------------------------------- prolongations


def test_prolongation_fixtures():
    assert prolongation(GL2, 1).dim == 6
    assert prolongation(SO2, 1).dim == 0
    assert prolongation(HE, 1).dim == 1


def test_prolongation_rejects_bad_order():
    with pytest.raises(ValueError):
        prolongation(HE, 0)
    with pytest.raises(ValueError):
        prolongation(HE, 4)


def test_prolongation_full_tensor_oracle():
    for g in TWO_DIM_REPS:
        for order in (1, 2, 3):
            p = prolongation(g, order)
            dim, compressed = prolongation_full_tensor(g, order)
            assert p.dim == dim
            assert p.space == compressed


def test_prolongation_tower_containment():
    # contracting the first slot of g^(k+1) with any basis vector lands in g^(k)
    for g in TWO_DIM_REPS:
        n = g.n
        for order in (1, 2):
            low = prolongation(g, order)
            high = prolongation(g, order + 1)
            ms_low = _multisets(n, order + 1)
            mlow = {m: i for i, m in enumerate(ms_low)}
            for t in high.space.basis_vectors():
                hpos = {m: i for i, m in enumerate(_multisets(n, order + 2))}
                for a in range(n):
                    vec = [Q(0)] * (len(ms_low) * n)
                    for m in ms_low:
                        for c in range(n):
                            big = tuple(sorted((a,) + m))
                            vec[mlow[m] * n + c] = t[hpos[big] * n + c]
                    assert tuple(vec) in low.space


def test_weak_criterion_fixtures():
    assert weak_criterion(GL2)
    assert not weak_criterion(SO2)
    assert weak_criterion(LinearRep(2, (), name="0"))
    assert weak_criterion(HE)


# ---------------------------------------------------------------- V + V*


def test_tilde_k_one_plus_one():
    k = vdual_tilde_k(ONE)
    assert k.dim == 1
    assert k.verdict


def test_tilde_k_fixtures():
    assert vdual_tilde_k(SO2).dim == 0
    assert not vdual_tilde_k(SO2).verdict
    assert vdual_tilde_k(CO2).verdict
    he = vdual_tilde_k(HE)
    assert he.dim == 1 and he.verdict


def test_tilde_k_full_tensor_oracle():
    for g in TWO_DIM_REPS:
        k = vdual_tilde_k(g)
        dim, compressed = tilde_k_full(g)
        assert k.dim == dim
        assert k.space == compressed


def test_tilde_k_verdict_matches_generic_on_vdual():
    for g in TWO_DIM_REPS:
        s = direct_sum_dual(g)
        generic = first_criterion(s.rep).first_criterion
        assert vdual_tilde_k(g).verdict == generic


def test_tilde_k1_fixtures():
    a, b = vdual_tilde_k1(LinearRep(2, (), name="0"))
    assert (a.dim, b.dim) == (0, 0)
    a, b = vdual_tilde_k1(GL2)
    assert (a.dim, b.dim) == (12, 12)
    a, b = vdual_tilde_k1(HE)
    assert (a.dim, b.dim) == (1, 1)


def test_tilde_k1_oracle():
    for g in (HE, SO2, CO2, TR):
        a, b = vdual_tilde_k1(g)
        assert (a.dim, b.dim) == tilde_k1_full(g)


# ---------------------------------------------------------------- V (x) R2


def test_g2_ghat_he():
    g2, ghat = vtwice_g2_and_ghat(HE)
    assert g2.dim == 1
    assert ghat == HE.matrix_span()
    assert g2.verdict


def test_g2_so2_fails():
    g2, ghat = vtwice_g2_and_ghat(SO2)
    assert g2.dim == 0
    assert ghat.dim == 0
    assert not g2.verdict


def test_g2_gl2_passes():
    g2, _ = vtwice_g2_and_ghat(GL2)
    assert g2.verdict


def test_g3_fixtures():
    assert vtwice_g3(LinearRep(2, (), name="0")).dim == 0
    he = vtwice_g3(HE)
    assert he.dim == 1 and he.verdict
    so2 = vtwice_g3(SO2)
    assert so2.dim == 0 and not so2.verdict


def test_ghat_equals_block_restriction_of_generated():
    from holonomy.repcore import block_of

    for g in TWO_DIM_REPS:
        s = direct_sum_twice(g)
        k = curvature_space(s.rep)
        gen = generated_holonomy(s.rep, k)
        blocks = []
        for v in gen.basis_vectors():
            blocks.append([v[i * 4 + j] for i in range(2) for j in range(2)])
        restricted = span(blocks, 4)
        _, ghat = vtwice_g2_and_ghat(g)
        assert ghat == restricted


# ---------------------------------------------------------------- invariants


def test_duality_block_swap_verdicts():
    for g in TWO_DIM_REPS:
        a = first_criterion(direct_sum_dual(g).rep).first_criterion
        b = first_criterion(direct_sum_dual(dual_rep(g)).rep).first_criterion
        assert a == b


def test_weak_criterion_quotient_stability():
    for g in TWO_DIM_REPS:
        if not weak_criterion(g):
            continue
        lines = invariant_lines_2d(g)
        if lines.all_lines:
            continue
        for w in lines.rational_lines:
            assert weak_criterion(quotient_rep(g, w))


def test_vtwice_pass_implies_weak_criterion():
    for g in TWO_DIM_REPS:
        g2, _ = vtwice_g2_and_ghat(g)
        if g2.verdict:
            assert weak_criterion(g)
