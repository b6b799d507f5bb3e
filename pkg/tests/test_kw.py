"""Tests for wps/kw.py"""

from fractions import Fraction

import pytest

from wps.errors import DimensionError, DomainError, ProfileError
from wps.groebner import degree, same_ideal
from wps.kw import (
    Block,
    BlockSpec,
    allowed_perturbation_monomials,
    build_kw_matrix,
    column_profile,
    epsilon_shift,
    pseudo_1generic_probe,
    sample_parameters,
    structural_1generic_check,
    variable_count,
)
from wps.parse import load_ideal_document, matrix_from_document, parse_in
from wps.presets import BLOCKSPECS, MATRICES, remark413_matrix, remark413_row_reduced
from wps.ring import WeightSystem, minors
from wps.scroll import Profile, scroll_degree

P1122 = WeightSystem((1, 1, 2, 2))


def preset_matrix(name):
    return matrix_from_document(load_ideal_document(MATRICES[name]))


def matrix_of(doc):
    return matrix_from_document(load_ideal_document(doc))


@pytest.fixture
def jordan_1122():
    """One Jordan block of size 2 with ε = 0 and p = (0, x_{0,1}^2)."""
    return BlockSpec.load({
        "weights": [1, 1, 2, 2],
        "degrees": [{"degree_index": 1, "blocks": [
            {"kind": "jordan", "size": 2, "perturbations": ["0", "x0_1^2"]}]}],
    })


class TestBlock:
    def test_shapes(self):
        assert Block("nilpotent", 2).slots == 4
        assert Block("nilpotent", 2).n_columns == 3
        assert Block("scroll", 3).n_columns == 2
        assert Block("zero", 2).n_variables == 0

    def test_invalid(self):
        with pytest.raises(ProfileError):
            Block("spiral")
        with pytest.raises(ProfileError):
            Block("scroll", 1)
        with pytest.raises(ProfileError):
            Block("nilpotent1", 2)

    def test_too_many_perturbations(self):
        p = parse_in(P1122, "x0_1^2")
        with pytest.raises(ProfileError):
            Block("jordan", 1, perturbations=(p, p))

    def test_degree_index_range(self):
        with pytest.raises(DimensionError):
            BlockSpec(P1122, {2: (Block("jordan"),)})


class TestBuild:
    def test_jordan_block(self, jordan_1122):
        assert build_kw_matrix(jordan_1122) == matrix_of(remark413_matrix(0))

    def test_epsilon_shift(self, jordan_1122):
        shifted = epsilon_shift(jordan_1122, 1, 0, 1)
        assert build_kw_matrix(shifted) == matrix_of(remark413_matrix(1))
        assert jordan_1122.degrees[1][0].epsilon == 0

    def test_intro_c2(self):
        spec = BlockSpec.load(BLOCKSPECS["intro_c2"])
        assert build_kw_matrix(spec) == preset_matrix("intro_m2")

    def test_intro_c1(self):
        spec = BlockSpec.load(BLOCKSPECS["intro_c1"])
        expected = matrix_of({"weights": [1, 1, 3, 3, 3], "variables": ["x1", "x2", "y1", "y2", "y3"],
                              "matrix": [["x1", "y1", "y2", "y3"], ["x2", "y2", "y3", "x1^3"]]})
        assert build_kw_matrix(spec) == expected
        assert column_profile(spec) == (1, 3, 3, 3)
        assert variable_count(spec) == {1: 3}

    def test_example417(self):
        spec = BlockSpec.load(BLOCKSPECS["example417"])
        M = build_kw_matrix(spec)
        W = spec.ambient
        assert M.cols == 8
        assert M.col_degrees == column_profile(spec) == (1, 1, 2, 2, 2, 4, 4, 4)
        assert M.entries[1][4] == parse_in(W, "x0_1^2")
        assert M.entries[1][5] == parse_in(W, "x2_2 + x2_1 + x1_1^2")
        assert M.entries[1][7] == parse_in(W, "x2_3 + x0_1^4 + x1_1^2")

    def test_classical_scroll(self):
        M = build_kw_matrix(BlockSpec(WeightSystem((1, 1, 1))))
        assert M.entries[0] == (parse_in(M.ambient, "x0_1"), parse_in(M.ambient, "x0_2"))
        assert M.entries[1] == (parse_in(M.ambient, "x0_2"), parse_in(M.ambient, "x0_3"))

    def test_variable_count(self):
        with pytest.raises(ProfileError, match="at most 3"):
            build_kw_matrix(BlockSpec(WeightSystem((1, 1, 3, 3, 3)), {1: (Block("jordan", 4),)}))

    def test_lower_degree_must_be_full(self):
        W = WeightSystem((1, 1, 2, 2, 4))
        spec = BlockSpec(W, {1: (Block("jordan", 1),), 2: (Block("jordan", 1),)})
        with pytest.raises(ProfileError, match="exactly 2"):
            build_kw_matrix(spec)

    def test_perturbation_outside_span(self):
        with pytest.raises(ProfileError, match="allowed span"):
            build_kw_matrix(BlockSpec.load({"weights": [1, 1, 2, 2], "degrees": [
                {"degree_index": 1, "blocks": [
                    {"kind": "jordan", "size": 2, "perturbations": ["0", "x0_2^2"]}]}]}))

    def test_perturbation_wrong_degree(self):
        with pytest.raises(ProfileError, match="homogeneous"):
            build_kw_matrix(BlockSpec.load({"weights": [1, 1, 2, 2], "degrees": [
                {"degree_index": 1, "blocks": [
                    {"kind": "jordan", "size": 2, "perturbations": ["0", "x0_1"]}]}]}))

    def test_needs_two_linear_variables(self):
        with pytest.raises(DomainError):
            build_kw_matrix(BlockSpec(WeightSystem((1, 2, 2)), {1: (Block("jordan", 2),)}))

    def test_allowed_span(self):
        spec = BlockSpec.load(BLOCKSPECS["example417"])
        W = spec.ambient
        allowed = allowed_perturbation_monomials(W, spec, 2)
        assert set(parse_in(W, "x0_1^4 + x1_1^2").terms) == allowed


class TestStructuralCheck:
    def test_presets_certified(self):
        for name in BLOCKSPECS:
            report = structural_1generic_check(BlockSpec.load(BLOCKSPECS[name]))
            assert report.certified, name

    @pytest.mark.parametrize("blocks,message", [
        ((Block("nilpotent", 2),), "nilpotent block of size 2"),
        ((Block("zero", 1), Block("jordan", 1)), "zero block"),
        ((Block("nilpotent1"), Block("nilpotent1")), "2 nilpotent blocks"),
    ])
    def test_violations(self, blocks, message):
        spec = BlockSpec(WeightSystem((1, 1, 2, 2, 2)), {1: blocks})
        report = structural_1generic_check(spec)
        assert not report.certified
        assert any(message in v for v in report.violations)

    @pytest.mark.parametrize("blocks", [
        (Block("jordan", 1), Block("nilpotent1")),
        (Block("nilpotent1"), Block("jordan", 1)),
    ])
    def test_block_order_is_free(self, blocks):
        spec = BlockSpec(WeightSystem((1, 1, 2, 2)), {1: blocks})
        assert structural_1generic_check(spec).certified

    def test_scroll_below_top(self):
        W = WeightSystem((1, 1, 2, 2, 4))
        spec = BlockSpec(W, {1: (Block("scroll", 2),), 2: (Block("jordan", 1),)})
        assert "scroll block in degree 1" in structural_1generic_check(spec).violations[0]

    def test_size_one_nilpotent_allowed(self):
        spec = BlockSpec(WeightSystem((1, 1, 2, 2)), {1: (Block("nilpotent", 1), Block("jordan", 1))})
        assert structural_1generic_check(spec).certified


def test_sample_parameters():
    assert sample_parameters(5) == [1, -1, 2, -2, 3]
    assert sample_parameters(0) == []


class TestProbe:
    def test_unit_row_certificate(self):
        result = pseudo_1generic_probe(preset_matrix("example46"), sample_count=2)
        assert result.verdict == "certified_no"
        assert result.witness == (1, 0, 0)
        assert result.checked == 1

    def test_combination_certificate(self):
        M = matrix_of({"weights": [1, 1, 2, 2], "variables": ["x1", "x2", "y1", "y2"],
                       "matrix": [["x1", "y1", "y2"], ["x2", "-y1", "y1 + y2"]]})
        result = pseudo_1generic_probe(M, sample_count=4)
        assert result.verdict == "certified_no"
        assert result.witness == (1, 1)
        assert result.checked == 3
        assert result.to_dict()["witness"] == ["1", "1"]

    @pytest.mark.parametrize("name", ["c1", "example45_m", "example47_mprime", "example421"])
    def test_probable_yes(self, name):
        result = pseudo_1generic_probe(preset_matrix(name), sample_count=2)
        assert result.verdict == "probable_yes"
        assert result.witness is None
        assert result.checked == 4

    def test_row_offsets_use_lowest_forms(self):
        result = pseudo_1generic_probe(preset_matrix("final_remark"), sample_count=2)
        assert result.verdict == "probable_yes"


class TestEpsilonIndependence:
    @pytest.mark.parametrize("eps", [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(5)])
    def test_coordinate_change(self, eps):
        I = minors(matrix_of(remark413_matrix(eps)), 2)
        assert same_ideal(I, minors(matrix_of(remark413_row_reduced(eps)), 2))

    def test_literal_ideal_moves(self):
        I0 = minors(matrix_of(remark413_matrix(0)), 2)
        I1 = minors(matrix_of(remark413_matrix(1)), 2)
        assert not same_ideal(I0, I1)

    def test_non_jordan_shift(self):
        spec = BlockSpec(P1122, {1: (Block("nilpotent1"),)})
        with pytest.raises(DomainError):
            epsilon_shift(spec, 1, 0, 2)


MIXED_1122 = {
    "weights": [1, 1, 2, 2],
    "degrees": [{"degree_index": 1, "blocks": [
        {"kind": "jordan", "size": 1, "perturbations": ["x0_1^2"]},
        {"kind": "nilpotent1", "perturbations": ["x0_1^2"]}]}],
}


@pytest.mark.parametrize("doc", [*BLOCKSPECS.values(), MIXED_1122],
                         ids=[*BLOCKSPECS, "mixed_1122"])
def test_degree_agrees_with_scroll_formula(doc):
    spec = BlockSpec.load(doc)
    M = build_kw_matrix(spec)
    assert structural_1generic_check(spec).certified
    P = Profile.from_multiset(spec.ambient, column_profile(spec))
    assert P.multiset == M.col_degrees
    assert P.dim == 1
    assert degree(minors(M, 2)) == scroll_degree(P)
