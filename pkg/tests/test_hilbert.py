"""Tests for wps/hilbert.py"""

import itertools
from fractions import Fraction
from pathlib import Path

import pytest

from wps.errors import BasepointError, DegenerateStrandError, DimensionError, DomainError
from wps.groebner import degree, groebner, hilbert_function, hilbert_series, implicitize
from wps.hilbert import (
    HilbertSeries,
    cone_degree,
    cone_series,
    degree_from_qp,
    degree_from_series,
    divide_one_minus_t,
    quasi_polynomial,
    reduce_series,
    weighted_series_degree,
)
from wps.monomial import one_minus_t_power, poly_mul, standard_monomials
from wps.parse import ideal_from_document, load_ideal_document, parse_in, parse_polynomial
from wps.ring import Ideal, WeightSystem

FIXTURES = Path(__file__).parent / "fixtures"
P1122 = WeightSystem((1, 1, 2, 2))


def binary_forms(*texts):
    return [parse_polynomial(t, ["s", "t"]) for t in texts]


@pytest.fixture(scope="module")
def hyperplane():
    """V(x_1) in P(1,2,2)."""
    W = WeightSystem((1, 2, 2))
    return Ideal((parse_in(W, "x0_1"),), W)


@pytest.fixture(scope="module")
def c1_series():
    """(1 + t + 2t^2) / ((1 - t)(1 - t^2)) written over the full (1,1,2,2) denominator."""
    numerator = poly_mul(poly_mul([1, 1, 2], one_minus_t_power(1)), one_minus_t_power(2))
    return HilbertSeries(tuple(numerator), (1, 1, 2, 2))


@pytest.fixture(scope="module")
def example211_series():
    doc = load_ideal_document(str(FIXTURES / "example211.json"))
    return hilbert_series(ideal_from_document(doc))


class TestHilbertSeries:
    def test_expand(self):
        hs = HilbertSeries((1,), (1, 2))
        assert hs.expand(6) == [1, 1, 2, 2, 3, 3]

    def test_pole_order(self):
        assert HilbertSeries((1, -1), (1, 2, 2)).pole_order() == 2
        assert HilbertSeries((1,), (1, 1, 2, 2)).pole_order() == 4
        with pytest.raises(DimensionError):
            HilbertSeries((0,), (1,)).pole_order()

    def test_str(self):
        assert str(HilbertSeries((1, -1), (2, 1))) == "(1 - t) / ((1-t)(1-t^2))"

    def test_rejects_zero_exponent(self):
        with pytest.raises(DimensionError):
            HilbertSeries((1,), (0, 1))

    def test_dict_roundtrip(self):
        hs = HilbertSeries((1, 0, -1), (1, 2, 2))
        assert HilbertSeries.from_dict(hs.to_dict()) == hs

    def test_divide_one_minus_t(self):
        assert divide_one_minus_t([1, 0, -1]) == [1, 1]
        assert divide_one_minus_t([1, 1]) is None


def test_series_counts_standard_monomials(example211_series, hyperplane):
    doc = load_ideal_document(str(FIXTURES / "example211.json"))
    for I, hs in ((ideal_from_document(doc), example211_series), (hyperplane, hilbert_series(hyperplane))):
        lt = groebner(I).lt_ideal
        counts = [len(standard_monomials(lt, I.ambient.weights, d)) for d in range(41)]
        assert hs.expand(41) == counts


class TestQuasiPolynomial:
    def test_hyperplane_strands(self, hyperplane):
        Q = quasi_polynomial(hilbert_series(hyperplane))
        assert Q.period == 2
        assert Q.degree == 1
        assert Q.strands[0] == (1, Fraction(1, 2))
        assert Q.strands[1] == (0, 0)
        assert not Q.has_constant_leading_coefficient()

    def test_weighted_plane(self):
        Q = quasi_polynomial(HilbertSeries((1,), (1, 2)))
        assert Q.period == 2
        assert Q.strands == ((1, Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2)))

    def test_projective_plane(self):
        Q = quasi_polynomial(HilbertSeries((1,), (1, 1, 1)))
        assert Q.period == 1
        assert Q.strands[0] == (1, Fraction(3, 2), Fraction(1, 2))
        assert degree_from_qp(Q, 2) == 1

    def test_agrees_with_standard_monomials(self, hyperplane):
        Q = quasi_polynomial(hilbert_series(hyperplane))
        for t in range(Q.threshold, Q.threshold + 4 * Q.period):
            assert Q.evaluate(t) == hilbert_function(hyperplane, t)

    def test_no_pole(self):
        with pytest.raises(DimensionError):
            quasi_polynomial(HilbertSeries((1, -1), (1,)))

    def test_wrong_degree(self):
        Q = quasi_polynomial(HilbertSeries((1,), (1, 1)))
        with pytest.raises(DimensionError):
            degree_from_qp(Q, 2)

    def test_degenerate_strand(self):
        # t/(1 - t^2) vanishes in even degrees
        Q = quasi_polynomial(HilbertSeries((0, 1), (2,)))
        with pytest.raises(DegenerateStrandError):
            degree_from_qp(Q, 0)


class TestDegree:
    def test_example211_both_paths(self, example211_series):
        d = example211_series.pole_order() - 1
        assert d == 1
        assert degree_from_series(example211_series, d) == Fraction(11, 30)
        assert degree_from_qp(quasi_polynomial(example211_series), d) == Fraction(11, 30)

    def test_weighted_space(self):
        assert degree_from_series(HilbertSeries((1,), (1, 1, 2, 2)), 3) == Fraction(1, 4)

    def test_conic(self):
        W = WeightSystem((1, 1, 1))
        I = Ideal((parse_in(W, "x0*x2 - x1^2"),), W)
        assert degree(I) == 2

    def test_series_limit_averages_strands(self, hyperplane):
        # Non-constant leading coefficient: the t -> 1 limit averages the
        # strands while strand 0 alone gives 1/2.
        hs = hilbert_series(hyperplane)
        assert degree_from_series(hs, 1) == Fraction(1, 4)
        assert degree_from_qp(quasi_polynomial(hs), 1) == Fraction(1, 2)

    def test_constant_leading_coefficient_paths_agree(self, c1_series):
        Q = quasi_polynomial(c1_series)
        assert Q.has_constant_leading_coefficient()
        assert degree_from_qp(Q, 1) == degree_from_series(c1_series, 1) == 2


class TestReduceSeries:
    def test_example211_reductions(self, example211_series):
        assert reduce_series(example211_series, 1, (5, 3)).value_at_one == Fraction(11, 2)
        assert reduce_series(example211_series, 1, (3, 2)).value_at_one == Fraction(11, 5)

    def test_every_choice_gives_same_degree(self, example211_series):
        for keep in set(itertools.combinations(example211_series.denominator, 2)):
            assert reduce_series(example211_series, 1, keep).degree == Fraction(11, 30)

    def test_default_keeps_largest(self, example211_series):
        assert reduce_series(example211_series, 1).kept == (5, 5)

    def test_full_ring(self):
        R = reduce_series(HilbertSeries((1,), (1, 1)), 1)
        assert R.numerator == (1,)
        assert R.kept == (1, 1)
        assert R.degree == 1

    def test_bad_keep(self, example211_series):
        with pytest.raises(DimensionError):
            reduce_series(example211_series, 1, (7, 2))
        with pytest.raises(DimensionError):
            reduce_series(example211_series, 1, (2, 3, 5))


class TestCones:
    def test_cone_series(self, c1_series):
        assert cone_series(c1_series, 1).denominator == (1, 1, 1, 2, 2)
        with pytest.raises(DimensionError):
            cone_series(c1_series, 0)

    def test_c1_cones(self, c1_series):
        Q = quasi_polynomial(c1_series)
        assert cone_degree(Q, 1, 1) == 2
        assert cone_degree(Q, 1, 2) == 1

    def test_cone_degree_matches_cone_series(self, c1_series):
        Q = quasi_polynomial(c1_series)
        for m in range(1, 13):
            expected = degree_from_series(cone_series(c1_series, m), 2)
            assert cone_degree(Q, 1, m) == expected == Fraction(2, m)

    def test_nonconstant_leading_coefficient(self, hyperplane):
        Q = quasi_polynomial(hilbert_series(hyperplane))
        assert cone_degree(Q, 1, 1) == Fraction(1, 4)

    def test_bad_q(self, c1_series):
        Q = quasi_polynomial(c1_series)
        with pytest.raises(DimensionError):
            cone_degree(Q, 1, 1, q=3)


class TestWeightedSeriesDegree:
    def test_phi1(self):
        assert weighted_series_degree(binary_forms("s^2", "s*t", "s*t^3", "t^4"), P1122) == 2

    def test_identity(self):
        assert weighted_series_degree(binary_forms("s", "t"), WeightSystem((1, 1))) == 1

    def test_phi2_matches_implicitization(self):
        images = binary_forms("s^3*t", "s*t^3", "s^8", "t^8")
        assert weighted_series_degree(images, P1122) == degree(implicitize(images, P1122)) == 2

    def test_non_monomial_images(self):
        images = binary_forms("s", "s + t")
        assert weighted_series_degree(images, WeightSystem((1, 1))) == 1

    def test_basepoint(self):
        with pytest.raises(BasepointError):
            weighted_series_degree(binary_forms("s^2", "s*t"), WeightSystem((1, 1)))

    def test_degree_mismatch(self):
        with pytest.raises(DomainError):
            weighted_series_degree(binary_forms("s", "t^2"), WeightSystem((1, 1)))
