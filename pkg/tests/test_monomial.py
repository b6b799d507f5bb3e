"""Tests for wps/monomial.py"""

import numpy as np

from wps.monomial import (
    divides,
    hilbert_numerator,
    lcm_monomial,
    minimal_generators,
    minimalize,
    monomials_of_degree,
    poly_add,
    poly_mul,
    standard_monomials,
)


def test_poly_helpers():
    assert poly_mul([1, -1], [1, 1]) == [1, 0, -1]
    assert poly_add([1, 2], [-1, -2]) == [0]
    assert poly_add([1], [0, 0, 3]) == [1, 0, 3]


class TestHilbertNumerator:
    def test_single_variable(self):
        assert hilbert_numerator([(1, 0)], (1, 1)) == [1, -1]

    def test_weighted_variable(self):
        assert hilbert_numerator([(0, 1)], (1, 2)) == [1, 0, -1]

    def test_square_of_maximal_ideal(self):
        # S/m^2 in two variables has dimensions 1, 2
        assert hilbert_numerator([(2, 0), (1, 1), (0, 2)], (1, 1)) == [1, 0, -3, 2]

    def test_redundant_generators_ignored(self):
        assert hilbert_numerator([(1, 0), (2, 1)], (1, 1)) == hilbert_numerator([(1, 0)], (1, 1))

    def test_no_generators(self):
        assert hilbert_numerator([], (1, 2, 3)) == [1]

    def test_unit_ideal(self):
        assert hilbert_numerator([(0, 0)], (1, 1)) == [0]


def test_minimalize():
    A = np.array([[2, 0], [1, 0], [1, 1]])
    assert sorted(map(tuple, minimalize(A).tolist())) == [(1, 0)]


def test_monomial_helpers():
    assert divides((1, 0, 2), (1, 1, 2))
    assert not divides((2, 0), (1, 5))
    assert lcm_monomial((1, 3), (2, 0)) == (2, 3)
    assert minimal_generators([(2, 0), (1, 0), (1, 1), (0, 3)]) == [(0, 3), (1, 0)]


def test_monomials_of_degree():
    assert set(monomials_of_degree((1, 1, 2), 2)) == {(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)}
    assert monomials_of_degree((2, 3), 1) == ()
    assert monomials_of_degree((1,), -1) == ()


def test_standard_monomials():
    assert set(standard_monomials([(1, 0, 0)], (1, 1, 2), 2)) == {(0, 2, 0), (0, 0, 1)}
