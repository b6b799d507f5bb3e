"""Tests for wps/parse.py"""

import json
from fractions import Fraction

import pytest

from wps.errors import ParseError
from wps.parse import (
    document_from_ideal,
    document_from_matrix,
    format_polynomial,
    grouped_names,
    ideal_from_document,
    load_blockspec_document,
    load_ideal_document,
    matrix_from_document,
    parse_in,
    parse_polynomial,
    read_json,
    resolve_names,
)
from wps.ring import Polynomial, WeightSystem

W = WeightSystem((1, 1, 2, 2))
NAMES = ["x1", "x2", "y1", "y2"]


def test_grouped_names():
    assert grouped_names(WeightSystem.parse("1^2,3,6^2")) == ["x0_1", "x0_2", "x1_1", "x2_1", "x2_2"]


def test_resolve_names():
    assert resolve_names(W) == ["x0_1", "x0_2", "x1_1", "x1_2"]
    assert resolve_names(W, NAMES) == NAMES
    with pytest.raises(ParseError):
        resolve_names(W, ["a", "b"])
    with pytest.raises(ParseError):
        resolve_names(W, ["a", "a", "b", "c"])


class TestParsePolynomial:
    def test_grammar(self):
        f = parse_polynomial("2x1^2 - 3/2*y1 + 1", NAMES)
        assert f.coefficient((2, 0, 0, 0)) == 2
        assert f.coefficient((0, 0, 1, 0)) == Fraction(-3, 2)
        assert f.coefficient((0, 0, 0, 0)) == 1

    def test_expands_products(self):
        f = parse_polynomial("(x1 + x2)*(x1 - x2)", NAMES)
        assert f == parse_polynomial("x1^2 - x2^2", NAMES)

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="z"):
            parse_polynomial("x1 + z", NAMES)

    def test_not_polynomial(self):
        with pytest.raises(ParseError):
            parse_polynomial("1/x1", NAMES)

    def test_syntax_error(self):
        with pytest.raises(ParseError):
            parse_polynomial("x1 +* ", NAMES)

    def test_both_default_conventions(self):
        assert parse_in(W, "x0_2*x1_1") == parse_in(W, "x1*x2")
        assert parse_in(W, "x0_2*x1_1") == Polynomial.monomial((0, 1, 1, 0))

    def test_letter_names(self):
        assert parse_in(W, "x_1*y_2 - x_2*y_1") == parse_in(W, "x0_1*x1_2 - x0_2*x1_1")
        W3 = WeightSystem((1, 1, 2, 2, 2, 3))
        assert parse_in(W3, "z_1") == Polynomial.variable(5, 6)
        assert parse_in(W3, "y_3*x_1") == parse_in(W3, "x1_3*x0_1")

    def test_letter_names_limited_to_three_weights(self):
        W4 = WeightSystem((1, 2, 3, 4))
        with pytest.raises(ParseError, match="unknown variables"):
            parse_in(W4, "x_1*z_1")

    def test_letter_names_in_document(self):
        doc = load_ideal_document({"weights": [1, 1, 2, 2], "generators": ["x_1*y_2 - x_2*y_1"]})
        I = ideal_from_document(doc)
        assert I.generators == (parse_in(W, "x0_1*x1_2 - x0_2*x1_1"),)

    @pytest.mark.parametrize("text", ["0.1*x0_1", "x0_1 + 1.5", "2.0*x1", "1e3*x0_1"])
    def test_decimal_rejected(self, text):
        with pytest.raises(ParseError, match="decimal"):
            parse_in(W, text)


def test_format_polynomial():
    f = parse_polynomial("1 - 3/2*y1 + x1^2", NAMES)
    assert format_polynomial(f, NAMES) == "x1^2 - 3/2*y1 + 1"
    assert format_polynomial(-f, NAMES) == "-x1^2 + 3/2*y1 - 1"
    assert format_polynomial(Polynomial.zero(4), NAMES) == "0"


class TestDocuments:
    def test_ideal_document(self):
        doc = load_ideal_document({"weights": [2, 3, 5, 5], "variables": ["x", "y", "z1", "z2"],
                                   "generators": ["z1 - z2 + x*y"]})
        I = ideal_from_document(doc)
        assert I.ambient.weights == (2, 3, 5, 5)
        assert I.degrees() == [5]

    def test_matrix_document_gives_minors(self):
        doc = load_ideal_document({"weights": [1, 1, 2, 2], "variables": NAMES,
                                   "matrix": [["x1", "x2^2", "y1"], ["x2", "y1", "y2"]]})
        assert matrix_from_document(doc).col_degrees == (1, 2, 2)
        assert len(ideal_from_document(doc).generators) == 3

    def test_exactly_one_body(self):
        with pytest.raises(ParseError):
            load_ideal_document({"weights": [1, 1]})
        with pytest.raises(ParseError):
            load_ideal_document({"weights": [1, 1], "generators": ["x0_1"], "matrix": [["x0_1"]]})

    def test_bad_weights(self):
        doc = load_ideal_document({"weights": [2, 1], "generators": ["x0"]})
        with pytest.raises(ParseError):
            ideal_from_document(doc)

    def test_no_matrix(self):
        doc = load_ideal_document({"weights": [1, 1], "generators": ["x0"]})
        with pytest.raises(ParseError):
            matrix_from_document(doc)

    def test_blockspec_document(self):
        doc = load_blockspec_document({
            "weights": [1, 1, 3, 3, 3],
            "degrees": [{"degree_index": 1, "blocks": [{"kind": "jordan", "size": 3}]}],
        })
        assert doc.degrees[0].blocks[0].epsilon == 0
        with pytest.raises(ParseError):
            load_blockspec_document({"weights": [1, 1], "degrees": [
                {"degree_index": 1, "blocks": [{"kind": "spiral"}]}]})

    def test_matrix_roundtrip(self):
        doc = {"weights": [1, 1, 2, 2], "variables": NAMES,
               "matrix": [["x1", "x2^2", "y1"], ["x2", "y1", "y2 + x1^2"]]}
        M = matrix_from_document(load_ideal_document(doc))
        emitted = document_from_matrix(M, NAMES)
        assert emitted["matrix"][1][2] == "x1^2 + y2"
        assert matrix_from_document(load_ideal_document(emitted)) == M

    def test_ideal_roundtrip_default_names(self):
        I = ideal_from_document(load_ideal_document({"weights": [1, 1, 2], "generators": ["x0*x1 - x1_1"]}))
        emitted = document_from_ideal(I)
        assert "variables" not in emitted
        assert emitted["generators"] == ["x0_1*x0_2 - x1_1"]


class TestReadJson:
    def test_inline_and_file(self, tmp_path):
        data = {"weights": [1, 1], "generators": ["x0"]}
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        assert read_json(str(path)) == data
        assert read_json(json.dumps(data)) == data
        assert read_json(data) is data

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="not found"):
            read_json(str(tmp_path / "nope.json"))

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            read_json("{not json")
