"""Polynomial text grammar and JSON input documents.

Grammar: integer or rational coefficients, optional "*", "^" for powers,
variables named by the document. Decimal literals are rejected. Without an
explicit variable list the default conventions are all accepted: flat
x0..xn, grouped x{i}_{j} (x_{i,j} is the j-th variable of weight m_i) and,
with at most three distinct weights, the letter names x_j, y_j, z_j.
Emission always uses the grouped names unless the document named its
variables.

Documents:
    {"weights": [...], "variables": [...], "generators": [...]}
    {"weights": [...], "variables": [...], "matrix": [[...], [...]]}
"""

import json
from fractions import Fraction
from pathlib import Path
from tokenize import TokenError
from typing import Literal, Optional, Sequence, Union

import sympy
from pydantic import BaseModel, Field, ValidationError, model_validator
from sympy.polys.polyerrors import CoercionFailed, GeneratorsError, PolynomialError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from wps.errors import DimensionError, ParseError
from wps.ring import GradedMatrix, Ideal, Polynomial, WeightSystem, minors
from wps.serialize import format_rational


TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)

# Only the constructors the transformations emit; anything else becomes a Symbol
# and is rejected as an unknown variable. Floats parse so they can be refused.
_GLOBALS = {
    "Integer": sympy.Integer,
    "Rational": sympy.Rational,
    "Float": sympy.Float,
    "Symbol": sympy.Symbol,
}


LETTERS = ("x", "y", "z")


def flat_names(W: WeightSystem) -> list[str]:
    return [f"x{i}" for i in range(W.n_vars)]


def grouped_names(W: WeightSystem) -> list[str]:
    return [f"x{i}_{j}" for i, (_, a) in enumerate(W.grouped) for j in range(1, a + 1)]


def letter_names(W: WeightSystem) -> Optional[list[str]]:
    """x_1, x_2, y_1, ... by weight group; None past three distinct weights."""
    if len(W.grouped) > len(LETTERS):
        return None
    return [f"{LETTERS[i]}_{j}" for i, (_, a) in enumerate(W.grouped) for j in range(1, a + 1)]


def resolve_names(W: WeightSystem, variables: Optional[Sequence[str]] = None) -> list[str]:
    """Variable names for W: the given list, or the grouped defaults."""
    if variables is None:
        return grouped_names(W)
    names = [str(v) for v in variables]
    if len(names) != W.n_vars:
        raise ParseError(f"{len(names)} variable names for {W.n_vars} weights")
    if len(set(names)) != len(names):
        raise ParseError(f"duplicate variable names in {names}")
    return names


def _local_symbols(names: Sequence[str], aliases: Optional[Sequence[Sequence[str]]] = None):
    symbols = [sympy.Symbol(n) for n in names]
    local = dict(zip(names, symbols))
    for alias_list in aliases or ():
        for alias, sym in zip(alias_list, symbols):
            local.setdefault(alias, sym)
    return symbols, local


def to_sympy_expr(text: str, local: dict) -> sympy.Expr:
    try:
        expr = parse_expr(str(text), local_dict=local, global_dict=dict(_GLOBALS),
                          transformations=TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError, ValueError, AttributeError) as e:
        raise ParseError(f"cannot parse {text!r}: {e}")
    if isinstance(expr, sympy.Basic) and expr.atoms(sympy.Float):
        raise ParseError(f"inexact decimal coefficient in {text!r}; write it as p/q")
    return expr


def _rational(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def polynomial_from_sympy(expr, symbols: Sequence[sympy.Symbol]) -> Polynomial:
    """Convert a sympy expression that is a polynomial in symbols."""
    unknown = set(expr.free_symbols) - set(symbols)
    if unknown:
        raise ParseError(f"unknown variables: {', '.join(sorted(map(str, unknown)))}")
    try:
        poly = sympy.Poly(expr, *symbols, domain="QQ")
    except (PolynomialError, GeneratorsError, CoercionFailed) as e:
        raise ParseError(f"{expr} is not a polynomial: {e}")
    terms = {mono: _rational(c) for mono, c in poly.terms() if c != 0}
    return Polynomial(terms, len(symbols))


def to_sympy_poly(f: Polynomial, symbols: Sequence[sympy.Symbol]) -> sympy.Poly:
    if len(symbols) != f.nvars:
        raise DimensionError(f"{len(symbols)} symbols for {f.nvars} variables")
    terms = {mono: sympy.Rational(c.numerator, c.denominator) for mono, c in f.items()}
    return sympy.Poly.from_dict(terms or {(0,) * f.nvars: 0}, *symbols, domain="QQ")


def parse_polynomial(text: str, names: Sequence[str],
                     aliases: Optional[Sequence[Sequence[str]]] = None) -> Polynomial:
    """Parse a polynomial in the named variables (plus optional alias name lists)."""
    symbols, local = _local_symbols(names, aliases)
    return polynomial_from_sympy(to_sympy_expr(text, local), symbols)


def parse_in(W: WeightSystem, text: str, variables: Optional[Sequence[str]] = None) -> Polynomial:
    """Parse text over W, accepting every default convention when no names are given."""
    if variables is not None:
        return parse_polynomial(text, resolve_names(W, variables))
    aliases = [flat_names(W)]
    letters = letter_names(W)
    if letters is not None:
        aliases.append(letters)
    return parse_polynomial(text, grouped_names(W), aliases=aliases)


def format_polynomial(f: Polynomial, names: Sequence[str]) -> str:
    """Canonical text: terms by descending exponent tuple, "p/q" coefficients."""
    if len(names) != f.nvars:
        raise DimensionError(f"{len(names)} names for {f.nvars} variables")
    if f.is_zero():
        return "0"
    out = []
    for mono, coeff in sorted(f.items(), reverse=True):
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
        mag = abs(coeff)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_rational(mag) + "*" + "*".join(factors)
        if not out:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(out)


class IdealDocument(BaseModel):
    """An ideal (generators) or a matrix over S(w)."""
    weights: list[int] = Field(min_length=1)
    variables: Optional[list[str]] = None
    generators: Optional[list[str]] = None
    matrix: Optional[list[list[str]]] = None

    @model_validator(mode="after")
    def _exactly_one_body(self):
        if (self.generators is None) == (self.matrix is None):
            raise ValueError("give exactly one of 'generators' or 'matrix'")
        return self

    def weight_system(self) -> WeightSystem:
        try:
            return WeightSystem(tuple(self.weights))
        except DimensionError as e:
            raise ParseError(f"weights {self.weights}: {e}")


class BlockDocument(BaseModel):
    kind: Literal["jordan", "nilpotent1", "nilpotent", "scroll", "zero"]
    size: int = Field(default=1, ge=0)
    epsilon: Union[int, str] = 0
    perturbations: list[str] = Field(default_factory=list)


class DegreeBlocksDocument(BaseModel):
    degree_index: int = Field(ge=1)
    blocks: list[BlockDocument]


class BlockSpecDocument(BaseModel):
    """KW block data; degrees not listed carry no blocks."""
    weights: list[int] = Field(min_length=2)
    variables: Optional[list[str]] = None
    degrees: list[DegreeBlocksDocument] = Field(default_factory=list)

    def weight_system(self) -> WeightSystem:
        try:
            return WeightSystem(tuple(self.weights))
        except DimensionError as e:
            raise ParseError(f"weights {self.weights}: {e}")


def read_json(source: Union[str, Path, dict]) -> dict:
    """Load a JSON object from a dict, an inline JSON string, or a file path."""
    if isinstance(source, dict):
        return source
    text = str(source)
    try:
        if text.lstrip().startswith("{"):
            return json.loads(text)
        path = Path(text)
        if not path.exists():
            raise ParseError(f"input not found: {path}")
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {text[:60]!r}: {e}")


def _validate(model, source):
    try:
        return model.model_validate(read_json(source))
    except ValidationError as e:
        raise ParseError(f"invalid {model.__name__}: {e.errors()[0]['msg']}")


def load_ideal_document(source) -> IdealDocument:
    return _validate(IdealDocument, source)


def load_blockspec_document(source) -> BlockSpecDocument:
    return _validate(BlockSpecDocument, source)


def matrix_from_document(doc: IdealDocument) -> GradedMatrix:
    if doc.matrix is None:
        raise ParseError("document has no matrix")
    W = doc.weight_system()
    rows = tuple(tuple(parse_in(W, cell, doc.variables) for cell in row) for row in doc.matrix)
    try:
        return GradedMatrix(rows, W)
    except DimensionError as e:
        raise ParseError(str(e))


def ideal_from_document(doc: IdealDocument) -> Ideal:
    """The generated ideal, or the maximal minors for a matrix document."""
    W = doc.weight_system()
    if doc.generators is not None:
        return Ideal(tuple(parse_in(W, g, doc.variables) for g in doc.generators), W)
    M = matrix_from_document(doc)
    return minors(M, min(M.rows, M.cols))


def document_from_matrix(M: GradedMatrix, variables: Optional[Sequence[str]] = None) -> dict:
    names = resolve_names(M.ambient, variables)
    doc = {"weights": list(M.ambient.weights)}
    if variables is not None:
        doc["variables"] = list(names)
    doc["matrix"] = [[format_polynomial(f, names) for f in row] for row in M.entries]
    return doc


def document_from_ideal(I: Ideal, variables: Optional[Sequence[str]] = None) -> dict:
    names = resolve_names(I.ambient, variables)
    doc = {"weights": list(I.ambient.weights)}
    if variables is not None:
        doc["variables"] = list(names)
    doc["generators"] = [format_polynomial(g, names) for g in I.generators]
    return doc
