"""Weighted series parameterizing 1-generic curves, with root sections.

The weight-1 variables are x_{0,j} = s^{a_0-j} t^{j-1}, so every column of
the matrix satisfies bottom = (t/s)·top. Walking the blocks degree by
degree, a Jordan block of size ℓ with L = t - ε·s gives

    x_{ℓ-q} = Σ_{b=0..q} s^{q+1-b} L^b p_{ℓ-b} / L^{q+1}

and a size-one nilpotent block gives x_1 = t·q/s. Denominators are then
cleared: all degree-w variables are scaled by L^{ℓ·w/m} for the Jordan
block of size ℓ in degree m with that ε, and afterwards by s^{μ·w/m} for
the degree m maximizing μ/m, μ the largest power of s left in a degree-m
denominator. A fractional exponent with denominator r introduces a root
section v with v^r = L (or v^r = s). When an ε repeats, or the block size
exceeds what the denominators need, L is cleared minimally instead with
λ = max_v(-ν_L(x_v)/w_v).

Entries live in Q[s, t, v_1, ...] modulo the relations v_j^{r_j} = L_j.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import sympy
from sympy.polys.polyerrors import PolynomialError

from wps.errors import DimensionError, DomainError, ParseError
from wps.kw import BlockSpec, build_kw_matrix, structural_1generic_check
from wps.parse import polynomial_from_sympy, to_sympy_expr
from wps.ring import GradedMatrix, Polynomial, WeightSystem, homogeneous_degree
from wps.serialize import format_rational

logger = logging.getLogger(__name__)

S, T = sympy.symbols("s t")

SECTION_NAMES = ("u", "v", "w")


def _section_name(index: int) -> str:
    if index < len(SECTION_NAMES):
        return SECTION_NAMES[index]
    return f"v{index - len(SECTION_NAMES) + 1}"


def _text(expr) -> str:
    return sympy.sstr(sympy.expand(expr)).replace("**", "^")


@dataclass(frozen=True)
class RootSection:
    """v with v^order = t - epsilon·s, or v^order = s when epsilon is None."""
    name: str
    order: int
    epsilon: Optional[Fraction] = None

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"root section {self.name} needs order >= 1")

    @property
    def symbol(self) -> sympy.Symbol:
        return sympy.Symbol(self.name)

    @property
    def base(self) -> sympy.Expr:
        if self.epsilon is None:
            return S
        return T - sympy.Rational(self.epsilon.numerator, self.epsilon.denominator) * S

    def vanishing(self) -> dict:
        """Substitution killing the base."""
        if self.epsilon is None:
            return {S: 0}
        return {T: sympy.Rational(self.epsilon.numerator, self.epsilon.denominator) * S}

    def to_dict(self) -> dict:
        return {"name": self.name, "base": _text(self.base), "order": self.order}


def _sort_key(epsilon: Optional[Fraction]):
    if epsilon is None:
        return (1, 0, 0)
    return (0, abs(epsilon), -epsilon)


def reduce_roots(expr, sections: Sequence[RootSection]) -> sympy.Expr:
    """Canonical form: every section exponent below its order."""
    expr = sympy.expand(expr)
    if not sections or expr == 0:
        return expr
    syms = [sec.symbol for sec in sections]
    poly = sympy.Poly(expr, S, T, *syms, domain="QQ")
    total = sympy.Integer(0)
    for mono, coeff in poly.terms():
        term = coeff * S ** mono[0] * T ** mono[1]
        for sec, e in zip(sections, mono[2:]):
            q, r = divmod(e, sec.order)
            term *= sec.base ** q * sec.symbol ** r
        total += term
    return sympy.expand(total)


@dataclass(frozen=True)
class ParamEntry:
    """coefficient · Π section^exponent.

    Computed entries have coefficients in (s, t); entries read from text may
    carry section symbols in the coefficient and no separate factors.
    """
    coefficient: sympy.Expr
    root_factors: tuple[int, ...] = ()

    def value(self, sections: Sequence[RootSection]) -> sympy.Expr:
        out = self.coefficient
        for sec, e in zip(sections, self.root_factors):
            out *= sec.symbol ** e
        return out

    def to_dict(self, sections: Sequence[RootSection]) -> dict:
        return {
            "coeff": _text(self.coefficient),
            "factors": {sec.name: e for sec, e in zip(sections, self.root_factors) if e},
        }


@dataclass(frozen=True)
class ParamSeries:
    ambient: WeightSystem
    entries: tuple[ParamEntry, ...]
    sections: tuple[RootSection, ...] = ()
    base_degree: int = 1
    series_degree: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.entries) != self.ambient.n_vars:
            raise DimensionError(f"{len(self.entries)} entries for {self.ambient.n_vars} variables")

    @property
    def trivial_roots(self) -> bool:
        return not self.sections

    def canonical_entries(self) -> list[sympy.Expr]:
        return [reduce_roots(e.value(self.sections), self.sections) for e in self.entries]

    def binary_forms(self) -> list[Polynomial]:
        """Entries as forms in (s, t); only without root sections."""
        if self.sections:
            raise DomainError("entries involve root sections")
        return [polynomial_from_sympy(e, (S, T)) for e in self.canonical_entries()]

    def normalized(self) -> "ParamSeries":
        """Scale by the torus element making the first coefficient of the first entry 1."""
        first = self.canonical_entries()[0]
        if first == 0:
            return self
        syms = [sec.symbol for sec in self.sections]
        c = sympy.Poly(first, S, T, *syms).coeffs()[0]
        entries = tuple(
            ParamEntry(sympy.expand(e.coefficient / c ** w), e.root_factors)
            for e, w in zip(self.entries, self.ambient.weights)
        )
        return ParamSeries(self.ambient, entries, self.sections, self.base_degree, self.series_degree)

    def to_dict(self) -> dict:
        return {
            "weights": list(self.ambient.weights),
            "base_degree": self.base_degree,
            "series_degree": format_rational(self.series_degree),
            "sections": [sec.to_dict() for sec in self.sections],
            "entries": [e.to_dict(self.sections) for e in self.entries],
        }

    @classmethod
    def from_text(cls, W: WeightSystem, entries: Sequence[str], sections: Sequence[dict] = (),
                  base_degree: Optional[int] = None) -> "ParamSeries":
        """Series given as text, sections as {"name", "base", "order"}."""
        secs = tuple(_section_from_text(sec) for sec in sections)
        local = {"s": S, "t": T, **{sec.name: sec.symbol for sec in secs}}
        parsed = []
        for i, text in enumerate(entries):
            expr = to_sympy_expr(text, local)
            unknown = expr.free_symbols - set(local.values())
            if unknown:
                raise ParseError(f"entry {i} uses unknown symbols {sorted(map(str, unknown))}")
            parsed.append(ParamEntry(sympy.expand(expr), (0,) * len(secs)))
        series_degree = _infer_series_degree(parsed, secs, W)
        if base_degree is None:
            base_degree = series_degree.numerator // series_degree.denominator
        return cls(W, tuple(parsed), secs, base_degree, series_degree)

    @classmethod
    def from_dict(cls, data: dict) -> "ParamSeries":
        W = WeightSystem(tuple(data["weights"]))
        entries = []
        for entry in data["entries"]:
            factors = entry.get("factors", {})
            text = entry["coeff"]
            if factors:
                text = f"({text})*" + "*".join(f"{n}^{e}" for n, e in factors.items())
            entries.append(text)
        base_degree = data.get("base_degree")
        return cls.from_text(W, entries, data.get("sections", []),
                             None if base_degree is None else int(base_degree))


def _section_from_text(data: dict) -> RootSection:
    try:
        name, base, order = str(data["name"]), data["base"], int(data["order"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"invalid root section {data!r}: {e}")
    expr = to_sympy_expr(str(base), {"s": S, "t": T})
    try:
        poly = sympy.Poly(expr, T, S, domain="QQ")
    except PolynomialError as e:
        raise ParseError(f"section base {base!r} is not linear in s, t: {e}")
    if poly.total_degree() != 1 or poly.coeff_monomial(1) != 0:
        raise ParseError(f"section base {base!r} is not a linear form")
    a, b = poly.coeff_monomial(T), poly.coeff_monomial(S)
    if a == 1:
        return RootSection(name, order, Fraction(int((-b).p), int((-b).q)))
    if a == 0 and b == 1:
        return RootSection(name, order, None)
    raise ParseError(f"section base {base!r} must be t - e*s or s")


def _term_degree(mono: Sequence[int], sections: Sequence[RootSection]) -> Fraction:
    return Fraction(mono[0] + mono[1]) + sum(Fraction(e, sec.order) for e, sec in zip(mono[2:], sections))


def _infer_series_degree(entries: Sequence[ParamEntry], sections, W: WeightSystem) -> Fraction:
    syms = [sec.symbol for sec in sections]
    for entry, w in zip(entries, W.weights):
        expr = reduce_roots(entry.value(sections), sections)
        if expr != 0:
            mono = sympy.Poly(expr, S, T, *syms).monoms()[0]
            return _term_degree(mono, sections) / w
    raise DomainError("all entries vanish")


def _to_expr(f: Polynomial, values: Sequence) -> sympy.Expr:
    total = sympy.Integer(0)
    for mono, c in f.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in zip(values, mono):
            if e:
                term *= v ** e
        total += term
    return total


def _column_degree(col: Sequence[Polynomial], W: WeightSystem) -> int:
    for f in col:
        if not f.is_zero():
            return homogeneous_degree(f, W)
    raise DomainError("zero column")


def _curve_matrix(spec: BlockSpec) -> GradedMatrix:
    W = spec.ambient
    if not W.divisible:
        raise DomainError(f"{W.label()} is not divisible")
    report = structural_1generic_check(spec)
    if not report.certified:
        raise DomainError("block data is not 1-generic: " + "; ".join(report.violations))
    M = build_kw_matrix(spec)
    for i in range(1, W.k + 1):
        blocks = spec.degrees.get(i, ())
        cols = sum(b.n_columns for b in blocks)
        used = sum(b.n_variables for b in blocks)
        if cols != W.group_sizes[i] or used != W.group_sizes[i]:
            raise DomainError(f"degree {W.group_weights[i]} has {cols} columns and {used} variables, "
                              f"a curve needs {W.group_sizes[i]} of each")
    return M


def _weight_one_values(W: WeightSystem) -> list[Optional[sympy.Expr]]:
    a0 = W.group_sizes[0]
    values: list[Optional[sympy.Expr]] = [None] * W.n_vars
    for j in range(1, a0 + 1):
        values[W.index(0, j)] = S ** (a0 - j) * T ** (j - 1)
    return values


def _base(key: Optional[Fraction]) -> sympy.Expr:
    if key is None:
        return S
    return T - sympy.Rational(key.numerator, key.denominator) * S


def curve_values(spec: BlockSpec) -> tuple[GradedMatrix, list[sympy.Expr]]:
    """The matrix and each variable as a rational function of (s, t), block by block."""
    M = _curve_matrix(spec)
    W = spec.ambient
    values = _weight_one_values(W)
    zero = sympy.Integer(0)
    for i in range(1, W.k + 1):
        start = 1
        for block in spec.degrees.get(i, ()):
            p = [_to_expr(f, values) for f in block.perturbations]
            p += [zero] * (block.slots - len(p))
            if block.kind == "jordan":
                L = _base(block.epsilon)
                ell = block.size
                for q in range(ell):
                    total = sum(S ** (q + 1 - b) * L ** b * p[ell - b - 1] for b in range(q + 1))
                    values[W.index(i, start + ell - 1 - q)] = sympy.cancel(total / L ** (q + 1))
            elif block.kind == "nilpotent1":
                values[W.index(i, start)] = sympy.cancel(T * p[0] / S)
            else:
                raise DomainError(f"{block.kind} block in degree {W.group_weights[i]} cannot occur on a curve")
            start += block.n_variables
    return M, values


def solve_curve(spec: BlockSpec) -> tuple[GradedMatrix, list[sympy.Expr]]:
    """Same values as curve_values, by solving bottom = (t/s)·top per degree."""
    M = _curve_matrix(spec)
    W = spec.ambient
    ratio = T / S
    values = _weight_one_values(W)

    columns = [M.column(c) for c in range(M.cols)]
    for i in range(1, W.k + 1):
        start, size = W.group_starts[i], W.group_sizes[i]
        unknowns = sympy.symbols(f"z1:{size + 1}")
        current = list(values)
        current[start:start + size] = unknowns
        equations = [
            _to_expr(bottom, current) - ratio * _to_expr(top, current)
            for top, bottom in columns if _column_degree((top, bottom), W) == W.group_weights[i]
        ]
        A, b = sympy.linear_eq_to_matrix(equations, unknowns)
        if sympy.cancel(A.det()) == 0:
            raise DomainError(f"degree {W.group_weights[i]} relations do not determine a curve")
        solution = A.LUsolve(b)
        for k in range(size):
            values[start + k] = sympy.cancel(solution[k])
        logger.debug("solved degree %d variables", W.group_weights[i])
    return M, values


def _linear_base(factor: sympy.Expr) -> Optional[Fraction]:
    """epsilon with factor ∝ t - epsilon·s, None for s."""
    poly = sympy.Poly(factor, T, S, domain="QQ")
    a, b = poly.coeff_monomial(T), poly.coeff_monomial(S)
    if a == 0:
        return None
    eps = -b / a
    return Fraction(int(eps.p), int(eps.q))


def _valuations(value: sympy.Expr) -> dict:
    num, den = sympy.fraction(sympy.cancel(value))
    out: dict = {}
    for part, sign in ((num, 1), (den, -1)):
        _, factors = sympy.factor_list(part, S, T)
        for factor, mult in factors:
            if not factor.free_symbols:
                continue
            if sympy.Poly(factor, S, T).total_degree() != 1:
                if sign < 0:
                    raise DomainError(f"denominator factor {factor} is not linear")
                continue
            key = _linear_base(factor)
            out[key] = out.get(key, 0) + sign * mult
    return out


def _minimal_exponent(key, valuations, weights) -> Fraction:
    return max((Fraction(-val.get(key, 0), w) for val, w in zip(valuations, weights) if val is not None),
               default=Fraction(0))


def clearing_exponents(spec: BlockSpec, values: Sequence[sympy.Expr]) -> dict:
    """λ per base (ε for t - ε·s, None for s): degree-w variables get base^{λ·w}."""
    W = spec.ambient
    valuations = [_valuations(v) if v != 0 else None for v in values]
    jordan = [(i, b) for i, blocks in spec.degrees.items() for b in blocks if b.kind == "jordan"]
    counts: dict = {}
    for _, b in jordan:
        counts[b.epsilon] = counts.get(b.epsilon, 0) + 1

    clearing: dict = {}
    for i, b in jordan:
        key = b.epsilon
        if key in clearing:
            continue
        needed = _minimal_exponent(key, valuations, W.weights)
        lam = Fraction(b.size, W.group_weights[i])
        if counts[key] > 1:
            logger.debug("epsilon %s repeats; clearing t - ε·s minimally", format_rational(key))
            lam = needed
        elif lam != needed:
            logger.debug("block of size %d over-clears t - ε·s for ε = %s; using %s",
                         b.size, format_rational(key), format_rational(needed))
            lam = needed
        clearing[key] = lam

    # linear factors with no Jordan block behind them
    for key in {key for val in valuations if val for key in val} - set(clearing) - {None}:
        clearing[key] = _minimal_exponent(key, valuations, W.weights)

    best = Fraction(0)
    for i in range(W.k + 1):
        group = range(W.group_starts[i], W.group_starts[i] + W.group_sizes[i])
        mu = max((-valuations[v].get(None, 0) for v in group if valuations[v] is not None), default=0)
        best = max(best, Fraction(max(mu, 0), W.group_weights[i]))
    clearing[None] = best
    return {key: lam for key, lam in clearing.items() if lam}


def parameterize_curve(spec: BlockSpec) -> ParamSeries:
    """Basepoint-free weighted series for the curve of a 1-generic KW matrix."""
    W = spec.ambient
    _, values = curve_values(spec)
    valuations = [_valuations(v) if v != 0 else None for v in values]
    clearing = clearing_exponents(spec, values)

    sections = []
    for key in sorted(clearing, key=_sort_key):
        if clearing[key].denominator > 1:
            sections.append(RootSection(_section_name(len(sections)), clearing[key].denominator, key))
    by_key = {sec.epsilon: sec for sec in sections}

    entries = []
    for value, val, w in zip(values, valuations, W.weights):
        if val is None:
            entries.append(ParamEntry(sympy.Integer(0), (0,) * len(sections)))
            continue
        coeff = value
        factors = [0] * len(sections)
        for key, lam in clearing.items():
            base = _base(key)
            nu = val.get(key, 0)
            sec = by_key.get(key)
            r = sec.order if sec else 1
            total = nu * r + int(lam * w * r)
            q, rem = divmod(total, r)
            coeff = coeff * base ** (q - nu)
            if sec:
                factors[sections.index(sec)] = rem
        entries.append(ParamEntry(sympy.factor(sympy.cancel(coeff)), tuple(factors)))

    base_degree = W.group_sizes[0] - 1
    series_degree = base_degree + sum(clearing.values(), Fraction(0))
    logger.debug("parameterized %s with %d root sections", W.label(), len(sections))
    return ParamSeries(W, tuple(entries), tuple(sections), base_degree, Fraction(series_degree))


@dataclass(frozen=True)
class VerificationReport:
    minors_vanish: bool
    homogeneous: bool
    basepoint_free: bool
    failures: tuple[str, ...] = ()
    solvers_agree: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return (self.minors_vanish and self.homogeneous and self.basepoint_free
                and self.solvers_agree is not False)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "minors_vanish": self.minors_vanish,
            "homogeneous": self.homogeneous,
            "basepoint_free": self.basepoint_free,
            "solvers_agree": self.solvers_agree,
            "failures": list(self.failures),
        }


def verify_parameterization(series: ParamSeries, M: GradedMatrix,
                            spec: Optional[BlockSpec] = None) -> VerificationReport:
    """Minors vanish, entries are homogeneous of degree w_i·D, no common factor.

    Given the block data, the block recursion is also compared variable by
    variable with the linear solve of bottom = (t/s)·top.
    """
    if M.ambient != series.ambient:
        raise DimensionError(f"series over {series.ambient.label()} and matrix over {M.ambient.label()}")
    secs = series.sections
    syms = [sec.symbol for sec in secs]
    values = series.canonical_entries()
    failures = []

    minors_ok = True
    subst = [[_to_expr(f, values) for f in row] for row in M.entries]
    for r1 in range(M.rows):
        for r2 in range(r1 + 1, M.rows):
            for c1 in range(M.cols):
                for c2 in range(c1 + 1, M.cols):
                    det = subst[r1][c1] * subst[r2][c2] - subst[r1][c2] * subst[r2][c1]
                    if reduce_roots(det, secs) != 0:
                        minors_ok = False
                        failures.append(f"minor rows ({r1},{r2}) columns ({c1},{c2}) does not vanish")

    homogeneous = True
    for i, (value, w) in enumerate(zip(values, series.ambient.weights)):
        if value == 0:
            continue
        degrees = {_term_degree(m, secs) for m in sympy.Poly(value, S, T, *syms).monoms()}
        if degrees != {w * series.series_degree}:
            homogeneous = False
            shown = ", ".join(format_rational(d) for d in sorted(degrees))
            failures.append(f"entry {i} has degrees {shown}, expected {format_rational(w * series.series_degree)}")

    basepoint_free = True
    nonzero = [v for v in values if v != 0]
    for sec in secs:
        if all(sympy.expand(v.subs(sec.symbol, 0).subs(sec.vanishing())) == 0 for v in nonzero):
            basepoint_free = False
            failures.append(f"every entry is divisible by the root section {sec.name}")
    common = reduce(sympy.gcd, nonzero) if nonzero else sympy.Integer(0)
    if common == 0 or sympy.Poly(common, S, T).total_degree() > 0:
        basepoint_free = False
        failures.append(f"entries share the factor {_text(common)}")

    agree = None
    if spec is not None:
        _, recursive = curve_values(spec)
        _, solved = solve_curve(spec)
        agree = True
        for i, (a, b) in enumerate(zip(recursive, solved)):
            if sympy.cancel(a - b) != 0:
                agree = False
                failures.append(f"variable {i}: recursion gives {_text(a)}, linear solve gives {_text(b)}")

    return VerificationReport(minors_ok, homogeneous, basepoint_free, tuple(failures), agree)


__all__ = [
    "ParamEntry",
    "ParamSeries",
    "RootSection",
    "VerificationReport",
    "clearing_exponents",
    "curve_values",
    "parameterize_curve",
    "reduce_roots",
    "solve_curve",
    "verify_parameterization",
]
