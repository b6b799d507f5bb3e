"""Hilbert series, quasi-polynomials and degrees.

A HilbertSeries is N(t) / Π(1 - t^e) with an integer numerator. From it:
- quasi_polynomial: the Hilbert quasi-polynomial, one strand per residue class
- degree_from_series: lim (1-t)^{d+1} H(t), by exact division by (1 - t)
- degree_from_qp: d! times the leading coefficient of strand 0
- reduce_series: cancel denominator factors down to d+1 kept exponents
- cone_series / cone_degree: the m-cone over a subscheme
- weighted_series_degree: degree of a weighted image of P^1 from the
  dimensions of its graded pieces
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from wps.config import Config, load_config
from wps.errors import (
    BasepointError,
    BudgetExceededError,
    ConsistencyError,
    DegenerateStrandError,
    DimensionError,
    DomainError,
    StabilizationError,
)
from wps.monomial import monomials_of_degree, poly_mul, poly_trim
from wps.parse import to_sympy_poly
from wps.ring import Polynomial, WeightSystem, homogeneous_degree
from wps.serialize import format_rational

logger = logging.getLogger(__name__)


def divide_one_minus_t(a: Sequence[int]) -> Optional[list[int]]:
    """q with a = (1 - t) q, or None when a(1) != 0."""
    if sum(a) != 0:
        return None
    q, acc = [], 0
    for c in a[:-1]:
        acc += c
        q.append(acc)
    return poly_trim(q or [0])


def geometric(e: int) -> list[int]:
    """1 + t + ... + t^{e-1}."""
    return [1] * e


def format_int_poly(coeffs: Sequence, var: str = "t") -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = mono if (mono and mag == 1) else f"{format_rational(mag)}{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) or "0"


@dataclass(frozen=True)
class HilbertSeries:
    """N(t) / Π(1 - t^e); numerator constant term first."""
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(poly_trim([int(c) for c in self.numerator])))
        den = tuple(sorted(int(e) for e in self.denominator))
        if any(e < 1 for e in den):
            raise DimensionError(f"denominator exponents must be positive: {den}")
        object.__setattr__(self, "denominator", den)

    def is_zero(self) -> bool:
        return not any(self.numerator)

    def expand(self, count: int) -> list[int]:
        """First count coefficients of the power series."""
        out = list(self.numerator[:count]) + [0] * max(0, count - len(self.numerator))
        for e in self.denominator:
            for k in range(e, count):
                out[k] += out[k - e]
        return out

    def pole_order(self) -> int:
        """Order of the pole at t = 1."""
        if self.is_zero():
            raise DimensionError("the zero series has no pole order")
        a, valuation = list(self.numerator), 0
        while (q := divide_one_minus_t(a)) is not None:
            a, valuation = q, valuation + 1
        return len(self.denominator) - valuation

    @property
    def lcm(self) -> int:
        return reduce(math.lcm, self.denominator, 1)

    def to_dict(self) -> dict:
        return {"numerator": list(self.numerator), "denominator": list(self.denominator)}

    @classmethod
    def from_dict(cls, data: dict) -> "HilbertSeries":
        return cls(tuple(data["numerator"]), tuple(data["denominator"]))

    def __str__(self):
        den = "".join(f"(1-t^{e})" if e > 1 else "(1-t)" for e in self.denominator)
        return f"({format_int_poly(self.numerator)}) / ({den or '1'})"


@dataclass(frozen=True)
class QuasiPolynomial:
    """Strand j is the polynomial agreeing with the Hilbert function on t ≡ j (mod period)."""
    period: int
    strands: tuple[tuple[Fraction, ...], ...]
    degree: int
    threshold: int = 0

    def evaluate(self, t: int) -> Fraction:
        strand = self.strands[t % self.period]
        return sum((c * t ** k for k, c in enumerate(strand)), Fraction(0))

    def leading_coefficients(self) -> list[Fraction]:
        return [strand[self.degree] for strand in self.strands]

    def has_constant_leading_coefficient(self) -> bool:
        return len(set(self.leading_coefficients())) == 1

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "threshold": self.threshold,
            "strands": [[format_rational(c) for c in strand] for strand in self.strands],
        }

    def strand_text(self, j: int) -> str:
        return format_int_poly(self.strands[j])


def _interpolate(points: list[tuple[int, int]], degree: int) -> tuple[Fraction, ...]:
    X = sympy.Symbol("t")
    expr = sympy.interpolate(points, X)
    poly = sympy.Poly(expr, X, domain="QQ")
    coeffs = [Fraction(0)] * (degree + 1)
    for (k,), c in poly.terms():
        c = sympy.Rational(c)
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return tuple(coeffs)


def quasi_polynomial(hs: HilbertSeries, config: Optional[Config] = None) -> QuasiPolynomial:
    """Hilbert quasi-polynomial of a series with a pole at t = 1.

    The Hilbert function agrees with it beyond the numerator degree. Each
    strand is interpolated at d+1 points of its residue class and checked
    on qp_window further points.
    """
    window = (config or load_config()).search.qp_window
    d = hs.pole_order() - 1
    if d < 0:
        raise DimensionError("series has no pole at t = 1; its Hilbert function vanishes eventually")
    q = hs.lcm
    threshold = len(hs.numerator)
    count = threshold + q * (d + 1 + window) + q
    values = hs.expand(count)

    strands = []
    for j in range(q):
        start = threshold + ((j - threshold) % q)
        ts = [start + q * k for k in range(d + 1 + window)]
        strand = _interpolate([(t, values[t]) for t in ts[:d + 1]], d)
        for t in ts[d + 1:]:
            predicted = sum(c * t ** k for k, c in enumerate(strand))
            if predicted != values[t]:
                raise StabilizationError(
                    f"strand {j} predicts {predicted} at t={t}, Hilbert function is {values[t]}"
                )
        strands.append(strand)

    period = next(p for p in range(1, q + 1)
                  if q % p == 0 and all(strands[j] == strands[j % p] for j in range(q)))
    logger.debug("quasi-polynomial of degree %d, period %d (lcm %d)", d, period, q)
    return QuasiPolynomial(period, tuple(strands[:period]), d, threshold)


def degree_from_qp(Q: QuasiPolynomial, d: int) -> Fraction:
    """d! times the degree-d coefficient of strand 0."""
    if Q.degree != d:
        raise DimensionError(f"quasi-polynomial has degree {Q.degree}, not {d}")
    lc = Q.strands[0][d]
    if lc == 0:
        raise DegenerateStrandError(f"strand 0 has degree below {d}")
    return math.factorial(d) * lc


def _cancel(hs: HilbertSeries, d: int) -> list[int]:
    """N / (1 - t)^{n - d}, where n + 1 is the number of denominator factors."""
    extra = len(hs.denominator) - d - 1
    if extra < 0:
        raise DimensionError(f"{len(hs.denominator)} denominator factors cannot give dimension {d}")
    a = list(hs.numerator)
    for _ in range(extra):
        a = divide_one_minus_t(a)
        if a is None:
            raise DimensionError(f"numerator is not divisible by (1-t)^{extra}")
    return a


def degree_from_series(hs: HilbertSeries, d: int) -> Fraction:
    """lim_{t->1} (1-t)^{d+1} H(t)."""
    if hs.is_zero():
        raise DimensionError("the zero series has no degree")
    Q = _cancel(hs, d)
    value = Fraction(sum(Q), math.prod(hs.denominator))
    if value == 0:
        raise DimensionError(f"pole order at t = 1 is below {d + 1}")
    return value


@dataclass(frozen=True)
class ReducedSeries:
    """H(t) = P(t) / Π_{kept}(1 - t^e) with P = numerator / denominator."""
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    kept: tuple[int, ...]

    @property
    def value_at_one(self) -> Fraction:
        return Fraction(sum(self.numerator), sum(self.denominator))

    @property
    def degree(self) -> Fraction:
        return self.value_at_one / math.prod(self.kept)

    def to_dict(self) -> dict:
        return {
            "P_numerator": list(self.numerator),
            "P_denominator": list(self.denominator),
            "kept": list(self.kept),
            "P(1)": format_rational(self.value_at_one),
            "degree": format_rational(self.degree),
        }


def reduce_series(hs: HilbertSeries, d: int, keep: Optional[Sequence[int]] = None) -> ReducedSeries:
    """Cancel all but d+1 denominator factors; keep defaults to the largest exponents."""
    if keep is None:
        keep = hs.denominator[len(hs.denominator) - d - 1:]
    keep = tuple(sorted(int(e) for e in keep))
    if len(keep) != d + 1:
        raise DimensionError(f"need {d + 1} kept exponents, got {len(keep)}")
    removed = Counter(hs.denominator)
    removed.subtract(keep)
    if any(c < 0 for c in removed.values()):
        raise DimensionError(f"{keep} is not a sub-multiset of {hs.denominator}")
    Q = _cancel(hs, d)
    den = [1]
    for e in sorted(removed.elements()):
        den = poly_mul(den, geometric(e))
    return ReducedSeries(tuple(Q), tuple(den), keep)


def cone_series(hs: HilbertSeries, m: int) -> HilbertSeries:
    """Series of the m-cone: one more factor 1/(1 - t^m)."""
    if m < 1:
        raise DimensionError(f"cone weight must be positive, got {m}")
    return HilbertSeries(hs.numerator, hs.denominator + (m,))


def cone_degree(Q: QuasiPolynomial, d: int, m: int, q: Optional[int] = None) -> Fraction:
    """Degree of the m-cone over X from the leading coefficients of X's strands.

    (d!/q') Σ_{0<=j<q, gcd(m,q) | j} c_d(j) with q' = lcm(q, m). With a
    constant leading coefficient this must equal deg(X)/m.
    """
    if m < 1:
        raise DimensionError(f"cone weight must be positive, got {m}")
    q = q or Q.period
    if q % Q.period:
        raise DimensionError(f"q = {q} is not a multiple of the period {Q.period}")
    g = math.gcd(m, q)
    q_prime = math.lcm(q, m)
    lcs = Q.leading_coefficients()
    total = sum((lcs[j % Q.period] for j in range(q) if j % g == 0), Fraction(0))
    value = Fraction(math.factorial(d), q_prime) * total
    if Q.has_constant_leading_coefficient():
        expected = degree_from_qp(Q, d) / m
        if value != expected:
            raise ConsistencyError(f"cone degree {value} differs from deg(X)/m = {expected}")
    return value


def parameterization_exponent(images: Sequence[Polynomial], W: WeightSystem) -> int:
    """The common e with deg(images[i]) = w_i·e."""
    if len(images) != W.n_vars:
        raise DimensionError(f"{len(images)} images for {W.n_vars} weights")
    P1 = WeightSystem((1, 1))
    degrees = []
    for i, f in enumerate(images):
        if f.nvars != 2:
            raise DimensionError(f"image {i} is not a form in (s, t)")
        deg = homogeneous_degree(f, P1)
        if deg is None:
            raise DomainError(f"image {i} is not homogeneous in (s, t)")
        degrees.append(deg)
    e = Fraction(degrees[0], W.weights[0])
    if e.denominator != 1 or e < 1 or any(deg != w * e for deg, w in zip(degrees, W.weights)):
        raise DomainError(f"image degrees {degrees} are not w_i·e for weights {W.weights}")
    return int(e)


def check_basepoint_free(images: Sequence[Polynomial]):
    s, t = sympy.symbols("s t")
    common = reduce(sympy.gcd, [to_sympy_poly(f, (s, t)) for f in images])
    if common.total_degree() > 0:
        raise BasepointError(f"images share the factor {common.as_expr()}")


class _GradedDimensions:
    """dim of the degree-D piece of the subring k[images] ⊂ k[s, t]."""

    def __init__(self, images: Sequence[Polynomial], W: WeightSystem):
        self.images = list(images)
        self.weights = W.weights
        self.monomial = all(len(f) == 1 for f in images)
        self.s_exponents = [next(iter(f.terms))[0] for f in images] if self.monomial else []
        self.reach: dict[int, set[int]] = {0: {0}}

    def _reachable(self, D: int) -> set[int]:
        for deg in range(max(self.reach) + 1, D + 1):
            out: set[int] = set()
            for a, w in zip(self.s_exponents, self.weights):
                out.update(x + a for x in self.reach.get(deg - w, ()))
            self.reach[deg] = out
        return self.reach[D]

    def __call__(self, D: int) -> int:
        if self.monomial:
            return len(self._reachable(D))
        products = []
        one = Polynomial.constant(1, 2)
        for mono in monomials_of_degree(self.weights, D):
            products.append(Polynomial.monomial(mono).substitute(self.images, one))
        support = sorted({m for f in products for m in f.terms})
        if not support:
            return 0
        index = {m: i for i, m in enumerate(support)}
        rows = [[QQ(0)] * len(support) for _ in products]
        for r, f in enumerate(products):
            for m, c in f.items():
                rows[r][index[m]] = QQ(c.numerator, c.denominator)
        return DomainMatrix(rows, (len(products), len(support)), QQ).rank()


def weighted_series_degree(images: Sequence[Polynomial], W: WeightSystem,
                           config: Optional[Config] = None) -> Fraction:
    """Degree of the image of P^1 under the weighted map given by images.

    f(i) = dim (R_W)_{iq} with q = lcm(W) grows linearly for large i; the
    degree is the eventual slope divided by q.
    """
    search = (config or load_config()).search
    parameterization_exponent(images, W)
    check_basepoint_free(images)
    q = W.lcm
    dims = _GradedDimensions(images, W)
    previous, diffs = 1, []
    for i in range(1, search.series_max_steps + 1):
        current = dims(i * q)
        diffs.append(current - previous)
        previous = current
        tail = diffs[-search.series_window:]
        if len(tail) == search.series_window and len(set(tail)) == 1:
            logger.debug("graded dimensions stabilized after %d steps, slope %d", i, tail[0])
            return Fraction(tail[0], q)
    raise BudgetExceededError(
        f"graded dimensions did not stabilize within {search.series_max_steps} steps"
    )
