"""Determinantal curves in weighted projective threefolds P(w0,w1,w2,w3).

A 2×3 matrix with profile (a1,a2,a3; b) has entry degrees

    a1     a2     a3
    a1+b   a2+b   a3+b

and, when its minors cut out a Cohen–Macaulay curve, degree
[b(a1+a2+a3+b) + a1a2 + a1a3 + a2a3] / (w0w1w2w3).
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from wps.config import Config, load_config
from wps.errors import ConsistencyError, DimensionError, DomainError, ProfileError
from wps.groebner import degree
from wps.monomial import monomials_of_degree
from wps.parse import parse_in
from wps.ring import GradedMatrix, Ideal, Polynomial, WeightSystem, minors
from wps.scroll import Profile, minimal_degree_bound
from wps.serialize import format_rational

logger = logging.getLogger(__name__)

THREEFOLD_NAMES = ("x", "y", "z", "w")

# Degree quoted alongside this curve in the literature; the formula gives 13/21.
QUOTED_FINAL_REMARK_DEGREE = Fraction(13, 14)


@dataclass(frozen=True)
class ThreefoldProfile:
    a: tuple[int, int, int]
    b: int
    ambient: WeightSystem

    def __post_init__(self):
        a = tuple(sorted(int(x) for x in self.a))
        if len(a) != 3 or a[0] < 1:
            raise ProfileError(f"need three positive column degrees, got {self.a}")
        if self.b < 0:
            raise ProfileError(f"row offset must be nonnegative, got {self.b}")
        if self.ambient.n_vars != 4:
            raise DimensionError(f"{self.ambient.label()} is not a threefold")
        object.__setattr__(self, "a", a)

    @property
    def entry_degrees(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.a, tuple(x + self.b for x in self.a)

    @property
    def numerator(self) -> int:
        a1, a2, a3 = self.a
        b = self.b
        return b * (a1 + a2 + a3 + b) + a1 * a2 + a1 * a3 + a2 * a3

    def label(self) -> str:
        return "(" + ",".join(map(str, self.a)) + f";{self.b})"

    def to_dict(self) -> dict:
        return {"a": list(self.a), "b": self.b, "label": self.label()}


def threefold_profile_of(M: GradedMatrix) -> ThreefoldProfile:
    if (M.rows, M.cols) != (2, 3):
        raise DimensionError(f"need a 2×3 matrix, got {M.rows}×{M.cols}")
    prof = M.profile
    return ThreefoldProfile(prof.col_degrees, prof.row_offsets[0], M.ambient)


def det_curve_degree(P: ThreefoldProfile) -> Fraction:
    return Fraction(P.numerator, math.prod(P.ambient.weights))


def as_scroll_profile(P: ThreefoldProfile) -> Optional[Profile]:
    """The divisible scroll profile with the same columns, when there is one."""
    W = P.ambient
    if P.b or not W.divisible:
        return None
    try:
        return Profile.from_multiset(W, P.a)
    except ProfileError:
        return None


def _threefold(m: int, n: int) -> WeightSystem:
    if not 2 <= m <= n:
        raise DomainError(f"need 2 <= m <= n, got m={m}, n={n}")
    return WeightSystem((1, 1, m, n))


@dataclass(frozen=True)
class CandidateCurve:
    matrix: GradedMatrix
    profile: ThreefoldProfile
    degree: Fraction
    divisible_bound: Optional[Fraction] = None

    @property
    def agrees_with_bound(self) -> Optional[bool]:
        if self.divisible_bound is None:
            return None
        return self.degree == self.divisible_bound

    def to_dict(self) -> dict:
        from wps.parse import document_from_matrix

        out = {
            "weights": list(self.matrix.ambient.weights),
            "matrix": document_from_matrix(self.matrix, THREEFOLD_NAMES)["matrix"],
            "profile": self.profile.to_dict(),
            "degree": format_rational(self.degree),
        }
        if self.divisible_bound is not None:
            out["divisible_bound"] = format_rational(self.divisible_bound)
            out["agrees_with_bound"] = self.agrees_with_bound
        return out


def candidate_curve(m: int, n: int) -> CandidateCurve:
    """The pseudo 1-generic curve of degree 1 + 1/n + ⌊n/m⌋/n in P(1,1,m,n).

        ( x1              x2^{(k+1)m-n}   y^k )
        ( x2^{n-km+1}     y               z   )
    """
    W = _threefold(m, n)
    k = n // m
    nv = W.n_vars
    x1, x2, y, z = (Polynomial.variable(i, nv) for i in range(nv))
    M = GradedMatrix(((x1, x2 ** ((k + 1) * m - n), y ** k),
                      (x2 ** (n - k * m + 1), y, z)), W)
    P = threefold_profile_of(M)
    deg = det_curve_degree(P)
    expected = 1 + Fraction(1 + k, n)
    if deg != expected:
        raise ConsistencyError(f"candidate in {W.label()} has degree {deg}, expected {expected}")
    bound = minimal_degree_bound(W, 1) if n % m == 0 else None
    return CandidateCurve(M, P, deg, bound)


def threefold_lower_bound(m: int, n: int) -> Fraction:
    """1 + 1/m - (n mod m)/(mn) for non-degenerate integral curves in P(1,1,m,n)."""
    _threefold(m, n)
    return 1 + Fraction(1, m) - Fraction(n % m, m * n)


def conjectured_bound(m: int, n: int) -> Fraction:
    _threefold(m, n)
    return 1 + Fraction(1, m) + Fraction(1, n) - Fraction(n % m, m * n)


@dataclass(frozen=True)
class ConjectureReport:
    m: int
    n: int
    proven_bound: Fraction
    conjectured_bound: Fraction
    candidate_degree: Fraction
    gap_closed: bool
    closed_by: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "weights": [1, 1, self.m, self.n],
            "proven_bound": format_rational(self.proven_bound),
            "conjectured_bound": format_rational(self.conjectured_bound),
            "candidate_degree": format_rational(self.candidate_degree),
            "gap_closed": self.gap_closed,
            "closed_by": self.closed_by,
        }


def conjecture_report(m: int, n: int) -> ConjectureReport:
    """Proven bound, conjectured bound and candidate degree for P(1,1,m,n).

    The conjecture is known when n ≡ 0 mod m (the divisible bound) or
    n ≡ m-1 mod m (the weak bound).
    """
    proven = threefold_lower_bound(m, n)
    conjectured = conjectured_bound(m, n)
    candidate = candidate_curve(m, n)
    if candidate.degree != conjectured:
        raise ConsistencyError(f"candidate degree {candidate.degree} misses the conjectured {conjectured}")
    closed_by = None
    if n % m == 0:
        if candidate.divisible_bound != conjectured:
            raise ConsistencyError(f"divisible bound {candidate.divisible_bound} != {conjectured}")
        closed_by = "divisible_bound"
    elif n % m == m - 1:
        closed_by = "weak_bound"
    return ConjectureReport(m, n, proven, conjectured, candidate.degree, closed_by is not None, closed_by)


@dataclass(frozen=True)
class SearchReport:
    ambient: WeightSystem
    cap: Fraction
    numeric_survivors: tuple[ThreefoldProfile, ...]
    structurally_eliminated: dict = field(default_factory=dict)
    final_survivors: tuple[ThreefoldProfile, ...] = ()

    def to_dict(self) -> dict:
        return {
            "weights": list(self.ambient.weights),
            "cap": format_rational(self.cap),
            "numeric_survivors": [P.label() for P in self.numeric_survivors],
            "structurally_eliminated": [
                {"profile": P.label(), "reason": reason}
                for P, reason in self.structurally_eliminated.items()
            ],
            "final_survivors": [P.label() for P in self.final_survivors],
            "note": "final survivors pass degree-level necessary conditions only",
        }


def _pure_power_degrees(W: WeightSystem, top: int) -> set[int]:
    """Degrees whose only monomial is a power of the unique lowest-weight variable."""
    if W.group_sizes[0] != 1:
        return set()
    w0 = W.weights[0]
    out = set()
    for e in range(w0, top + 1):
        monos = monomials_of_degree(W.weights, e)
        if len(monos) == 1 and not any(monos[0][1:]):
            out.add(e)
    return out


def every_variable_appears(P: ThreefoldProfile) -> bool:
    """True when each variable divides some monomial of some entry degree."""
    weights = P.ambient.weights
    degrees = set(P.entry_degrees[0] + P.entry_degrees[1])
    return all(any(monomials_of_degree(weights, e - w) for e in degrees) for w in weights)


def _numeric_ok(P: ThreefoldProfile, pure: set[int]) -> bool:
    top, bottom = P.entry_degrees
    weights = P.ambient.weights
    if any(not monomials_of_degree(weights, e) for e in top + bottom):
        return False
    if not every_variable_appears(P):
        return False
    lines = [top, bottom] + [(t, s) for t, s in zip(top, bottom)]
    return all(sum(1 for e in line if e in pure) < 2 for line in lines)


def _common_variable(span_a, span_b) -> Optional[int]:
    monos = list(span_a) + list(span_b)
    for v in range(len(monos[0])):
        if all(mono[v] for mono in monos):
            return v
    return None


def _structural_reason(P: ThreefoldProfile) -> Optional[str]:
    """Clear the top-left monomial from the first row and column, then look for forced degeneracy."""
    weights = P.ambient.weights
    top, bottom = P.entry_degrees
    corner = monomials_of_degree(weights, top[0])
    if len(corner) != 1:
        return None
    mu = corner[0]

    def cleared(e):
        return [m for m in monomials_of_degree(weights, e)
                if not all(x >= y for x, y in zip(m, mu))]

    row = [[mu]] + [cleared(e) for e in top[1:]]
    column = [[mu], cleared(bottom[0])]
    for j, span in enumerate(row):
        if not span:
            return f"entry (0,{j}) vanishes after clearing"
    if not column[1]:
        return "entry (1,0) vanishes after clearing"
    for line, name in ((row, "row 0"), (column, "column 0")):
        for i in range(len(line)):
            for j in range(i + 1, len(line)):
                v = _common_variable(line[i], line[j])
                if v is not None:
                    return f"{name} entries {i} and {j} share the factor {THREEFOLD_NAMES[v]}"
    return None


def profile_search(W: WeightSystem, cap, config: Optional[Config] = None) -> SearchReport:
    """All 2×3 profiles over W of degree <= cap, in numeric then structural stages."""
    config = config or load_config()
    cap = Fraction(cap)
    if cap <= 0:
        raise DomainError(f"degree cap must be positive, got {cap}")
    if W.n_vars != 4:
        raise DimensionError(f"{W.label()} is not a threefold")
    w3 = W.weights[-1]
    ceiling = config.search.threefold_ceiling * w3
    limit = cap * math.prod(W.weights)
    pure = _pure_power_degrees(W, ceiling)

    numeric = []
    for b in range(ceiling):
        for a3 in range(max(1, w3 - b), ceiling - b + 1):
            for a2 in range(1, a3 + 1):
                for a1 in range(1, a2 + 1):
                    P = ThreefoldProfile((a1, a2, a3), b, W)
                    if P.numerator <= limit and _numeric_ok(P, pure):
                        numeric.append(P)
    numeric.sort(key=lambda P: (P.a, P.b))

    eliminated = {}
    final = []
    for P in numeric:
        reason = _structural_reason(P)
        if reason:
            eliminated[P] = reason
        else:
            final.append(P)
    logger.debug("profile search over %s: %d numeric, %d eliminated, %d final",
                 W.label(), len(numeric), len(eliminated), len(final))
    return SearchReport(W, cap, tuple(numeric), eliminated, tuple(final))


def final_remark_matrix() -> GradedMatrix:
    W = WeightSystem((1, 3, 4, 7))
    cells = (("x", "y", "z"), ("x^4 + z", "x^6 + x^3*y", "w"))
    return GradedMatrix(tuple(tuple(parse_in(W, c, THREEFOLD_NAMES) for c in row) for row in cells), W)


def complete_intersection_curve() -> Ideal:
    """The rational degree-4/7 curve in P(1,3,4,7); no determinantal curve reaches it."""
    W = WeightSystem((1, 3, 4, 7))
    gens = tuple(parse_in(W, g, THREEFOLD_NAMES) for g in ("y^2 - x^2*z", "z^2 - x*w"))
    return Ideal(gens, W)


@dataclass(frozen=True)
class FinalRemarkReport:
    profile: ThreefoldProfile
    formula_degree: Fraction
    oracle_degree: Fraction
    quoted_degree: Fraction = QUOTED_FINAL_REMARK_DEGREE

    def to_dict(self) -> dict:
        return {
            "profile": self.profile.to_dict(),
            "formula_degree": format_rational(self.formula_degree),
            "oracle_degree": format_rational(self.oracle_degree),
            "quoted_degree": format_rational(self.quoted_degree),
            "oracle_matches_formula": self.oracle_degree == self.formula_degree,
            "oracle_matches_quoted": self.oracle_degree == self.quoted_degree,
        }


def final_remark_check(config: Optional[Config] = None) -> FinalRemarkReport:
    """Degree of the integral determinantal curve in P(1,3,4,7) by formula and by Gröbner basis."""
    M = final_remark_matrix()
    P = threefold_profile_of(M)
    formula = det_curve_degree(P)
    oracle = degree(minors(M, 2), config)
    if oracle != formula:
        logger.warning("Gröbner degree %s differs from the determinantal formula %s", oracle, formula)
    return FinalRemarkReport(P, formula, oracle)


__all__ = [
    "CandidateCurve",
    "ConjectureReport",
    "FinalRemarkReport",
    "SearchReport",
    "ThreefoldProfile",
    "as_scroll_profile",
    "candidate_curve",
    "complete_intersection_curve",
    "conjecture_report",
    "conjectured_bound",
    "det_curve_degree",
    "every_variable_appears",
    "final_remark_check",
    "final_remark_matrix",
    "profile_search",
    "threefold_lower_bound",
    "threefold_profile_of",
]
