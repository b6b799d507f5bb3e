"""Determinantal scrolls in divisible weighted projective spaces.

A scroll is cut out by the 2×2 minors of a 1-generic 2×q matrix whose
columns have degrees (1^{r_0}, m_1^{r_1}, ..., m_k^{r_k}) in
P(1^{a_0}, m_1^{a_1}, ..., m_k^{a_k}). Everything here is a closed form in
the multiplicities r: degree, Hilbert series, Eagon–Northcott Betti table,
regularities, wN_p conditions, and the minimal-degree classification.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

import numpy as np

from wps.betti import BettiTable
from wps.errors import ConsistencyError, DimensionError, DomainError, ProfileError
from wps.hilbert import HilbertSeries
from wps.monomial import poly_add, poly_shift
from wps.ring import WeightSystem
from wps.serialize import format_rational, grouped_label, product_display

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Profile:
    """Column multiplicities r_i per distinct ambient weight m_i."""
    ambient: WeightSystem
    r: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        sizes = self.ambient.group_sizes
        if len(r) != len(sizes):
            raise ProfileError(f"{len(r)} multiplicities for {len(sizes)} distinct weights")
        if any(x < 0 for x in r):
            raise ProfileError(f"negative multiplicity in {r}")
        if r[0] > sizes[0] - 1:
            raise ProfileError(f"r_0 = {r[0]} exceeds a_0 - 1 = {sizes[0] - 1}")
        for i in range(1, len(r)):
            if r[i] > sizes[i]:
                raise ProfileError(f"r_{i} = {r[i]} exceeds a_{i} = {sizes[i]}")
        if sum(r) < 2:
            raise ProfileError(f"a 2×q matrix needs q >= 2 columns, profile {r} has {sum(r)}")

    @classmethod
    def from_multiset(cls, W: WeightSystem, columns) -> "Profile":
        counts = dict.fromkeys(W.group_weights, 0)
        for c in columns:
            if int(c) not in counts:
                raise ProfileError(f"column degree {c} is not a weight of {W.label()}")
            counts[int(c)] += 1
        return cls(W, tuple(counts[m] for m in W.group_weights))

    @property
    def codim(self) -> int:
        return sum(self.r) - 1

    @property
    def dim(self) -> int:
        return sum(a - r for a, r in zip(self.ambient.group_sizes, self.r))

    @property
    def multiset(self) -> tuple[int, ...]:
        """Sorted column degrees u."""
        return tuple(m for m, r in zip(self.ambient.group_weights, self.r) for _ in range(r))

    def label(self) -> str:
        return grouped_label(zip(self.ambient.group_weights, self.r))

    def to_dict(self) -> dict:
        return {
            "ambient": self.ambient.to_text(),
            "r": list(self.r),
            "profile": self.label(),
            "dim": self.dim,
            "codim": self.codim,
        }


def _require_divisible(W: WeightSystem):
    if not W.divisible:
        raise DomainError(
            f"{W.label()} is not divisible; use the low-dimensional bounds for such spaces"
        )


def w_upper(W: WeightSystem, i: int) -> int:
    """w^i: the sum of the i largest weights."""
    if not 0 <= i <= W.n_vars:
        raise DimensionError(f"w^{i} undefined for {W.n_vars} weights")
    return sum(W.weights[W.n_vars - i:]) if i else 0


def minimal_degree_bound(W: WeightSystem, d: int) -> Fraction:
    """Smallest possible degree of a non-degenerate d-dimensional subvariety of divisible W."""
    _require_divisible(W)
    m, a = W.group_weights, W.group_sizes
    k = W.k
    if not 1 <= d <= sum(a) - 2:
        raise DimensionError(f"dimension {d} out of range 1..{sum(a) - 2}")
    if d <= a[k]:
        inner = a[0] - 1 + sum(Fraction(a[j], m[j]) for j in range(1, k + 1)) + Fraction(1 - d, m[k])
        return inner / Fraction(m[k]) ** (d - 1)
    i = next(i for i in range(k + 1) if d > sum(a[i + 1:]))
    tail = sum(a[i + 1:])
    inner = (a[0] - 1 + sum(Fraction(a[j], m[j]) for j in range(1, i + 1))
             + Fraction(1 + tail - d, m[i]))
    scale = Fraction(m[i]) ** (d - tail - 1) * math.prod(m[j] ** a[j] for j in range(i + 1, k + 1))
    return inner / scale


def scroll_degree(P: Profile) -> Fraction:
    """(Σ r_i/m_i) / Π m_j^{a_j - r_j}."""
    m, a = P.ambient.group_weights, P.ambient.group_sizes
    top = sum(Fraction(r, w) for r, w in zip(P.r, m))
    return top / math.prod(w ** (aj - rj) for w, aj, rj in zip(m, a, P.r))


def degree_display(P: Profile) -> str:
    """Degree in the "5/(3·6³)" style."""
    m, a = P.ambient.group_weights, P.ambient.group_sizes
    top = sum(Fraction(r, w) for r, w in zip(P.r, m))
    factors = [(w, aj - rj) for w, aj, rj in zip(m, a, P.r)]
    return product_display(top, factors)


def scroll_hilbert_series(P: Profile) -> HilbertSeries:
    _require_divisible(P.ambient)
    m, a = P.ambient.group_weights, P.ambient.group_sizes
    k = P.ambient.k
    numerator = [1] + [0] * (m[k] - 1) + [-1]
    for mi, ri in zip(m, P.r):
        if ri:
            geometric = [0] * m[k]
            for step in range(m[k] // mi):
                geometric[step * mi] = 1
            numerator = poly_add(numerator, poly_shift([ri * c for c in geometric], mi))
    denominator = []
    for j in range(k):
        denominator.extend([m[j]] * (a[j] - P.r[j]))
    denominator.extend([m[k]] * (a[k] - P.r[k] + 1))
    return HilbertSeries(tuple(numerator), tuple(denominator))


def subset_sum_counts(u: tuple[int, ...]) -> np.ndarray:
    """counts[s, j] = number of s-element sub-multisets (by position) of u summing to j."""
    total = sum(u)
    counts = np.zeros((len(u) + 1, total + 1), dtype=np.int64)
    counts[0, 0] = 1
    for x in u:
        counts[1:, x:] += counts[:-1, :total + 1 - x].copy()
    return counts


def betti_from_profile(source: Union[Profile, tuple[int, ...]]) -> BettiTable:
    """Eagon–Northcott Betti table: β_{i,j} = i · #{(i+1)-subsets of u summing to j}."""
    u = source.multiset if isinstance(source, Profile) else tuple(sorted(int(x) for x in source))
    if len(u) < 2:
        raise ProfileError(f"need at least two columns, got {u}")
    counts = subset_sum_counts(u)
    entries = {(0, 0): 1}
    for i in range(1, len(u)):
        for j in np.nonzero(counts[i + 1])[0].tolist():
            entries[(i, j)] = i * int(counts[i + 1, j])
    return BettiTable(entries)


def tau(P: Profile, i: int) -> int:
    """Sum of the i+1 largest column degrees."""
    if not 1 <= i <= P.codim:
        raise DimensionError(f"tau_{i} undefined for codimension {P.codim}")
    u = P.multiset
    return sum(u[len(u) - i - 1:])


@dataclass(frozen=True)
class WNpReport:
    wn0: bool
    bounds: tuple[bool, ...]  # column i+1 generated in degrees <= w^{i+2}
    attained: tuple[int, ...]

    def holds(self, p: int) -> bool:
        return self.wn0 and all(self.bounds[:p])

    @property
    def all_p(self) -> bool:
        return self.holds(len(self.bounds))

    @property
    def max_p(self) -> Optional[int]:
        """Largest p with wN_p, None if wN_0 fails."""
        if not self.wn0:
            return None
        p = 0
        while p < len(self.bounds) and self.bounds[p]:
            p += 1
        return p

    def to_dict(self) -> dict:
        return {
            "wN0": self.wn0,
            "columns": {str(i + 1): ok for i, ok in enumerate(self.bounds)},
            "attained": list(self.attained),
            "all_p": self.all_p,
        }


def check_wNp(betti: BettiTable, W: WeightSystem, depth_info) -> WNpReport:
    """wN_p report for S/I.

    depth_info is True for a Cohen–Macaulay quotient, an integer depth, or
    any object carrying a depth attribute (ResolutionData).
    """
    if depth_info is None:
        raise DomainError("wN_0 needs depth information or a Cohen–Macaulay flag")
    if depth_info is True:
        wn0 = True
    else:
        depth = getattr(depth_info, "depth", depth_info)
        wn0 = int(depth) >= 2
    bounds, attained = [], []
    for i in range(1, betti.length + 1):
        top = betti.max_degree(i)
        limit = w_upper(W, min(i + 1, W.n_vars))
        bounds.append(top is None or top <= limit)
        if top == limit:
            attained.append(i)
    return WNpReport(wn0, tuple(bounds), tuple(attained))


@dataclass(frozen=True)
class RegularityReport:
    kreg: int
    wreg: int
    degree: Fraction
    wnp_all: bool

    def to_dict(self) -> dict:
        return {
            "kReg": self.kreg,
            "wReg": self.wreg,
            "degree": format_rational(self.degree),
            "wNp_all": self.wnp_all,
        }


def regularities(P: Profile) -> RegularityReport:
    """Koszul and weighted regularity of the scroll, checked against its Betti table."""
    W = P.ambient
    _require_divisible(W)
    m, a = W.group_weights, W.group_sizes
    shift = sum((aj - rj) * w for w, aj, rj in zip(m, a, P.r))
    d = P.dim
    kreg = w_upper(W, d) + 1 - shift
    wreg = d + 1 - shift

    betti = betti_from_profile(P)
    from_table = betti.height() - sum(aj * (w - 1) for w, aj in zip(m, a))
    if from_table != wreg:
        raise ConsistencyError(f"wReg {wreg} differs from the Betti-table value {from_table}")
    report = check_wNp(betti, W, True)
    return RegularityReport(kreg, wreg, scroll_degree(P), report.all_p)


def feasible_profiles(W: WeightSystem, d: Optional[int] = None) -> Iterator[Profile]:
    """Every valid profile over W, optionally of dimension d."""
    sizes = W.group_sizes
    ranges = [range(sizes[0])] + [range(a + 1) for a in sizes[1:]]
    for r in itertools.product(*ranges):
        if sum(r) < 2:
            continue
        if d is not None and sum(sizes) - sum(r) != d:
            continue
        yield Profile(W, r)


def brute_force_minimal_profiles(W: WeightSystem, d: int) -> list[Profile]:
    """All profiles of dimension d attaining the least scroll degree."""
    candidates = list(feasible_profiles(W, d))
    if not candidates:
        return []
    best = min(scroll_degree(P) for P in candidates)
    return [P for P in candidates if scroll_degree(P) == best]


def minimal_profile(W: WeightSystem, d: int) -> Profile:
    """The greedy profile: r_0 = a_0 - 1, then fill r_1, r_2, ... up to Σr = Σa - d."""
    _require_divisible(W)
    sizes = W.group_sizes
    if not 1 <= d <= sum(sizes) - 2:
        raise DimensionError(f"dimension {d} out of range 1..{sum(sizes) - 2}")
    remaining = sum(sizes) - d
    r = []
    for i, a in enumerate(sizes):
        take = min(a - 1 if i == 0 else a, remaining)
        r.append(take)
        remaining -= take
    P = Profile(W, tuple(r))
    if P not in brute_force_minimal_profiles(W, d):
        raise ConsistencyError(f"greedy profile {P.label()} is not a degree minimizer")
    return P


@dataclass(frozen=True)
class ScrollRow:
    profile: Profile
    degree: Fraction
    kreg: int
    wreg: int
    minimal: bool

    @property
    def dim(self) -> int:
        return self.profile.dim

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "profile": self.profile.label(),
            "r": list(self.profile.r),
            "degree": format_rational(self.degree),
            "degree_display": degree_display(self.profile),
            "kReg": self.kreg,
            "wReg": self.wreg,
            "minimal": self.minimal,
        }


def enumerate_scrolls(W: WeightSystem, min_codim: int = 2) -> list[ScrollRow]:
    """All scrolls (cones included) of codimension >= min_codim, by dimension then degree."""
    _require_divisible(W)
    rows = []
    for P in feasible_profiles(W):
        if P.codim < min_codim:
            continue
        reg = regularities(P)
        minimal = reg.degree == minimal_degree_bound(W, P.dim)
        rows.append(ScrollRow(P, reg.degree, reg.kreg, reg.wreg, minimal))
    rows.sort(key=lambda row: (row.dim, row.degree, row.profile.r))
    logger.debug("%d scroll rows over %s", len(rows), W.label())
    return rows


def cone_profile(P: Profile, m: int) -> Profile:
    """Profile of the m-cone: same matrix, one more ambient variable of weight m."""
    W = P.ambient.cone(m)
    by_weight = dict(zip(P.ambient.group_weights, P.r))
    return Profile(W, tuple(by_weight.get(w, 0) for w in W.group_weights))


def cone_stays_minimal(P: Profile, m: int) -> bool:
    """Whether the m-cone over a minimal-degree scroll is again of minimal degree."""
    if P != minimal_profile(P.ambient, P.dim):
        raise DomainError(f"{P.label()} is not of minimal degree")
    cone = cone_profile(P, m)
    if not cone.ambient.divisible:
        return False
    return cone == minimal_profile(cone.ambient, cone.dim)
