"""Buchberger engine for weighted-homogeneous ideals.

Provides reduced Gröbner bases under weighted-degree orders, and on top of
them: codimension, Hilbert series, implicitization of curve
parameterizations, ideal equality and graded Betti numbers.

The pair update follows Gebauer–Möller: new pairs are filtered by the
lcm criterion and the product criterion, old pairs whose lcm is divisible
by the new leading monomial are dropped, and so are basis elements whose
leading monomial it divides. Every call is bounded by a Budget; running
past it raises BudgetExceededError rather than returning a partial basis.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from wps.betti import BettiTable
from wps.config import Budget, Config, load_config
from wps.errors import (
    BudgetExceededError,
    DimensionError,
    DomainError,
)
from wps.hilbert import (
    HilbertSeries,
    check_basepoint_free,
    degree_from_series,
    parameterization_exponent,
)
from wps.monomial import divides, hilbert_numerator, lcm_monomial, standard_monomials
from wps.ring import (
    GradedMatrix,
    Ideal,
    Monomial,
    Polynomial,
    WeightSystem,
    homogeneous_degree,
    minors,
    monomial_degree,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted degree first, then a fixed tie-break on exponent vectors.

    With eliminate = e > 0 the weighted degree of the first e variables is
    compared before everything else, which makes it an elimination order
    for those variables.
    """
    weights: tuple[int, ...]
    tiebreak: str = "revlex"
    eliminate: int = 0

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.tiebreak not in ("revlex", "lex"):
            raise DomainError(f"unknown tie-break {self.tiebreak!r}")
        if not 0 <= self.eliminate <= len(self.weights):
            raise DimensionError(f"cannot eliminate {self.eliminate} of {len(self.weights)} variables")

    @classmethod
    def default(cls, W: WeightSystem, tiebreak: str = "revlex") -> "MonomialOrder":
        return cls(W.weights, tiebreak)

    def key(self, mono: Monomial):
        deg = monomial_degree(mono, self.weights)
        if self.tiebreak == "revlex":
            tie = tuple(-e for e in reversed(mono))
        else:
            tie = tuple(mono)
        if self.eliminate:
            head = monomial_degree(mono[:self.eliminate], self.weights[:self.eliminate])
            return (head, deg, tie)
        return (deg, tie)


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    lt_ideal: tuple[Monomial, ...]

    @property
    def is_unit(self) -> bool:
        return any(not any(m) for m in self.lt_ideal)

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of f modulo the basis."""
        lead = [(g.leading(self.order.key)[0], dict(g.terms)) for g in self.basis]
        return Polynomial(_normal_form(dict(f.terms), lead, self.order.key, None), f.nvars)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()


@dataclass(frozen=True)
class ResolutionData:
    betti: BettiTable
    projective_dimension: int
    depth: int

    def to_dict(self) -> dict:
        return {
            "projective_dimension": self.projective_dimension,
            "depth": self.depth,
            **self.betti.to_dict(),
        }


def _budget(config: Optional[Config]) -> Budget:
    return (config or load_config()).budget


def _normal_form(f: dict, lead: list[tuple[Monomial, dict]], key, budget: Optional[Budget]) -> dict:
    """Fully reduce f by monic polynomials given as (leading monomial, terms)."""
    f = dict(f)
    remainder: dict = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in lead:
            if divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.items():
                    mm = tuple(a + b for a, b in zip(gm, q))
                    v = f.get(mm, 0) - c * gc
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            remainder[m] = c
            del f[m]
        if budget is not None and len(f) + len(remainder) > budget.term_limit:
            raise BudgetExceededError(f"reduction exceeded {budget.term_limit} stored terms "
                                      f"(budget {budget.max_bytes} bytes)")
    return remainder


def _monic(f: dict, key) -> tuple[Monomial, dict]:
    lm = max(f, key=key)
    c = f[lm]
    return lm, {m: v / c for m, v in f.items()}


def _update(G: set, B: set, ih: int, lms: list[Monomial]) -> tuple[set, set]:
    mh = lms[ih]

    C = sorted(G)
    D: list[tuple[int, int]] = []
    while C:
        ig = C.pop()
        mg = lms[ig]
        lcm_hg = lcm_monomial(mh, mg)

        def lcm_divides(ip):
            return divides(lcm_monomial(mh, lms[ip]), lcm_hg)

        disjoint = all(a == 0 or b == 0 for a, b in zip(mh, mg))
        if disjoint or (not any(lcm_divides(ip) for ip in C)
                        and not any(lcm_divides(pr[1]) for pr in D)):
            D.append((ih, ig))

    E = {(ih, ig) for ih, ig in D
         if not all(a == 0 or b == 0 for a, b in zip(mh, lms[ig]))}

    B_new = set()
    for ig1, ig2 in B:
        lcm12 = lcm_monomial(lms[ig1], lms[ig2])
        if (not divides(mh, lcm12)
                or lcm_monomial(lms[ig1], mh) == lcm12
                or lcm_monomial(lms[ig2], mh) == lcm12):
            B_new.add((ig1, ig2))
    B_new |= E

    G_new = {ig for ig in G if not divides(mh, lms[ig])}
    G_new.add(ih)
    return G_new, B_new


def groebner(I: Ideal, order: Optional[MonomialOrder] = None,
             config: Optional[Config] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of I; deterministic for a fixed order."""
    order = order or MonomialOrder.default(I.ambient)
    if len(order.weights) != I.n_vars:
        raise DimensionError(f"order on {len(order.weights)} variables for a ring with {I.n_vars}")
    budget = _budget(config)
    key = order.key

    polys: list[dict] = []
    lms: list[Monomial] = []
    G: set = set()
    B: set = set()

    def current():
        return [(lms[i], polys[i]) for i in sorted(G, key=lambda i: key(lms[i]))]

    inputs = sorted((dict(g.terms) for g in I.generators), key=lambda f: key(max(f, key=key)))
    for f in inputs:
        h = _normal_form(f, current(), key, budget)
        if h:
            lm, h = _monic(h, key)
            polys.append(h)
            lms.append(lm)
            G, B = _update(G, B, len(polys) - 1, lms)

    def pair_key(p):
        l = lcm_monomial(lms[p[0]], lms[p[1]])
        return (monomial_degree(l, order.weights), key(l), tuple(sorted(p)))

    spairs = 0
    while B:
        i, j = min(B, key=pair_key)
        B.remove((i, j))
        spairs += 1
        if spairs > budget.max_spairs:
            raise BudgetExceededError(f"more than {budget.max_spairs} S-pair reductions")

        l = lcm_monomial(lms[i], lms[j])
        qi = tuple(a - b for a, b in zip(l, lms[i]))
        qj = tuple(a - b for a, b in zip(l, lms[j]))
        s: dict = {}
        for m, c in polys[i].items():
            s[tuple(a + b for a, b in zip(m, qi))] = c
        for m, c in polys[j].items():
            mm = tuple(a + b for a, b in zip(m, qj))
            v = s.get(mm, 0) - c
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)

        h = _normal_form(s, current(), key, budget)
        if h:
            lm, h = _monic(h, key)
            polys.append(h)
            lms.append(lm)
            G, B = _update(G, B, len(polys) - 1, lms)
            logger.debug("pair %d: basis %d, pending %d", spairs, len(G), len(B))

    final = sorted(G, key=lambda i: key(lms[i]))
    reduced = []
    for i in final:
        others = [(lms[g], polys[g]) for g in final if g != i]
        tail = _normal_form(polys[i], others, key, budget)
        reduced.append(Polynomial(tail, I.n_vars))
    logger.debug("basis of %d elements after %d S-pairs", len(reduced), spairs)
    return GroebnerBasis(
        ideal=I,
        order=order,
        basis=tuple(reduced),
        lt_ideal=tuple(sorted(lms[i] for i in final)),
    )


def codimension(I: Ideal, config: Optional[Config] = None) -> int:
    """n+1 minus the Krull dimension of S/I, from maximal independent sets."""
    n = I.n_vars
    gb = groebner(I, config=config)
    if gb.is_unit:
        logger.warning("codimension of the unit ideal; returning %d by convention", n)
        return n
    supports = [{v for v, e in enumerate(m) if e} for m in gb.lt_ideal]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            chosen = set(subset)
            if not any(s <= chosen for s in supports):
                return n - size
    return n


def _require_homogeneous(I: Ideal):
    for idx, g in enumerate(I.generators):
        if homogeneous_degree(g, I.ambient) is None:
            raise DomainError(f"generator {idx} is not weighted-homogeneous")


def hilbert_series(I: Ideal, config: Optional[Config] = None) -> HilbertSeries:
    """Hilbert series of S/I over Π(1 - t^{w_i})."""
    _require_homogeneous(I)
    gb = groebner(I, config=config)
    numerator = hilbert_numerator(gb.lt_ideal, I.ambient.weights)
    return HilbertSeries(tuple(numerator), I.ambient.weights)


def hilbert_function(I: Ideal, degree: int, config: Optional[Config] = None) -> int:
    """dim (S/I)_degree by counting standard monomials."""
    _require_homogeneous(I)
    gb = groebner(I, config=config)
    return len(standard_monomials(gb.lt_ideal, I.ambient.weights, degree))


def degree(I: Ideal, config: Optional[Config] = None) -> Fraction:
    """Degree of the projective subscheme cut out by I."""
    hs = hilbert_series(I, config)
    return degree_from_series(hs, hs.pole_order() - 1)


def is_CM_determinantal(M: GradedMatrix, config: Optional[Config] = None) -> bool:
    """Whether the maximal minors of M have the expected codimension q - p + 1."""
    p, q = M.rows, M.cols
    if p > q:
        raise DimensionError(f"need p <= q, got a {p}×{q} matrix")
    return codimension(minors(M, p), config) == q - p + 1


def same_ideal(I: Ideal, J: Ideal, config: Optional[Config] = None) -> bool:
    if I.ambient != J.ambient:
        return False
    return groebner(I, config=config).basis == groebner(J, config=config).basis


def implicitize(images: Sequence[Polynomial], W: WeightSystem,
                config: Optional[Config] = None) -> Ideal:
    """Kernel of x_i -> images[i], images being binary forms of degree w_i·e."""
    e = parameterization_exponent(images, W)
    check_basepoint_free(images)

    n = W.n_vars
    graph_weights = (1, 1) + tuple(w * e for w in W.weights)
    graph = WeightSystem(graph_weights)
    gens = [Polynomial.variable(2 + i, 2 + n) - f.extend(right=n) for i, f in enumerate(images)]
    gb = groebner(Ideal(tuple(gens), graph), MonomialOrder(graph_weights, eliminate=2), config)
    kernel = [g.restrict(2, 2 + n) for g in gb.basis if not ({0, 1} & g.support())]
    return Ideal(tuple(kernel), W)


class _NormalForms:
    """Cached normal forms of monomials modulo a Gröbner basis."""

    def __init__(self, gb: GroebnerBasis):
        self.key = gb.order.key
        self.lead = [(g.leading(self.key)[0], dict(g.terms)) for g in gb.basis]
        self.cache: dict[Monomial, dict] = {}

    def __call__(self, mono: Monomial) -> dict:
        if mono not in self.cache:
            self.cache[mono] = _normal_form({mono: Fraction(1)}, self.lead, self.key, None)
        return self.cache[mono]


def resolution_data(I: Ideal, config: Optional[Config] = None) -> ResolutionData:
    """Graded Betti numbers of S/I as Koszul homology, plus pd and depth.

    β_{i,j} = dim K_{i,j} - rank d_i - rank d_{i+1} on the degree-j strand of
    the Koszul complex of the variables over S/I. Nonzero entries occur only
    up to the degree of the lcm of the leading monomials.
    """
    _require_homogeneous(I)
    W = I.ambient
    n, w = W.n_vars, W.weights
    gb = groebner(I, config=config)
    if gb.is_unit:
        raise DomainError("the unit ideal has a zero quotient")
    lt = gb.lt_ideal
    top = monomial_degree(reduce(lcm_monomial, lt), w) if lt else 0
    nf = _NormalForms(gb)

    bases: dict[tuple[int, int], list] = {}

    def basis(i: int, j: int) -> list:
        if (i, j) not in bases:
            cells = []
            for sigma in itertools.combinations(range(n), i):
                rest = j - sum(w[v] for v in sigma)
                for m in standard_monomials(lt, w, rest):
                    cells.append((sigma, m))
            bases[(i, j)] = cells
        return bases[(i, j)]

    ranks: dict[tuple[int, int], int] = {}

    def rank(i: int, j: int) -> int:
        """Rank of d_i restricted to degree j."""
        if i < 1 or i > n:
            return 0
        if (i, j) not in ranks:
            source, target = basis(i, j), basis(i - 1, j)
            if not source or not target:
                ranks[(i, j)] = 0
                return 0
            index = {cell: r for r, cell in enumerate(target)}
            rows: dict[int, dict[int, object]] = {}
            for col, (sigma, m) in enumerate(source):
                for p, v in enumerate(sigma):
                    face = sigma[:p] + sigma[p + 1:]
                    shifted = tuple(e + (1 if k == v else 0) for k, e in enumerate(m))
                    for mono, c in nf(shifted).items():
                        r = index[(face, mono)]
                        entry = rows.setdefault(r, {}).get(col, QQ(0))
                        value = entry + QQ(c.numerator, c.denominator) * (-1 if p % 2 else 1)
                        if value:
                            rows[r][col] = value
                        else:
                            rows[r].pop(col, None)
            rows = {r: cols for r, cols in rows.items() if cols}
            ranks[(i, j)] = DomainMatrix(rows, (len(target), len(source)), QQ).rank()
        return ranks[(i, j)]

    entries = {(0, 0): 1}
    for i in range(1, n + 1):
        for j in range(i * w[0], top + 1):
            dim = len(basis(i, j))
            if dim:
                b = dim - rank(i, j) - rank(i + 1, j)
                if b:
                    entries[(i, j)] = b
    betti = BettiTable(entries)
    pd = betti.length
    logger.debug("resolution of length %d, lcm degree %d", pd, top)
    return ResolutionData(betti=betti, projective_dimension=pd, depth=n - pd)
