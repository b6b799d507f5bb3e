"""Exact arithmetic for weighted-graded polynomial rings S(w).

Value types every other module builds on:
- WeightSystem: weights w_0 <= ... <= w_n, grouped form (m_i, a_i), lcm
- Polynomial: sparse exponent-tuple -> Fraction mapping
- Ideal: deduplicated generator list over a WeightSystem
- GradedMatrix: matrix of polynomials with a column/row-offset profile

All values are immutable after construction.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from types import MappingProxyType
from typing import Callable, Mapping, Optional, Sequence

from wps.errors import DimensionError, ParseError, ProfileError, UndefinedDegreeError
from wps.serialize import grouped_label, run_length


Monomial = tuple[int, ...]


@dataclass(frozen=True)
class WeightSystem:
    """Weights of a weighted projective space P(w_0, ..., w_n)."""
    weights: tuple[int, ...]

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        if not weights:
            raise DimensionError("a weight system needs at least one weight")
        if any(w < 1 for w in weights):
            raise DimensionError(f"weights must be positive: {weights}")
        if list(weights) != sorted(weights):
            raise DimensionError(f"weights must be weakly increasing: {weights}")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def parse(cls, text: str) -> "WeightSystem":
        """Parse "1,1,3,3,6,6,6" or the grouped "1^2,3^2,6^3"."""
        weights: list[int] = []
        for part in str(text).replace(" ", "").split(","):
            if not part:
                continue
            base, _, mult = part.partition("^")
            try:
                weights.extend([int(base)] * (int(mult) if mult else 1))
            except ValueError:
                raise ParseError(f"bad weight entry {part!r}")
        return cls(tuple(sorted(weights)))

    @classmethod
    def from_grouped(cls, pairs: Sequence[tuple[int, int]]) -> "WeightSystem":
        weights: list[int] = []
        for m, a in pairs:
            weights.extend([m] * a)
        return cls(tuple(weights))

    @property
    def n_vars(self) -> int:
        return len(self.weights)

    @cached_property
    def grouped(self) -> tuple[tuple[int, int], ...]:
        """Run-length form ((m_0, a_0), ..., (m_k, a_k))."""
        return tuple(run_length(self.weights))

    @property
    def k(self) -> int:
        return len(self.grouped) - 1

    @property
    def group_weights(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.grouped)

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.grouped)

    @cached_property
    def group_starts(self) -> tuple[int, ...]:
        starts, offset = [], 0
        for _, a in self.grouped:
            starts.append(offset)
            offset += a
        return tuple(starts)

    @cached_property
    def lcm(self) -> int:
        return reduce(math.lcm, self.weights)

    @cached_property
    def well_formed(self) -> bool:
        """gcd of all weights but one is 1, for every choice of the omitted weight."""
        w = self.weights
        return all(math.gcd(*(w[:i] + w[i + 1:])) == 1 for i in range(len(w)))

    @cached_property
    def divisible(self) -> bool:
        m = self.group_weights
        if m[0] != 1 or self.grouped[0][1] < 2:
            return False
        return all(m[i + 1] % m[i] == 0 for i in range(len(m) - 1))

    def index(self, group: int, j: int) -> int:
        """Flat index of x_{group, j}, with j counted from 1."""
        if not 0 <= group <= self.k or not 1 <= j <= self.grouped[group][1]:
            raise DimensionError(f"no variable x_{{{group},{j}}} in {self.label()}")
        return self.group_starts[group] + j - 1

    def group_of(self, index: int) -> tuple[int, int]:
        """(group, j) of a flat variable index."""
        for group, start in reversed(list(enumerate(self.group_starts))):
            if index >= start:
                return group, index - start + 1
        raise DimensionError(f"variable index {index} out of range")

    def cone(self, m: int) -> "WeightSystem":
        """Ambient of the m-cone: one more variable of weight m."""
        return WeightSystem(tuple(sorted(self.weights + (int(m),))))

    def label(self) -> str:
        return grouped_label(self.grouped)

    def to_text(self) -> str:
        return ",".join(str(m) if a == 1 else f"{m}^{a}" for m, a in self.grouped)


def monomial_degree(mono: Monomial, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(mono, weights))


def weighted_degree(mono: Monomial, W: WeightSystem) -> int:
    """Weighted degree Σ e_i w_i of an exponent vector."""
    if len(mono) != W.n_vars:
        raise DimensionError(f"monomial has {len(mono)} exponents, ring has {W.n_vars} variables")
    return monomial_degree(mono, W.weights)


class Polynomial:
    """Sparse polynomial with exact rational coefficients.

    Terms map exponent tuples of length nvars to nonzero Fractions.
    """

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None, nvars: int = 0):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise DimensionError(f"monomial {mono} does not have {nvars} exponents")
            if any(e < 0 for e in mono):
                raise DimensionError(f"negative exponent in {mono}")
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = clean.get(mono, Fraction(0)) + coeff
        self._terms = {m: c for m, c in clean.items() if c}
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        """Wrap a dict already known to be clean (no zero coefficients)."""
        poly = cls.__new__(cls)
        poly._terms = terms
        poly.nvars = nvars
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, value, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise DimensionError(f"variable {index} out of range for {nvars} variables")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw({mono: Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1) -> "Polynomial":
        return cls({tuple(mono): coeff}, len(mono))

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise DimensionError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> "Polynomial":
        value = Fraction(value)
        if not value:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({m: c * value for m, c in self._terms.items()}, self.nvars)

    def mul_monomial(self, mono: Monomial, coeff=1) -> "Polynomial":
        coeff = Fraction(coeff)
        if not coeff:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in self._terms.items()},
            self.nvars,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def degrees(self, weights: Sequence[int]) -> set[int]:
        return {monomial_degree(m, weights) for m in self._terms}

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def leading(self, key: Callable[[Monomial], object]) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise UndefinedDegreeError("the zero polynomial has no leading term")
        mono = max(self._terms, key=key)
        return mono, self._terms[mono]

    def support(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def extend(self, left: int = 0, right: int = 0) -> "Polynomial":
        """Embed into a ring with extra variables before and/or after."""
        pad_l, pad_r = (0,) * left, (0,) * right
        return Polynomial._raw(
            {pad_l + m + pad_r: c for m, c in self._terms.items()}, left + self.nvars + right
        )

    def restrict(self, start: int, stop: int) -> "Polynomial":
        """Drop variables outside [start, stop); they must not occur."""
        out = {}
        for m, c in self._terms.items():
            if any(m[:start]) or any(m[stop:]):
                raise DimensionError("polynomial involves dropped variables")
            out[m[start:stop]] = c
        return Polynomial._raw(out, stop - start)

    def substitute(self, values: Sequence, one):
        """Evaluate at values (any ring supporting +, * and scalar Fractions).

        one is the multiplicative identity of the target ring.
        """
        if len(values) != self.nvars:
            raise DimensionError(f"need {self.nvars} values, got {len(values)}")
        total = one * 0
        cache: dict[tuple[int, int], object] = {}
        for mono, coeff in sorted(self._terms.items()):
            term = one * coeff
            for i, e in enumerate(mono):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = values[i] ** e
                    term = term * cache[(i, e)]
            total = total + term
        return total

    def __repr__(self):
        if not self._terms:
            return f"Polynomial(0, nvars={self.nvars})"
        parts = []
        for m, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return "Polynomial(" + " + ".join(parts) + ")"


def homogeneous_degree(f: Polynomial, W: WeightSystem) -> Optional[int]:
    """The weighted degree of f if all its terms share it, else None."""
    if f.is_zero():
        raise UndefinedDegreeError("the zero polynomial has no degree")
    if f.nvars != W.n_vars:
        raise DimensionError(f"polynomial has {f.nvars} variables, ring has {W.n_vars}")
    degrees = f.degrees(W.weights)
    return degrees.pop() if len(degrees) == 1 else None


def _normalized(f: Polynomial) -> frozenset:
    mono = max(f.terms)
    return frozenset(f.scale(1 / f.terms[mono]).items())


@dataclass(frozen=True)
class Ideal:
    """Ideal of S(w) given by generators; zero generators and scalar duplicates are dropped."""
    generators: tuple[Polynomial, ...]
    ambient: WeightSystem

    def __post_init__(self):
        seen, kept = set(), []
        for g in self.generators:
            if g.nvars != self.ambient.n_vars:
                raise DimensionError(
                    f"generator in {g.nvars} variables for a ring with {self.ambient.n_vars}"
                )
            if g.is_zero():
                continue
            key = _normalized(g)
            if key not in seen:
                seen.add(key)
                kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))

    @property
    def n_vars(self) -> int:
        return self.ambient.n_vars

    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_homogeneous(self) -> bool:
        return all(homogeneous_degree(g, self.ambient) is not None for g in self.generators)

    def degrees(self) -> list[Optional[int]]:
        return [homogeneous_degree(g, self.ambient) for g in self.generators]


@dataclass(frozen=True)
class MatrixProfile:
    """Normalized degree data of a graded matrix."""
    col_degrees: tuple[int, ...]
    row_offsets: tuple[int, ...]
    column_order: tuple[int, ...]
    row_order: tuple[int, ...]

    def label(self) -> str:
        cols = ",".join(str(a) for a in self.col_degrees)
        if any(self.row_offsets):
            return f"({cols};" + ",".join(str(b) for b in self.row_offsets) + ")"
        return f"({cols})"


@dataclass(frozen=True)
class GradedMatrix:
    """A p×q matrix of weighted-homogeneous polynomials (zero entries allowed)."""
    entries: tuple[tuple[Polynomial, ...], ...]
    ambient: WeightSystem

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionError("a matrix needs at least one row and one column")
        if any(len(row) != len(rows[0]) for row in rows):
            raise DimensionError("matrix rows have different lengths")
        for row in rows:
            for f in row:
                if f.nvars != self.ambient.n_vars:
                    raise DimensionError("matrix entry lives in a different ring")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[Polynomial, ...]:
        return tuple(row[j] for row in self.entries)

    @cached_property
    def profile(self) -> MatrixProfile:
        return profile_of(self)

    @property
    def col_degrees(self) -> tuple[int, ...]:
        return self.profile.col_degrees

    @property
    def row_offsets(self) -> tuple[int, ...]:
        return self.profile.row_offsets

    def permuted(self, column_order: Sequence[int]) -> "GradedMatrix":
        return GradedMatrix(
            tuple(tuple(row[j] for j in column_order) for row in self.entries), self.ambient
        )

    def row_combination(self, coefficients: Sequence) -> tuple[Polynomial, ...]:
        """Entries of the generalized row Σ c_i R_i."""
        if len(coefficients) != self.rows:
            raise DimensionError(f"need {self.rows} row coefficients")
        zero = Polynomial.zero(self.ambient.n_vars)
        return tuple(
            sum((row[j].scale(c) for row, c in zip(self.entries, coefficients) if c), zero)
            for j in range(self.cols)
        )


def _determinant(block: Sequence[Sequence[Polynomial]], nvars: int) -> Polynomial:
    size = len(block)
    total = Polynomial.zero(nvars)
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = Polynomial.constant(-1 if inversions % 2 else 1, nvars)
        for i, j in enumerate(perm):
            term = term * block[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def minors(M: GradedMatrix, size: int) -> Ideal:
    """Ideal generated by all size×size minors of M."""
    if not 1 <= size <= min(M.rows, M.cols):
        raise DimensionError(f"minor size {size} out of range for a {M.rows}×{M.cols} matrix")
    nvars = M.ambient.n_vars
    gens = []
    for rows in itertools.combinations(range(M.rows), size):
        for cols in itertools.combinations(range(M.cols), size):
            block = [[M.entries[i][j] for j in cols] for i in rows]
            gens.append(_determinant(block, nvars))
    return Ideal(tuple(gens), M.ambient)


def profile_of(M: GradedMatrix) -> MatrixProfile:
    """Column degrees and row offsets of M, columns sorted ascending.

    Raises ProfileError naming the offending cell when an entry is not
    homogeneous or the degrees do not fit a profile.
    """
    W = M.ambient
    degs: list[list[Optional[int]]] = []
    for i, row in enumerate(M.entries):
        degs.append([])
        for j, f in enumerate(row):
            if f.is_zero():
                degs[i].append(None)
                continue
            d = homogeneous_degree(f, W)
            if d is None:
                raise ProfileError(f"entry ({i},{j}) is not homogeneous")
            degs[i].append(d)

    # Offsets propagate through any row sharing a nonzero column with a placed row.
    placed: dict[int, int] = {0: 0}
    changed = True
    while changed:
        changed = False
        for i in range(M.rows):
            if i in placed:
                continue
            diffs = {degs[i][j] - degs[r][j] + off for r, off in placed.items() for j in range(M.cols)
                     if degs[i][j] is not None and degs[r][j] is not None}
            if len(diffs) > 1:
                raise ProfileError(f"row {i} has no constant degree offset: {sorted(diffs)}")
            if diffs:
                placed[i] = diffs.pop()
                changed = True
    offsets = [placed.get(i, 0) for i in range(M.rows)]

    col_degrees = []
    for j in range(M.cols):
        values = {degs[i][j] - offsets[i] for i in range(M.rows) if degs[i][j] is not None}
        if not values:
            raise ProfileError(f"column {j} is zero and has no degree")
        if len(values) > 1:
            bad = next(i for i in range(M.rows) if degs[i][j] is not None
                       and degs[i][j] - offsets[i] != min(values))
            raise ProfileError(f"entry ({bad},{j}) does not match its column degree")
        col_degrees.append(values.pop())

    row_order = tuple(sorted(range(M.rows), key=lambda i: (offsets[i], i)))
    base = offsets[row_order[0]]
    column_order = tuple(sorted(range(M.cols), key=lambda j: (col_degrees[j], j)))
    return MatrixProfile(
        col_degrees=tuple(col_degrees[j] + base for j in column_order),
        row_offsets=tuple(offsets[i] - base for i in row_order[1:]),
        column_order=column_order,
        row_order=row_order,
    )
