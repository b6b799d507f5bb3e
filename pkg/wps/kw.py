"""Kronecker–Weierstrass block data, matrix construction and 1-genericity checks.

A BlockSpec lists, per weight index i >= 1, the blocks of the degree-m_i
part of a 2-row matrix. Block shapes (ℓ = size, x_1..x_ℓ the block's own
variables of weight m_i, p the lower-degree perturbations):

    jordan      ℓ columns      (x_c ; x_{c+1} + ε x_c + p_c), last (x_ℓ ; ε x_ℓ + p_ℓ)
    nilpotent1  1 column       (q ; x_1)
    nilpotent   ℓ+1 columns    (p_0 ; x_1 + p_1), (x_c ; x_{c+1} + p_{c+1}), (x_ℓ ; p_{ℓ+1})
    scroll      ℓ-1 columns    (x_c ; x_{c+1} + p_c), last (x_{ℓ-1} ; x_ℓ)
    zero        ℓ columns      (p_c ; p_{ℓ+c})

The leading block M_0 is the classical scroll on all weight-1 variables.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from wps.config import Config, load_config
from wps.errors import DimensionError, DomainError, ParseError, ProfileError
from wps.groebner import codimension
from wps.parse import BlockSpecDocument, load_blockspec_document, parse_in
from wps.ring import GradedMatrix, Ideal, Polynomial, WeightSystem, homogeneous_degree
from wps.serialize import format_rational, parse_rational

logger = logging.getLogger(__name__)

BLOCK_KINDS = ("jordan", "nilpotent1", "nilpotent", "scroll", "zero")

_MIN_SIZE = {"jordan": 1, "nilpotent1": 1, "nilpotent": 1, "scroll": 2, "zero": 1}


@dataclass(frozen=True)
class Block:
    kind: str
    size: int = 1
    epsilon: Fraction = Fraction(0)
    perturbations: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        if self.kind not in BLOCK_KINDS:
            raise ProfileError(f"unknown block kind {self.kind!r}")
        if self.size < _MIN_SIZE[self.kind]:
            raise ProfileError(f"{self.kind} block needs size >= {_MIN_SIZE[self.kind]}")
        if self.kind == "nilpotent1" and self.size != 1:
            raise ProfileError("nilpotent1 blocks have size one")
        if len(self.perturbations) > self.slots:
            raise ProfileError(
                f"{self.kind} block of size {self.size} takes at most {self.slots} perturbations"
            )
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))

    @property
    def slots(self) -> int:
        ell = self.size
        return {"jordan": ell, "nilpotent1": 1, "nilpotent": ell + 2,
                "scroll": ell - 2, "zero": 2 * ell}[self.kind]

    @property
    def n_variables(self) -> int:
        return 0 if self.kind == "zero" else self.size

    @property
    def n_columns(self) -> int:
        ell = self.size
        return {"jordan": ell, "nilpotent1": 1, "nilpotent": ell + 1,
                "scroll": ell - 1, "zero": ell}[self.kind]


@dataclass(frozen=True)
class BlockSpec:
    ambient: WeightSystem
    degrees: Mapping[int, tuple[Block, ...]] = field(default_factory=dict)
    variables: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        clean = {}
        for i, blocks in sorted(self.degrees.items()):
            if not 1 <= i <= self.ambient.k:
                raise DimensionError(f"degree index {i} out of range 1..{self.ambient.k}")
            if blocks:
                clean[i] = tuple(blocks)
        object.__setattr__(self, "degrees", clean)

    @property
    def top_degree(self) -> int:
        """Highest weight index carrying blocks (0 when there are none)."""
        return max(self.degrees, default=0)

    @classmethod
    def from_document(cls, doc: BlockSpecDocument) -> "BlockSpec":
        W = doc.weight_system()
        degrees: dict[int, tuple[Block, ...]] = {}
        for entry in doc.degrees:
            if entry.degree_index in degrees:
                raise ParseError(f"degree index {entry.degree_index} listed twice")
            blocks = []
            for b in entry.blocks:
                perts = tuple(parse_in(W, p, doc.variables) for p in b.perturbations)
                blocks.append(Block(b.kind, b.size, parse_rational(b.epsilon), perts))
            degrees[entry.degree_index] = tuple(blocks)
        names = tuple(doc.variables) if doc.variables else None
        return cls(W, degrees, names)

    @classmethod
    def load(cls, source) -> "BlockSpec":
        return cls.from_document(load_blockspec_document(source))

    def to_dict(self) -> dict:
        from wps.parse import format_polynomial, resolve_names

        names = resolve_names(self.ambient, self.variables)
        return {
            "weights": list(self.ambient.weights),
            "degrees": [
                {
                    "degree_index": i,
                    "blocks": [
                        {
                            "kind": b.kind,
                            "size": b.size,
                            "epsilon": format_rational(b.epsilon),
                            "perturbations": [format_polynomial(p, names) for p in b.perturbations],
                        }
                        for b in blocks
                    ],
                }
                for i, blocks in self.degrees.items()
            ],
        }


def allowed_perturbation_monomials(W: WeightSystem, spec: BlockSpec, i: int) -> set[tuple[int, ...]]:
    """Monomials spanning the perturbations of degree m_i.

    Powers of x_{0,1}, of the first variable of every Jordan block and of the
    nilpotent variable, in lower degrees whose weight divides m_i.
    """
    m = W.group_weights
    n = W.n_vars
    out = set()

    def power(index: int, weight: int):
        if m[i] % weight == 0:
            mono = [0] * n
            mono[index] = m[i] // weight
            out.add(tuple(mono))

    power(W.index(0, 1), m[0])
    for ell in range(1, i):
        start = 1
        for block in spec.degrees.get(ell, ()):
            if block.kind in ("jordan", "nilpotent1", "nilpotent") and start <= W.group_sizes[ell]:
                power(W.index(ell, start), m[ell])
            start += block.n_variables
    return out


def _check_perturbation(p: Polynomial, W: WeightSystem, i: int, allowed: Optional[set], where: str):
    if p.is_zero():
        return
    if homogeneous_degree(p, W) != W.group_weights[i]:
        raise ProfileError(f"{where}: perturbation is not homogeneous of degree {W.group_weights[i]}")
    first_of_degree = W.group_starts[i]
    if any(v >= first_of_degree for v in p.support()):
        raise ProfileError(f"{where}: perturbation involves variables of degree >= {W.group_weights[i]}")
    if allowed is not None and not set(p.terms) <= allowed:
        raise ProfileError(f"{where}: perturbation outside the allowed span")


def build_kw_matrix(spec: BlockSpec) -> GradedMatrix:
    """Assemble (M_0 | M_1 | ... | M_top) from block data."""
    W = spec.ambient
    n = W.n_vars
    sizes = W.group_sizes
    if W.group_weights[0] != 1 or sizes[0] < 2:
        raise DomainError(f"{W.label()} needs at least two weight-1 variables")

    def x(group: int, j: int) -> Polynomial:
        return Polynomial.variable(W.index(group, j), n)

    zero = Polynomial.zero(n)
    top_row: list[Polynomial] = []
    bottom_row: list[Polynomial] = []
    for j in range(1, sizes[0]):
        top_row.append(x(0, j))
        bottom_row.append(x(0, j + 1))

    top = spec.top_degree
    for i in range(1, top + 1):
        blocks = spec.degrees.get(i, ())
        used = sum(b.n_variables for b in blocks)
        if used > sizes[i] or (i < top and used != sizes[i]):
            expected = f"at most {sizes[i]}" if i == top else f"exactly {sizes[i]}"
            raise ProfileError(f"degree index {i} uses {used} variables, needs {expected}")
        allowed = allowed_perturbation_monomials(W, spec, i)
        start = 1
        for b_index, block in enumerate(blocks):
            where = f"degree {i} block {b_index}"
            span = allowed if block.kind in ("jordan", "nilpotent1", "scroll") else None
            for p in block.perturbations:
                _check_perturbation(p, W, i, span, where)
            p = list(block.perturbations) + [zero] * (block.slots - len(block.perturbations))
            ell, eps = block.size, block.epsilon
            v = [None] + [x(i, start + c) for c in range(block.n_variables)]
            if block.kind == "jordan":
                for c in range(1, ell + 1):
                    top_row.append(v[c])
                    nxt = v[c + 1] if c < ell else zero
                    bottom_row.append(nxt + v[c].scale(eps) + p[c - 1])
            elif block.kind == "nilpotent1":
                top_row.append(p[0])
                bottom_row.append(v[1])
            elif block.kind == "nilpotent":
                top_row.append(p[0])
                bottom_row.append(v[1] + p[1])
                for c in range(1, ell):
                    top_row.append(v[c])
                    bottom_row.append(v[c + 1] + p[c + 1])
                top_row.append(v[ell])
                bottom_row.append(p[ell + 1])
            elif block.kind == "scroll":
                for c in range(1, ell):
                    top_row.append(v[c])
                    bottom_row.append(v[c + 1] + (p[c - 1] if c < ell - 1 else zero))
            else:
                for c in range(ell):
                    top_row.append(p[c])
                    bottom_row.append(p[ell + c])
            start += block.n_variables
    return GradedMatrix((tuple(top_row), tuple(bottom_row)), W)


@dataclass(frozen=True)
class StructuralReport:
    certified: bool
    violations: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"certified": self.certified, "violations": list(self.violations)}


def structural_1generic_check(spec: BlockSpec) -> StructuralReport:
    """Block-shape certificate that the KW matrix is 1-generic with prime minors."""
    violations = []
    top = spec.top_degree
    for i, blocks in spec.degrees.items():
        nilpotents = [k for k, b in enumerate(blocks) if b.kind in ("nilpotent1", "nilpotent")]
        for b in blocks:
            if b.kind == "zero":
                violations.append(f"zero block in degree {i}")
            if b.kind == "nilpotent" and b.size >= 2:
                violations.append(f"nilpotent block of size {b.size} in degree {i}")
            if b.kind == "scroll" and i != top:
                violations.append(f"scroll block in degree {i} below the top degree {top}")
        if len(nilpotents) > 1:
            violations.append(f"{len(nilpotents)} nilpotent blocks in degree {i}")
    return StructuralReport(not violations, tuple(violations))


def sample_parameters(count: int) -> list[int]:
    """c = 1, -1, 2, -2, 3, ..."""
    out = []
    k = 1
    while len(out) < count:
        out.append(k)
        if len(out) < count:
            out.append(-k)
        k += 1
    return out


@dataclass(frozen=True)
class ProbeResult:
    verdict: str  # certified_no, probable_yes or inconclusive
    witness: Optional[tuple[Fraction, ...]] = None
    checked: int = 0

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else [format_rational(c) for c in self.witness],
            "checked": self.checked,
        }


def _lowest_forms(entries: Sequence[Polynomial], W: WeightSystem) -> list[Polynomial]:
    out = []
    for f in entries:
        if f.is_zero():
            out.append(f)
            continue
        low = min(f.degrees(W.weights))
        out.append(Polynomial({m: c for m, c in f.items()
                               if sum(e * w for e, w in zip(m, W.weights)) == low}, f.nvars))
    return out


def _is_regular_sequence(entries: Sequence[Polynomial], W: WeightSystem, config) -> bool:
    if any(f.is_zero() for f in entries):
        return False
    return codimension(Ideal(tuple(entries), W), config) == len(entries)


def pseudo_1generic_probe(M: GradedMatrix, sample_count: Optional[int] = None,
                          config: Optional[Config] = None) -> ProbeResult:
    """Check that generalized rows have entries forming a regular sequence.

    Rows tried: the unit vectors, then (1, c, c², ...) for c = 1, -1, 2, -2, ...
    A failing row is a certificate; passing every sample is only evidence.
    With unequal row degrees a combination is tested through the lowest-degree
    forms of its entries, and a failure there is inconclusive.
    """
    config = config or load_config()
    if sample_count is None:
        sample_count = config.search.probe_samples
    W = M.ambient
    p = M.rows
    graded = not any(M.row_offsets)

    rows: list[tuple[Fraction, ...]] = []
    for i in range(p):
        rows.append(tuple(Fraction(1 if r == i else 0) for r in range(p)))
    for c in sample_parameters(sample_count):
        rows.append(tuple(Fraction(c) ** r for r in range(p)))

    inconclusive = None
    for checked, coeffs in enumerate(rows, start=1):
        entries = M.row_combination(coeffs)
        unit = sum(1 for c in coeffs if c) == 1
        if unit or graded:
            if not _is_regular_sequence(entries, W, config):
                logger.debug("generalized row %s is not a regular sequence", coeffs)
                return ProbeResult("certified_no", coeffs, checked)
        elif not _is_regular_sequence(_lowest_forms(entries, W), W, config):
            inconclusive = inconclusive or coeffs
    if inconclusive is not None:
        return ProbeResult("inconclusive", inconclusive, len(rows))
    return ProbeResult("probable_yes", None, len(rows))


def epsilon_shift(spec: BlockSpec, degree_index: int, block_index: int, epsilon) -> BlockSpec:
    """Copy of spec with one Jordan parameter replaced."""
    blocks = list(spec.degrees[degree_index])
    old = blocks[block_index]
    if old.kind != "jordan":
        raise DomainError(f"block {block_index} in degree {degree_index} is not a Jordan block")
    blocks[block_index] = Block(old.kind, old.size, Fraction(epsilon), old.perturbations)
    degrees = dict(spec.degrees)
    degrees[degree_index] = tuple(blocks)
    return BlockSpec(spec.ambient, degrees, spec.variables)


def variable_count(spec: BlockSpec) -> dict[int, int]:
    return {i: sum(b.n_variables for b in blocks) for i, blocks in spec.degrees.items()}


def column_profile(spec: BlockSpec) -> tuple[int, ...]:
    """Column degrees of the assembled matrix, ascending."""
    W = spec.ambient
    cols = [1] * (W.group_sizes[0] - 1)
    for i, blocks in spec.degrees.items():
        cols.extend([W.group_weights[i]] * sum(b.n_columns for b in blocks))
    return tuple(cols)


__all__ = [
    "BLOCK_KINDS",
    "Block",
    "BlockSpec",
    "ProbeResult",
    "StructuralReport",
    "allowed_perturbation_monomials",
    "build_kw_matrix",
    "column_profile",
    "epsilon_shift",
    "pseudo_1generic_probe",
    "sample_parameters",
    "structural_1generic_check",
    "variable_count",
]
