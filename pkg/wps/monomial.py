"""Monomial ideals: Hilbert numerators and standard monomials.

Generators are rows of integer numpy arrays. The Hilbert numerator of
S/J over Π(1 - t^{w_i}) follows the pivot recursion

    N(J) = N(J + (p)) + t^deg(p) N(J : p),    p = x_v^e,

with v the variable occurring in the most generators. The recursion stops
once the generators have pairwise disjoint supports, where N is the
product of the (1 - t^deg g). Results are memoized on the canonical
generator set.

Univariate integer polynomials are lists of Python ints, constant term
first, so coefficients never overflow.
"""

from functools import lru_cache
from typing import Sequence

import numpy as np

from wps.ring import Monomial


def poly_trim(a: Sequence[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0]


def poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return poly_trim(out)


def poly_shift(a: Sequence[int], k: int) -> list[int]:
    return poly_trim([0] * k + list(a))


def one_minus_t_power(e: int) -> list[int]:
    """1 - t^e; zero when e = 0."""
    if e == 0:
        return [0]
    return [1] + [0] * (e - 1) + [-1]


def minimalize(A: np.ndarray) -> np.ndarray:
    """Keep only the rows of A not divisible by another row."""
    kept: list[np.ndarray] = []
    for m in A:
        if all(not np.all(m >= g) for g in kept):
            kept = [g for g in kept if not np.all(g >= m)]
            kept.append(m)
    return np.array(kept, dtype=np.int64).reshape(len(kept), A.shape[1])


def pivot(A: np.ndarray, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split on monomial p: left generates J + (p), right generates J : p."""
    left = [m for m in A if not np.all(m >= p)]
    left.append(p)
    right = np.where(A >= p, A - p, 0)
    return np.array(left, dtype=np.int64), minimalize(right)


def strategy(A: np.ndarray) -> int:
    """Column index with the most nonzero entries."""
    return int(np.argmax(np.count_nonzero(A, axis=0)))


def _key(A: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(int(e) for e in row) for row in A))


@lru_cache(maxsize=None)
def _numerator(gens: tuple[tuple[int, ...], ...], weights: tuple[int, ...]) -> tuple[int, ...]:
    A = np.array(gens, dtype=np.int64)
    w = np.array(weights, dtype=np.int64)
    if np.all(np.count_nonzero(A, axis=0) <= 1):
        result = [1]
        for deg in (A @ w).tolist():
            result = poly_mul(result, one_minus_t_power(int(deg)))
        return tuple(result)
    v = strategy(A)
    column = A[:, v]
    e = int(column[column > 0].min())
    p = np.zeros(A.shape[1], dtype=np.int64)
    p[v] = e
    left, right = pivot(A, p)
    n_left = _numerator(_key(left), weights)
    n_right = _numerator(_key(right), weights)
    return tuple(poly_add(n_left, poly_shift(n_right, e * weights[v])))


def hilbert_numerator(generators: Sequence[Monomial], weights: Sequence[int]) -> list[int]:
    """Numerator of the Hilbert series of S/(generators) over Π(1 - t^{w_i})."""
    if not generators:
        return [1]
    A = minimalize(np.array(generators, dtype=np.int64).reshape(len(generators), len(weights)))
    return list(_numerator(_key(A), tuple(int(w) for w in weights)))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_monomial(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def minimal_generators(monos: Sequence[Monomial]) -> list[Monomial]:
    """Minimal generating set, sorted."""
    out: list[Monomial] = []
    for m in sorted(set(monos), key=lambda m: (sum(m), m)):
        if not any(divides(g, m) for g in out):
            out.append(m)
    return sorted(out)


@lru_cache(maxsize=4096)
def monomials_of_degree(weights: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    """All exponent vectors of weighted degree d."""
    if d < 0:
        return ()
    if not weights:
        return ((),) if d == 0 else ()
    w = weights[-1]
    out = []
    for e in range(d // w + 1):
        for head in monomials_of_degree(weights[:-1], d - e * w):
            out.append(head + (e,))
    return tuple(out)


def standard_monomials(lt: Sequence[Monomial], weights: Sequence[int], d: int) -> list[Monomial]:
    """Monomials of degree d outside the monomial ideal generated by lt."""
    return [m for m in monomials_of_degree(tuple(weights), d)
            if not any(divides(g, m) for g in lt)]
