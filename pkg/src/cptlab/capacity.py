"""Normalized capacities stored as dense bitmask-indexed tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Mapping, Sequence

import numpy as np

from .acts import SpaceMismatch, StateSpace

EPS = 1e-9


class CapacityError(ValueError):
    pass


class MissingSubset(CapacityError):
    def __init__(self, space: StateSpace, mask: int):
        self.mask = mask
        super().__init__(f"no value for subset {{{space.label(mask)}}}")


class NotNormalized(CapacityError):
    def __init__(self, which: str, value: Real):
        self.which = which
        self.value = value
        target = 0 if which == "empty" else 1
        super().__init__(f"v({'∅' if which == 'empty' else 'S'}) = {value}, expected {target}")


class NotMonotone(CapacityError):
    def __init__(self, space: StateSpace, smaller: int, larger: int, vs: Real, vl: Real):
        self.smaller = smaller
        self.larger = larger
        super().__init__(
            f"v({{{space.label(smaller)}}}) = {vs} > v({{{space.label(larger)}}}) = {vl}"
        )


@dataclass(frozen=True, eq=False)
class Capacity:
    """Monotone set function with ``v(∅) = 0`` and ``v(S) = 1``.

    Build through :func:`validate` (or the helpers below); ``table[mask]`` is
    the value of the subset encoded by ``mask``.
    """

    space: StateSpace
    table: tuple[Real, ...]

    def __call__(self, mask: int) -> Real:
        return self.table[mask]

    def value_of(self, *names: str) -> Real:
        return self.table[self.space.mask_of(names)]

    def __eq__(self, other):
        if not isinstance(other, Capacity):
            return NotImplemented
        return self.space == other.space and self.table == other.table

    def __hash__(self):
        return hash((self.space, self.table))

    def allclose(self, other: Capacity, tol: float = EPS) -> bool:
        if self.space != other.space:
            return False
        return max_abs_diff(self, other) <= tol

    def as_dict(self) -> dict[str, Real]:
        return {self.space.label(m): v for m, v in enumerate(self.table)}


def max_abs_diff(a: Capacity, b: Capacity) -> float:
    if a.space != b.space:
        raise SpaceMismatch("capacities live on different state spaces")
    return max(abs(float(x) - float(y)) for x, y in zip(a.table, b.table))


def validate(space: StateSpace, table: Sequence[Real] | Mapping[int, Real], tol: float = 0.0) -> Capacity:
    """Check a candidate table and return it as a :class:`Capacity`.

    ``table`` is either a full sequence of length ``2**n`` or a mapping from
    bitmask to value. With ``tol > 0`` endpoint values within ``tol`` of 0/1
    are snapped and monotonicity dips up to ``tol`` are tolerated; the
    default is exact.
    """
    size = 1 << space.n
    if isinstance(table, Mapping):
        for m in range(size):
            if m not in table:
                raise MissingSubset(space, m)
        values = [table[m] for m in range(size)]
    else:
        values = list(table)
        if len(values) < size:
            raise MissingSubset(space, len(values))
        if len(values) > size:
            raise CapacityError(f"table has {len(values)} entries, expected {size}")

    for m, x in enumerate(values):
        if isinstance(x, bool) or not isinstance(x, Real) or not math.isfinite(x):
            raise CapacityError(f"value {x!r} for {{{space.label(m)}}} is not a finite real")

    if abs(values[0]) > tol:
        raise NotNormalized("empty", values[0])
    if abs(values[-1] - 1) > tol:
        raise NotNormalized("full", values[-1])
    if tol > 0:
        values[0] = 0 * values[0]
        values[-1] = values[-1] / values[-1]

    # single-element extensions suffice: every A ⊂ B is reached by a chain
    for m in range(size):
        vm = values[m]
        for i in range(space.n):
            bit = 1 << i
            if not m & bit and vm - values[m | bit] > tol:
                raise NotMonotone(space, m, m | bit, vm, values[m | bit])
    return Capacity(space, tuple(values))


def conjugate(v: Capacity) -> Capacity:
    """Dual capacity ``A -> 1 - v(S \\ A)``."""
    full = v.space.full
    return Capacity(v.space, tuple(1 - v.table[full & ~m] for m in range(full + 1)))


def additive(space: StateSpace, weights: Sequence[Real]) -> Capacity:
    """Probability measure given by per-state weights (must sum to 1)."""
    if len(weights) != space.n:
        raise ValueError("one weight per state required")
    table = []
    for m in range(1 << space.n):
        table.append(sum((w for i, w in enumerate(weights) if m >> i & 1), start=0))
    return validate(space, table, tol=EPS)


def uniform(space: StateSpace) -> Capacity:
    return additive(space, [1 / space.n] * space.n)


def distorted(space: StateSpace, weights: Sequence[float], distortion) -> Capacity:
    """``v(A) = distortion(P(A))`` for the probability with the given weights."""
    p = additive(space, weights)
    return validate(space, [distortion(float(x)) for x in p.table], tol=EPS)


def unanimity(space: StateSpace, mask: int | None = None) -> Capacity:
    """1 on supersets of ``mask`` (default: only on S), 0 elsewhere."""
    core = space.full if mask is None else mask
    return validate(space, [1 if m & core == core else 0 for m in range(1 << space.n)])


def random_capacity(space: StateSpace, rng: np.random.Generator) -> Capacity:
    """Seeded random capacity.

    Independent uniforms per subset, running maximum over single-element
    extensions in ascending bitmask order (each subset is reached after all
    its subsets), then division by the value at S.
    """
    size = 1 << space.n
    u = rng.uniform(size=size)
    v = np.empty(size)
    v[0] = 0.0
    for m in range(1, size):
        best = u[m]
        for i in range(space.n):
            if m >> i & 1:
                best = max(best, v[m & ~(1 << i)])
        v[m] = best
    v /= v[-1]
    v[-1] = 1.0
    return validate(space, v.tolist())


def _supermodularity_gap(v: Capacity, a: int, b: int) -> float:
    t = v.table
    return float(t[a | b] + t[a & b] - t[a] - t[b])


def _scan(v: Capacity, sign: int, eps: float) -> tuple[int, int] | None:
    """First pair (A, B) with ``sign * gap < -eps``, or None.

    Local check first (A∪{i}, A∪{j} over all A); it is exact for exact
    arithmetic and its failures are genuine witnesses. For n <= 12 the full
    pair quantifier is then scanned as well, so slack accumulated below
    ``eps`` along chains cannot hide a violation.
    """
    n = v.space.n
    size = 1 << n
    for a in range(size):
        for i in range(n):
            bi = 1 << i
            if a & bi:
                continue
            for j in range(i + 1, n):
                bj = 1 << j
                if a & bj:
                    continue
                if sign * _supermodularity_gap(v, a | bi, a | bj) < -eps:
                    return a | bi, a | bj
    if n > 12:
        return None
    t = np.array([float(x) for x in v.table])
    idx = np.arange(size)
    for a in range(size):
        gap = t[a | idx] + t[a & idx] - t[a] - t
        bad = np.nonzero(sign * gap < -eps)[0]
        if bad.size:
            return a, int(bad[0])
    return None


@dataclass(frozen=True)
class ConvexityResult:
    holds: bool
    witness: tuple[int, int] | None = None
    gap: float = 0.0

    def __bool__(self) -> bool:
        return self.holds


def is_convex(v: Capacity, eps: float = EPS) -> ConvexityResult:
    """``v(A∪B) + v(A∩B) >= v(A) + v(B)`` for all A, B (up to ``eps``)."""
    w = _scan(v, 1, eps)
    if w is None:
        return ConvexityResult(True)
    return ConvexityResult(False, w, _supermodularity_gap(v, *w))


def is_concave(v: Capacity, eps: float = EPS) -> ConvexityResult:
    """``v(A∪B) + v(A∩B) <= v(A) + v(B)`` for all A, B (up to ``eps``)."""
    w = _scan(v, -1, eps)
    if w is None:
        return ConvexityResult(True)
    return ConvexityResult(False, w, _supermodularity_gap(v, *w))
