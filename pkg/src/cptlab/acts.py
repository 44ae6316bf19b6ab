"""Finite state spaces, acts, sign decomposition and comonotonicity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Sequence

MAX_STATES = 16


class SpaceMismatch(ValueError):
    """Two objects that must share a state space do not."""


@dataclass(frozen=True)
class StateSpace:
    """Ordered finite set of named states.

    Subsets are encoded as bitmasks: state ``i`` is bit ``1 << i``.
    """

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(str(s) for s in names)
        if not 1 <= len(names) <= MAX_STATES:
            raise ValueError(f"need 1..{MAX_STATES} states, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError(f"state labels must be distinct: {names}")
        object.__setattr__(self, "names", names)

    @classmethod
    def of_size(cls, n: int) -> StateSpace:
        return cls(f"s{i + 1}" for i in range(n))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown state {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def members(self, mask: int) -> tuple[str, ...]:
        return tuple(s for i, s in enumerate(self.names) if mask >> i & 1)

    def label(self, mask: int) -> str:
        """Comma-joined labels in state order; ``""`` for the empty set."""
        return ",".join(self.members(mask))

    def complement(self, mask: int) -> int:
        return self.full & ~mask


@dataclass(frozen=True)
class Act:
    """Real payoff vector over a state space.

    Payoffs keep their numeric type, so ``Fraction`` inputs give exact
    results all the way through the integrals.
    """

    space: StateSpace
    payoffs: tuple[Real, ...]

    def __post_init__(self):
        payoffs = tuple(self.payoffs)
        if len(payoffs) != self.space.n:
            raise ValueError(
                f"act has {len(payoffs)} payoffs, space has {self.space.n} states"
            )
        for x in payoffs:
            if isinstance(x, bool) or not isinstance(x, Real):
                raise TypeError(f"payoff {x!r} is not a real number")
            if not math.isfinite(x):
                raise ValueError(f"payoff {x!r} is not finite")
        object.__setattr__(self, "payoffs", payoffs)

    @classmethod
    def constant(cls, space: StateSpace, value: Real = 1) -> Act:
        return cls(space, (value,) * space.n)

    @classmethod
    def indicator(cls, space: StateSpace, mask: int, value: Real = 1) -> Act:
        """``value * 1_A`` for the subset encoded by ``mask``."""
        return cls(space, tuple(value if mask >> i & 1 else 0 for i in range(space.n)))

    @classmethod
    def zero(cls, space: StateSpace) -> Act:
        return cls.constant(space, 0)

    def __len__(self) -> int:
        return len(self.payoffs)

    def __getitem__(self, i: int) -> Real:
        return self.payoffs[i]

    def __iter__(self):
        return iter(self.payoffs)

    def _check(self, other: Act) -> None:
        if self.space != other.space:
            raise SpaceMismatch("acts live on different state spaces")

    def __add__(self, other: Act) -> Act:
        self._check(other)
        return Act(self.space, tuple(a + b for a, b in zip(self.payoffs, other.payoffs)))

    def __sub__(self, other: Act) -> Act:
        self._check(other)
        return Act(self.space, tuple(a - b for a, b in zip(self.payoffs, other.payoffs)))

    def __neg__(self) -> Act:
        return Act(self.space, tuple(-a for a in self.payoffs))

    def scale(self, alpha: Real) -> Act:
        return Act(self.space, tuple(alpha * a for a in self.payoffs))

    def shift(self, alpha: Real) -> Act:
        return Act(self.space, tuple(a + alpha for a in self.payoffs))

    def dominates(self, other: Act) -> bool:
        """Pointwise ``self >= other``."""
        self._check(other)
        return all(a >= b for a, b in zip(self.payoffs, other.payoffs))

    @property
    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.payoffs)

    @property
    def is_nonpositive(self) -> bool:
        return all(x <= 0 for x in self.payoffs)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.payoffs)


def positive_part(f: Act) -> Act:
    return Act(f.space, tuple(x if x > 0 else 0 for x in f.payoffs))


def negative_part(f: Act) -> Act:
    """``max(-f, 0)``; nonnegative, so ``f == positive_part(f) - negative_part(f)``."""
    return Act(f.space, tuple(-x if x < 0 else 0 for x in f.payoffs))


def support(f: Act) -> int:
    """Bitmask of states with a nonzero payoff (exact comparison)."""
    mask = 0
    for i, x in enumerate(f.payoffs):
        if x != 0:
            mask |= 1 << i
    return mask


def _same_space(f: Act, g: Act) -> None:
    if f.space != g.space:
        raise SpaceMismatch("acts live on different state spaces")


def is_comonotonic(f: Act, g: Act) -> bool:
    """True iff ``(f(s)-f(t)) * (g(s)-g(t)) >= 0`` for every pair of states."""
    _same_space(f, g)
    x, y = f.payoffs, g.payoffs
    n = len(x)
    for s in range(n):
        for t in range(s + 1, n):
            dx = x[s] - x[t]
            dy = y[s] - y[t]
            # sign test avoids underflow of the product for tiny differences
            if (dx > 0 and dy < 0) or (dx < 0 and dy > 0):
                return False
    return True


def is_cosigned(f: Act, g: Act) -> bool:
    """Comonotonic, and no state where one act gains while the other loses."""
    if not is_comonotonic(f, g):
        return False
    return not any(
        (a > 0 and b < 0) or (a < 0 and b > 0) for a, b in zip(f.payoffs, g.payoffs)
    )


def have_disjoint_supports(f: Act, g: Act) -> bool:
    _same_space(f, g)
    return support(f) & support(g) == 0


def opposite_sign(f: Act, g: Act) -> bool:
    """One act is nonnegative and the other nonpositive."""
    return (f.is_nonnegative and g.is_nonpositive) or (
        f.is_nonpositive and g.is_nonnegative
    )


def same_sign(f: Act, g: Act) -> bool:
    return (f.is_nonnegative and g.is_nonnegative) or (
        f.is_nonpositive and g.is_nonpositive
    )


def parse_number(token: str) -> Fraction:
    """Exact decimal (or ``p/q``) parse; rejects nan and infinities."""
    token = token.strip()
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a finite number: {token!r}") from None


def acts_from_rows(
    space: StateSpace, rows: Sequence[tuple[str, Sequence[Real]]]
) -> dict[str, Act]:
    out: dict[str, Act] = {}
    for label, values in rows:
        if label in out:
            raise ValueError(f"duplicate act label {label!r}")
        out[label] = Act(space, tuple(values))
    return out
