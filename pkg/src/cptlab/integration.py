"""Choquet, Šipoš and piecewise-linear CPT functionals on finite acts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .acts import Act, SpaceMismatch, negative_part, positive_part
from .capacity import EPS, Capacity, conjugate


@dataclass(frozen=True)
class CptParams:
    """Gain capacity, loss capacity and loss-aversion coefficient."""

    v_plus: Capacity
    v_minus: Capacity
    lam: Real = 1

    def __post_init__(self):
        if self.v_plus.space != self.v_minus.space:
            raise SpaceMismatch("v_plus and v_minus must share a state space")
        if isinstance(self.lam, bool) or not isinstance(self.lam, Real):
            raise TypeError("lambda must be a real number")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"lambda must be positive and finite, got {self.lam}")

    @property
    def space(self):
        return self.v_plus.space

    @classmethod
    def sipos(cls, v: Capacity) -> CptParams:
        """λ = 1 and the same capacity for gains and losses."""
        return cls(v, v, 1)

    @classmethod
    def choquet(cls, v: Capacity) -> CptParams:
        """Parameters whose CPT functional equals the Choquet integral under ``v``."""
        return cls(v, conjugate(v), 1)


def _check(f: Act, v: Capacity) -> None:
    if f.space != v.space:
        raise SpaceMismatch("act and capacity live on different state spaces")


def choquet(f: Act, v: Capacity) -> Real:
    """Choquet integral by the sorted layer formula.

    With payoffs ascending x(1) <= ... <= x(n) the value is
    ``x(1) + sum_i (x(i) - x(i-1)) * v({f >= x(i)})``. Ties are broken by state
    index; tied layers have zero width so the choice does not matter.
    """
    _check(f, v)
    x = f.payoffs
    order = sorted(range(len(x)), key=x.__getitem__)
    table = v.table
    # mask holds the states at sorted positions k..n-1
    mask = v.space.full
    total = x[order[0]]
    for k in range(1, len(order)):
        mask &= ~(1 << order[k - 1])
        width = x[order[k]] - x[order[k - 1]]
        if width:
            total += width * table[mask]
    return total


def sipos(f: Act, v: Capacity) -> Real:
    """Choquet of the positive part minus Choquet of the negative part."""
    return choquet(positive_part(f), v) - choquet(negative_part(f), v)


def cpt(f: Act, p: CptParams) -> Real:
    """Gains under ``v_plus`` minus λ times losses under ``v_minus``."""
    if f.space != p.space:
        raise SpaceMismatch("act and parameters live on different state spaces")
    return choquet(positive_part(f), p.v_plus) - p.lam * choquet(negative_part(f), p.v_minus)


def certainty_equivalent(f: Act, p: CptParams) -> Real:
    """Constant ``c`` with ``cpt(c * 1_S) == cpt(f)``."""
    value = cpt(f, p)
    return value if value >= 0 else value / p.lam


def hedging_gap(f: Act, g: Act, p: CptParams) -> Real:
    """``cpt(f + g) - cpt(f) - cpt(g)``; positive when gains offset losses."""
    return cpt(f + g, p) - cpt(f, p) - cpt(g, p)


def survival_riemann(f: Act, v: Capacity, steps: int = 100_000) -> tuple[float, float]:
    """Midpoint-rule evaluation of the survival-function definition.

    Integrates ``v({f >= t}) - 1`` over negative t and ``v({f >= t})`` over
    positive t on ``[min(f, 0), max(f, 0)]``. Returns ``(estimate, bound)``.
    The integrand has total variation at most 2, so the midpoint error is at
    most ``2 * (hi - lo) / steps``. Shares no code path with :func:`choquet`.
    """
    _check(f, v)
    x = np.array([float(a) for a in f.payoffs])
    lo, hi = min(x.min(), 0.0), max(x.max(), 0.0)
    if hi == lo:
        return 0.0, 0.0
    dt = (hi - lo) / steps
    t = lo + (np.arange(steps) + 0.5) * dt
    bits = (x[None, :] >= t[:, None]).astype(np.int64) << np.arange(len(x))
    masks = bits.sum(axis=1)
    levels = np.array([float(a) for a in v.table])[masks]
    integrand = np.where(t < 0, levels - 1.0, levels)
    return float(integrand.sum() * dt), 2.0 * dt


def approx_equal(a: Real, b: Real, eps: float = EPS) -> bool:
    return abs(a - b) <= eps
