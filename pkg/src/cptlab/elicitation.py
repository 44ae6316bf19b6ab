"""Loss-aversion elicitation from certainty-equivalent triples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from numbers import Real
from typing import Iterable

from .acts import Act, have_disjoint_supports
from .capacity import EPS
from .integration import CptParams, certainty_equivalent, cpt


class ElicitationError(ValueError):
    pass


class DegenerateDenominator(ElicitationError):
    """The triple cannot identify λ (zero denominator in the branch formula)."""


class InconsistentTriple(ElicitationError):
    """The triple implies λ <= 0; no CPT agent produces it."""


class OverlappingSupports(ElicitationError):
    pass


class WrongSign(ElicitationError):
    pass


@dataclass(frozen=True)
class ElicitationTriple:
    """Certainty equivalents of a gain act, a disjoint loss act, and their sum."""

    alpha: Real
    beta: Real
    gamma: Real

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            x = getattr(self, name)
            if isinstance(x, bool) or not isinstance(x, Real) or not math.isfinite(x):
                raise ValueError(f"{name} must be a finite real, got {x!r}")
        if self.alpha < 0:
            raise WrongSign(f"alpha must be >= 0, got {self.alpha}")
        if self.beta > 0:
            raise WrongSign(f"beta must be <= 0, got {self.beta}")


class Kind(str, Enum):
    NEUTRAL = "neutral"
    DETERMINED = "determined"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class LossAversionResult:
    kind: Kind
    lam: Real | None = None
    reason: str = ""


def elicit_lambda(t: ElicitationTriple, eps: float = EPS) -> LossAversionResult:
    """Recover λ from ``(α, β, γ)``.

    Order of tests:

    1. ``α`` or ``β`` zero and ``γ = α + β``: every λ fits, indeterminate.
    2. ``γ = α + β``: loss neutral, λ = 1.
    3. ``γ >= 0``: λ = (γ - α) / β.  ``γ < 0``: λ = α / (γ - β).

    Both branch formulas give ``-α / β`` at ``γ = 0``.
    """
    a, b, g = t.alpha, t.beta, t.gamma
    if abs(g - (a + b)) <= eps:
        if abs(a) <= eps or abs(b) <= eps:
            return LossAversionResult(
                Kind.INDETERMINATE, None, "one certainty equivalent is zero; any lambda fits"
            )
        return LossAversionResult(Kind.NEUTRAL, 1)
    if g >= 0:
        den = b
        if abs(den) <= eps:
            raise DegenerateDenominator(f"beta = {b}: gains-branch denominator vanishes")
        lam = (g - a) / den
    else:
        den = g - b
        if abs(den) <= eps:
            raise DegenerateDenominator(f"gamma - beta = {den}: loss-branch denominator vanishes")
        lam = a / den
    if not lam > 0:
        raise InconsistentTriple(f"implied lambda {lam} is not positive")
    return LossAversionResult(Kind.DETERMINED, lam)


def simulate_a4_triple(f: Act, g: Act, p: CptParams) -> ElicitationTriple:
    """Certainty equivalents a CPT agent with parameters ``p`` would report."""
    if not f.is_nonnegative:
        raise WrongSign("f must be nonnegative")
    if not g.is_nonpositive:
        raise WrongSign("g must be nonpositive")
    if not have_disjoint_supports(f, g):
        raise OverlappingSupports("f and g must have disjoint supports")
    return ElicitationTriple(
        certainty_equivalent(f, p), certainty_equivalent(g, p), certainty_equivalent(f + g, p)
    )


def predicted_gamma(alpha: Real, beta: Real, lam: Real) -> Real:
    """Certainty equivalent of ``f + g`` implied by λ-disjoint independence."""
    s = alpha + lam * beta
    return s if s >= 0 else s / lam


def lambda_spread(results: Iterable[LossAversionResult]) -> float:
    """Max minus min of the identified λ values (0 if fewer than two)."""
    lams = [float(r.lam) for r in results if r.lam is not None]
    return max(lams) - min(lams) if len(lams) > 1 else 0.0


class Preference(str, Enum):
    F_STRICT = "f_strict"
    G_STRICT = "g_strict"
    INDIFFERENT = "indifferent"


def prefers(f: Act, g: Act, p: CptParams, eps: float = EPS) -> Preference:
    diff = cpt(f, p) - cpt(g, p)
    if diff > eps:
        return Preference.F_STRICT
    if diff < -eps:
        return Preference.G_STRICT
    return Preference.INDIFFERENT
