"""Three-state gain-loss hedging example, with exact rational data.

Acts f, g, h are pairwise comonotonic. Under the Choquet integral f+h and
g+h are indifferent, while the Šipoš integral strictly prefers the smoother
f+h, where gains offset losses.
"""

from __future__ import annotations

from fractions import Fraction as F

from .acts import Act, StateSpace
from .capacity import Capacity, validate

SPACE = StateSpace(["s1", "s2", "s3"])

# bitmask order: ∅, s1, s2, s1s2, s3, s1s3, s2s3, S
CAPACITY_VALUES = {
    "": F(0),
    "s1": F(2, 3),
    "s2": F(1, 3),
    "s3": F(0),
    "s1,s2": F(2, 3),
    "s2,s3": F(2, 3),
    "s1,s3": F(1),
    "s1,s2,s3": F(1),
}

ACT_PAYOFFS = {
    "f": (3, 4, 4),
    "g": (0, 11, 0),
    "h": (-3, 0, -1),
    "-h": (3, 0, 1),
    "f+h": (0, 4, 3),
    "g+h": (-3, 11, -1),
}


def capacity() -> Capacity:
    table = {SPACE.mask_of(k.split(",") if k else []): x for k, x in CAPACITY_VALUES.items()}
    return validate(SPACE, table)


def acts() -> dict[str, Act]:
    return {name: Act(SPACE, tuple(F(x) for x in p)) for name, p in ACT_PAYOFFS.items()}


# exact values of the integrals, for golden tests and the CLI demo
CHOQUET = {"f": F(11, 3), "g": F(11, 3), "h": F(-4, 3), "f+h": F(7, 3), "g+h": F(7, 3)}
SIPOS = {"f": F(11, 3), "g": F(11, 3), "h": F(-7, 3), "f+h": F(7, 3), "g+h": F(4, 3)}
