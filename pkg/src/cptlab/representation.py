"""Black-box functional analysis.

Given a functional ``I`` on acts with ``I(1_S) = 1``, check monotonicity and
the restricted comonotonic additivity that characterizes CPT, pull the CPT
parameters out of it constructively, and test symmetry and uncertainty
attitudes of parameter sets.

A finite verifier cannot prove a statement quantified over all acts; reports
state how many instances were examined, and failures carry concrete
witnesses.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from numbers import Real
from typing import Callable, Iterable, Sequence

import numpy as np

from .acts import (
    Act,
    StateSpace,
    have_disjoint_supports,
    is_comonotonic,
    opposite_sign,
    same_sign,
)
from .capacity import EPS, Capacity, CapacityError, conjugate, is_concave, is_convex, validate
from .integration import CptParams, choquet, cpt, sipos

GRID_LEVELS = (-2, -1, 0, 1, 2)
EXHAUSTIVE_MAX_N = 3

SAME_SIGN = "same_sign_comonotone"
OPPOSITE_DISJOINT = "opposite_sign_disjoint"
GENERAL = "general_comonotone"
PAIR_CLASSES = (SAME_SIGN, OPPOSITE_DISJOINT, GENERAL)
RESTRICTED_CLASSES = (SAME_SIGN, OPPOSITE_DISJOINT)


class RepresentationError(Exception):
    pass


class OracleError(RepresentationError):
    """The functional is not admissible (not normalized or not deterministic)."""


class DegenerateLambda(RepresentationError):
    def __init__(self, lam: Real):
        self.lam = lam
        super().__init__(f"-I(-1_S) = {lam} is not positive; no loss-aversion coefficient")


class InvalidCapacity(RepresentationError):
    def __init__(self, side: str, cause: CapacityError):
        self.side = side
        self.cause = cause
        super().__init__(f"extracted {side} capacity is invalid: {cause}")


class ReconstructionMismatch(RepresentationError):
    def __init__(self, witness: Act, oracle_value: Real, cpt_value: Real):
        self.witness = witness
        self.oracle_value = oracle_value
        self.cpt_value = cpt_value
        super().__init__(
            f"I{list(witness.payoffs)} = {oracle_value} but the extracted CPT gives {cpt_value}"
        )


@dataclass(frozen=True)
class FunctionalOracle:
    """Deterministic black-box ``Act -> real`` with ``I(1_S) = 1``.

    ``reentrant`` allows :meth:`evaluate_many` to use worker threads.
    ``require_normalized=False`` skips the registration check, which is only
    useful for probing non-admissible functionals in tests.
    """

    space: StateSpace
    fn: Callable[[Act], Real]
    name: str = "oracle"
    reentrant: bool = False
    eps: float = EPS
    require_normalized: bool = True

    def __post_init__(self):
        one = Act.constant(self.space, 1)
        first, second = self.fn(one), self.fn(one)
        if first != second:
            raise OracleError(f"{self.name}: repeated evaluation of 1_S differs")
        if self.require_normalized and abs(first - 1) > self.eps:
            raise OracleError(f"{self.name}: I(1_S) = {first}, expected 1")

    def __call__(self, f: Act) -> Real:
        return self.fn(f)

    def evaluate_many(self, acts: Sequence[Act], workers: int = 1) -> list[Real]:
        """Values in input order, whatever the completion order."""
        if self.reentrant and workers > 1 and len(acts) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(self.fn, acts))
        return [self.fn(a) for a in acts]


def cpt_oracle(p: CptParams, **kw) -> FunctionalOracle:
    kw.setdefault("name", "cpt")
    return FunctionalOracle(p.space, lambda f: cpt(f, p), reentrant=True, **kw)


def choquet_oracle(v: Capacity, **kw) -> FunctionalOracle:
    kw.setdefault("name", "choquet")
    return FunctionalOracle(v.space, lambda f: choquet(f, v), reentrant=True, **kw)


def sipos_oracle(v: Capacity, **kw) -> FunctionalOracle:
    kw.setdefault("name", "sipos")
    return FunctionalOracle(v.space, lambda f: sipos(f, v), reentrant=True, **kw)


def expectation_oracle(space: StateSpace, weights: Sequence[Real], **kw) -> FunctionalOracle:
    kw.setdefault("name", "expectation")
    w = tuple(weights)
    return FunctionalOracle(
        space, lambda f: sum((a * b for a, b in zip(w, f.payoffs)), start=0), reentrant=True, **kw
    )


# ---------------------------------------------------------------------------
# act and pair generation


def grid_acts(space: StateSpace, levels: Iterable[int] = GRID_LEVELS) -> list[Act]:
    """All acts with payoffs in ``levels``, in lexicographic order."""
    return [Act(space, p) for p in itertools.product(tuple(levels), repeat=space.n)]


def random_acts(space: StateSpace, count: int, rng: np.random.Generator, scale: float = 5.0) -> list[Act]:
    """Real-valued acts with some exact zeros, so supports vary."""
    x = rng.uniform(-scale, scale, size=(count, space.n))
    x[rng.uniform(size=x.shape) < 0.25] = 0.0
    return [Act(space, tuple(row)) for row in x.tolist()]


def verification_grid(space: StateSpace, seed: int = 0, samples: int = 10_000) -> list[Act]:
    """Exhaustive integer grid for n <= 3, seeded random acts beyond."""
    if space.n <= EXHAUSTIVE_MAX_N:
        return grid_acts(space)
    return random_acts(space, samples, np.random.default_rng(seed))


def _sorted_along(order: np.ndarray, values: np.ndarray) -> np.ndarray:
    out = np.empty_like(values)
    out[order] = np.sort(values)
    return out


def random_class_pairs(
    space: StateSpace, count: int, rng: np.random.Generator, scale: float = 5.0
) -> list[tuple[Act, Act]]:
    """Seeded pairs cycling through the three comonotone classes.

    Comonotone pairs share a random state ordering; the opposite-sign pairs
    draw disjoint supports from a random partition of the states.
    """
    n = space.n
    pairs = []
    for k in range(count):
        kind = k % 3
        if kind == 0:
            order = rng.permutation(n)
            sign = 1.0 if rng.uniform() < 0.5 else -1.0
            f = _sorted_along(order, rng.uniform(0, scale, n)) * sign
            g = _sorted_along(order, rng.uniform(0, scale, n)) * sign
        elif kind == 1:
            side = rng.integers(0, 3, size=n)
            f = np.where(side == 0, rng.uniform(0, scale, n), 0.0)
            g = np.where(side == 1, -rng.uniform(0, scale, n), 0.0)
            if rng.uniform() < 0.5:
                f, g = g, f
        else:
            order = rng.permutation(n)
            f = _sorted_along(order, rng.uniform(-scale, scale, n))
            g = _sorted_along(order, rng.uniform(-scale, scale, n))
        pairs.append((Act(space, tuple(f.tolist())), Act(space, tuple(g.tolist()))))
    return pairs


def classify_pair(f: Act, g: Act) -> str | None:
    """Pair class for the additivity checks; None for non-comonotone pairs."""
    if not is_comonotonic(f, g):
        return None
    if same_sign(f, g):
        return SAME_SIGN
    if opposite_sign(f, g) and have_disjoint_supports(f, g):
        return OPPOSITE_DISJOINT
    return GENERAL


def _evaluate_cached(oracle: FunctionalOracle, acts: Iterable[Act], workers: int) -> dict:
    unique: dict[tuple, Act] = {}
    for a in acts:
        unique.setdefault(a.payoffs, a)
    keys = list(unique)
    values = oracle.evaluate_many([unique[k] for k in keys], workers=workers)
    return dict(zip(keys, values))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Violation:
    kind: str
    f: tuple
    g: tuple
    gap: float

    def to_dict(self) -> dict:
        return {
            "class": self.kind,
            "f": [float(x) for x in self.f],
            "g": [float(x) for x in self.g],
            "gap": float(self.gap),
        }


@dataclass
class AdditivityReport:
    pairs_tested: int = 0
    tested: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PAIR_CLASSES, 0))
    violations: list[Violation] = field(default_factory=list)

    def violations_in(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def find(self, f: Act, g: Act) -> Violation | None:
        for v in self.violations:
            if v.f == f.payoffs and v.g == g.payoffs:
                return v
        return None

    @property
    def restricted_clean(self) -> bool:
        return not any(v.kind in RESTRICTED_CLASSES for v in self.violations)

    def summary(self) -> list[str]:
        lines = []
        for kind in PAIR_CLASSES:
            bad = len(self.violations_in(kind))
            if bad:
                lines.append(f"{kind}: {bad} violation(s) in {self.tested[kind]} pairs")
            else:
                lines.append(f"{kind}: no violation found on {self.tested[kind]} pairs")
        return lines

    def to_dict(self, max_witnesses: int | None = None) -> dict:
        out = {"pairs_tested": self.pairs_tested, "classes": {}}
        for kind in PAIR_CLASSES:
            vs = self.violations_in(kind)
            out["classes"][kind] = {
                "tested": self.tested[kind],
                "violations": len(vs),
                "witnesses": [v.to_dict() for v in vs[:max_witnesses]],
            }
        return out


@dataclass
class MonotonicityReport:
    pairs_tested: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.clean:
            return f"monotonicity: no violation found on {self.pairs_tested} dominated pairs"
        return f"monotonicity: {len(self.violations)} violation(s) in {self.pairs_tested} dominated pairs"

    def to_dict(self, max_witnesses: int | None = None) -> dict:
        return {
            "pairs_tested": self.pairs_tested,
            "violations": len(self.violations),
            "witnesses": [v.to_dict() for v in self.violations[:max_witnesses]],
        }


# ---------------------------------------------------------------------------
# checks


def check_restricted_comonotonic_additivity(
    oracle: FunctionalOracle,
    seed: int = 0,
    random_pairs: int | None = None,
    extra_pairs: Sequence[tuple[Act, Act]] = (),
    eps: float = EPS,
    workers: int = 1,
) -> AdditivityReport:
    """Additivity gaps ``I(f+g) - I(f) - I(g)`` over the three comonotone classes.

    Pairs are ``extra_pairs`` first, then every ordered grid pair for n <= 3,
    then seeded class-targeted random pairs (default 3 000 for n <= 3,
    10 000 otherwise). Non-comonotone pairs are skipped.
    """
    space = oracle.space
    rng = np.random.default_rng(seed)
    pairs: list[tuple[Act, Act]] = list(extra_pairs)
    if space.n <= EXHAUSTIVE_MAX_N:
        grid = grid_acts(space)
        pairs.extend(itertools.product(grid, grid))
    if random_pairs is None:
        random_pairs = 3_000 if space.n <= EXHAUSTIVE_MAX_N else 10_000
    pairs.extend(random_class_pairs(space, random_pairs, rng))

    classified = [(classify_pair(f, g), f, g) for f, g in pairs]
    classified = [(k, f, g) for k, f, g in classified if k is not None]
    needed = itertools.chain.from_iterable((f, g, f + g) for _, f, g in classified)
    values = _evaluate_cached(oracle, needed, workers)

    report = AdditivityReport()
    for kind, f, g in classified:
        report.pairs_tested += 1
        report.tested[kind] += 1
        gap = values[(f + g).payoffs] - values[f.payoffs] - values[g.payoffs]
        if abs(gap) > eps:
            report.violations.append(Violation(kind, f.payoffs, g.payoffs, gap))
    return report


def dominated_pairs(space: StateSpace, seed: int = 0, samples: int = 10_000) -> list[tuple[Act, Act]]:
    """Pairs ``(f, g)`` with ``f >= g`` pointwise and ``f != g``."""
    if space.n <= EXHAUSTIVE_MAX_N:
        grid = grid_acts(space)
        return [(f, g) for f in grid for g in grid if f != g and f.dominates(g)]
    rng = np.random.default_rng(seed)
    out = []
    for g in random_acts(space, samples, rng):
        bump = rng.uniform(0, 3, size=space.n)
        bump[rng.uniform(size=space.n) < 0.5] = 0.0
        out.append((Act(space, tuple(a + b for a, b in zip(g.payoffs, bump.tolist()))), g))
    return out


def check_monotonicity(
    oracle: FunctionalOracle, seed: int = 0, samples: int = 10_000, eps: float = EPS, workers: int = 1
) -> MonotonicityReport:
    """Flags dominated pairs ``f >= g`` with ``I(f) < I(g) - eps``."""
    pairs = dominated_pairs(oracle.space, seed, samples)
    values = _evaluate_cached(oracle, itertools.chain.from_iterable(pairs), workers)
    report = MonotonicityReport()
    for f, g in pairs:
        report.pairs_tested += 1
        diff = values[f.payoffs] - values[g.payoffs]
        if diff < -eps:
            report.violations.append(Violation("monotonicity", f.payoffs, g.payoffs, diff))
    return report


def layer_decomposition(f: Act) -> list[Act]:
    """Split a nonpositive act into comonotone negative layers.

    With distinct payoff levels ``x_1 < ... < x_k`` on level sets
    ``A_1, ..., A_k`` and ``x_{k+1} = 0``, layer ``i`` is
    ``(x_{i+1} - x_i) * (-1_{A_1 ∪ ... ∪ A_i})``. Layers sum to ``f`` and
    each is comonotone with the sum of the layers after it.
    """
    if not f.is_nonpositive:
        bad = [f.space.names[i] for i, x in enumerate(f.payoffs) if x > 0]
        raise ValueError(f"act has positive payoffs at {bad}")
    levels = sorted(set(f.payoffs))
    layers = []
    below = 0
    for i, x in enumerate(levels):
        nxt = levels[i + 1] if i + 1 < len(levels) else 0
        for s, y in enumerate(f.payoffs):
            if y == x:
                below |= 1 << s
        layers.append(Act.indicator(f.space, below, -(nxt - x)))
    return layers


@dataclass
class ExtractionResult:
    params: CptParams
    max_deviation: float
    acts_checked: int

    def to_dict(self) -> dict:
        p = self.params
        space = p.space
        return {
            "lambda": float(p.lam),
            "v_plus": {space.label(m): float(x) for m, x in enumerate(p.v_plus.table)},
            "v_minus": {space.label(m): float(x) for m, x in enumerate(p.v_minus.table)},
            "max_deviation": self.max_deviation,
            "acts_checked": self.acts_checked,
        }


def extract_cpt(
    oracle: FunctionalOracle,
    seed: int = 0,
    samples: int = 10_000,
    eps: float = EPS,
    workers: int = 1,
) -> ExtractionResult:
    """Recover ``(v_plus, v_minus, λ)`` from a functional and check the result.

    ``v_plus(A) = I(1_A)``, ``λ = -I(-1_S)`` and ``v_minus(A) = -I(-1_A) / λ``.
    The reconstruction is then compared against the oracle on
    :func:`verification_grid`; the first act off by more than ``eps`` raises
    :class:`ReconstructionMismatch`.
    """
    space = oracle.space
    size = 1 << space.n
    gains = oracle.evaluate_many([Act.indicator(space, m) for m in range(size)], workers)
    losses = oracle.evaluate_many([Act.indicator(space, m, -1) for m in range(size)], workers)
    lam = -losses[-1]
    if not lam > eps:
        raise DegenerateLambda(lam)
    try:
        v_plus = validate(space, gains, tol=eps)
    except CapacityError as exc:
        raise InvalidCapacity("gain", exc) from exc
    try:
        v_minus = validate(space, [-x / lam for x in losses], tol=eps)
    except CapacityError as exc:
        raise InvalidCapacity("loss", exc) from exc
    params = CptParams(v_plus, v_minus, lam)

    acts = verification_grid(space, seed, samples)
    values = oracle.evaluate_many(acts, workers)
    worst = 0.0
    for act, value in zip(acts, values):
        rebuilt = cpt(act, params)
        dev = abs(float(value - rebuilt))
        if dev > eps:
            raise ReconstructionMismatch(act, value, rebuilt)
        worst = max(worst, dev)
    return ExtractionResult(params, worst, len(acts))


@dataclass(frozen=True)
class SymmetryResult:
    holds: bool
    witness: Act | None = None
    value_neg: Real | None = None
    minus_value: Real | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_symmetry(p: CptParams, eps: float = EPS) -> SymmetryResult:
    """Whether ``cpt(-f) == -cpt(f)`` for all f, decided from the parameters.

    This holds exactly when λ = 1 and ``v_plus == v_minus``. Otherwise the
    witness is ``1_S`` (λ != 1) or ``1_A`` for the first subset where the
    two capacities differ.
    """
    if abs(p.lam - 1) > eps:
        witness = Act.constant(p.space, 1)
    else:
        diff = [m for m in range(1 << p.space.n) if abs(p.v_plus.table[m] - p.v_minus.table[m]) > eps]
        if not diff:
            return SymmetryResult(True)
        witness = Act.indicator(p.space, diff[0])
    return SymmetryResult(False, witness, cpt(-witness, p), -cpt(witness, p))


def check_symmetry_oracle(
    oracle: FunctionalOracle, seed: int = 0, samples: int = 10_000, eps: float = EPS
) -> SymmetryResult:
    """Sample-based symmetry check for opaque functionals."""
    for f in verification_grid(oracle.space, seed, samples):
        a, b = oracle(-f), -oracle(f)
        if abs(a - b) > eps:
            return SymmetryResult(False, f, a, b)
    return SymmetryResult(True)


@dataclass(frozen=True)
class AttitudeReport:
    convex_gains: bool
    convex_losses: bool
    conjugate_loss_concave: bool
    gains_witness: tuple[int, int] | None = None
    losses_witness: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        return {
            "convex_gains": self.convex_gains,
            "convex_losses": self.convex_losses,
            "conjugate_loss_concave": self.conjugate_loss_concave,
        }


def check_uncertainty_attitudes(p: CptParams, eps: float = EPS) -> AttitudeReport:
    """Convexity of both capacities, plus concavity of the loss conjugate."""
    gains = is_convex(p.v_plus, eps)
    losses = is_convex(p.v_minus, eps)
    conj = is_concave(conjugate(p.v_minus), eps)
    return AttitudeReport(gains.holds, losses.holds, conj.holds, gains.witness, losses.witness)
