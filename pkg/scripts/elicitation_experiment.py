"""Simulate certainty-equivalent triples from random CPT agents and elicit λ.

Optionally adds Gaussian noise to the reported certainty equivalents to see
how fast the recovered λ degrades.
"""

import argparse

import numpy as np

from cptlab.acts import Act, StateSpace
from cptlab.capacity import random_capacity
from cptlab.elicitation import ElicitationError, ElicitationTriple, elicit_lambda, simulate_a4_triple
from cptlab.integration import CptParams


def one_case(rng, n):
    sp = StateSpace.of_size(n)
    cut = int(rng.integers(1, n))
    f = Act(sp, tuple(rng.uniform(0.1, 5) if i < cut else 0.0 for i in range(n)))
    g = Act(sp, tuple(0.0 if i < cut else -rng.uniform(0.1, 5) for i in range(n)))
    lam = rng.uniform(0.25, 4)
    p = CptParams(random_capacity(sp, rng), random_capacity(sp, rng), lam)
    return simulate_a4_triple(f, g, p), lam


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=500)
    ap.add_argument("--states", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--noise", type=float, nargs="*", default=[0.0, 1e-6, 1e-3, 1e-2])
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    cases = [one_case(rng, args.states) for _ in range(args.cases)]
    print(f"{'noise':>8} {'median |err|':>14} {'max |err|':>12} {'failed':>7}")
    for sigma in args.noise:
        errs, failed = [], 0
        for t, lam in cases:
            a, b, c = (t.alpha, t.beta, t.gamma) + rng.normal(0, sigma, 3) if sigma else (t.alpha, t.beta, t.gamma)
            try:
                r = elicit_lambda(ElicitationTriple(max(a, 0.0), min(b, 0.0), c))
            except ElicitationError:
                failed += 1
                continue
            if r.lam is None:
                failed += 1
                continue
            errs.append(abs(r.lam - lam))
        print(f"{sigma:>8.0e} {np.median(errs):>14.3e} {max(errs):>12.3e} {failed:>7d}")


if __name__ == "__main__":
    main()
