"""Recover CPT parameters from black-box oracles and report the errors.

    python3 scripts/round_trip_experiment.py --trials 200 --states 3 --seed 0
"""

import argparse
import time

import numpy as np

from cptlab.acts import StateSpace
from cptlab.capacity import random_capacity
from cptlab.integration import CptParams
from cptlab.representation import cpt_oracle, extract_cpt


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--states", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    sp = StateSpace.of_size(args.states)
    cap_err, lam_err, dev = [], [], []
    t0 = time.perf_counter()
    for _ in range(args.trials):
        p = CptParams(random_capacity(sp, rng), random_capacity(sp, rng), rng.uniform(0.25, 4))
        res = extract_cpt(cpt_oracle(p), seed=int(rng.integers(1 << 31)))
        cap_err.append(max(
            max(abs(a - b) for a, b in zip(res.params.v_plus.table, p.v_plus.table)),
            max(abs(a - b) for a, b in zip(res.params.v_minus.table, p.v_minus.table)),
        ))
        lam_err.append(abs(res.params.lam - p.lam))
        dev.append(res.max_deviation)
    elapsed = time.perf_counter() - t0
    print(f"trials={args.trials} states={args.states} time={elapsed:.2f}s")
    print(f"max capacity error   {max(cap_err):.3e}")
    print(f"max lambda error     {max(lam_err):.3e}")
    print(f"max check deviation  {max(dev):.3e}")


if __name__ == "__main__":
    main()
