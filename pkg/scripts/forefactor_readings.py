"""Compare the two candidate forefactor formulas against measured ratios.

For a two-outcome POVM on a locus qubit, the averaged power of D over the
branches divided by D**nu is a closed-form function of the POVM singular
values and branch probabilities. Two readings differ in whether the second
branch probability enters squared; this script measures how far each lands
from the simulated ratio.
"""

import argparse

import numpy as np

from qubit_monotones import all_loci, d_monotone, random_state
from qubit_monotones.transforms import TwoOutcomePovm, monotonicity_trial, povm_forefactor


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    worst = {"squared": 0.0, "printed": 0.0}
    done = 0
    while done < args.trials:
        N = int(rng.integers(2, 6))
        loci = all_loci(N)
        locus = loci[int(rng.integers(len(loci)))]
        state = random_state(N, rng)
        if d_monotone(state, locus) <= 1e-6:
            continue
        povm = TwoOutcomePovm.random(int(rng.choice(locus.indices)), rng)
        for nu in (0.25, 0.5, 1.0):
            r = monotonicity_trial(state, locus, povm, nu)
            ratio = r.lhs / r.rhs
            for reading in worst:
                dev = abs(ratio - povm_forefactor(povm, r.probabilities, nu, reading))
                worst[reading] = max(worst[reading], dev)
        done += 1
    for reading, dev in worst.items():
        print(f"{reading:8} max |ratio - forefactor| = {dev:.3e}")


if __name__ == "__main__":
    main()
