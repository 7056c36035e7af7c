"""Success-rate collapse of comma selection at low offspring-to-parent ratios.

Runs the (mu, lambda) EA with comma selection on OneMax for a range of
lambda at fixed mu and budget, printing per-lambda success rates and mean
evaluation counts. The transition sits near lambda = e * mu: below it the
expected number of offspring that keep the best fitness level drops under
one per parent slot, the population cannot hold its level, and runs
exhaust the budget.
"""

import argparse
import math

import numpy as np

from commaea.benchmarks import OneMax
from commaea.engine import EAConfig, run
from commaea.rng import derived_seed


def success_profile(n, mu, lams, trials, budget, master_seed):
    rows = []
    for index, lam in enumerate(lams):
        evals = []
        hits = 0
        for trial in range(trials):
            result = run(
                EAConfig(
                    n=n, mu=mu, lam=lam, selection="comma", budget=budget,
                    seed=derived_seed(master_seed, index, trial),
                ),
                OneMax(n=n),
            )
            if not result.censored:
                hits += 1
                evals.append(result.evaluations)
        mean = float(np.mean(evals)) if evals else math.nan
        rows.append((lam, hits / trials, mean))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=40)
    parser.add_argument("--mu", type=int, default=20)
    parser.add_argument(
        "--lambdas", type=int, nargs="+", default=[20, 40, 60, 90, 140, 200]
    )
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--budget", type=int, default=3 * 10**5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    print(
        f"OneMax n={args.n}, mu={args.mu}, comma selection, "
        f"budget={args.budget}, trials={args.trials}"
    )
    print(f"stall threshold near lambda = e*mu = {math.e * args.mu:.1f}")
    print(f"{'lambda':>8} {'success':>9} {'mean evals':>12}")
    profile = success_profile(
        args.n, args.mu, args.lambdas, args.trials, args.budget, args.seed
    )
    for lam, rate, mean in profile:
        mean_text = f"{mean:12.0f}" if not math.isnan(mean) else f"{'-':>12}"
        print(f"{lam:8d} {rate:9.2f} {mean_text}")


if __name__ == "__main__":
    main()
