"""Empirical gap runtimes next to the closed-form bound calculators.

Runs a (mu, lambda) sweep on width-k gap objectives through the experiment
harness, then prints one row per grid point and applicable bound: the
empirical mean evaluation count with its standard error, the bound value,
and the check verdict (ok, violation, not-applicable, or no-data). The
per-run CSV and the summary JSON land in --out-dir for reuse with the
`commaea compare` subcommand.
"""

import argparse
from pathlib import Path

from commaea.experiments import ExperimentSpec, compare_to_theory, run_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[20, 30])
    parser.add_argument("--k", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--mu", type=int, nargs="+", default=[10])
    parser.add_argument("--lambda", dest="lam", type=int, nargs="+", default=[40])
    parser.add_argument("--selection", nargs="+", default=["plus", "comma"])
    parser.add_argument("--trials", type=int, default=40)
    parser.add_argument("--budget", type=int, default=10**7)
    parser.add_argument("--seed", type=int, default=97)
    parser.add_argument("--out-dir", type=Path, default=Path("sweep-output"))
    args = parser.parse_args()

    spec = ExperimentSpec(
        objective="jump", n=args.n, k=args.k, mu=args.mu, lam=args.lam,
        selection=args.selection, trials=args.trials, budget=args.budget,
        master_seed=args.seed, experiment_id="bounds-vs-empirical",
    )
    result = run_experiment(spec, args.out_dir)
    compare_to_theory(result.summaries)

    print(
        f"{'n':>4} {'k':>3} {'mu':>5} {'lambda':>7} {'sel':>6} "
        f"{'mean':>12} {'sem':>10} {'bound':>14} {'value':>14} {'status':>15}"
    )
    for summary in result.summaries:
        if summary.mean_evaluations is None:
            mean_text, sem_text = f"{'-':>12}", f"{'-':>10}"
        else:
            mean_text = f"{summary.mean_evaluations:12.1f}"
            sem_text = f"{summary.sem_evaluations:10.1f}"
        prefix = (
            f"{summary.n:4d} {summary.k:3d} {summary.mu:5d} {summary.lam:7d} "
            f"{summary.selection:>6}"
        )
        for check in summary.checks:
            value = check["value"]
            value_text = f"{value:14.1f}" if isinstance(value, float) else f"{value:>14}"
            print(
                f"{prefix} {mean_text} {sem_text} {check['bound']:>14} "
                f"{value_text} {check['status']:>15}"
            )
    print(f"\nper-run rows: {result.runs_path}")
    print(f"summaries:    {result.summary_path}")


if __name__ == "__main__":
    main()
