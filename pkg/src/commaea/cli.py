"""Command-line front end for runs, sweeps, bound tables, and drift probes."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .benchmarks import make_objective
from .drift import PotentialParams, estimate_drift, synthetic_population
from .engine import EAConfig, SELECTIONS, TIE_POLICIES, run
from .experiments import ExperimentSpec, read_rows_csv, run_experiment, summarize
from .oracle import MAX_EXACT_N, exact_hitting_time
from .rng import RandomSource
from .theory import (
    comma_ea_lower_bound,
    comma_ea_upper_bound,
    plus_ea_lower_bound,
    plus_ea_upper_leading_term,
)

_OBJECTIVE_OPTION = click.option(
    "--objective", default="onemax", show_default=True, help="onemax, jump, jump:k=K, cliff, or leadingones."
)


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


@click.group()
def main():
    """Evolutionary algorithm runtime experiments and closed-form bounds."""


@main.command("run")
@_OBJECTIVE_OPTION
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=None, help="Gap width for jump objectives.")
@click.option("--mu", type=int, default=1, show_default=True)
@click.option("--lambda", "lam", type=int, default=1, show_default=True)
@click.option("--selection", type=click.Choice(SELECTIONS), default="plus", show_default=True)
@click.option("--mutation-rate", type=float, default=None, help="Defaults to 1/n.")
@click.option("--tie-policy", type=click.Choice(TIE_POLICIES), default="uniform-random", show_default=True)
@click.option("--budget", type=int, default=10**8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def run_command(objective, n, k, mu, lam, selection, mutation_rate, tie_policy, budget, seed):
    """Run the EA once and print the runtime record."""
    config = EAConfig(
        n=n,
        mu=mu,
        lam=lam,
        selection=selection,
        mutation_rate=mutation_rate,
        tie_policy=tie_policy,
        budget=budget,
        seed=seed,
    )
    result = run(config, make_objective(objective, n, k))
    _echo_json(
        {
            "evaluations": result.evaluations,
            "iterations": result.iterations,
            "censored": result.censored,
            "best_fitness": result.best_fitness_seen,
        }
    )


@main.command("sweep")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@_OBJECTIVE_OPTION
@click.option("--n", "n_values", type=int, multiple=True)
@click.option("--k", "k_values", type=int, multiple=True)
@click.option("--mu", "mu_values", type=int, multiple=True)
@click.option("--lambda", "lam_values", type=int, multiple=True)
@click.option("--selection", "selections", type=click.Choice(SELECTIONS), multiple=True)
@click.option("--trials", type=int, default=None)
@click.option("--budget", type=int, default=None)
@click.option("--seed", type=int, default=None, help="Master seed for the whole sweep.")
@click.option("--threads", type=int, default=None)
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
@click.option("--check", is_flag=True, help="Exit nonzero if any bound check reports a violation.")
def sweep_command(config_path, objective, n_values, k_values, mu_values, lam_values, selections, trials, budget, seed, threads, out_dir, check):
    """Run a grid of configurations and write runs.csv plus summary.json."""
    if config_path is not None:
        spec = ExperimentSpec.from_json(config_path)
        overrides = {}
        if trials is not None:
            overrides["trials"] = trials
        if budget is not None:
            overrides["budget"] = budget
        if seed is not None:
            overrides["master_seed"] = seed
        if threads is not None:
            overrides["threads"] = threads
        if overrides:
            spec = ExperimentSpec.from_dict({**spec.to_dict(), **overrides})
    else:
        if not n_values:
            raise click.UsageError("either --config or at least one --n is required")
        spec = ExperimentSpec(
            objective=objective,
            n=list(n_values),
            k=list(k_values) or None,
            mu=list(mu_values) or 1,
            lam=list(lam_values) or 1,
            selection=list(selections) or "plus",
            trials=trials if trials is not None else 100,
            budget=budget if budget is not None else 10**8,
            master_seed=seed if seed is not None else 0,
            threads=threads,
        )
    result = run_experiment(spec, out_dir)
    _echo_json(
        {
            "runs": str(result.runs_path),
            "summary": str(result.summary_path),
            "grid_points": len(result.summaries),
            "violations": sum(
                1 for s in result.summaries for c in s.checks if c["status"] == "violation"
            ),
        }
    )
    if check and result.has_violation():
        sys.exit(1)


@main.command("theory")
@click.option("--formula", type=click.Choice(["plus-lower", "plus-upper", "comma-lower", "comma-upper", "all"]), default="all", show_default=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--mu", type=int, default=1, show_default=True)
@click.option("--lambda", "lam", type=int, default=1, show_default=True)
@click.option("--c", "c_small", type=float, default=0.1, show_default=True)
@click.option("--big-c", "c_big", type=float, default=4.4, show_default=True)
@click.option("--delta", type=float, default=0.5, show_default=True)
def theory_command(formula, n, k, mu, lam, c_small, c_big, delta):
    """Evaluate closed-form runtime bounds and print them as JSON."""
    producers = {
        "plus-lower": lambda: plus_ea_lower_bound(n, k, mu),
        "plus-upper": lambda: plus_ea_upper_leading_term(n, k, mu, lam),
        "comma-lower": lambda: comma_ea_lower_bound(n, k, mu, lam, c_small, c_big),
        "comma-upper": lambda: comma_ea_upper_bound(n, k, mu, lam, delta),
    }
    wanted = list(producers) if formula == "all" else [formula]
    _echo_json({name: producers[name]().to_dict() for name in wanted})


@main.command("drift")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--mu", type=int, required=True)
@click.option("--lambda", "lam", type=int, required=True)
@click.option("--c", "c_small", type=float, default=0.1, show_default=True)
@click.option("--start-level", type=int, default=1, show_default=True)
@click.option("--samples", type=int, default=2000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def drift_command(n, k, mu, lam, c_small, start_level, samples, seed):
    """Estimate one-generation potential drift from a fixed start population."""
    params = PotentialParams(n=n, k=k, lam=lam, c=c_small)
    objective = make_objective("jump", n, k)
    source = RandomSource(seed)
    om = n - k + start_level if start_level > 0 else n - k - 1
    population = synthetic_population(objective, [om] * mu, source.child(0).generator)
    config = EAConfig(n=n, mu=mu, lam=lam, selection="comma", seed=seed)
    estimate = estimate_drift(population, config, objective, params, samples, source.child(1).generator)
    _echo_json(
        {
            "start_level": estimate.start_level,
            "start_potential": estimate.start_potential,
            "potential_cap": params.g_max,
            "saturation_level": params.k_star,
            "samples": estimate.samples,
            "mean_gain": estimate.mean_gain,
            "sem_gain": estimate.sem_gain,
            "level_frequencies": {
                str(level): estimate.level_frequency(level) for level in range(k + 1)
            },
        }
    )


@main.command("oracle")
@_OBJECTIVE_OPTION
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=None)
@click.option("--mutation-rate", type=float, default=None, help="Defaults to 1/n.")
def oracle_command(objective, n, k, mutation_rate):
    """Exact expected runtime of the single-parent elitist EA for small n."""
    if n > MAX_EXACT_N:
        raise click.UsageError(f"exact solve supports n <= {MAX_EXACT_N}")
    value = exact_hitting_time(make_objective(objective, n, k), mutation_rate)
    _echo_json({"objective": objective, "n": n, "expected_evaluations": value})


@main.command("compare")
@click.option("--runs", "runs_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True, help="Experiment spec JSON, or a summary.json embedding one.")
@click.option("--check", is_flag=True, help="Exit nonzero if any bound check reports a violation.")
def compare_command(runs_path, config_path, check):
    """Recompute summary statistics and bound checks from a runs.csv file."""
    with open(config_path, encoding="utf-8") as handle:
        data = json.load(handle)
    spec = ExperimentSpec.from_dict(data["spec"] if "spec" in data else data)
    rows = read_rows_csv(runs_path)
    summaries = summarize(rows, spec)
    _echo_json([summary.to_dict() for summary in summaries])
    if check and any(c["status"] == "violation" for s in summaries for c in s.checks):
        sys.exit(1)


if __name__ == "__main__":
    main()
