"""Experiment specs, a deterministic trial runner, summaries, and bound checks.

Every trial's seed is a pure function of (master seed, grid index, trial
index), and rows are always emitted in (grid index, trial) order, so serial
and parallel executions of the same spec produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from pathlib import Path

import numpy as np

from .benchmarks import make_objective, parse_objective_id
from .engine import DEFAULT_BUDGET, EAConfig, SELECTIONS, TIE_POLICIES, run
from .rng import derived_seed
from .theory import (
    comma_ea_lower_bound,
    comma_ea_upper_bound,
    p_k,
    plus_ea_lower_bound,
)

CSV_COLUMNS = [
    "experiment_id",
    "grid_index",
    "trial",
    "n",
    "k",
    "mu",
    "lambda",
    "selection",
    "mutation_rate",
    "seed",
    "evaluations",
    "iterations",
    "censored",
    "best_fitness",
]

DEFAULT_TRIALS = 1000

# theory-column parameter defaults; C is the smallest value satisfying the
# gap-width predicate at c = 0.1, rounded up for strictness
DEFAULT_C_SMALL = 0.1
DEFAULT_C_BIG = 4.4
DEFAULT_DELTA = 0.5


def _as_list(value) -> list:
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


@dataclass(frozen=True)
class GridPoint:
    grid_index: int
    n: int
    k: int | None
    mu: int
    lam: int
    selection: str


@dataclass(frozen=True)
class ExperimentSpec:
    """A sweep over (n, k, mu, lambda, selection) for one objective family."""

    objective: str
    n: int | list[int]
    k: int | list[int] | None = None
    mu: int | list[int] = 1
    lam: int | list[int] = 1
    selection: str | list[str] = "plus"
    trials: int = DEFAULT_TRIALS
    budget: int = DEFAULT_BUDGET
    master_seed: int = 0
    mutation_rate: float | None = None
    tie_policy: str = "uniform-random"
    experiment_id: str = "experiment"
    c: float = DEFAULT_C_SMALL
    C: float = DEFAULT_C_BIG
    delta: float = DEFAULT_DELTA
    threads: int | None = None

    def __post_init__(self):
        family, id_k = parse_objective_id(self.objective)
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        if self.tie_policy not in TIE_POLICIES:
            raise ValueError(f"tie policy must be one of {TIE_POLICIES}")
        for selection in _as_list(self.selection):
            if selection not in SELECTIONS:
                raise ValueError(f"selection must be one of {SELECTIONS}")
        if family == "jump" and id_k is None and self.k is None:
            raise ValueError("jump sweeps need gap widths k")

    @property
    def family(self) -> str:
        return parse_objective_id(self.objective)[0]

    def k_values(self) -> list[int | None]:
        family, id_k = parse_objective_id(self.objective)
        if family != "jump":
            return [None]
        if id_k is not None:
            if self.k is not None and _as_list(self.k) != [id_k]:
                raise ValueError("objective id and k grid disagree")
            return [id_k]
        return _as_list(self.k)

    def grid_points(self) -> list[GridPoint]:
        """Cartesian product in (n, k, mu, lambda, selection) order."""
        points = []
        for index, (n, k, mu, lam, selection) in enumerate(
            product(
                _as_list(self.n),
                self.k_values(),
                _as_list(self.mu),
                _as_list(self.lam),
                _as_list(self.selection),
            )
        ):
            points.append(GridPoint(index, int(n), k if k is None else int(k), int(mu), int(lam), selection))
        return points

    def config_for(self, point: GridPoint, trial: int) -> EAConfig:
        return EAConfig(
            n=point.n,
            mu=point.mu,
            lam=point.lam,
            selection=point.selection,
            mutation_rate=self.mutation_rate,
            tie_policy=self.tie_policy,
            budget=self.budget,
            seed=derived_seed(self.master_seed, point.grid_index, trial),
        )

    def objective_for(self, point: GridPoint):
        return make_objective(self.objective, point.n, point.k)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["lambda"] = data.pop("lam")
        # worker count changes scheduling only, never results
        data.pop("threads")
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        data = dict(data)
        if "lambda" in data:
            data["lam"] = data.pop("lambda")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentSpec":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))


def _trial_rows(args: tuple) -> list[dict]:
    spec_data, point_data, start, stop = args
    spec = ExperimentSpec.from_dict(spec_data)
    point = GridPoint(**point_data)
    objective = spec.objective_for(point)
    rows = []
    for trial in range(start, stop):
        config = spec.config_for(point, trial)
        result = run(config, objective)
        rows.append(
            {
                "experiment_id": spec.experiment_id,
                "grid_index": point.grid_index,
                "trial": trial,
                "n": point.n,
                "k": point.k,
                "mu": point.mu,
                "lambda": point.lam,
                "selection": point.selection,
                "mutation_rate": config.rate,
                "seed": config.seed,
                "evaluations": result.evaluations,
                "iterations": result.iterations,
                "censored": result.censored,
                "best_fitness": result.best_fitness_seen,
            }
        )
    return rows


@dataclass
class SummaryRow:
    """Aggregate statistics and bound columns for one grid point."""

    experiment_id: str
    grid_index: int
    objective: str
    n: int
    k: int | None
    mu: int
    lam: int
    selection: str
    trials: int
    successes: int
    censored: int
    mean_evaluations: float | None
    std_evaluations: float | None
    sem_evaluations: float | None
    ci95: tuple[float, float] | None
    min_evaluations: int | None
    max_evaluations: int | None
    theory: dict | None
    checks: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        data = asdict(self)
        if data["ci95"] is not None:
            data["ci95"] = list(data["ci95"])
        return data


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def _theory_columns(point: GridPoint, spec: ExperimentSpec) -> dict | None:
    if point.k is None:
        return None
    pk = p_k(point.n, point.k)
    comma_lower = comma_ea_lower_bound(point.n, point.k, point.mu, point.lam, spec.c, spec.C)
    comma_upper = comma_ea_upper_bound(point.n, point.k, point.mu, point.lam, spec.delta)
    plus_lower = plus_ea_lower_bound(point.n, point.k, point.mu)
    return {
        "p_k": pk.linear,
        "inv_p_k": _jsonable(1.0 / pk.linear if pk.linear > 0 else math.inf),
        "comma_lower": comma_lower.value,
        "comma_lower_valid": comma_lower.preconditions_satisfied,
        "comma_upper": _jsonable(comma_upper.value),
        "comma_upper_valid": comma_upper.preconditions_satisfied,
        "plus_lower": plus_lower.value,
        "c": spec.c,
        "C": spec.C,
        "delta": spec.delta,
    }


def summarize(rows: list[dict], spec: ExperimentSpec) -> list[SummaryRow]:
    """Per-grid-point statistics, recomputable from the per-run rows alone."""
    by_point: dict[int, list[dict]] = {}
    for row in rows:
        by_point.setdefault(int(row["grid_index"]), []).append(row)
    summaries = []
    for point in spec.grid_points():
        point_rows = by_point.get(point.grid_index, [])
        evals = np.array([int(r["evaluations"]) for r in point_rows], dtype=np.int64)
        censored = np.array([_as_bool(r["censored"]) for r in point_rows], dtype=bool)
        successes = int((~censored).sum())
        ok = evals[~censored]
        if successes > 0:
            mean = float(ok.mean())
            std = float(ok.std(ddof=1)) if successes > 1 else 0.0
            sem = std / math.sqrt(successes) if successes > 1 else math.inf
            stats = {
                "mean_evaluations": mean,
                "std_evaluations": std,
                "sem_evaluations": _jsonable(sem),
                "ci95": (mean - 1.96 * sem, mean + 1.96 * sem) if successes > 1 else None,
                "min_evaluations": int(ok.min()),
                "max_evaluations": int(ok.max()),
            }
        else:
            stats = {
                "mean_evaluations": None,
                "std_evaluations": None,
                "sem_evaluations": None,
                "ci95": None,
                "min_evaluations": None,
                "max_evaluations": None,
            }
        summary = SummaryRow(
            experiment_id=spec.experiment_id,
            grid_index=point.grid_index,
            objective=spec.objective,
            n=point.n,
            k=point.k,
            mu=point.mu,
            lam=point.lam,
            selection=point.selection,
            trials=len(point_rows),
            successes=successes,
            censored=int(censored.sum()),
            theory=_theory_columns(point, spec),
            **stats,
        )
        summaries.append(summary)
    compare_to_theory(summaries)
    return summaries


def compare_to_theory(summaries: list[SummaryRow]) -> list[dict]:
    """Annotate summaries with bound checks; returns the flat check list.

    A lower bound fails when the sample mean drops more than three standard
    errors below it; an upper bound fails symmetrically. Checks are skipped
    as not-applicable when the bound's validity predicate is false and as
    no-data when no uncensored run exists.
    """
    all_checks = []
    for summary in summaries:
        checks = []
        theory = summary.theory
        if theory is not None:
            if summary.selection == "comma":
                checks.append(
                    _bound_check("comma-lower", "lower", theory["comma_lower"], theory["comma_lower_valid"], summary)
                )
                upper = theory["comma_upper"]
                upper_value = math.inf if isinstance(upper, str) else upper
                checks.append(
                    _bound_check("comma-upper", "upper", upper_value, theory["comma_upper_valid"], summary)
                )
            else:
                checks.append(
                    _bound_check("plus-lower", "lower", theory["plus_lower"], True, summary)
                )
        summary.checks = checks
        all_checks.extend({"grid_index": summary.grid_index, **check} for check in checks)
    return all_checks


def _bound_check(name: str, side: str, bound: float, valid: bool, summary: SummaryRow) -> dict:
    check = {"bound": name, "value": _jsonable(bound)}
    if not valid:
        check["status"] = "not-applicable"
        return check
    if summary.successes == 0:
        check["status"] = "no-data"
        return check
    mean = summary.mean_evaluations
    slack = 3.0 * summary.sem_evaluations if math.isfinite(summary.sem_evaluations) else math.inf
    if side == "lower":
        ok = mean >= bound - slack
    else:
        ok = mean <= bound + slack
    check["status"] = "ok" if ok else "violation"
    return check


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() == "true"


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    rows: list[dict]
    summaries: list[SummaryRow]
    runs_path: Path | None = None
    summary_path: Path | None = None

    def has_violation(self) -> bool:
        return any(
            check["status"] == "violation" for summary in self.summaries for check in summary.checks
        )


def run_experiment(spec: ExperimentSpec, out_dir: str | Path | None = None) -> ExperimentResult:
    """Run all grid points and trials, then summarize and optionally write
    runs.csv and summary.json under out_dir."""
    threads = spec.threads if spec.threads is not None else (os.cpu_count() or 1)
    tasks = []
    spec_data, points = spec.to_dict(), spec.grid_points()
    for point in points:
        chunk = max(1, math.ceil(spec.trials / max(1, threads * 4)))
        for start in range(0, spec.trials, chunk):
            tasks.append((spec_data, asdict(point), start, min(start + chunk, spec.trials)))
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_trial_rows, tasks))
    else:
        chunks = [_trial_rows(task) for task in tasks]
    rows = [row for chunk_rows in chunks for row in chunk_rows]
    rows.sort(key=lambda row: (row["grid_index"], row["trial"]))
    summaries = summarize(rows, spec)
    result = ExperimentResult(spec, rows, summaries)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        result.runs_path = out_dir / "runs.csv"
        result.summary_path = out_dir / "summary.json"
        write_rows_csv(result.runs_path, rows)
        write_summary_json(result.summary_path, spec, summaries)
    return result


def write_rows_csv(path: str | Path, rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_csv_cell(row[column]) for column in CSV_COLUMNS])


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return value


def read_rows_csv(path: str | Path) -> list[dict]:
    """Typed per-run rows from a runs.csv file."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        rows = []
        for raw in reader:
            rows.append(
                {
                    "experiment_id": raw["experiment_id"],
                    "grid_index": int(raw["grid_index"]),
                    "trial": int(raw["trial"]),
                    "n": int(raw["n"]),
                    "k": int(raw["k"]) if raw["k"] else None,
                    "mu": int(raw["mu"]),
                    "lambda": int(raw["lambda"]),
                    "selection": raw["selection"],
                    "mutation_rate": float(raw["mutation_rate"]),
                    "seed": int(raw["seed"]),
                    "evaluations": int(raw["evaluations"]),
                    "iterations": int(raw["iterations"]),
                    "censored": raw["censored"] == "true",
                    "best_fitness": int(raw["best_fitness"]),
                }
            )
        return rows


def write_summary_json(path: str | Path, spec: ExperimentSpec, summaries: list[SummaryRow]) -> None:
    payload = {"spec": spec.to_dict(), "summaries": [s.to_dict() for s in summaries]}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
