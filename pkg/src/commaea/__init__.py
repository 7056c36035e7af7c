"""Runtime experiments for comma and plus selection on jump-type landscapes.

The package pairs a small vectorized EA engine with the closed-form runtime
bounds it is meant to probe: exact success probabilities, lower and upper
bounds for both selection schemes, the level-based machinery behind the
comma upper bound, and a drift potential for the gap region. Small instances
can be solved exactly through an absorbing Markov chain oracle.
"""

from .benchmarks import (
    Cliff,
    Jump,
    LeadingOnes,
    Objective,
    OneMax,
    cliff,
    in_gap,
    jump,
    leadingones,
    make_objective,
    parse_objective_id,
)
from .bitstrings import BitString, mutate, mutate_fast, onemax, random_bitstring
from .drift import (
    DriftEstimate,
    PotentialParams,
    estimate_drift,
    individual_level,
    level_potential,
    population_level,
    potential,
    synthetic_population,
)
from .engine import EAConfig, Population, RunResult, TrajectoryPoint, run, select_best
from .experiments import (
    ExperimentResult,
    ExperimentSpec,
    compare_to_theory,
    read_rows_csv,
    run_experiment,
    summarize,
)
from .kernels import RuntimeSample, sample_runtimes
from .oracle import exact_hitting_time, onemax_transition_matrix
from .rng import RandomSource, derived_seed
from .theory import (
    BoundReport,
    TheoremParams,
    ZSchedule,
    additive_drift_lower_bound,
    binomial_tail_bound,
    chernoff_additive_bound,
    comma_ea_lower_bound,
    comma_ea_upper_bound,
    comma_h,
    drift_potential_cap,
    equal_fitness_probability,
    gap_width_parameters,
    jump_z_schedule,
    level_based_t0,
    p_k,
    plus_ea_lower_bound,
    plus_ea_upper_leading_term,
    saturation_level,
    uniform_sampling_lower_bound,
)

__all__ = [
    "BitString",
    "BoundReport",
    "Cliff",
    "DriftEstimate",
    "EAConfig",
    "ExperimentResult",
    "ExperimentSpec",
    "Jump",
    "LeadingOnes",
    "Objective",
    "OneMax",
    "Population",
    "PotentialParams",
    "RandomSource",
    "RunResult",
    "RuntimeSample",
    "TheoremParams",
    "TrajectoryPoint",
    "ZSchedule",
    "additive_drift_lower_bound",
    "binomial_tail_bound",
    "chernoff_additive_bound",
    "cliff",
    "comma_ea_lower_bound",
    "comma_ea_upper_bound",
    "comma_h",
    "compare_to_theory",
    "derived_seed",
    "drift_potential_cap",
    "equal_fitness_probability",
    "estimate_drift",
    "exact_hitting_time",
    "gap_width_parameters",
    "in_gap",
    "individual_level",
    "jump",
    "jump_z_schedule",
    "leadingones",
    "level_based_t0",
    "level_potential",
    "make_objective",
    "mutate",
    "mutate_fast",
    "onemax",
    "onemax_transition_matrix",
    "p_k",
    "parse_objective_id",
    "plus_ea_lower_bound",
    "plus_ea_upper_leading_term",
    "population_level",
    "potential",
    "random_bitstring",
    "read_rows_csv",
    "run",
    "run_experiment",
    "sample_runtimes",
    "saturation_level",
    "select_best",
    "summarize",
    "synthetic_population",
    "uniform_sampling_lower_bound",
]

__version__ = "0.1.0"
