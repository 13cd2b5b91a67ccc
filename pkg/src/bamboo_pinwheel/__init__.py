"""Pinwheel-based schedules for discrete bamboo garden trimming."""

from .bounds import lower_bound
from .core import (
    BGTInstance,
    EmptyInstanceError,
    InstanceError,
    NonPositiveGrowthError,
    Partition,
    Rational,
    TrimPlan,
    UnparsableTokenError,
    format_rational,
    normalize,
    parse_instance,
    serialize_instance,
)
from .cycles import (
    PeriodicSchedule,
    VerificationReport,
    build_cycle,
    build_cycle_dyadic,
    build_cycle_mixed,
    build_cycle_triadic,
    build_schedule,
    verify_schedule,
)
from .experiment import ExperimentSpec, evaluate_instance, run_experiment
from .generators import gen_lemma1, gen_random
from .oracle import OracleLimitError, exact_optimum, feasible
from .pw_classic import build_plan_pw
from .pw_enhanced import classify, plan_option_a, plan_option_b, run_pw2
from .simulator import SimulationReport, reduce_max, simulate

__version__ = "0.1.0"

__all__ = [
    "BGTInstance", "EmptyInstanceError", "ExperimentSpec", "InstanceError",
    "NonPositiveGrowthError", "OracleLimitError", "Partition", "PeriodicSchedule",
    "Rational", "SimulationReport", "TrimPlan", "UnparsableTokenError", "VerificationReport",
    "build_cycle", "build_cycle_dyadic", "build_cycle_mixed", "build_cycle_triadic",
    "build_plan_pw", "build_schedule", "classify", "evaluate_instance", "exact_optimum",
    "feasible", "format_rational", "gen_lemma1", "gen_random", "lower_bound", "normalize",
    "parse_instance", "plan_option_a", "plan_option_b", "reduce_max", "run_experiment",
    "run_pw2", "serialize_instance", "simulate", "verify_schedule",
]
