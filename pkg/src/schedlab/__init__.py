"""Exact-arithmetic laboratory for preemptive single-machine scheduling
with linear and exponential penalties."""

from .experiments import (
    BoundCheck,
    ComparisonReport,
    DominanceResult,
    PolicyOutcome,
    bound_for,
    ceil_log,
    ceil_sqrt,
    check_potential_dominance,
    compare,
    report_csv,
    sweep,
    worst_case,
)
from .instances import (
    Family,
    GeneratorSpec,
    InstanceFormatError,
    SplitMix64,
    gen_case3,
    gen_identical_exp,
    gen_naive_lb,
    gen_random,
    generate,
    parse_instance,
    serialize_instance,
)
from .model import (
    Instance,
    InfeasibleCompletion,
    JobClass,
    JobSpec,
    ReleaseViolation,
    SchedulingError,
    completion_penalty,
    current_penalty,
    exp_job,
    exp_order_key,
    linear_job,
    potential,
    smith_key,
)
from .oracle import (
    BudgetExceeded,
    OracleResult,
    SearchLimits,
    best_permutation_cost,
    max_potential_series,
    optimal_cost,
    sequence_cost,
)
from .policies import (
    POLICY_NAMES,
    ActiveJob,
    ExpOrdering,
    MissingConstants,
    Policy,
    PolicyView,
    ThresholdConfig,
    ThresholdVariant,
    UnsupportedInstance,
    exp_queue_top,
    expfirst_choose,
    linear_queue_top,
    make_policy,
    maxweight_choose,
    naive_choose,
    smith_preemptive_choose,
    threshold_choose,
)
from .sim import (
    IDLE,
    InfeasibleDecision,
    PenaltyReport,
    PolicyDecision,
    SimState,
    Trace,
    TraceError,
    WorkConservationViolation,
    build_view,
    initial_state,
    penalty_of_trace,
    run_policy,
    step,
    trace_to_csv,
)

__version__ = "0.1.0"
