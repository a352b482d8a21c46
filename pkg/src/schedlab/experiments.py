"""Policy-versus-optimum comparisons, bound checks, and deterministic sweeps.

Every claimed competitive bound is evaluated without irrational
arithmetic: square roots and base-``x`` logarithms enter only through
integer ceilings, which can only enlarge a bound, so a reported pass is a
pass of the conservative (weaker) claim and a reported failure is a real
failure of it.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .instances import GeneratorSpec, generate
from .model import Instance, SchedulingError
from .oracle import BudgetExceeded, OracleResult, SearchLimits, max_potential_series, optimal_cost
from .policies import Policy, UnsupportedInstance, make_policy
from .sim import Trace, run_policy


def ceil_log(x: int, q: Fraction | int) -> int:
    """Smallest integer k with x**k >= q, for rational q > 0. May be negative."""
    q = Fraction(q)
    if x < 2:
        raise ValueError(f"base must be at least 2, got {x}")
    if q <= 0:
        raise ValueError(f"logarithm needs q > 0, got {q}")
    num, den = q.numerator, q.denominator
    if num > den:
        k = 0
        power = den
        while power < num:
            power *= x
            k += 1
        return k
    m = 0
    while den >= num * x ** (m + 1):
        m += 1
    return -m


def ceil_sqrt(q: Fraction | int) -> int:
    """Smallest integer m >= 0 with m*m >= q, for rational q >= 0."""
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"square root needs q >= 0, got {q}")
    num, den = q.numerator, q.denominator
    m = isqrt(num // den)
    while m * m * den < num:
        m += 1
    return m


@dataclass(frozen=True)
class BoundCheck:
    """One evaluated competitive bound; ``passed`` is None when unchecked."""

    name: str
    value: Fraction
    passed: bool | None


@dataclass(frozen=True)
class PolicyOutcome:
    policy: str
    total: int
    trace: Trace
    ratio: Fraction | None
    bound: BoundCheck | None


@dataclass(frozen=True)
class ComparisonReport:
    instance_id: str
    oracle_total: int | None
    oracle_error: str | None
    outcomes: tuple[PolicyOutcome, ...]


def bound_for(instance: Instance, policy_name: str) -> tuple[str, Fraction] | None:
    """The claimed competitive bound for this policy on this class of instance.

    exp-ordering     (2x-1)/(x-1)                    exponential-only, expfirst/threshold
    maxweight-n      n                               linear-only, maxweight
    expfirst-log     n * ceil(log_x(M*n/s_min))      mixed, expfirst
    threshold-sqrt-log  4*ceil(sqrt(M/s_min)) + the expfirst-log term   mixed, threshold

    Policies without a claimed bound (naive, smith, and anything off its
    instance class) get None.
    """
    x, n = instance.x, instance.n
    if instance.is_exponential_only and policy_name in ("expfirst", "threshold"):
        return "exp-ordering", Fraction(2 * x - 1, x - 1)
    if instance.is_linear_only and policy_name == "maxweight":
        return "maxweight-n", Fraction(n)
    if instance.is_mixed and policy_name in ("expfirst", "threshold"):
        M = instance.max_weight
        s_min = instance.min_start_penalty
        log_term = n * ceil_log(x, Fraction(M * n, s_min))
        if policy_name == "expfirst":
            return "expfirst-log", Fraction(log_term)
        return "threshold-sqrt-log", Fraction(4 * ceil_sqrt(Fraction(M, s_min)) + log_term)
    return None


def compare(
    instance: Instance,
    policies: Sequence[Policy],
    limits: SearchLimits | None = None,
    instance_id: str | None = None,
) -> ComparisonReport:
    """Run each policy and the oracle on one instance; check claimed bounds.

    An oracle refusal (state budget) is recorded, not raised: totals are
    still reported, ratios come back None, and bounds stay unchecked.
    """
    if instance_id is None:
        instance_id = instance.fingerprint()
    oracle_total: int | None = None
    oracle_error: str | None = None
    try:
        oracle_total = optimal_cost(instance, limits).total
    except BudgetExceeded as err:
        oracle_error = str(err)
    outcomes = []
    for policy in policies:
        trace, report = run_policy(instance, policy)
        ratio = Fraction(report.total, oracle_total) if oracle_total is not None else None
        bound = bound_for(instance, policy.name)
        check = None
        if bound is not None:
            name, value = bound
            check = BoundCheck(name, value, None if ratio is None else ratio <= value)
        outcomes.append(PolicyOutcome(policy.name, report.total, trace, ratio, check))
    return ComparisonReport(instance_id, oracle_total, oracle_error, tuple(outcomes))


def sweep(
    specs: Iterable[GeneratorSpec],
    policies: Sequence[Policy],
    limits: SearchLimits | None = None,
) -> list[ComparisonReport]:
    """Compare every generated instance in order; fully deterministic."""
    return [compare(generate(spec), policies, limits, spec.instance_id()) for spec in specs]


def worst_case(reports: Iterable[ComparisonReport]) -> dict[str, tuple[Fraction, str]]:
    """Largest observed ratio per policy, with the instance id that produced it.

    Outcomes whose ratio is unavailable (oracle refused) are skipped; a
    policy with no checkable outcome at all is absent from the result.
    """
    worst: dict[str, tuple[Fraction, str]] = {}
    for report in reports:
        for outcome in report.outcomes:
            if outcome.ratio is None:
                continue
            seen = worst.get(outcome.policy)
            if seen is None or outcome.ratio > seen[0]:
                worst[outcome.policy] = (outcome.ratio, report.instance_id)
    return worst


REPORT_COLUMNS = ("instance_id", "policy", "total", "opt", "ratio_num", "ratio_den", "bound_name", "bound_pass")


def report_csv(reports: Iterable[ComparisonReport]) -> str:
    """Render comparison reports as CSV, one row per (instance, policy).

    Unavailable ratios leave opt and the ratio columns empty; a bound that
    exists but could not be checked renders an empty bound_pass.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for report in reports:
        for outcome in report.outcomes:
            opt = "" if report.oracle_total is None else report.oracle_total
            num = "" if outcome.ratio is None else outcome.ratio.numerator
            den = "" if outcome.ratio is None else outcome.ratio.denominator
            bname = "" if outcome.bound is None else outcome.bound.name
            bpass = ""
            if outcome.bound is not None and outcome.bound.passed is not None:
                bpass = "true" if outcome.bound.passed else "false"
            writer.writerow([report.instance_id, outcome.policy, outcome.total, opt, num, den, bname, bpass])
    return out.getvalue()


@dataclass(frozen=True)
class DominanceResult:
    """Slot-by-slot comparison of maximum potentials, policy versus optimum."""

    passed: bool
    policy_series: tuple[int, ...]
    optimal_series: tuple[int, ...]
    policy_trace: Trace
    optimal_trace: Trace


def check_potential_dominance(
    instance: Instance,
    limits: SearchLimits | None = None,
    policy: Policy | None = None,
) -> DominanceResult:
    """Check that the policy's max potential never exceeds the optimum's.

    Defined for exponential-only instances with a common release, where
    both schedules are busy over exactly the same slots.
    """
    if instance.has_linear:
        raise UnsupportedInstance("potential dominance is defined for exponential-only instances")
    if len({job.release for job in instance.jobs}) != 1:
        raise UnsupportedInstance("potential dominance needs a common release")
    policy = policy or make_policy("expfirst")
    policy_trace, _ = run_policy(instance, policy)
    optimal_trace = optimal_cost(instance, limits).trace
    policy_series = max_potential_series(instance, policy_trace)
    optimal_series = max_potential_series(instance, optimal_trace)
    if len(policy_series) != len(optimal_series):
        raise SchedulingError(
            "work-conserving schedules of one instance must span the same slots; "
            f"got {len(policy_series)} vs {len(optimal_series)}"
        )
    passed = all(p <= o for p, o in zip(policy_series, optimal_series))
    return DominanceResult(
        passed, tuple(policy_series), tuple(optimal_series), policy_trace, optimal_trace
    )
