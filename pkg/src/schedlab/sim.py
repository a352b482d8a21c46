"""Discrete-time preemptive execution of an instance under a policy.

Time advances in unit slots. During slot ``[k, k+1)`` the machine either
processes one released incomplete job or idles; a job whose last work unit
lands in that slot completes at time ``k + 1``. Preemption costs nothing.

The engine is purely functional: :func:`step` maps one immutable state to
the next, :func:`run_policy` folds a policy over the slots and returns the
full :class:`Trace` together with the exact :class:`PenaltyReport`.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, replace
from fractions import Fraction

from .model import Instance, SchedulingError, completion_penalty, current_penalty
from .policies import ActiveJob, Policy, PolicyView

# A decision is the chosen job id, or None for an idle slot.
PolicyDecision = int | None
IDLE: PolicyDecision = None


class InfeasibleDecision(SchedulingError):
    """A policy chose a job that is unreleased or already complete."""


class WorkConservationViolation(SchedulingError):
    """A policy idled while a released incomplete job was available."""


class TraceError(SchedulingError):
    """A trace failed validation; the message names the offending slot."""


@dataclass(frozen=True)
class SimState:
    """Machine state at the start of slot ``clock``.

    ``remaining`` and ``completions`` are indexed by job id (ids are dense
    from 0); an entry of ``completions`` is None until the job finishes.
    """

    clock: int
    remaining: tuple[int, ...]
    completions: tuple[int | None, ...]

    @property
    def all_done(self) -> bool:
        return not any(self.remaining)


def initial_state(instance: Instance) -> SimState:
    work = tuple(instance.job(i).work for i in range(instance.n))
    return SimState(clock=0, remaining=work, completions=(None,) * instance.n)


def released_incomplete(instance: Instance, state: SimState) -> list[int]:
    """Ids of jobs that could legally run during the current slot."""
    return [
        i
        for i in range(instance.n)
        if state.remaining[i] > 0 and instance.job(i).release <= state.clock
    ]


def step(state: SimState, instance: Instance, decision: PolicyDecision) -> SimState:
    """Advance one slot, processing ``decision`` (or idling on None)."""
    if decision is None:
        if released_incomplete(instance, state):
            raise WorkConservationViolation(
                f"idle at slot {state.clock} while released work exists"
            )
        return replace(state, clock=state.clock + 1)
    if not 0 <= decision < instance.n:
        raise InfeasibleDecision(f"unknown job id {decision} at slot {state.clock}")
    if state.remaining[decision] == 0:
        raise InfeasibleDecision(f"job {decision} is already complete at slot {state.clock}")
    if instance.job(decision).release > state.clock:
        raise InfeasibleDecision(f"job {decision} is not released at slot {state.clock}")
    remaining = list(state.remaining)
    remaining[decision] -= 1
    completions = state.completions
    if remaining[decision] == 0:
        done = list(completions)
        done[decision] = state.clock + 1
        completions = tuple(done)
    return SimState(state.clock + 1, tuple(remaining), completions)


@dataclass(frozen=True)
class Trace:
    """Ordered slot decisions for one instance, slots contiguous from 0."""

    instance_fingerprint: str
    decisions: tuple[tuple[int, PolicyDecision], ...]


@dataclass(frozen=True)
class PenaltyReport:
    """Exact per-job and total penalties of one complete schedule."""

    per_job: dict[int, int]
    total: int
    ratio_vs: Fraction | None = None

    def with_ratio(self, reference_total: int) -> "PenaltyReport":
        """Copy of the report carrying total / reference_total as an exact ratio."""
        return PenaltyReport(self.per_job, self.total, Fraction(self.total, reference_total))


def build_view(instance: Instance, state: SimState, with_constants: bool = False) -> PolicyView:
    """Snapshot of the released incomplete jobs as a policy is allowed to see them."""
    jobs = []
    for i in range(instance.n):
        if state.remaining[i] == 0:
            continue
        job = instance.job(i)
        if job.release > state.clock:
            continue
        jobs.append(
            ActiveJob(i, job.kind, current_penalty(job, state.clock, instance.x), state.remaining[i])
        )
    return PolicyView(
        clock=state.clock,
        x=instance.x,
        jobs=tuple(jobs),
        max_weight=instance.max_weight if with_constants else None,
        min_start_penalty=instance.min_start_penalty if with_constants else None,
    )


def _report_from_completions(instance: Instance, completions: tuple[int | None, ...]) -> PenaltyReport:
    per_job = {
        i: completion_penalty(instance.job(i), completions[i], instance.x)
        for i in range(instance.n)
    }
    return PenaltyReport(per_job=per_job, total=sum(per_job.values()))


def run_policy(instance: Instance, policy: Policy) -> tuple[Trace, PenaltyReport]:
    """Consult ``policy`` every slot until every job has completed."""
    state = initial_state(instance)
    decisions: list[tuple[int, PolicyDecision]] = []
    while not state.all_done:
        if state.clock > instance.horizon:
            raise WorkConservationViolation(
                f"schedule ran past the horizon {instance.horizon}; policy is not work-conserving"
            )
        view = build_view(instance, state, with_constants=policy.needs_constants)
        decision = policy.choose(view)
        decisions.append((state.clock, decision))
        state = step(state, instance, decision)
    trace = Trace(instance.fingerprint(), tuple(decisions))
    return trace, _report_from_completions(instance, state.completions)


def penalty_of_trace(instance: Instance, trace: Trace) -> PenaltyReport:
    """Validate a trace against the instance and price it exactly.

    Checks: the trace belongs to this instance, slots are contiguous from
    0, every processed job is released and incomplete at its slot, and
    each job is processed for exactly its work. Violations raise
    :class:`TraceError` naming the offending slot.
    """
    if trace.instance_fingerprint != instance.fingerprint():
        raise TraceError(
            f"trace fingerprint {trace.instance_fingerprint} does not match instance "
            f"{instance.fingerprint()}"
        )
    remaining = [instance.job(i).work for i in range(instance.n)]
    completions: list[int | None] = [None] * instance.n
    for index, (slot, decision) in enumerate(trace.decisions):
        if slot != index:
            raise TraceError(f"slot {slot} at position {index}: slots must be contiguous from 0")
        if decision is None:
            continue
        if not 0 <= decision < instance.n:
            raise TraceError(f"slot {slot}: unknown job id {decision}")
        if instance.job(decision).release > slot:
            raise TraceError(f"slot {slot}: job {decision} is not yet released")
        if remaining[decision] == 0:
            raise TraceError(f"slot {slot}: job {decision} was already complete")
        remaining[decision] -= 1
        if remaining[decision] == 0:
            completions[decision] = slot + 1
    for i, left in enumerate(remaining):
        if left:
            raise TraceError(f"job {i} is short {left} slot(s) of work at the end of the trace")
    return _report_from_completions(instance, tuple(completions))


def trace_to_csv(trace: Trace) -> str:
    """Render a trace as ``slot,job_id`` rows; idle slots carry the literal ``idle``."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["slot", "job_id"])
    for slot, decision in trace.decisions:
        writer.writerow([slot, "idle" if decision is None else decision])
    return out.getvalue()
