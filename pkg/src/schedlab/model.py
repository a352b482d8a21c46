"""Exact penalty arithmetic for linear- and exponential-penalty jobs.

A job needs ``work`` whole time slots on a single machine and becomes
available at its integer ``release`` slot. A linear job of weight ``w``
completing at time ``C`` costs ``w * (C - release)``. An exponential job
with start penalty ``s`` costs ``s * x**(C - release)``, where all
exponential jobs of an instance share one integer base ``x >= 2``.

Everything here is exact: penalties are arbitrary-precision ints, priority
keys are ``fractions.Fraction`` values, and no comparison ever goes through
a float.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property


class JobClass(Enum):
    """The two penalty shapes a job can have."""

    LINEAR = "linear"
    EXPONENTIAL = "exp"


class SchedulingError(Exception):
    """Base class for all scheduling-domain errors raised by this package."""


class ReleaseViolation(SchedulingError):
    """A job was evaluated at a time before its release slot."""


class InfeasibleCompletion(SchedulingError):
    """A completion time earlier than release + work was supplied."""


@dataclass(frozen=True)
class JobSpec:
    """Immutable description of one job.

    Exactly one of ``weight`` (linear) or ``start_penalty`` (exponential)
    is set, matching ``kind``. Work and the penalty parameter are at least
    1, release is at least 0.
    """

    id: int
    kind: JobClass
    release: int
    work: int
    weight: int | None = None
    start_penalty: int | None = None

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError(f"job id must be non-negative, got {self.id}")
        if self.release < 0:
            raise ValueError(f"job {self.id}: release must be non-negative, got {self.release}")
        if self.work < 1:
            raise ValueError(f"job {self.id}: work must be at least 1, got {self.work}")
        if self.kind is JobClass.LINEAR:
            if self.weight is None or self.start_penalty is not None:
                raise ValueError(f"job {self.id}: a linear job carries a weight and nothing else")
            if self.weight < 1:
                raise ValueError(f"job {self.id}: weight must be at least 1, got {self.weight}")
        else:
            if self.start_penalty is None or self.weight is not None:
                raise ValueError(
                    f"job {self.id}: an exponential job carries a start penalty and nothing else"
                )
            if self.start_penalty < 1:
                raise ValueError(
                    f"job {self.id}: start penalty must be at least 1, got {self.start_penalty}"
                )

    @property
    def is_linear(self) -> bool:
        return self.kind is JobClass.LINEAR

    @property
    def is_exponential(self) -> bool:
        return self.kind is JobClass.EXPONENTIAL


def linear_job(job_id: int, release: int, work: int, weight: int) -> JobSpec:
    """Convenience constructor for a linear job."""
    return JobSpec(job_id, JobClass.LINEAR, release, work, weight=weight)


def exp_job(job_id: int, release: int, work: int, start_penalty: int) -> JobSpec:
    """Convenience constructor for an exponential job."""
    return JobSpec(job_id, JobClass.EXPONENTIAL, release, work, start_penalty=start_penalty)


@dataclass(frozen=True)
class Instance:
    """A shared base ``x`` plus the jobs competing for one machine.

    Job ids are unique and dense from 0; the stored job order is preserved
    as given (serialization round-trips keep it).
    """

    x: int
    jobs: tuple[JobSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if self.x < 2:
            raise ValueError(f"base x must be at least 2, got {self.x}")
        if not self.jobs:
            raise ValueError("an instance needs at least one job")
        ids = sorted(job.id for job in self.jobs)
        if ids != list(range(len(self.jobs))):
            raise ValueError("job ids must be unique and dense from 0")

    @property
    def n(self) -> int:
        return len(self.jobs)

    @cached_property
    def _by_id(self) -> dict[int, JobSpec]:
        return {job.id: job for job in self.jobs}

    def job(self, job_id: int) -> JobSpec:
        return self._by_id[job_id]

    @cached_property
    def max_weight(self) -> int:
        """Largest linear weight in the instance; 0 when there is no linear job."""
        return max((j.weight for j in self.jobs if j.is_linear), default=0)

    @cached_property
    def min_start_penalty(self) -> int | None:
        """Smallest exponential start penalty; None when there is no exponential job."""
        values = [j.start_penalty for j in self.jobs if j.is_exponential]
        return min(values) if values else None

    @property
    def has_linear(self) -> bool:
        return any(j.is_linear for j in self.jobs)

    @property
    def has_exponential(self) -> bool:
        return any(j.is_exponential for j in self.jobs)

    @property
    def is_linear_only(self) -> bool:
        return not self.has_exponential

    @property
    def is_exponential_only(self) -> bool:
        return not self.has_linear

    @property
    def is_mixed(self) -> bool:
        return self.has_linear and self.has_exponential

    @property
    def total_work(self) -> int:
        return sum(j.work for j in self.jobs)

    @property
    def horizon(self) -> int:
        """Upper bound on the last busy slot of any work-conserving schedule."""
        return max(j.release for j in self.jobs) + self.total_work

    def fingerprint(self) -> str:
        """Short stable digest of the instance contents, used to tie traces to it."""
        parts = [f"x={self.x}"]
        for i in range(self.n):
            j = self.job(i)
            value = j.weight if j.is_linear else j.start_penalty
            parts.append(f"{j.id}:{j.kind.value},r={j.release},t={j.work},v={value}")
        blob = ";".join(parts).encode("ascii")
        return hashlib.sha256(blob).hexdigest()[:12]


def current_penalty(job: JobSpec, now: int, x: int) -> int:
    """Penalty parameter of an incomplete job at integer time ``now``.

    Linear jobs keep their weight. An exponential job released at ``r``
    has grown to ``s * x**(now - r)``: it multiplies by ``x`` every slot
    it has existed, whether or not it was processed.
    """
    if now < job.release:
        raise ReleaseViolation(f"job {job.id} is not released at time {now}")
    if job.is_linear:
        return job.weight
    return job.start_penalty * x ** (now - job.release)


def completion_penalty(job: JobSpec, completion: int, x: int) -> int:
    """Penalty a job pays when it completes at integer time ``completion``."""
    if completion < job.release + job.work:
        raise InfeasibleCompletion(
            f"job {job.id} cannot complete at {completion}; "
            f"earliest is {job.release + job.work}"
        )
    elapsed = completion - job.release
    if job.is_linear:
        return job.weight * elapsed
    return job.start_penalty * x**elapsed


def potential(s_now: int, remaining: int, x: int) -> int:
    """Ending penalty ``s_now * x**remaining`` if the job ran uninterrupted.

    Invariant worth knowing: processing a job for one slot leaves its
    potential unchanged (remaining drops by one while the current penalty
    multiplies by ``x``), while skipping it for a slot multiplies the
    potential by ``x``.
    """
    if remaining <= 0:
        raise ValueError(f"potential is defined for incomplete jobs only, remaining={remaining}")
    return s_now * x**remaining


def exp_order_key(s_now: int, remaining: int, x: int) -> Fraction:
    """Exchange-rule priority ``s_now * x**t / (x**t - 1)`` for remaining work ``t``.

    Sorting exponential jobs by this key in decreasing order is exactly the
    order an adjacent-swap argument proves optimal for same-release
    non-preemptive sequencing.
    """
    if remaining <= 0:
        raise ValueError(f"key is defined for incomplete jobs only, remaining={remaining}")
    power = x**remaining
    return Fraction(s_now * power, power - 1)


def smith_key(weight: int, remaining: int) -> Fraction:
    """Classic ratio ``remaining / weight``; small values should run first."""
    if weight < 1:
        raise ValueError(f"weight must be at least 1, got {weight}")
    if remaining < 1:
        raise ValueError(f"remaining must be at least 1, got {remaining}")
    return Fraction(remaining, weight)
