"""Online scheduling policies.

Each policy is a pure function from a :class:`PolicyView` (what an online
scheduler is allowed to see at one slot) to a decision: the id of the job
to process during that slot, or ``None`` to idle. Idling is legal only
when no released incomplete job exists; the simulator enforces that.

All tie-breaks are deterministic: lower job id wins, and for the naive
rule a linear job beats an exponential one of equal current penalty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

from .model import JobClass, SchedulingError, exp_order_key, potential


class UnsupportedInstance(SchedulingError):
    """A policy or routine was given jobs it is not defined for."""


class MissingConstants(SchedulingError):
    """The threshold policy needs instance constants the view does not carry."""


@dataclass(frozen=True)
class ActiveJob:
    """One released, incomplete job as a policy sees it.

    ``value`` is the job's current penalty: the weight for a linear job,
    the grown start penalty for an exponential one.
    """

    id: int
    kind: JobClass
    value: int
    remaining: int


@dataclass(frozen=True)
class PolicyView:
    """Knowledge available to a policy at the start of one slot.

    ``max_weight`` and ``min_start_penalty`` are the instance-wide
    constants the threshold policy is entitled to know in advance; they
    are ``None`` for every other policy.
    """

    clock: int
    x: int
    jobs: tuple[ActiveJob, ...]
    max_weight: int | None = None
    min_start_penalty: int | None = None


class ExpOrdering(Enum):
    """How the exponential queue ranks its jobs.

    POTENTIAL ranks by the ending penalty ``s' * x**remaining``. This is
    the default; on identical jobs it produces the round-robin cascade
    with all completions in consecutive slots. SWAP_KEY ranks by
    ``exp_order_key`` instead, which is the non-preemptive exchange rule;
    it is available as an experimental switch and runs identical jobs to
    completion one after another.
    """

    POTENTIAL = "potential"
    SWAP_KEY = "swap-key"


class ThresholdVariant(Enum):
    STATED = "stated"  # tau**2 = max_weight / min_start_penalty
    DERIVED = "derived"  # tau**2 = max_weight * min_start_penalty
    CUSTOM = "custom"  # explicit rational tau


@dataclass(frozen=True)
class ThresholdConfig:
    """Cutoff the threshold policy compares the top potential against.

    The stated and derived variants define ``tau`` only through its
    square, so the comparison ``pot > tau`` is carried out exactly as
    ``pot**2 > tau**2`` in integers; no square root is ever taken.
    """

    variant: ThresholdVariant = ThresholdVariant.STATED
    tau: Fraction | None = None

    def __post_init__(self) -> None:
        if self.variant is ThresholdVariant.CUSTOM:
            if self.tau is None or self.tau <= 0:
                raise ValueError("a custom threshold needs tau > 0")
        elif self.tau is not None:
            raise ValueError(f"variant {self.variant.value} derives tau; do not pass one")

    def exceeds(self, pot: int, max_weight: int, min_start_penalty: int) -> bool:
        """Exact test of ``pot > tau`` for this variant."""
        if self.variant is ThresholdVariant.CUSTOM:
            return pot > self.tau
        if self.variant is ThresholdVariant.STATED:
            return pot * pot * min_start_penalty > max_weight
        return pot * pot > max_weight * min_start_penalty


def exp_queue_top(view: PolicyView, ordering: ExpOrdering = ExpOrdering.POTENTIAL) -> int | None:
    """Id of the highest-ranked active exponential job, or None if there is none."""
    best_id = None
    best_key = None
    for job in view.jobs:
        if job.kind is not JobClass.EXPONENTIAL:
            continue
        if ordering is ExpOrdering.POTENTIAL:
            key = potential(job.value, job.remaining, view.x)
        else:
            key = exp_order_key(job.value, job.remaining, view.x)
        if best_key is None or key > best_key:
            best_id, best_key = job.id, key
    return best_id


def linear_queue_top(view: PolicyView) -> int | None:
    """Id of the heaviest active linear job, or None if there is none."""
    best_id = None
    best_w = None
    for job in view.jobs:
        if job.kind is not JobClass.LINEAR:
            continue
        if best_w is None or job.value > best_w:
            best_id, best_w = job.id, job.value
    return best_id


def naive_choose(view: PolicyView) -> int | None:
    """Process the job with the greatest current penalty.

    Weights and grown start penalties are compared directly. On a tie a
    linear job beats an exponential one, then the lower id wins.
    """
    best = None
    for job in view.jobs:
        if best is None:
            best = job
            continue
        if job.value > best.value or (
            job.value == best.value
            and job.kind is JobClass.LINEAR
            and best.kind is JobClass.EXPONENTIAL
        ):
            best = job
    return None if best is None else best.id


def threshold_choose(
    view: PolicyView,
    config: ThresholdConfig | None = None,
    ordering: ExpOrdering = ExpOrdering.POTENTIAL,
) -> int | None:
    """Run the top exponential job only once its potential clears the cutoff.

    Otherwise the heaviest linear job runs; the exponential top still runs
    when no linear job is active, so the policy never idles while work is
    available.
    """
    config = config or ThresholdConfig()
    top = exp_queue_top(view, ordering)
    if top is None:
        return linear_queue_top(view)
    if view.max_weight is None or view.min_start_penalty is None:
        raise MissingConstants(
            "threshold policy needs the instance max weight and min start penalty"
        )
    top_job = next(j for j in view.jobs if j.id == top)
    pot = potential(top_job.value, top_job.remaining, view.x)
    if config.exceeds(pot, view.max_weight, view.min_start_penalty):
        return top
    linear = linear_queue_top(view)
    return top if linear is None else linear


def expfirst_choose(
    view: PolicyView, ordering: ExpOrdering = ExpOrdering.POTENTIAL
) -> int | None:
    """Always prefer the exponential queue; fall back to the heaviest linear job."""
    top = exp_queue_top(view, ordering)
    if top is not None:
        return top
    return linear_queue_top(view)


def smith_preemptive_choose(view: PolicyView) -> int | None:
    """Run the job minimizing remaining / weight. Linear instances only."""
    best_id = None
    best_key = None
    for job in view.jobs:
        if job.kind is JobClass.EXPONENTIAL:
            raise UnsupportedInstance("smith handles linear jobs only")
        key = Fraction(job.remaining, job.value)
        if best_key is None or key < best_key:
            best_id, best_key = job.id, key
    return best_id


def maxweight_choose(view: PolicyView) -> int | None:
    """Run the heaviest job. Linear instances only."""
    for job in view.jobs:
        if job.kind is JobClass.EXPONENTIAL:
            raise UnsupportedInstance("maxweight handles linear jobs only")
    return linear_queue_top(view)


@dataclass(frozen=True)
class Policy:
    """A named decision function plus what it is entitled to know."""

    name: str
    choose: Callable[[PolicyView], int | None] = field(compare=False)
    needs_constants: bool = False


POLICY_NAMES = ("naive", "threshold", "expfirst", "smith", "maxweight")


def make_policy(
    name: str,
    threshold_config: ThresholdConfig | None = None,
    ordering: ExpOrdering = ExpOrdering.POTENTIAL,
) -> Policy:
    """Build one of the named policies.

    ``threshold_config`` applies to "threshold" only; ``ordering`` applies
    to the exponential queue of "threshold" and "expfirst".
    """
    if name == "naive":
        return Policy("naive", naive_choose)
    if name == "threshold":
        config = threshold_config or ThresholdConfig()
        return Policy(
            "threshold",
            lambda view: threshold_choose(view, config, ordering),
            needs_constants=True,
        )
    if name == "expfirst":
        return Policy("expfirst", lambda view: expfirst_choose(view, ordering))
    if name == "smith":
        return Policy("smith", smith_preemptive_choose)
    if name == "maxweight":
        return Policy("maxweight", maxweight_choose)
    raise ValueError(f"unknown policy {name!r}; pick one of {', '.join(POLICY_NAMES)}")
