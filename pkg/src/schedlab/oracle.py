"""Exact offline optimum for small instances.

The optimum is found by exhaustive search over per-slot decisions with
memoization on the state (clock, remaining work vector). The searched
space is the full preemptive decision space: any released incomplete job
may occupy any slot, and the machine never idles while released work
exists (idling can only delay completions, so no optimum is lost).

Instances must be small: the search refuses upfront when
``horizon * prod(work_i + 1)`` exceeds the configured state budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .model import Instance, SchedulingError, completion_penalty, current_penalty, potential
from .policies import UnsupportedInstance
from .sim import Trace, penalty_of_trace

_State = tuple[int, tuple[int, ...]]
_Move = tuple[int, tuple[int, ...], int, int | None]  # clock, remaining, edge cost, choice


class BudgetExceeded(SchedulingError):
    """The instance's state space is too large for the configured budget."""


@dataclass(frozen=True)
class SearchLimits:
    state_budget: int = 10_000_000


@dataclass(frozen=True)
class OracleResult:
    total: int
    trace: Trace
    states_explored: int


def _state_bound(instance: Instance) -> int:
    bound = instance.horizon
    for job in instance.jobs:
        bound *= job.work + 1
    return bound


def optimal_cost(instance: Instance, limits: SearchLimits | None = None) -> OracleResult:
    """Minimum total penalty over every feasible preemptive schedule.

    Returns one optimal trace; ties are broken deterministically (lowest
    job id first at every state, idling only when nothing is released).
    """
    limits = limits or SearchLimits()
    bound = _state_bound(instance)
    if bound > limits.state_budget:
        raise BudgetExceeded(
            f"instance needs up to {bound} search states, budget is {limits.state_budget}"
        )

    n = instance.n
    x = instance.x
    releases = tuple(instance.job(i).release for i in range(n))

    def moves(clock: int, remaining: tuple[int, ...]) -> Iterator[_Move]:
        active = [i for i in range(n) if remaining[i] and releases[i] <= clock]
        if not active:
            # Nothing released: jump straight to the next release.
            nxt = min(releases[i] for i in range(n) if remaining[i])
            yield nxt, remaining, 0, None
            return
        for i in active:
            child = remaining[:i] + (remaining[i] - 1,) + remaining[i + 1 :]
            edge = 0
            if child[i] == 0:
                edge = completion_penalty(instance.job(i), clock + 1, x)
            yield clock + 1, child, edge, i

    # Explicit-stack memoized depth-first search; recursion would hit the
    # interpreter limit on long horizons.
    memo: dict[_State, tuple[int, int | None]] = {}
    start: _State = (0, tuple(instance.job(i).work for i in range(n)))
    stack: list[_State] = [start]
    while stack:
        clock, remaining = stack[-1]
        if (clock, remaining) in memo:
            stack.pop()
            continue
        pending = [
            (c, r)
            for c, r, _, _ in moves(clock, remaining)
            if any(r) and (c, r) not in memo
        ]
        if pending:
            stack.extend(pending)
            continue
        best: int | None = None
        choice: int | None = None
        for c, r, edge, move in moves(clock, remaining):
            cost = edge + (memo[(c, r)][0] if any(r) else 0)
            if best is None or cost < best:
                best, choice = cost, move
        memo[(clock, remaining)] = (best, choice)
        stack.pop()

    decisions: list[tuple[int, int | None]] = []
    clock, remaining = start
    while any(remaining):
        _, choice = memo[(clock, remaining)]
        if choice is None:
            nxt = min(releases[i] for i in range(n) if remaining[i])
            decisions.extend((slot, None) for slot in range(clock, nxt))
            clock = nxt
            continue
        decisions.append((clock, choice))
        remaining = remaining[:choice] + (remaining[choice] - 1,) + remaining[choice + 1 :]
        clock += 1

    trace = Trace(instance.fingerprint(), tuple(decisions))
    return OracleResult(total=memo[start][0], trace=trace, states_explored=len(memo))


def sequence_cost(instance: Instance, order: Sequence[int]) -> int:
    """Total penalty of running the given jobs non-preemptively in order.

    The machine waits when the next job in the order is not yet released.
    """
    clock = 0
    cost = 0
    for i in order:
        job = instance.job(i)
        clock = max(clock, job.release) + job.work
        cost += completion_penalty(job, clock, instance.x)
    return cost


def best_permutation_cost(instance: Instance) -> tuple[tuple[int, ...], int]:
    """Cheapest non-preemptive order of a small same-release instance.

    Tries all n! orders and returns the first best one in lexicographic id
    order together with its exact cost. Requires a common release and
    n <= 8.
    """
    if len({job.release for job in instance.jobs}) != 1:
        raise UnsupportedInstance("permutation search needs a common release")
    if instance.n > 8:
        raise UnsupportedInstance(f"permutation search is capped at 8 jobs, got {instance.n}")
    best_order: tuple[int, ...] | None = None
    best_cost: int | None = None
    for order in itertools.permutations(range(instance.n)):
        cost = sequence_cost(instance, order)
        if best_cost is None or cost < best_cost:
            best_order, best_cost = order, cost
    return best_order, best_cost


def max_potential_series(instance: Instance, trace: Trace) -> list[int]:
    """Per-slot maximum potential among released incomplete jobs.

    Defined for exponential-only instances. The value at a slot describes
    the state at the start of that slot, before the slot's processing;
    slots where no job is released contribute 0.
    """
    if instance.has_linear:
        raise UnsupportedInstance("potential series is defined for exponential-only instances")
    penalty_of_trace(instance, trace)  # full validation first
    x = instance.x
    remaining = [instance.job(i).work for i in range(instance.n)]
    series: list[int] = []
    for slot, decision in trace.decisions:
        pots = [
            potential(current_penalty(instance.job(i), slot, x), remaining[i], x)
            for i in range(instance.n)
            if remaining[i] and instance.job(i).release <= slot
        ]
        series.append(max(pots, default=0))
        if decision is not None:
            remaining[decision] -= 1
    return series
