"""Command-line entry points.

Subcommands: gen, simulate, oracle, compare, sweep. Exit codes: 0 on
success, 1 on a usage error, 2 when an instance is malformed, infeasible,
or too large for the oracle budget, 3 when an execution invariant is
violated (which indicates a bug, not bad input).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .experiments import compare, report_csv, sweep, worst_case
from .instances import (
    Family,
    GeneratorSpec,
    InstanceFormatError,
    generate,
    parse_instance,
    serialize_instance,
)
from .model import Instance, SchedulingError
from .oracle import BudgetExceeded, SearchLimits, optimal_cost
from .policies import (
    POLICY_NAMES,
    Policy,
    ThresholdConfig,
    ThresholdVariant,
    UnsupportedInstance,
    make_policy,
)
from .sim import run_policy, trace_to_csv


class CliUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); we want exit 1
        raise CliUsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="schedlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--family", required=True, choices=[f.value for f in Family])
    gen.add_argument(
        "-p",
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="family parameter, repeatable (for example -p M=16 -p x=2)",
    )
    gen.add_argument("--seed", type=int, default=None, help="seed (random family only)")
    gen.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    gen.set_defaults(func=_cmd_gen)

    simulate = sub.add_parser("simulate", help="run one policy on an instance")
    simulate.add_argument("--instance", required=True)
    simulate.add_argument("--policy", required=True, choices=POLICY_NAMES)
    simulate.add_argument(
        "--threshold-variant",
        default="stated",
        choices=[v.value for v in ThresholdVariant if v is not ThresholdVariant.CUSTOM],
    )
    simulate.add_argument("--trace", default=None, help="write the slot-by-slot trace CSV here")
    simulate.set_defaults(func=_cmd_simulate)

    oracle = sub.add_parser("oracle", help="exact optimum of a small instance")
    oracle.add_argument("--instance", required=True)
    oracle.add_argument("--budget", type=int, default=SearchLimits().state_budget)
    oracle.set_defaults(func=_cmd_oracle)

    cmp_ = sub.add_parser("compare", help="policies versus the oracle")
    cmp_.add_argument("--instance", required=True)
    cmp_.add_argument("--policies", required=True, help="comma-separated policy names")
    cmp_.add_argument("--budget", type=int, default=SearchLimits().state_budget)
    cmp_.add_argument("--threshold-variant", default="stated", choices=["stated", "derived"])
    cmp_.set_defaults(func=_cmd_compare)

    sweep_ = sub.add_parser("sweep", help="compare over a parameter grid")
    sweep_.add_argument("--family", required=True, choices=[f.value for f in Family])
    sweep_.add_argument(
        "--grid",
        required=True,
        help='semicolon-separated KEY=V1,V2 lists, for example "M=16;x=2;s=1;T=8,12,16,20"',
    )
    sweep_.add_argument("--seeds", default=None, help="START:STOP seed range (random family)")
    sweep_.add_argument("--policies", required=True, help="comma-separated policy names")
    sweep_.add_argument("--budget", type=int, default=SearchLimits().state_budget)
    sweep_.add_argument("--threshold-variant", default="stated", choices=["stated", "derived"])
    sweep_.add_argument("--report", default=None, help="output CSV file (default stdout)")
    sweep_.set_defaults(func=_cmd_sweep)

    return parser


def _parse_params(pairs: Sequence[str]) -> dict[str, int | str]:
    params: dict[str, int | str] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise CliUsageError(f"parameter {pair!r} is not KEY=VALUE")
        try:
            params[key] = int(value)
        except ValueError:
            params[key] = value
    return params


def _parse_policies(text: str, variant: str = "stated") -> list[Policy]:
    config = ThresholdConfig(ThresholdVariant(variant))
    policies = []
    for name in text.split(","):
        name = name.strip()
        if name not in POLICY_NAMES:
            raise CliUsageError(f"unknown policy {name!r}; pick from {', '.join(POLICY_NAMES)}")
        policies.append(make_policy(name, threshold_config=config))
    if not policies:
        raise CliUsageError("at least one policy is required")
    return policies


def _load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_instance(handle.read())
    except OSError as err:
        raise CliUsageError(f"cannot read {path}: {err}") from err


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_gen(args: argparse.Namespace) -> int:
    family = Family(args.family)
    if family is Family.RANDOM and args.seed is None:
        raise CliUsageError("the random family needs --seed")
    if family is not Family.RANDOM and args.seed is not None:
        raise CliUsageError(f"--seed does not apply to the {family.value} family")
    spec = GeneratorSpec.of(family, seed=args.seed, **_parse_params(args.param))
    _write_text(args.out, serialize_instance(generate(spec)))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    policy = make_policy(
        args.policy, threshold_config=ThresholdConfig(ThresholdVariant(args.threshold_variant))
    )
    trace, report = run_policy(instance, policy)
    print(f"instance {instance.fingerprint()} n={instance.n} x={instance.x}")
    print(f"policy {policy.name}")
    print(f"total {report.total}")
    completions = _completions_from_trace(instance, trace)
    for i in range(instance.n):
        job = instance.job(i)
        print(f"job {i} class={job.kind.value} C={completions[i]} penalty={report.per_job[i]}")
    if args.trace is not None:
        _write_text(args.trace, trace_to_csv(trace))
    return 0


def _completions_from_trace(instance: Instance, trace) -> dict[int, int]:
    remaining = {i: instance.job(i).work for i in range(instance.n)}
    completions: dict[int, int] = {}
    for slot, decision in trace.decisions:
        if decision is None:
            continue
        remaining[decision] -= 1
        if remaining[decision] == 0:
            completions[decision] = slot + 1
    return completions


def _cmd_oracle(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    result = optimal_cost(instance, SearchLimits(state_budget=args.budget))
    print(f"instance {instance.fingerprint()} n={instance.n} x={instance.x}")
    print(f"optimal {result.total}")
    print(f"states {result.states_explored}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    policies = _parse_policies(args.policies, args.threshold_variant)
    report = compare(instance, policies, SearchLimits(state_budget=args.budget))
    print(f"instance {report.instance_id} n={instance.n} x={instance.x}")
    if report.oracle_total is None:
        print(f"oracle unavailable: {report.oracle_error}")
    else:
        print(f"oracle {report.oracle_total}")
    for outcome in report.outcomes:
        line = f"policy {outcome.policy} total {outcome.total}"
        if outcome.ratio is not None:
            line += f" ratio {outcome.ratio.numerator}/{outcome.ratio.denominator}"
        if outcome.bound is not None:
            value = outcome.bound.value
            line += f" bound {outcome.bound.name}={value.numerator}/{value.denominator}"
            if outcome.bound.passed is not None:
                line += " pass" if outcome.bound.passed else " FAIL"
        print(line)
    return 0


def _parse_grid(text: str) -> list[dict[str, int | str]]:
    """Expand "a=1,2;b=x" into the cartesian product of the listed values.

    Keys keep declaration order and the last key varies fastest.
    """
    keys: list[str] = []
    choices: list[list[int | str]] = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, values = part.partition("=")
        if not sep or not key:
            raise CliUsageError(f"grid entry {part!r} is not KEY=V1,V2,...")
        parsed: list[int | str] = []
        for raw in values.split(","):
            try:
                parsed.append(int(raw))
            except ValueError:
                parsed.append(raw)
        keys.append(key)
        choices.append(parsed)
    if not keys:
        raise CliUsageError("the grid is empty")
    points: list[dict[str, int | str]] = [{}]
    for key, values in zip(keys, choices):
        points = [dict(point, **{key: value}) for point in points for value in values]
    return points


def _parse_seed_range(text: str) -> range:
    start, sep, stop = text.partition(":")
    if not sep:
        raise CliUsageError(f"seed range {text!r} is not START:STOP")
    try:
        return range(int(start), int(stop))
    except ValueError as err:
        raise CliUsageError(f"seed range {text!r} is not numeric") from err


def _cmd_sweep(args: argparse.Namespace) -> int:
    family = Family(args.family)
    policies = _parse_policies(args.policies, args.threshold_variant)
    points = _parse_grid(args.grid)
    specs = []
    if family is Family.RANDOM:
        if args.seeds is None:
            raise CliUsageError("the random family needs --seeds START:STOP")
        seeds = _parse_seed_range(args.seeds)
        for point in points:
            specs.extend(GeneratorSpec.of(family, seed=seed, **point) for seed in seeds)
    else:
        if args.seeds is not None:
            raise CliUsageError(f"--seeds does not apply to the {family.value} family")
        specs = [GeneratorSpec.of(family, **point) for point in points]
    reports = sweep(specs, policies, SearchLimits(state_budget=args.budget))
    _write_text(args.report, report_csv(reports))
    if args.report is not None:
        for policy, (ratio, instance_id) in sorted(worst_case(reports).items()):
            print(f"worst {policy} ratio {ratio.numerator}/{ratio.denominator} on {instance_id}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.func(args)
    except CliUsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except (InstanceFormatError, BudgetExceeded, UnsupportedInstance, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SchedulingError as err:
        print(f"invariant violation: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
