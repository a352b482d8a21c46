"""Instance families, a reproducible random generator, and the JSON format.

The on-disk format is a single JSON object::

    {"x": 2, "jobs": [{"id": 0, "class": "linear", "r": 0, "t": 4, "w": 16},
                      {"id": 1, "class": "exp",    "r": 0, "t": 12, "s": 1}]}

Linear jobs carry ``w``, exponential jobs carry ``s``; every number is an
arbitrary-precision decimal integer; unknown keys are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from .model import Instance, JobSpec, SchedulingError, exp_job, linear_job

_MASK64 = (1 << 64) - 1


class InstanceFormatError(SchedulingError):
    """The given text is not a valid instance document."""


class SplitMix64:
    """SplitMix64 pseudo-random stream.

    A tiny, widely documented 64-bit generator: the state advances by the
    golden-gamma constant and each output is a finalizing xor-shift mix of
    the state. It is implemented here in full (rather than reaching for a
    library RNG) so that a seed pins the same instance bit-for-bit on any
    platform and Python version.
    """

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi]; the modulo bias is below span / 2**64."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)


class Family(Enum):
    NAIVE_LB = "naive-lb"
    IDENTICAL_EXP = "identical-exp"
    CASE3 = "case3"
    RANDOM = "random"


@dataclass(frozen=True)
class GeneratorSpec:
    """One fully determined generator invocation.

    ``params`` is stored as a sorted tuple of (name, value) pairs so specs
    hash, compare, and print canonically. ``seed`` applies to the random
    family only.
    """

    family: Family
    params: tuple[tuple[str, int | str], ...] = ()
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(sorted(dict(self.params).items())))

    @classmethod
    def of(cls, family: Family | str, seed: int | None = None, **params: int | str) -> "GeneratorSpec":
        if isinstance(family, str):
            family = Family(family)
        return cls(family, tuple(params.items()), seed)

    def param_dict(self) -> dict[str, int | str]:
        return dict(self.params)

    def instance_id(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        if self.seed is not None:
            inner = f"{inner},seed={self.seed}" if inner else f"seed={self.seed}"
        return f"{self.family.value}[{inner}]"


def _exact_power_log(x: int, numerator: int, denominator: int) -> int | None:
    """log_x(numerator/denominator) when that is an exact integer power, else None."""
    if numerator % denominator:
        return None
    q = numerator // denominator
    k = 0
    power = 1
    while power < q:
        power *= x
        k += 1
    return k if power == q else None


def gen_naive_lb(M: int, x: int, s: int, T: int) -> Instance:
    """Two-job family on which the greatest-penalty rule loses badly.

    One linear job of weight ``M`` and work ``log_x(M/s)`` next to one
    exponential job of start penalty ``s`` and work ``T``. ``M`` must be
    ``s`` times a positive power of ``x`` and ``T`` must exceed that log.
    """
    if x < 2 or s < 1:
        raise ValueError("need x >= 2 and s >= 1")
    k = _exact_power_log(x, M, s)
    if k is None or k < 1:
        raise ValueError(f"M must be s times a positive power of x, got M={M}, s={s}, x={x}")
    if T <= k:
        raise ValueError(f"T must exceed log_x(M/s) = {k}, got {T}")
    return Instance(x, (linear_job(0, 0, k, M), exp_job(1, 0, T, s)))


def gen_identical_exp(n: int, s: int, t: int, x: int) -> Instance:
    """``n`` exponential clones released together; the round-robin showcase."""
    if n < 1:
        raise ValueError(f"need at least one job, got n={n}")
    return Instance(x, tuple(exp_job(i, 0, t, s) for i in range(n)))


def gen_case3(k: int, M: int, s: int, x: int, alpha: int) -> Instance:
    """One exponential job long enough to stall ``k`` unit linear jobs of weight ``M``.

    The exponential work is ``log_x(M*k/s) + alpha``, which must be
    integral, so ``M*k`` must be ``s`` times a power of ``x``.
    """
    if k < 1:
        raise ValueError(f"need at least one linear job, got k={k}")
    if M < 1 or s < 1 or x < 2:
        raise ValueError("need M >= 1, s >= 1, x >= 2")
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    log = _exact_power_log(x, M * k, s)
    if log is None:
        raise ValueError(f"M*k must be s times a power of x, got M={M}, k={k}, s={s}, x={x}")
    if log + alpha < 1:
        raise ValueError("the exponential job needs at least one slot of work; raise alpha")
    jobs = [exp_job(0, 0, log + alpha, s)]
    jobs.extend(linear_job(i, 0, 1, M) for i in range(1, k + 1))
    return Instance(x, tuple(jobs))


def gen_random(
    seed: int,
    n_max: int,
    t_max: int,
    r_max: int,
    v_max: int,
    x: int = 2,
    mix: str = "mixed",
) -> Instance:
    """Seeded random instance drawn from a SplitMix64 stream.

    Draw order is fixed and documented: first ``n`` (uniform in
    [2, n_max] for mixed instances, [1, n_max] otherwise), then one class
    bit per job for the mixed mode (even next_u64 means linear), then per
    job its release in [0, r_max], work in [1, t_max], and value in
    [1, v_max]. A mixed draw that comes out single-class has its last
    job's class flipped so both classes are always present.
    """
    if mix not in ("mixed", "linear", "exp"):
        raise ValueError(f"mix must be mixed, linear, or exp, got {mix!r}")
    if mix == "mixed" and n_max < 2:
        raise ValueError("a mixed instance needs n_max >= 2")
    if n_max < 1 or t_max < 1 or v_max < 1 or r_max < 0 or x < 2:
        raise ValueError("need n_max, t_max, v_max >= 1, r_max >= 0, x >= 2")
    rng = SplitMix64(seed)
    n = rng.randint(2 if mix == "mixed" else 1, n_max)
    if mix == "mixed":
        linear_flags = [rng.next_u64() % 2 == 0 for _ in range(n)]
        if all(linear_flags):
            linear_flags[-1] = False
        elif not any(linear_flags):
            linear_flags[-1] = True
    else:
        linear_flags = [mix == "linear"] * n
    jobs = []
    for i, is_linear in enumerate(linear_flags):
        release = rng.randint(0, r_max)
        work = rng.randint(1, t_max)
        value = rng.randint(1, v_max)
        if is_linear:
            jobs.append(linear_job(i, release, work, value))
        else:
            jobs.append(exp_job(i, release, work, value))
    return Instance(x, tuple(jobs))


def generate(spec: GeneratorSpec) -> Instance:
    """Materialize a :class:`GeneratorSpec`, validating its parameter names."""
    params = spec.param_dict()
    expected = {
        Family.NAIVE_LB: {"M", "x", "s", "T"},
        Family.IDENTICAL_EXP: {"n", "s", "t", "x"},
        Family.CASE3: {"k", "M", "s", "x", "alpha"},
        Family.RANDOM: {"n_max", "t_max", "r_max", "v_max", "x", "mix"},
    }[spec.family]
    optional = {"mix", "x"} if spec.family is Family.RANDOM else set()
    unknown = set(params) - expected
    missing = expected - optional - set(params)
    if unknown or missing:
        raise ValueError(
            f"{spec.family.value}: unknown params {sorted(unknown)}, missing {sorted(missing)}"
        )
    if spec.family is Family.RANDOM:
        if spec.seed is None:
            raise ValueError("the random family needs a seed")
        kwargs = {k: (str(v) if k == "mix" else int(v)) for k, v in params.items()}
        return gen_random(seed=spec.seed, **kwargs)  # type: ignore[arg-type]
    if spec.seed is not None:
        raise ValueError(f"{spec.family.value} is deterministic; a seed does not apply")
    ints = {k: int(v) for k, v in params.items()}
    if spec.family is Family.NAIVE_LB:
        return gen_naive_lb(**ints)
    if spec.family is Family.IDENTICAL_EXP:
        return gen_identical_exp(**ints)
    return gen_case3(**ints)


def serialize_instance(instance: Instance) -> str:
    """Canonical JSON text for an instance; parse_instance inverts it exactly."""
    jobs = []
    for job in instance.jobs:
        entry: dict[str, Any] = {
            "id": job.id,
            "class": job.kind.value,
            "r": job.release,
            "t": job.work,
        }
        if job.is_linear:
            entry["w"] = job.weight
        else:
            entry["s"] = job.start_penalty
        jobs.append(entry)
    return json.dumps({"x": instance.x, "jobs": jobs}, indent=2) + "\n"


def _require_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceFormatError(f"{where} must be an integer, got {value!r}")
    return value


def parse_instance(text: str) -> Instance:
    """Parse and validate the JSON instance format; reject anything off-schema."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise InstanceFormatError(f"not valid JSON: {err}") from err
    if not isinstance(doc, dict) or set(doc) != {"x", "jobs"}:
        raise InstanceFormatError('the top level must be an object with exactly "x" and "jobs"')
    x = _require_int(doc["x"], '"x"')
    if not isinstance(doc["jobs"], list):
        raise InstanceFormatError('"jobs" must be a list')
    jobs: list[JobSpec] = []
    for pos, entry in enumerate(doc["jobs"]):
        where = f"jobs[{pos}]"
        if not isinstance(entry, dict):
            raise InstanceFormatError(f"{where} must be an object")
        klass = entry.get("class")
        if klass == "linear":
            expected = {"id", "class", "r", "t", "w"}
        elif klass == "exp":
            expected = {"id", "class", "r", "t", "s"}
        else:
            raise InstanceFormatError(f'{where}: "class" must be "linear" or "exp"')
        if set(entry) != expected:
            raise InstanceFormatError(
                f"{where}: keys must be exactly {sorted(expected)}, got {sorted(entry)}"
            )
        job_id = _require_int(entry["id"], f"{where}.id")
        release = _require_int(entry["r"], f"{where}.r")
        work = _require_int(entry["t"], f"{where}.t")
        try:
            if klass == "linear":
                jobs.append(linear_job(job_id, release, work, _require_int(entry["w"], f"{where}.w")))
            else:
                jobs.append(exp_job(job_id, release, work, _require_int(entry["s"], f"{where}.s")))
        except ValueError as err:
            raise InstanceFormatError(f"{where}: {err}") from err
    try:
        return Instance(x, tuple(jobs))
    except ValueError as err:
        raise InstanceFormatError(str(err)) from err
