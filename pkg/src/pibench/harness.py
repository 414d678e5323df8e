"""Reference value, error metrics, sampling runs and method comparisons."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .fixedpoint import (
    BigFixed,
    PrecisionCtx,
    fx_div,
    fx_mul,
    fx_parse,
    fx_round,
    fx_sub,
    fx_to_string,
    fx_truncate_string,
)
from .methods import (
    ApproximantState,
    MethodId,
    NewtonArcsineState,
    make_state,
)

# 15-decimal-place integrity anchor; every computed or supplied reference
# must reproduce these digits under truncation or the run aborts.
PI_15DP = "3.141592653589793"


class ReferenceIntegrityError(Exception):
    """The reference value failed its 15-digit integrity check."""


@dataclass(frozen=True)
class ReferencePi:
    value: BigFixed
    provenance: str  # "computed" | "user-literal"
    ctx: PrecisionCtx


def _check_prefix(value: BigFixed, what: str) -> None:
    got = fx_truncate_string(value, 15)
    if got != PI_15DP:
        raise ReferenceIntegrityError(
            f"{what} fails the 15-digit integrity check: {got} != {PI_15DP}"
        )


def reference_pi(ctx: PrecisionCtx, literal: str | None = None) -> ReferencePi:
    """Reference value of pi at the context scale.

    Computed mode sums the arcsine series until two successive partial
    sums agree to working_dp + 2 digits, then validates the first 15
    fractional digits against the known constant. Literal mode validates
    and wraps a caller-supplied decimal string.
    """
    if literal is not None:
        v = fx_parse(literal)
        if not (BigFixed(3) < v < BigFixed(4)):
            raise ReferenceIntegrityError(f"reference literal {literal!r} not in (3, 4)")
        _check_prefix(v, f"reference literal {literal!r}")
        if v.scale < ctx.scale:
            v = fx_round(v, ctx.scale)
        return ReferencePi(v, "user-literal", ctx)

    # Stationarity is judged at working_dp + 2, which needs at least that
    # many internal digits regardless of the caller's guard setting.
    inner = ctx
    if inner.guard_dp < 5:
        inner = PrecisionCtx(ctx.working_dp, 5)
    state = NewtonArcsineState(inner)
    agree_dp = ctx.working_dp + 2
    prev = None
    for _ in range(4 * ctx.working_dp + 64):
        state.step()
        cur = state.value()
        if prev is not None and fx_round(cur, agree_dp) == fx_round(prev, agree_dp):
            _check_prefix(cur, "computed reference")
            return ReferencePi(fx_round(cur, ctx.scale), "computed", ctx)
        prev = cur
    raise ReferenceIntegrityError("reference series failed to become stationary")


_HUNDRED = BigFixed(100)
_ONE = BigFixed(1)


def pct_error(x: BigFixed, ref: ReferencePi) -> tuple[BigFixed, BigFixed]:
    """(signed, absolute) percentage error: signed = (1 - x/ref) * 100."""
    ctx = ref.ctx
    signed = fx_mul(fx_sub(_ONE, fx_div(x, ref.value, ctx), ctx), _HUNDRED, ctx)
    return signed, abs(signed)


def digits_correct(x: BigFixed, ref: ReferencePi) -> int:
    """Matching leading fractional digits, both truncated at working_dp."""
    dp = ref.ctx.working_dp
    xs = fx_truncate_string(x, dp)
    rs = fx_truncate_string(ref.value, dp)
    xi, _, xf = xs.partition(".")
    ri, _, rf = rs.partition(".")
    if xi != ri:
        return 0
    count = 0
    for a, b in zip(xf, rf):
        if a != b:
            break
        count += 1
    return count


@dataclass(frozen=True)
class Schedule:
    points: tuple[int, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("schedule must be non-empty")
        if any(n < 0 for n in pts):
            raise ValueError("schedule indices must be non-negative")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("schedule must be strictly increasing")

    def __iter__(self):
        return iter(self.points)

    @property
    def max_n(self) -> int:
        return self.points[-1]


@dataclass(frozen=True)
class RunRecord:
    method: MethodId
    n: int
    value: BigFixed
    signed_err_pct: BigFixed
    abs_err_pct: BigFixed
    digits_correct: int
    elapsed_ns: int
    working_dp: int

    def value_str(self, dp: int) -> str:
        return fx_to_string(self.value, dp)


def run(
    method: MethodId,
    schedule: Schedule,
    ctx: PrecisionCtx,
    ref: ReferencePi | None = None,
) -> list[RunRecord]:
    """One incremental pass, sampling the generator at each scheduled n."""
    method = MethodId(method)
    if ref is None:
        ref = reference_pi(ctx)
    state = make_state(method, ctx)
    if schedule.points[0] < state.min_index:
        raise ValueError(
            f"{method.value} is defined for n >= {state.min_index}"
        )
    records = []
    start = time.perf_counter_ns()
    for target in schedule:
        while state.n < target:
            state.step()
        value = state.value()
        elapsed = time.perf_counter_ns() - start
        signed, absolute = pct_error(value, ref)
        records.append(
            RunRecord(
                method=method,
                n=target,
                value=value,
                signed_err_pct=signed,
                abs_err_pct=absolute,
                digits_correct=digits_correct(value, ref),
                elapsed_ns=elapsed,
                working_dp=ctx.working_dp,
            )
        )
    return records


@dataclass(frozen=True)
class CrossoverReport:
    """Smallest sampled n per method with abs error below each threshold."""

    thresholds: tuple[BigFixed, ...]
    crossings: dict  # method -> list of (threshold, n or None)


@dataclass(frozen=True)
class ComparisonTable:
    methods: tuple[MethodId, ...]
    schedule: Schedule
    records: dict  # method -> list[RunRecord]


# The source study's five pairwise comparisons, addressable by name.
PAIRINGS = {
    "leibniz-vs-newton": (MethodId.LEIBNIZ, MethodId.NEWTON_ARCSINE),
    "viete-vs-eulercf": (MethodId.VIETE, MethodId.EULER_CF),
    "wallis-vs-newton": (MethodId.WALLIS, MethodId.NEWTON_ARCSINE),
    "wallis-vs-zeta2": (MethodId.WALLIS, MethodId.ZETA2),
    "newton-vs-zeta8": (MethodId.NEWTON_ARCSINE, MethodId.ZETA8),
}

DEFAULT_THRESHOLDS = ("1", "0.1", "0.01")


def default_thread_count() -> int:
    raw = os.environ.get("PIBENCH_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n >= 1 else min(4, os.cpu_count() or 1)


def compare(
    methods: list[MethodId],
    schedule: Schedule,
    ctx: PrecisionCtx,
    thresholds: tuple[BigFixed, ...] | None = None,
    threads: int | None = None,
) -> tuple[ComparisonTable, CrossoverReport]:
    methods = tuple(MethodId(m) for m in methods)
    if len(methods) < 2:
        raise ValueError("compare needs at least two methods")
    if thresholds is None:
        thresholds = tuple(fx_parse(t) for t in DEFAULT_THRESHOLDS)
    thresholds = tuple(thresholds)
    if not thresholds or any(
        not (b < a) for a, b in zip(thresholds, thresholds[1:])
    ):
        raise ValueError("thresholds must be strictly decreasing")
    if any(t.significand <= 0 for t in thresholds):
        raise ValueError("thresholds must be positive")

    ref = reference_pi(ctx)
    workers = threads if threads else default_thread_count()
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = {m: pool.submit(run, m, schedule, ctx, ref) for m in methods}
        records = {m: f.result() for m, f in futures.items()}

    crossings = {}
    for m in methods:
        per_method = []
        for t in thresholds:
            hit = next((r.n for r in records[m] if r.abs_err_pct < t), None)
            per_method.append((t, hit))
        crossings[m] = per_method
    table = ComparisonTable(methods, schedule, records)
    return table, CrossoverReport(thresholds, crossings)


@dataclass(frozen=True)
class TimeToDigits:
    reached: bool
    n: int
    elapsed_ns: int


def time_to_digits(
    method: MethodId,
    target_digits: int,
    ctx: PrecisionCtx,
    step_budget: int,
    ref: ReferencePi | None = None,
) -> TimeToDigits:
    """Advance a generator until target_digits are correct or budget runs out."""
    if target_digits > ctx.working_dp:
        raise ValueError("target_digits must be <= working_dp")
    if ref is None:
        ref = reference_pi(ctx)
    state = make_state(MethodId(method), ctx)
    start = time.perf_counter_ns()
    while state.n < step_budget:
        state.step()
        if state.n < state.min_index:
            continue
        if digits_correct(state.value(), ref) >= target_digits:
            return TimeToDigits(True, state.n, time.perf_counter_ns() - start)
    return TimeToDigits(False, state.n, time.perf_counter_ns() - start)


# Published-table presets: schedules, methods and precision per table id.
@dataclass(frozen=True)
class TablePreset:
    table_id: int
    methods: tuple[MethodId, ...]
    schedule: Schedule
    working_dp: int
    guard_dp: int
    value_dp: int
    err_dp: int = 5

    @property
    def ctx(self) -> PrecisionCtx:
        return PrecisionCtx(self.working_dp, self.guard_dp)


_SCHED_LARGE = Schedule(tuple(range(5, 101, 5)) + (10**3, 10**4, 10**5, 10**6, 10**7))
_SCHED_SMALL = Schedule(tuple(range(1, 11)) + tuple(range(15, 101, 5)))
_SCHED_MID = Schedule(tuple(range(5, 101, 5)))

TABLE_PRESETS = {
    1: TablePreset(1, (MethodId.WALLIS,), _SCHED_LARGE, 15, 17, 15),
    2: TablePreset(2, (MethodId.LEIBNIZ,), _SCHED_LARGE, 15, 17, 15),
    3: TablePreset(3, (MethodId.NEWTON_ARCSINE,), _SCHED_LARGE, 15, 17, 15),
    4: TablePreset(4, (MethodId.EULER_CF,), _SCHED_SMALL, 15, 12, 15),
    5: TablePreset(5, (MethodId.VIETE,), _SCHED_SMALL, 15, 12, 15),
    6: TablePreset(
        6,
        (MethodId.ZETA2, MethodId.ZETA4, MethodId.ZETA6, MethodId.ZETA8),
        _SCHED_MID,
        14,
        12,
        14,
    ),
    7: TablePreset(
        7,
        (MethodId.ZETA2, MethodId.ZETA4, MethodId.ZETA6, MethodId.ZETA8),
        _SCHED_MID,
        14,
        12,
        14,
    ),
}
