"""Command-line interface: runs, comparisons, reference tables, selftest."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from .fixedpoint import BigFixed, PrecisionCtx, default_guard, fx_parse, fx_to_string
from .goldens import selftest
from .harness import (
    PAIRINGS,
    TABLE_PRESETS,
    ReferenceIntegrityError,
    Schedule,
    compare,
    reference_pi,
    run,
)
from .methods import MethodId
from .report import TableSpec, render_csv, render_markdown, render_plot_data

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFERENCE = 2


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    methods: list = field(default_factory=list)
    schedule: Schedule | None = None
    working_dp: int = 15
    guard_dp: int | None = None
    fmt: str = "md"
    out: str | None = None
    reference: str | None = None
    thresholds: list | None = None
    table_id: int | None = None
    threads: int | None = None


def parse_schedule_expr(expr: str) -> Schedule:
    """Comma list of `N` or `start:stop:step`, inclusive of stop."""
    points = set()
    for item in expr.split(","):
        item = item.strip()
        if not item:
            raise UsageError(f"empty schedule item in {expr!r}")
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise UsageError(f"range must be start:stop:step, got {item!r}")
            try:
                start, stop, step_ = (int(p) for p in parts)
            except ValueError:
                raise UsageError(f"non-integer range bound in {item!r}")
            if step_ < 1 or stop < start:
                raise UsageError(f"bad range {item!r}")
            points.update(range(start, stop + 1, step_))
        else:
            try:
                points.add(int(item))
            except ValueError:
                raise UsageError(f"non-integer schedule point {item!r}")
    try:
        return Schedule(tuple(sorted(points)))
    except ValueError as e:
        raise UsageError(str(e))


def parse_decimal_exp(s: str) -> BigFixed:
    """Decimal literal with optional exponent, e.g. 0.5 or 1e-3."""
    s = s.strip()
    mant, sep, exp_s = s.partition("e") if "e" in s else s.partition("E")
    try:
        exp = int(exp_s) if sep else 0
        v = fx_parse(mant)
    except ValueError:
        raise UsageError(f"bad decimal literal {s!r}")
    if exp >= v.scale:
        return BigFixed(v.significand * 10 ** (exp - v.scale), 0)
    return BigFixed(v.significand, v.scale - exp)


def _parse_methods(expr: str) -> list:
    if expr in PAIRINGS:
        return list(PAIRINGS[expr])
    methods = []
    for name in expr.split(","):
        name = name.strip()
        try:
            methods.append(MethodId(name))
        except ValueError:
            known = ", ".join(m.value for m in MethodId)
            raise UsageError(f"unknown method {name!r} (known: {known})")
    return methods


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="pibench", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="sample one method over a schedule")
    runp.add_argument("--method", required=True)
    runp.add_argument("--schedule", required=True)
    runp.add_argument("--dp", type=int, default=15)
    runp.add_argument("--guard", type=int, default=None)
    runp.add_argument("--format", dest="fmt", choices=("md", "csv", "plot"), default="md")
    runp.add_argument("--out", default=None)
    runp.add_argument("--reference", default=None, help="override the computed reference value")

    cmp_ = sub.add_parser("compare", help="align several methods on one schedule")
    cmp_.add_argument("--methods", required=True, help="comma list or a pairing preset name")
    cmp_.add_argument("--schedule", default="5:100:5")
    cmp_.add_argument("--thresholds", default=None, help="comma list of abs-error percentages")
    cmp_.add_argument("--dp", type=int, default=15)
    cmp_.add_argument("--guard", type=int, default=None)
    cmp_.add_argument("--format", dest="fmt", choices=("md", "csv", "plot"), default="md")
    cmp_.add_argument("--out", default=None)
    cmp_.add_argument("--threads", type=int, default=None)

    tab = sub.add_parser("table", help="reproduce a published reference table")
    tab.add_argument("--id", type=int, required=True, dest="table_id")
    tab.add_argument("--out", default=None)

    st = sub.add_parser("selftest", help="recompute all reference tables and invariants")
    st.add_argument("--threads", type=int, default=None)
    return p


def parse_args(argv) -> CliConfig:
    ns = _build_parser().parse_args(argv)
    cfg = CliConfig(command=ns.command)
    if ns.command in ("run", "compare"):
        if ns.dp < 1:
            raise UsageError("--dp must be >= 1")
        if ns.guard is not None and ns.guard < 0:
            raise UsageError("--guard must be >= 0")
        cfg.schedule = parse_schedule_expr(ns.schedule)
        cfg.working_dp = ns.dp
        cfg.guard_dp = ns.guard
        cfg.fmt = ns.fmt
        cfg.out = ns.out
    if ns.command == "run":
        cfg.methods = _parse_methods(ns.method)
        if len(cfg.methods) != 1:
            raise UsageError("run takes exactly one --method")
        cfg.reference = ns.reference
    elif ns.command == "compare":
        cfg.methods = _parse_methods(ns.methods)
        if len(cfg.methods) < 2:
            raise UsageError("compare needs at least two methods")
        if ns.thresholds is not None:
            cfg.thresholds = [parse_decimal_exp(t) for t in ns.thresholds.split(",")]
        cfg.threads = ns.threads
    elif ns.command == "table":
        if ns.table_id not in TABLE_PRESETS:
            raise UsageError("--id must be in 1..7")
        cfg.table_id = ns.table_id
        cfg.out = ns.out
    elif ns.command == "selftest":
        cfg.threads = ns.threads
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as f:
            f.write(text)


def _render_records(records, fmt: str, value_dp: int) -> str:
    if fmt == "csv":
        return render_csv(records)
    if fmt == "plot":
        return render_plot_data(records)
    return render_markdown(records, TableSpec(None, value_dp))


def _cmd_run(cfg: CliConfig) -> int:
    guard = cfg.guard_dp
    if guard is None:
        guard = default_guard(cfg.schedule.max_n)
    ctx = PrecisionCtx(cfg.working_dp, guard)
    ref = reference_pi(ctx, cfg.reference)
    records = run(cfg.methods[0], cfg.schedule, ctx, ref)
    _emit(_render_records(records, cfg.fmt, cfg.working_dp), cfg.out)
    return EXIT_OK


def _cmd_compare(cfg: CliConfig) -> int:
    guard = cfg.guard_dp
    if guard is None:
        guard = default_guard(cfg.schedule.max_n)
    ctx = PrecisionCtx(cfg.working_dp, guard)
    table, crossings = compare(
        cfg.methods,
        cfg.schedule,
        ctx,
        tuple(cfg.thresholds) if cfg.thresholds else None,
        threads=cfg.threads,
    )
    flat = [r for m in table.methods for r in table.records[m]]
    text = _render_records(flat, cfg.fmt, cfg.working_dp)
    lines = ["# crossover: first sampled n with abs error below threshold"]
    for m in table.methods:
        for threshold, n in crossings.crossings[m]:
            shown = n if n is not None else "not reached"
            lines.append(
                f"# {m.value} < {fx_to_string(threshold, threshold.scale)}%: {shown}"
            )
    _emit(text + "\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def _cmd_table(cfg: CliConfig) -> int:
    preset = TABLE_PRESETS[cfg.table_id]
    ctx = preset.ctx
    ref = reference_pi(ctx)
    records = []
    for m in preset.methods:
        records.extend(run(m, preset.schedule, ctx, ref))
    text = render_markdown(records, TableSpec.for_table(cfg.table_id))
    _emit(text, cfg.out)
    return EXIT_OK


def _cmd_selftest(cfg: CliConfig) -> int:
    report = selftest(threads=cfg.threads)
    sys.stdout.write(report.text())
    return EXIT_OK if report.ok else 1


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
        handler = {
            "run": _cmd_run,
            "compare": _cmd_compare,
            "table": _cmd_table,
            "selftest": _cmd_selftest,
        }[cfg.command]
        return handler(cfg)
    except UsageError as e:
        print(f"pibench: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ReferenceIntegrityError as e:
        print(f"pibench: reference integrity: {e}", file=sys.stderr)
        return EXIT_REFERENCE


if __name__ == "__main__":
    sys.exit(main())
