"""Rendering of run results: Markdown tables, CSV, plot-ready columns."""

from __future__ import annotations

from dataclasses import dataclass

from .fixedpoint import fx_parse, fx_to_string
from .harness import RunRecord
from .methods import MethodId

CSV_HEADER = "method,n,value,signed_err_pct,abs_err_pct,digits_correct,elapsed_ns"
_ERR_DP = 5


class ReportShapeError(ValueError):
    """Records do not match the shape the table spec requires."""


@dataclass(frozen=True)
class TableSpec:
    """Layout parameters for a rendered table.

    table_id 1..7 selects a published-reference layout (1-5 single
    method with an error column, 6 multi-method values, 7 multi-method
    errors); None is a generic layout for arbitrary method sets.
    """

    table_id: int | None
    value_dp: int
    err_dp: int = _ERR_DP

    @classmethod
    def for_table(cls, table_id: int) -> "TableSpec":
        if table_id not in range(1, 8):
            raise ReportShapeError(f"no published table {table_id}")
        return cls(table_id, 14 if table_id in (6, 7) else 15)


def _group(records: list[RunRecord]) -> dict[MethodId, list[RunRecord]]:
    by_method: dict[MethodId, list[RunRecord]] = {}
    for r in records:
        by_method.setdefault(r.method, []).append(r)
    return by_method


def render_markdown(records: list[RunRecord], spec: TableSpec) -> str:
    by_method = _group(records)
    if not by_method:
        raise ReportShapeError("no records to render")

    tid = spec.table_id
    if tid in (1, 2, 3, 4, 5):
        if len(by_method) != 1:
            raise ReportShapeError(f"table {tid} takes exactly one method")
        (method, recs), = by_method.items()
        lines = [f"| n | {method.value} | Error (%) |", "| --- | --- | --- |"]
        for r in recs:
            lines.append(
                f"| {r.n} | {r.value_str(spec.value_dp)} |"
                f" {fx_to_string(r.abs_err_pct, spec.err_dp)} |"
            )
        return "\n".join(lines) + "\n"

    if tid in (6, 7):
        methods = [MethodId.ZETA2, MethodId.ZETA4, MethodId.ZETA6, MethodId.ZETA8]
        if sorted(by_method) != sorted(methods):
            raise ReportShapeError(f"table {tid} takes the four zeta methods")
        ns = [r.n for r in by_method[methods[0]]]
        for m in methods[1:]:
            if [r.n for r in by_method[m]] != ns:
                raise ReportShapeError("method schedules are not aligned")
        head = "| n | " + " | ".join(m.value for m in methods) + " |"
        lines = [head, "| --- |" + " --- |" * len(methods)]
        for i, n in enumerate(ns):
            if tid == 6:
                cells = [by_method[m][i].value_str(spec.value_dp) for m in methods]
            else:
                cells = [
                    fx_to_string(by_method[m][i].abs_err_pct, spec.err_dp)
                    for m in methods
                ]
            lines.append(f"| {n} | " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"

    # Generic layout: one value and one error column per method.
    methods = sorted(by_method, key=lambda m: m.value)
    ns = [r.n for r in by_method[methods[0]]]
    for m in methods[1:]:
        if [r.n for r in by_method[m]] != ns:
            raise ReportShapeError("method schedules are not aligned")
    head = "| n |"
    for m in methods:
        head += f" {m.value} | {m.value} err (%) |"
    lines = [head, "| --- |" + " --- | --- |" * len(methods)]
    for i, n in enumerate(ns):
        row = f"| {n} |"
        for m in methods:
            r = by_method[m][i]
            row += (
                f" {r.value_str(spec.value_dp)} |"
                f" {fx_to_string(r.abs_err_pct, spec.err_dp)} |"
            )
        lines.append(row)
    return "\n".join(lines) + "\n"


def render_csv(records: list[RunRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.method.value},{r.n},{r.value_str(r.working_dp)},"
            f"{fx_to_string(r.signed_err_pct, _ERR_DP)},"
            f"{fx_to_string(r.abs_err_pct, _ERR_DP)},"
            f"{r.digits_correct},{r.elapsed_ns}"
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[RunRecord]:
    """Inverse of render_csv at the printed precision."""
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or malformed CSV header")
    records = []
    for ln in lines[1:]:
        method, n, value, signed, absolute, digits, elapsed = ln.split(",")
        v = fx_parse(value)
        records.append(
            RunRecord(
                method=MethodId(method),
                n=int(n),
                value=v,
                signed_err_pct=fx_parse(signed),
                abs_err_pct=fx_parse(absolute),
                digits_correct=int(digits),
                elapsed_ns=int(elapsed),
                working_dp=v.scale,
            )
        )
    return records


def render_plot_data(records: list[RunRecord]) -> str:
    """Per-method (n, y) column blocks for value and error series."""
    if not records:
        return ""
    blocks = []
    for method, recs in _group(records).items():
        for series, fmt in (
            ("value", lambda r: r.value_str(r.working_dp)),
            ("abs_err_pct", lambda r: fx_to_string(r.abs_err_pct, _ERR_DP)),
            ("signed_err_pct", lambda r: fx_to_string(r.signed_err_pct, _ERR_DP)),
        ):
            lines = [f"# {method.value} {series}"]
            lines.extend(f"{r.n} {fmt(r)}" for r in recs)
            blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
