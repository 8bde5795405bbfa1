"""Report writers: per-auction CSV, per-scenario summary CSV, text tables.

All CSV output uses RFC-4180-style quoting, UTF-8, a mandatory header row,
and floats rendered with 6 significant digits, so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from .metrics import ScenarioStats, SummaryRow, summary_row

SUMMARY_HEADER = ("strategy", "n_vendors", "seed", "avg_revenue", "fairness", "payment_ratio")
AUCTION_HEADER = (
    "auction_seq",
    "request_id",
    "vendor_id",
    "sp",
    "priority",
    "score",
    "won",
    "payment",
    "fallback",
)


def format_float(value: float) -> str:
    return format(value, ".6g")


def render_summary_csv(rows: list[SummaryRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(SUMMARY_HEADER)
    for row in rows:
        writer.writerow(
            (
                row.strategy,
                row.n_vendors,
                row.seed,
                format_float(row.avg_revenue),
                format_float(row.fairness),
                format_float(row.payment_ratio),
            )
        )
    return out.getvalue()


def render_auctions_csv(stats: ScenarioStats) -> str:
    """One row per participant per auction; blank priority/score for price-only rules."""
    if stats.records is None:
        raise ValueError("scenario stats were aggregated without auction records")
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(AUCTION_HEADER)
    for record in stats.records:
        for vendor_id in record.participants:
            snap = record.snapshots[vendor_id]
            writer.writerow(
                (
                    record.auction_seq,
                    record.request_id,
                    vendor_id,
                    format_float(snap.sp),
                    format_float(snap.priority) if snap.priority is not None else "",
                    format_float(snap.score) if snap.score is not None else "",
                    int(vendor_id == record.winner),
                    format_float(record.payment) if record.payment is not None else "",
                    int(record.fallback),
                )
            )
    return out.getvalue()


def render_tables(rows: list[SummaryRow]) -> str:
    """Per-metric grids of seed-averaged values: vendor counts down, strategies across."""
    strategies = sorted({row.strategy for row in rows})
    vendor_counts = sorted({row.n_vendors for row in rows})
    sections = []
    for metric, title in (
        ("avg_revenue", "Average vendor revenue"),
        ("fairness", "Fairness (share of vendors with at least one win)"),
        ("payment_ratio", "Payment ratio (paid price / maximum offered price)"),
    ):
        lines = [title, "  " + "vendors".rjust(8) + "".join(s.rjust(12) for s in strategies)]
        for count in vendor_counts:
            cells = []
            for strategy in strategies:
                values = [
                    getattr(row, metric)
                    for row in rows
                    if row.strategy == strategy and row.n_vendors == count
                ]
                cells.append(format_float(math.fsum(values) / len(values)) if values else "-")
            lines.append("  " + str(count).rjust(8) + "".join(c.rjust(12) for c in cells))
        sections.append("\n".join(lines))
    return "\n\n".join(sections) + "\n"


def write_summary_csv(rows: list[SummaryRow], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(render_summary_csv(rows), encoding="utf-8", newline="")
    return path

def write_auctions_csv(stats: ScenarioStats, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(render_auctions_csv(stats), encoding="utf-8", newline="")
    return path


def write_tables(rows: list[SummaryRow], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(render_tables(rows), encoding="utf-8")
    return path


def auctions_filename(stats: ScenarioStats) -> str:
    return f"auctions_{stats.strategy.value}_v{stats.n_vendors}_s{stats.seed}.csv"


def emit_report(
    stats_list: list[ScenarioStats],
    out_dir: str | Path,
    fmt: str = "both",
    include_auctions: bool = True,
) -> list[Path]:
    """Write summary CSV, text tables, and per-auction CSVs for the given runs.

    Args:
        stats_list: Scenario results, in the order their rows should appear.
        out_dir: Destination directory, created if missing.
        fmt: "csv", "text", or "both".
        include_auctions: Also write one per-auction CSV per scenario that
            retained its records.

    Returns:
        Paths written, in a deterministic order.
    """
    if fmt not in ("csv", "text", "both"):
        raise ValueError(f"format must be csv, text, or both, got {fmt!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = [summary_row(stats) for stats in stats_list]
    written = []
    if fmt in ("csv", "both"):
        written.append(write_summary_csv(rows, out_dir / "summary.csv"))
        if include_auctions:
            for stats in stats_list:
                if stats.records is not None:
                    written.append(write_auctions_csv(stats, out_dir / auctions_filename(stats)))
    if fmt in ("text", "both"):
        written.append(write_tables(rows, out_dir / "tables.txt"))
    return written
