"""Command-line entry point: seeded scenario runs and sweeps with report output.

Exit codes: 0 on success, 1 on a validation error (bad flag or config
value), 2 on a runtime failure. A failed sweep keeps the outputs of every
completed cell and lists them in MANIFEST.txt.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .config import ScenarioConfig, load_config, parse_strategy
from .engine import run_scenario
from .metrics import SummaryRow, summary_row
from .reporting import (
    auctions_filename,
    render_tables,
    write_auctions_csv,
    write_summary_csv,
    write_tables,
)
from .strategies import StrategyKind

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

DEFAULT_SWEEP_VENDORS = (4, 6, 8, 12)
DEFAULT_SWEEP_SEEDS = tuple(range(1, 21))


class CliError(Exception):
    """Invalid command line or configuration; maps to exit code 1."""


@dataclass(frozen=True)
class RunSpec:
    """A validated set of scenario cells plus output options."""

    base: ScenarioConfig
    strategies: tuple[StrategyKind, ...]
    vendor_counts: tuple[int, ...]
    seeds: tuple[int, ...]
    out_dir: Path
    fmt: str
    export_auctions: bool

    @property
    def cells(self) -> list[tuple[StrategyKind, int, int]]:
        return [
            (strategy, n_vendors, seed)
            for strategy in self.strategies
            for n_vendors in self.vendor_counts
            for seed in self.seeds
        ]

    def cell_config(self, strategy: StrategyKind, n_vendors: int, seed: int) -> ScenarioConfig:
        return replace(self.base, strategy=strategy, n_vendors=n_vendors, seed=seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairmarket",
        description="Deterministic reverse-auction market simulator and metrics harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a single scenario cell")
    _add_common(run)
    run.add_argument("--strategy", help="allocation strategy: mpra, cdara, or icaa")
    run.add_argument("--seed", type=int, help="scenario seed")
    run.add_argument("--vendors", help="number of vendors")
    run.add_argument(
        "--no-auctions-csv",
        action="store_true",
        help="skip the per-auction CSV export",
    )

    sweep = sub.add_parser("sweep", help="run a strategy x vendor-count x seed grid")
    _add_common(sweep)
    sweep.add_argument("--strategies", help="comma-separated strategies (default: all three)")
    sweep.add_argument("--vendors", help="comma-separated vendor counts (default: 4,6,8,12)")
    sweep.add_argument("--seeds", help="seed range A..B or comma list (default: 1..20)")
    sweep.add_argument(
        "--export-auctions",
        action="store_true",
        help="also write one per-auction CSV per cell",
    )
    return parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="scenario config file (documented key-value format)")
    parser.add_argument("--episodes", type=int, help="override the episode count")
    parser.add_argument("--out", default="out", help="output directory (default: ./out)")
    parser.add_argument("--format", default="both", choices=("csv", "text", "both"))


def parse_and_validate(argv: list[str]) -> RunSpec:
    """Turn command-line arguments into a RunSpec or raise CliError."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):  # --help
            raise
        raise CliError("invalid arguments") from None

    try:
        base = load_config(args.config) if args.config else ScenarioConfig()
    except ValueError as exc:
        raise CliError(str(exc)) from None

    overrides = {}
    if args.episodes is not None:
        overrides["episodes"] = args.episodes

    if args.command == "run":
        strategies = (parse_strategy(args.strategy),) if args.strategy else (base.strategy,)
        vendor_counts = (_parse_int("vendors", args.vendors),) if args.vendors else (base.n_vendors,)
        seeds = (args.seed,) if args.seed is not None else (base.seed,)
        export_auctions = not args.no_auctions_csv
    else:
        if args.strategies:
            strategies = tuple(parse_strategy(s) for s in args.strategies.split(","))
        else:
            strategies = tuple(StrategyKind)
        if args.vendors:
            vendor_counts = tuple(_parse_int("vendors", v) for v in args.vendors.split(","))
        else:
            vendor_counts = DEFAULT_SWEEP_VENDORS
        seeds = _parse_seeds(args.seeds) if args.seeds else DEFAULT_SWEEP_SEEDS
        export_auctions = args.export_auctions

    try:
        spec = RunSpec(
            base=replace(base, **overrides),
            strategies=strategies,
            vendor_counts=vendor_counts,
            seeds=seeds,
            out_dir=Path(args.out),
            fmt=args.format,
            export_auctions=export_auctions,
        )
        for strategy, n_vendors, seed in spec.cells:
            spec.cell_config(strategy, n_vendors, seed).validate()
    except ValueError as exc:
        raise CliError(str(exc)) from None
    return spec


def _parse_int(flag: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"flag --{flag}: expected an integer, got {raw!r}") from None


def _parse_seeds(raw: str) -> tuple[int, ...]:
    if ".." in raw:
        first, _, last = raw.partition("..")
        try:
            start, stop = int(first), int(last)
        except ValueError:
            raise CliError(f"flag --seeds: expected A..B with integers, got {raw!r}") from None
        if start > stop:
            raise CliError(f"flag --seeds: empty range {raw!r}")
        return tuple(range(start, stop + 1))
    try:
        return tuple(int(s) for s in raw.split(","))
    except ValueError:
        raise CliError(f"flag --seeds: expected A..B or a comma list, got {raw!r}") from None


def execute(spec: RunSpec) -> int:
    """Run every cell of the spec and write reports; returns the exit code."""
    spec.out_dir.mkdir(parents=True, exist_ok=True)
    rows: list[SummaryRow] = []
    completed: list[str] = []
    failure: str | None = None

    for strategy, n_vendors, seed in spec.cells:
        cell = f"strategy={strategy.value} vendors={n_vendors} seed={seed}"
        try:
            config = spec.cell_config(strategy, n_vendors, seed)
            stats = run_scenario(config, keep_records=spec.export_auctions)
            rows.append(summary_row(stats))
            if spec.export_auctions:
                write_auctions_csv(stats, spec.out_dir / auctions_filename(stats))
            completed.append(cell)
        except Exception as exc:  # keep partial outputs, report, stop
            failure = f"{cell}: {exc}"
            break

    if rows and spec.fmt in ("csv", "both"):
        write_summary_csv(rows, spec.out_dir / "summary.csv")
    if rows and spec.fmt in ("text", "both"):
        write_tables(rows, spec.out_dir / "tables.txt")
    manifest = "".join(f"{cell}\n" for cell in completed)
    (spec.out_dir / "MANIFEST.txt").write_text(manifest, encoding="utf-8")

    if failure is not None:
        print(f"error: {failure}", file=sys.stderr)
        print(f"partial outputs kept in {spec.out_dir} (see MANIFEST.txt)", file=sys.stderr)
        return EXIT_RUNTIME
    if rows:
        print(render_tables(rows), end="")
    print(f"wrote {len(completed)} cell(s) to {spec.out_dir}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        spec = parse_and_validate(sys.argv[1:] if argv is None else argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return execute(spec)


if __name__ == "__main__":
    sys.exit(main())
