"""Evaluation metrics over scenario results: revenue, fairness, payment ratio."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .history import AuctionRecord
from .strategies import StrategyKind


@dataclass(frozen=True)
class ScenarioStats:
    """Aggregated outcome of one scenario run."""

    strategy: StrategyKind
    n_vendors: int
    seed: int
    episodes: int
    vendor_ids: tuple[str, ...]
    arrivals: int
    auctions: int
    rejects: int
    revenue_by_vendor: dict[str, float]
    wins_by_vendor: dict[str, int]
    price_pairs: tuple[tuple[float, float], ...]  # per auction: (payment, max offered sp)
    records: tuple[AuctionRecord, ...] | None = None


@dataclass(frozen=True)
class SummaryRow:
    """One scenario's metrics, as written to the summary CSV."""

    strategy: str
    n_vendors: int
    seed: int
    avg_revenue: float
    fairness: float
    payment_ratio: float


def average_revenue(stats: ScenarioStats) -> float:
    """Mean total revenue per vendor, counting vendors that earned nothing."""
    if stats.n_vendors < 1:
        raise ValueError("scenario must have at least one vendor")
    total = math.fsum(stats.revenue_by_vendor.get(v, 0.0) for v in stats.vendor_ids)
    return total / stats.n_vendors


def fairness(stats: ScenarioStats) -> float:
    """Fraction of vendors that won at least one auction; higher is fairer."""
    if stats.n_vendors < 1:
        raise ValueError("scenario must have at least one vendor")
    winners = sum(1 for v in stats.vendor_ids if stats.wins_by_vendor.get(v, 0) >= 1)
    return winners / stats.n_vendors


def payment_ratio(stats: ScenarioStats) -> float:
    """Mean, over auctions, of the paid price over the maximum offered price.

    Always in (0, 1]: every strategy pays at most the highest submitted bid.
    """
    if not stats.price_pairs:
        raise ValueError("payment ratio undefined without completed auctions")
    ratios = [payment / max_sp for payment, max_sp in stats.price_pairs]
    return math.fsum(ratios) / len(ratios)


def summary_row(stats: ScenarioStats) -> SummaryRow:
    return SummaryRow(
        strategy=stats.strategy.value,
        n_vendors=stats.n_vendors,
        seed=stats.seed,
        avg_revenue=average_revenue(stats),
        fairness=fairness(stats),
        payment_ratio=payment_ratio(stats),
    )
