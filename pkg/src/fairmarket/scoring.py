"""Simple additive weighting over bid preference parameters.

Two phases: min-max scaling of each parameter across the current auction's
bidders (oriented so that higher scaled value always means better), then a
weighted sum producing one aggregate score per bidder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .market import Bid, PreferenceWeights


class Polarity(Enum):
    POSITIVE = "positive"  # higher raw value is better
    NEGATIVE = "negative"  # lower raw value is better


# Canonical parameter order shared by Bid.param_values and PreferenceWeights.
PARAMETERS = ("cost", "availability", "acceptance_rate")

PARAMETER_POLARITY = {
    "cost": Polarity.NEGATIVE,
    "availability": Polarity.POSITIVE,
    "acceptance_rate": Polarity.POSITIVE,
}


def scale_parameter(raw: Iterable[float], polarity: Polarity) -> list[float]:
    """Min-max scale one parameter's raw values across bidders into [0, 1].

    Args:
        raw: One value per bidder; must be non-empty and finite.
        polarity: Whether higher (positive) or lower (negative) raw is better.

    Returns:
        Values in [0, 1], oriented so higher always means better. When every
        raw value is equal the scale is degenerate and all outputs are 1.
    """
    values = list(raw)
    if not values:
        raise ValueError("raw parameter values must be non-empty")
    if any(not math.isfinite(v) for v in values):
        raise ValueError("raw parameter values must be finite")
    hi = max(values)
    lo = min(values)
    if hi == lo:
        return [1.0] * len(values)
    span = hi - lo
    if polarity is Polarity.NEGATIVE:
        return [(hi - v) / span for v in values]
    return [(v - lo) / span for v in values]


def preference_score(scaled: Sequence[float], weights: Sequence[float]) -> float:
    """Weighted sum of one bidder's scaled parameter values."""
    if len(scaled) != len(weights):
        raise ValueError(f"expected {len(weights)} scaled values, got {len(scaled)}")
    return sum(s * w for s, w in zip(scaled, weights))


@dataclass(frozen=True)
class ScoreMatrix:
    """Scaled rows and aggregate scores for one auction's bidders."""

    vendor_ids: tuple[str, ...]
    parameters: tuple[str, ...]
    rows: dict[str, tuple[float, ...]]  # vendor -> scaled values in parameter order
    scores: dict[str, float]  # vendor -> aggregate score


def score_bids(bids: list[Bid], weights: PreferenceWeights) -> ScoreMatrix:
    """Scale the three preference parameters across bidders and aggregate.

    Min and max are taken over the current bidder set only, so a single
    bidder degenerates to a score of 1.
    """
    if not bids:
        raise ValueError("bid list must be non-empty")
    raw_columns = list(zip(*(bid.param_values() for bid in bids)))
    scaled_columns = [
        scale_parameter(column, PARAMETER_POLARITY[name])
        for name, column in zip(PARAMETERS, raw_columns)
    ]
    weight_values = weights.as_tuple()
    rows: dict[str, tuple[float, ...]] = {}
    scores: dict[str, float] = {}
    for i, bid in enumerate(bids):
        row = tuple(column[i] for column in scaled_columns)
        rows[bid.vendor_id] = row
        scores[bid.vendor_id] = preference_score(row, weight_values)
    return ScoreMatrix(
        vendor_ids=tuple(bid.vendor_id for bid in bids),
        parameters=PARAMETERS,
        rows=rows,
        scores=scores,
    )
