"""Winner determination: priority filtering, score maximisation, average-bid payment.

Bidders are sorted by priority label; those at or below the priority index
form the priority list. The winner is the highest-scoring member of that
list, and the buyer pays the average of the list's bid prices. When the
filter matches nobody (a cold-start market where every bidder is fresh) the
full bidder set is used instead and the result is flagged as a fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .market import Bid
from .priority import PRIORITY_TOLERANCE


@dataclass(frozen=True)
class AuctionResult:
    """Outcome of one auction."""

    winner: str
    cost: float  # the buyer's payment
    priority_list: tuple[str, ...]  # vendors considered, best priority first
    priorities: dict[str, float]  # per-bidder diagnostics; empty for price-based rules
    scores: dict[str, float]
    rows: dict[str, tuple[float, ...]] | None = None  # scaled parameter rows
    fallback: bool = False

    def __post_init__(self):
        if self.winner not in self.priority_list:
            raise ValueError(f"winner {self.winner!r} is not in the priority list")


def determine_winner(
    bids: list[Bid],
    labels: dict[str, float],
    scores: dict[str, float],
    pr_index: float,
    rows: dict[str, tuple[float, ...]] | None = None,
) -> AuctionResult:
    """Select the winning bid and the buyer's payment.

    Args:
        bids: Non-empty list of bids, one per vendor.
        labels: Priority label per bidding vendor.
        scores: Aggregate preference score per bidding vendor.
        pr_index: Threshold in [0, 1]; bidders with label <= pr_index qualify.
        rows: Optional scaled-parameter diagnostics to carry into the result.

    Ties on score break toward the lower priority label, then the lower
    selling price, then the lexicographically smaller vendor id. The payment
    is the exact arithmetic mean of the priority list's selling prices, so it
    always lies between the list's minimum and maximum bid.
    """
    if not bids:
        raise ValueError("bid list must be non-empty")
    if not 0.0 <= pr_index <= 1.0:
        raise ValueError(f"pr_index must be in [0, 1], got {pr_index!r}")
    missing = sorted(
        bid.vendor_id for bid in bids if bid.vendor_id not in labels or bid.vendor_id not in scores
    )
    if missing:
        raise ValueError(f"missing label or score for: {', '.join(missing)}")

    ordered = sorted(bids, key=lambda b: (labels[b.vendor_id], b.vendor_id))
    eligible = [b for b in ordered if labels[b.vendor_id] <= pr_index + PRIORITY_TOLERANCE]
    fallback = not eligible
    pool = ordered if fallback else eligible

    best = min(pool, key=lambda b: (-scores[b.vendor_id], labels[b.vendor_id], b.sp, b.vendor_id))
    # exact rational mean, correctly rounded once at the end
    cost = float(sum((Fraction(b.sp) for b in pool), Fraction(0)) / len(pool))

    return AuctionResult(
        winner=best.vendor_id,
        cost=cost,
        priority_list=tuple(b.vendor_id for b in pool),
        priorities={b.vendor_id: labels[b.vendor_id] for b in ordered},
        scores={b.vendor_id: scores[b.vendor_id] for b in ordered},
        rows=rows,
        fallback=fallback,
    )
