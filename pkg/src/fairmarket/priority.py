"""Priority labels derived from recent auction losses.

A label of 0 marks the highest priority (a vendor that lost every recent
auction); 1 marks the lowest (a vendor with no recent losses).
"""

from __future__ import annotations

from .history import TransactionLog
from .market import Bid

# Slack for threshold comparisons: labels are ratios k/window whose float
# representations sit within an ulp of the configured priority index.
PRIORITY_TOLERANCE = 1e-12


def priority_label(loss: int, window: int) -> float:
    """Label in [0, 1] for a vendor that lost `loss` of its last `window` auctions."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if not 0 <= loss <= window:
        raise ValueError(f"loss must be in [0, {window}], got {loss}")
    return 1.0 - loss / window


def label_bids(bids: list[Bid], window: int, history: TransactionLog) -> dict[str, float]:
    """Attach a priority label to every bidding vendor."""
    vendor_ids = [bid.vendor_id for bid in bids]
    if len(set(vendor_ids)) != len(vendor_ids):
        raise ValueError("bid list contains duplicate vendor ids")
    return {
        vendor_id: priority_label(history.losses_in_window(vendor_id, window), window)
        for vendor_id in vendor_ids
    }
