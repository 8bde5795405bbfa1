"""Allocation strategies: bid solicitation and winner selection per strategy kind.

MPRA runs the full pipeline (priority labels, additive-weighting scores,
priority-filtered winner, average-bid payment). The CDARA-style and
ICAA-style baselines are simplified price-only rules: lowest bid wins and
pays its own price. ICAA-style bids add a demand surcharge that grows with
the vendor's current load.
"""

from __future__ import annotations

from enum import Enum

from .history import TransactionLog
from .market import Bid, BuyerRequest, VendorProfile
from .priority import label_bids
from .scoring import score_bids
from .winner import AuctionResult, determine_winner


class StrategyKind(Enum):
    MPRA = "mpra"
    CDARA = "cdara"
    ICAA = "icaa"


def solicit_bids(
    request: BuyerRequest,
    vendors: list[VendorProfile],
    kind: StrategyKind,
    history: TransactionLog,
    icaa_alpha: float = 0.5,
    accept_window: int = 10,
) -> list[Bid]:
    """Collect one bid from every vendor able to serve the request.

    MPRA and CDARA-style vendors price at their marked-up base rate; an
    ICAA-style vendor scales that rate by 1 + alpha * (1 - availability), so
    an idle vendor bids its base rate exactly. Every bid carries the vendor's
    availability and acceptance rate sampled at bid time.
    """
    bids = []
    for vendor in vendors:
        if not vendor.can_serve(request.rb):
            continue
        price = vendor.bid_price(request.rb)
        avail = vendor.availability()
        if kind is StrategyKind.ICAA:
            price *= 1.0 + icaa_alpha * (1.0 - avail)
        bids.append(
            Bid(
                vendor_id=vendor.vendor_id,
                request_id=request.request_id,
                sp=price,
                availability=avail,
                acceptance_rate=history.acceptance_rate(vendor.vendor_id, accept_window),
            )
        )
    return bids


def allocate(
    request: BuyerRequest,
    bids: list[Bid],
    kind: StrategyKind,
    history: TransactionLog,
    pr_index: float = 0.4,
    loss_window: int = 10,
) -> AuctionResult:
    """Pick the winning bid and the payment under the given strategy.

    Price-based baselines award the lowest selling price (ties to the
    lexicographically smaller vendor id) and pay first-price.
    """
    if not bids:
        raise ValueError("bid list must be non-empty")
    if kind is StrategyKind.MPRA:
        labels = label_bids(bids, loss_window, history)
        matrix = score_bids(bids, request.weights)
        return determine_winner(bids, labels, matrix.scores, pr_index, rows=matrix.rows)

    ordered = sorted(bids, key=lambda b: (b.sp, b.vendor_id))
    best = ordered[0]
    return AuctionResult(
        winner=best.vendor_id,
        cost=best.sp,
        priority_list=tuple(b.vendor_id for b in ordered),
        priorities={},
        scores={},
    )
