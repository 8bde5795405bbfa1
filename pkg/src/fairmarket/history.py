"""Transaction log of auction outcomes with windowed loss and acceptance queries."""

from __future__ import annotations

from dataclasses import dataclass, field


class SequenceError(Exception):
    """An auction record arrived with a non-increasing sequence number."""


@dataclass(frozen=True)
class BidSnapshot:
    """Per-participant values frozen at auction time.

    Priority and score are only populated by strategies that compute them.
    """

    sp: float
    priority: float | None = None
    score: float | None = None


@dataclass(frozen=True)
class AuctionRecord:
    """Persisted outcome of one auction."""

    auction_seq: int
    request_id: str
    solicited: tuple[str, ...]  # every vendor offered the request
    participants: tuple[str, ...]  # vendors that submitted a bid
    winner: str | None
    payment: float | None
    snapshots: dict[str, BidSnapshot]
    fallback: bool = False  # the priority filter matched nobody and was bypassed

    def __post_init__(self):
        participants = set(self.participants)
        if self.winner is not None and self.winner not in participants:
            raise ValueError(f"winner {self.winner!r} is not a participant")
        if (self.payment is None) != (self.winner is None):
            raise ValueError("payment must be present exactly when a winner is present")
        if not participants <= set(self.solicited):
            raise ValueError("every participant must have been solicited")
        if set(self.snapshots) != participants:
            raise ValueError("snapshots must cover exactly the participants")

    @property
    def max_sp(self) -> float | None:
        """Highest selling price offered in this auction."""
        return max((snap.sp for snap in self.snapshots.values()), default=None)


@dataclass
class VendorHistory:
    """One vendor's per-auction participation record."""

    vendor_id: str
    entries: list[tuple[int, bool, bool]] = field(default_factory=list)  # (seq, participated, won)
    offered: int = 0
    wins: int = 0
    # compact views kept alongside entries for fast window queries
    _won_flags: list[bool] = field(default_factory=list)  # one per participated auction
    _bid_flags: list[bool] = field(default_factory=list)  # one per solicitation


class TransactionLog:
    """Append-only auction history for one scenario run.

    Single-writer: the simulation engine records auctions in sequence order;
    queries are pure functions of the recorded history.
    """

    def __init__(self):
        self._records: list[AuctionRecord] = []
        self._histories: dict[str, VendorHistory] = {}

    def __len__(self) -> int:
        return len(self._records)

    @property
    def records(self) -> tuple[AuctionRecord, ...]:
        return tuple(self._records)

    def vendor_history(self, vendor_id: str) -> VendorHistory | None:
        return self._histories.get(vendor_id)

    def record_auction(self, record: AuctionRecord) -> None:
        """Append one auction outcome and update per-vendor histories."""
        if self._records and record.auction_seq <= self._records[-1].auction_seq:
            raise SequenceError(
                f"auction_seq {record.auction_seq} is not greater than "
                f"last recorded {self._records[-1].auction_seq}"
            )
        participants = set(record.participants)
        for vendor_id in record.solicited:
            history = self._histories.get(vendor_id)
            if history is None:
                history = self._histories[vendor_id] = VendorHistory(vendor_id)
            participated = vendor_id in participants
            won = record.winner == vendor_id
            history.entries.append((record.auction_seq, participated, won))
            history.offered += 1
            history._bid_flags.append(participated)
            if participated:
                history._won_flags.append(won)
                if won:
                    history.wins += 1
        self._records.append(record)

    def losses_in_window(self, vendor_id: str, window: int) -> int:
        """Losses among the vendor's most recent `window` participated auctions.

        Vendors with no participation history count zero losses.
        """
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        history = self._histories.get(vendor_id)
        if history is None:
            return 0
        tail = history._won_flags[-window:]
        return len(tail) - sum(tail)

    def acceptance_rate(self, vendor_id: str, window: int) -> float:
        """Fraction of recent solicitations this vendor answered with a bid.

        Optimistic cold start: vendors with no recorded solicitations rate 1.0.
        """
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        history = self._histories.get(vendor_id)
        if history is None or not history._bid_flags:
            return 1.0
        tail = history._bid_flags[-window:]
        return sum(tail) / len(tail)

    def win_counts(self) -> dict[str, int]:
        """Total wins per vendor over all recorded auctions."""
        return {vendor_id: h.wins for vendor_id, h in self._histories.items()}
