"""Deterministic discrete-event market loop.

Buyers arrive dynamically within fixed-length episodes on one continuous
clock. Each arrival triggers an auction among the vendors that can serve the
request; if nobody can, the request waits in a FIFO buffer until a vendor
frees capacity or the request's deadline passes. Episodes share vendor state
and auction history; requests still buffered when an episode ends are
rejected there.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field

from .config import ScenarioConfig
from .history import AuctionRecord, BidSnapshot, TransactionLog
from .market import BuyerRequest, PreferenceWeights, ResourceBundle, VendorProfile
from .metrics import ScenarioStats
from .strategies import allocate, solicit_bids


@dataclass(frozen=True)
class BuyerArrival:
    request: BuyerRequest


@dataclass(frozen=True)
class ServiceComplete:
    vendor_id: str
    bundle: ResourceBundle
    request_id: str


@dataclass(frozen=True)
class BuyerTimeout:
    request_id: str


@dataclass(frozen=True, order=True)
class SimEvent:
    """Queue entry ordered by (time, schedule sequence)."""

    time: float
    seq: int
    payload: BuyerArrival | ServiceComplete | BuyerTimeout = field(compare=False)


class WaitBuffer:
    """FIFO of requests waiting for capacity, with lazy expiry handling."""

    def __init__(self):
        self._order: list[str] = []  # heapless FIFO via index; see _head
        self._head = 0
        self._pending: dict[str, tuple[BuyerRequest, float]] = {}
        self._front: list[tuple[BuyerRequest, float]] = []  # re-queued retries, newest last

    def __len__(self) -> int:
        return len(self._pending) + len(self._front)

    def push(self, request: BuyerRequest, expiry: float) -> None:
        self._order.append(request.request_id)
        self._pending[request.request_id] = (request, expiry)

    def push_front(self, request: BuyerRequest, expiry: float) -> None:
        """Return a popped request to the head of the queue."""
        self._front.append((request, expiry))

    def pop_ready(self, now: float) -> tuple[BuyerRequest | None, list[BuyerRequest]]:
        """Remove and return the oldest non-expired request.

        Expired requests found on the way are dropped and returned for
        rejection accounting. A request is expired once `now` reaches its
        expiry time.
        """
        expired: list[BuyerRequest] = []
        while self._front:
            request, expiry = self._front.pop()
            if expiry <= now:
                expired.append(request)
                continue
            return request, expired
        while self._head < len(self._order):
            request_id = self._order[self._head]
            entry = self._pending.get(request_id)
            if entry is None:  # removed by a timeout event
                self._head += 1
                continue
            request, expiry = entry
            self._head += 1
            del self._pending[request_id]
            if expiry <= now:
                expired.append(request)
                continue
            return request, expired
        return None, expired

    def remove(self, request_id: str) -> BuyerRequest | None:
        """Drop a request by id; returns it if it was still waiting."""
        entry = self._pending.pop(request_id, None)
        if entry is not None:
            return entry[0]
        for i, (request, _) in enumerate(self._front):
            if request.request_id == request_id:
                del self._front[i]
                return request
        return None

    def drain(self) -> list[BuyerRequest]:
        """Remove and return all waiting requests in FIFO order."""
        remaining = [request for request, _ in reversed(self._front)]
        for request_id in self._order[self._head :]:
            entry = self._pending.pop(request_id, None)
            if entry is not None:
                remaining.append(entry[0])
        self._front.clear()
        self._order.clear()
        self._head = 0
        return remaining


@dataclass
class EpisodeStats:
    """Per-episode bookkeeping aggregated into ScenarioStats."""

    episode_index: int
    arrivals: int = 0
    auctions: int = 0
    rejects: int = 0
    payments_by_vendor: dict[str, list[float]] = field(default_factory=dict)
    wins_by_vendor: dict[str, int] = field(default_factory=dict)
    price_pairs: list[tuple[float, float]] = field(default_factory=list)  # (payment, max sp)

    @property
    def revenue_by_vendor(self) -> dict[str, float]:
        return {vendor: math.fsum(payments) for vendor, payments in self.payments_by_vendor.items()}


@dataclass
class WorldState:
    """Mutable simulation state shared across the episodes of one scenario."""

    vendors: dict[str, VendorProfile]
    vendor_order: tuple[str, ...]
    clock: float = 0.0
    buffer: WaitBuffer = field(default_factory=WaitBuffer)
    outcomes: dict[str, str] = field(default_factory=dict)  # request_id -> allocated | rejected
    _events: list[SimEvent] = field(default_factory=list)
    _event_seq: int = 0
    _auction_seq: int = 0

    def schedule(self, time: float, payload) -> None:
        heapq.heappush(self._events, SimEvent(time, self._event_seq, payload))
        self._event_seq += 1

    def pop_event_before(self, limit: float) -> SimEvent | None:
        if self._events and self._events[0].time < limit:
            return heapq.heappop(self._events)
        return None

    def next_auction_seq(self) -> int:
        self._auction_seq += 1
        return self._auction_seq


def substream(seed: int, label: str) -> random.Random:
    """Independent deterministic RNG stream derived from the master seed.

    String seeding hashes via SHA-512 internally, so streams are stable
    across processes and platforms.
    """
    return random.Random(f"{seed}:{label}")


# Resource quantities snap to a dyadic grid so that capacity accounting adds
# and subtracts exactly in float arithmetic; otherwise a small reservation can
# be absorbed into a large allocation and underflow on release.
QUANTITY_GRID = 2.0**-16


def _sample_quantity(bounds, rng: random.Random) -> float:
    return round(bounds.sample(rng) / QUANTITY_GRID) * QUANTITY_GRID


def init_world(config: ScenarioConfig) -> WorldState:
    """Draw the vendor population from the configured distributions."""
    width = max(2, len(str(config.n_vendors)))
    capacity_rng = substream(config.seed, "capacity")
    price_rng = substream(config.seed, "base_price")
    markup_rng = substream(config.seed, "markup")
    vendors: dict[str, VendorProfile] = {}
    for i in range(1, config.n_vendors + 1):
        vendor_id = f"v{i:0{width}d}"
        vendors[vendor_id] = VendorProfile(
            vendor_id=vendor_id,
            capacity=ResourceBundle(*(_sample_quantity(config.capacity, capacity_rng) for _ in range(4))),
            base_price=ResourceBundle(*(config.base_price.sample(price_rng) for _ in range(4))),
            markup=config.markup.sample(markup_rng),
        )
    return WorldState(vendors=vendors, vendor_order=tuple(vendors))


def generate_arrivals(config: ScenarioConfig, episode_index: int) -> list[BuyerRequest]:
    """Sample one episode's buyer requests, sorted by arrival time.

    Arrival times are i.i.d. uniform over the episode's half-open window.
    Each request field category draws from its own named substream so that
    the request stream is identical across strategies and vendor counts.
    """
    start = episode_index * config.episode_length
    end = start + config.episode_length
    time_rng = substream(config.seed, f"arrivals:{episode_index}")
    bundle_rng = substream(config.seed, f"bundles:{episode_index}")
    duration_rng = substream(config.seed, f"durations:{episode_index}")
    wait_rng = substream(config.seed, f"waits:{episode_index}")
    weight_rng = substream(config.seed, f"weights:{episode_index}")

    times = sorted(
        min(time_rng.uniform(start, end), math.nextafter(end, start))  # keep window half-open
        for _ in range(config.buyers_per_episode)
    )
    requests = []
    for i, arrival in enumerate(times):
        requests.append(
            BuyerRequest(
                request_id=f"e{episode_index:04d}b{i:03d}",
                rb=ResourceBundle(*(_sample_quantity(config.bundle, bundle_rng) for _ in range(4))),
                arrival_time=arrival,
                duration=config.duration.sample(duration_rng),
                max_wait=config.max_wait.sample(wait_rng),
                weights=PreferenceWeights(*_simplex3(weight_rng)),
            )
        )
    return requests


def _simplex3(rng: random.Random) -> tuple[float, float, float]:
    """Uniform draw from the 3-weight simplex via normalized exponentials."""
    draws = [-math.log(1.0 - rng.random()) for _ in range(3)]
    total = sum(draws)
    return (draws[0] / total, draws[1] / total, draws[2] / total)


def run_episode(
    config: ScenarioConfig,
    episode_index: int,
    world: WorldState,
    history: TransactionLog,
    arrivals: list[BuyerRequest] | None = None,
) -> EpisodeStats:
    """Process one episode's events against shared world state and history.

    Args:
        config: Scenario knobs; the strategy drives solicitation and allocation.
        episode_index: Zero-based episode number; fixes the time window.
        world: Vendor state, event queue, and wait buffer carried across episodes.
        history: Transaction log persisting across the scenario's episodes.
        arrivals: Injected requests for tests; defaults to generated arrivals.
    """
    episode_end = (episode_index + 1) * config.episode_length
    if arrivals is None:
        arrivals = generate_arrivals(config, episode_index)
    for request in arrivals:
        world.schedule(request.arrival_time, BuyerArrival(request))

    stats = EpisodeStats(episode_index=episode_index)
    while (event := world.pop_event_before(episode_end)) is not None:
        world.clock = event.time
        payload = event.payload
        if isinstance(payload, BuyerArrival):
            stats.arrivals += 1
            request = payload.request
            if not _try_auction(config, world, history, stats, request):
                world.buffer.push(request, request.deadline)
                world.schedule(request.deadline, BuyerTimeout(request.request_id))
        elif isinstance(payload, ServiceComplete):
            world.vendors[payload.vendor_id].release(payload.bundle)
            request, expired = world.buffer.pop_ready(world.clock)
            for stale in expired:
                _reject(world, stats, stale)
            if request is not None and not _try_auction(config, world, history, stats, request):
                world.buffer.push_front(request, request.deadline)
        else:  # BuyerTimeout
            request = world.buffer.remove(payload.request_id)
            if request is not None:
                _reject(world, stats, request)

    world.clock = episode_end
    for request in world.buffer.drain():  # buffered requests do not cross episodes
        _reject(world, stats, request)
    return stats


def _try_auction(
    config: ScenarioConfig,
    world: WorldState,
    history: TransactionLog,
    stats: EpisodeStats,
    request: BuyerRequest,
) -> bool:
    """Run one auction; returns False when no vendor can serve the request."""
    vendors = [world.vendors[vendor_id] for vendor_id in world.vendor_order]
    bids = solicit_bids(
        request,
        vendors,
        config.strategy,
        history,
        icaa_alpha=config.icaa_alpha,
        accept_window=config.accept_window,
    )
    if not bids:
        return False
    result = allocate(
        request,
        bids,
        config.strategy,
        history,
        pr_index=config.pr_index,
        loss_window=config.loss_window,
    )

    world.vendors[result.winner].reserve(request.rb)
    world.schedule(
        world.clock + request.duration,
        ServiceComplete(result.winner, request.rb, request.request_id),
    )
    snapshots = {
        bid.vendor_id: BidSnapshot(
            sp=bid.sp,
            priority=result.priorities.get(bid.vendor_id),
            score=result.scores.get(bid.vendor_id),
        )
        for bid in bids
    }
    history.record_auction(
        AuctionRecord(
            auction_seq=world.next_auction_seq(),
            request_id=request.request_id,
            solicited=world.vendor_order,
            participants=tuple(bid.vendor_id for bid in bids),
            winner=result.winner,
            payment=result.cost,
            snapshots=snapshots,
            fallback=result.fallback,
        )
    )

    world.outcomes[request.request_id] = "allocated"
    stats.auctions += 1
    stats.payments_by_vendor.setdefault(result.winner, []).append(result.cost)
    stats.wins_by_vendor[result.winner] = stats.wins_by_vendor.get(result.winner, 0) + 1
    stats.price_pairs.append((result.cost, max(bid.sp for bid in bids)))
    return True


def _reject(world: WorldState, stats: EpisodeStats, request: BuyerRequest) -> None:
    previous = world.outcomes.setdefault(request.request_id, "rejected")
    if previous != "rejected":
        raise RuntimeError(f"request {request.request_id} rejected after being allocated")
    stats.rejects += 1


def run_scenario(config: ScenarioConfig, keep_records: bool = True) -> ScenarioStats:
    """Run all episodes of one scenario and aggregate the results.

    Fully deterministic for a fixed config (including the seed); two runs
    produce identical stats and auction records.
    """
    config.validate()
    world = init_world(config)
    history = TransactionLog()

    episode_stats = [
        run_episode(config, episode_index, world, history) for episode_index in range(config.episodes)
    ]

    payments_by_vendor: dict[str, list[float]] = {}
    wins_by_vendor: dict[str, int] = {}
    price_pairs: list[tuple[float, float]] = []
    arrivals = auctions = rejects = 0
    for stats in episode_stats:
        arrivals += stats.arrivals
        auctions += stats.auctions
        rejects += stats.rejects
        price_pairs.extend(stats.price_pairs)
        for vendor_id, payments in stats.payments_by_vendor.items():
            payments_by_vendor.setdefault(vendor_id, []).extend(payments)
        for vendor_id, wins in stats.wins_by_vendor.items():
            wins_by_vendor[vendor_id] = wins_by_vendor.get(vendor_id, 0) + wins

    if arrivals != auctions + rejects:  # every arrival must reach a terminal state
        raise RuntimeError(
            f"conservation violation: {arrivals} arrivals vs {auctions} auctions + {rejects} rejects"
        )

    return ScenarioStats(
        strategy=config.strategy,
        n_vendors=config.n_vendors,
        seed=config.seed,
        episodes=config.episodes,
        vendor_ids=world.vendor_order,
        arrivals=arrivals,
        auctions=auctions,
        rejects=rejects,
        revenue_by_vendor={v: math.fsum(p) for v, p in payments_by_vendor.items()},
        wins_by_vendor=wins_by_vendor,
        price_pairs=tuple(price_pairs),
        records=history.records if keep_records else None,
    )
