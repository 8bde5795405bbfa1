"""Deterministic reverse-auction market simulator with fairness-prioritised allocation."""

from .config import ScenarioConfig, UniformRange, load_config
from .engine import (
    EpisodeStats,
    WorldState,
    generate_arrivals,
    init_world,
    run_episode,
    run_scenario,
)
from .history import AuctionRecord, BidSnapshot, SequenceError, TransactionLog, VendorHistory
from .market import (
    Bid,
    BuyerRequest,
    CapacityError,
    PreferenceWeights,
    ResourceBundle,
    ResourceType,
    VendorProfile,
)
from .metrics import (
    ScenarioStats,
    SummaryRow,
    average_revenue,
    fairness,
    payment_ratio,
    summary_row,
)
from .priority import priority_label, label_bids
from .reporting import emit_report
from .scoring import Polarity, ScoreMatrix, preference_score, scale_parameter, score_bids
from .strategies import StrategyKind, allocate, solicit_bids
from .winner import AuctionResult, determine_winner

__all__ = [
    "AuctionRecord",
    "AuctionResult",
    "Bid",
    "BidSnapshot",
    "BuyerRequest",
    "CapacityError",
    "EpisodeStats",
    "Polarity",
    "PreferenceWeights",
    "ResourceBundle",
    "ResourceType",
    "ScenarioConfig",
    "ScenarioStats",
    "ScoreMatrix",
    "SequenceError",
    "StrategyKind",
    "SummaryRow",
    "TransactionLog",
    "UniformRange",
    "VendorHistory",
    "VendorProfile",
    "WorldState",
    "allocate",
    "average_revenue",
    "determine_winner",
    "emit_report",
    "fairness",
    "generate_arrivals",
    "init_world",
    "label_bids",
    "load_config",
    "payment_ratio",
    "preference_score",
    "priority_label",
    "run_episode",
    "run_scenario",
    "scale_parameter",
    "score_bids",
    "solicit_bids",
    "summary_row",
]

__version__ = "0.1.0"
