"""Domain types for the open market: resources, vendors, buyers, and bids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class ResourceType(Enum):
    """The four resource kinds traded in the market."""

    CPU = "cpu"  # millions of instructions per second
    MEMORY = "memory"  # megabytes
    STORAGE = "storage"  # megabytes
    BANDWIDTH = "bandwidth"  # bytes per second


RESOURCE_TYPES = tuple(ResourceType)


class CapacityError(Exception):
    """A reservation or release would violate a vendor's capacity accounting."""


@dataclass(frozen=True)
class ResourceBundle:
    """Nonnegative quantity per resource type.

    The same shape is reused for capacities, live allocations, requested
    bundles, and per-unit prices (different units, identical arithmetic).
    """

    cpu: float = 0.0
    memory: float = 0.0
    storage: float = 0.0
    bandwidth: float = 0.0

    def __post_init__(self):
        for kind, value in zip(RESOURCE_TYPES, self.as_tuple()):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{kind.value} quantity must be finite and >= 0, got {value!r}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.cpu, self.memory, self.storage, self.bandwidth)

    def get(self, kind: ResourceType) -> float:
        return getattr(self, kind.value)

    def __add__(self, other: ResourceBundle) -> ResourceBundle:
        return ResourceBundle(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __sub__(self, other: ResourceBundle) -> ResourceBundle:
        # constructor validation rejects negative components
        return ResourceBundle(*(a - b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def covers(self, other: ResourceBundle) -> bool:
        """Componentwise self >= other."""
        return all(a >= b for a, b in zip(self.as_tuple(), other.as_tuple()))

    def dot(self, other: ResourceBundle) -> float:
        return sum(a * b for a, b in zip(self.as_tuple(), other.as_tuple()))

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.as_tuple())


@dataclass(frozen=True)
class PreferenceWeights:
    """A buyer's weights over the three preference parameters.

    Weights are normalized to sum to 1 at construction; at least one must be
    positive.
    """

    cost: float
    availability: float
    acceptance_rate: float

    def __post_init__(self):
        raw = (self.cost, self.availability, self.acceptance_rate)
        for name, value in zip(("cost", "availability", "acceptance_rate"), raw):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"weight {name} must be finite and >= 0, got {value!r}")
        total = self.cost + self.availability + self.acceptance_rate
        if total <= 0:
            raise ValueError("at least one preference weight must be positive")
        if total != 1.0:
            object.__setattr__(self, "cost", self.cost / total)
            object.__setattr__(self, "availability", self.availability / total)
            object.__setattr__(self, "acceptance_rate", self.acceptance_rate / total)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.cost, self.availability, self.acceptance_rate)


@dataclass
class VendorProfile:
    """A vendor's capacity, live allocation, and pricing profile."""

    vendor_id: str
    capacity: ResourceBundle
    base_price: ResourceBundle  # per-unit price for each resource type
    markup: float = 1.0
    allocated: ResourceBundle = ResourceBundle()

    def __post_init__(self):
        if not math.isfinite(self.markup) or self.markup <= 0:
            raise ValueError(f"markup must be finite and > 0, got {self.markup!r}")
        if not self.capacity.covers(self.allocated):
            raise ValueError(f"vendor {self.vendor_id}: allocated exceeds capacity")

    def free(self) -> ResourceBundle:
        return self.capacity - self.allocated

    def can_serve(self, rb: ResourceBundle) -> bool:
        """True iff the free capacity covers the requested bundle.

        Checked against the rounded post-reservation value so the capacity
        invariant holds exactly under float arithmetic.
        """
        return self.capacity.covers(self.allocated + rb)

    def reserve(self, rb: ResourceBundle) -> None:
        """Hold the bundle against this vendor's capacity."""
        candidate = self.allocated + rb
        if not self.capacity.covers(candidate):
            raise CapacityError(f"vendor {self.vendor_id}: reservation exceeds free capacity")
        self.allocated = candidate

    def release(self, rb: ResourceBundle) -> None:
        """Return a previously reserved bundle to the free pool."""
        if not self.allocated.covers(rb):
            raise CapacityError(f"vendor {self.vendor_id}: release exceeds allocated amount")
        self.allocated = self.allocated - rb

    def bid_price(self, rb: ResourceBundle) -> float:
        """Selling price for a bundle: marked-up sum of per-resource base prices."""
        return self.markup * rb.dot(self.base_price)

    def availability(self) -> float:
        """Mean free-capacity fraction across the four resource types, in [0, 1]."""
        if any(c <= 0 for c in self.capacity.as_tuple()):
            raise ValueError(f"vendor {self.vendor_id}: availability undefined for zero capacity")
        free = self.free()
        return sum(f / c for f, c in zip(free.as_tuple(), self.capacity.as_tuple())) / 4.0


@dataclass(frozen=True)
class BuyerRequest:
    """One buyer's resource request, with timing and preference weights."""

    request_id: str
    rb: ResourceBundle
    arrival_time: float
    duration: float
    max_wait: float
    weights: PreferenceWeights

    def __post_init__(self):
        if not math.isfinite(self.arrival_time) or self.arrival_time < 0:
            raise ValueError(f"arrival_time must be finite and >= 0, got {self.arrival_time!r}")
        if not math.isfinite(self.duration) or self.duration <= 0:
            raise ValueError(f"duration must be finite and > 0, got {self.duration!r}")
        if not math.isfinite(self.max_wait) or self.max_wait < 0:
            raise ValueError(f"max_wait must be finite and >= 0, got {self.max_wait!r}")

    @property
    def deadline(self) -> float:
        """Latest simulation time at which this request may still be served."""
        return self.arrival_time + self.max_wait


@dataclass(frozen=True)
class Bid:
    """A vendor's offer for one request: price plus its preference-parameter values."""

    vendor_id: str
    request_id: str
    sp: float  # selling price
    availability: float
    acceptance_rate: float

    def __post_init__(self):
        if not math.isfinite(self.sp) or self.sp <= 0:
            raise ValueError(f"selling price must be finite and > 0, got {self.sp!r}")
        if not 0.0 <= self.availability <= 1.0:
            raise ValueError(f"availability must be in [0, 1], got {self.availability!r}")
        if not 0.0 <= self.acceptance_rate <= 1.0:
            raise ValueError(f"acceptance_rate must be in [0, 1], got {self.acceptance_rate!r}")

    def param_values(self) -> tuple[float, float, float]:
        """Raw preference-parameter values in canonical order.

        Cost is the selling price itself; availability and acceptance rate
        are the vendor's values sampled at bid time.
        """
        return (self.sp, self.availability, self.acceptance_rate)
