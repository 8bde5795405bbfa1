"""Scenario configuration: market shape, auction knobs, sampling distributions."""

from __future__ import annotations

import configparser
import math
import random
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .strategies import StrategyKind


@dataclass(frozen=True)
class UniformRange:
    """Closed interval sampled uniformly."""

    low: float
    high: float

    def __post_init__(self):
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValueError(f"range bounds must be finite, got [{self.low!r}, {self.high!r}]")
        if self.low > self.high:
            raise ValueError(f"range low {self.low!r} exceeds high {self.high!r}")

    def sample(self, rng: random.Random) -> float:
        return rng.uniform(self.low, self.high)


@dataclass(frozen=True)
class ScenarioConfig:
    """All knobs for one scenario run. Every field has a sensible default."""

    strategy: StrategyKind = StrategyKind.MPRA
    n_vendors: int = 12
    episodes: int = 150
    episode_length: float = 2000.0
    buyers_per_episode: int = 25
    loss_window: int = 10  # auctions counted toward the priority label
    accept_window: int = 10  # solicitations counted toward the acceptance rate
    pr_index: float = 0.4
    icaa_alpha: float = 0.5
    seed: int = 1
    capacity: UniformRange = UniformRange(500.0, 1000.0)
    base_price: UniformRange = UniformRange(1.0, 5.0)
    markup: UniformRange = UniformRange(1.0, 1.5)
    bundle: UniformRange = UniformRange(10.0, 100.0)
    duration: UniformRange = UniformRange(50.0, 200.0)
    max_wait: UniformRange = UniformRange(100.0, 500.0)

    def validate(self) -> None:
        """Raise ValueError naming the offending field on any bad value."""
        for name in ("n_vendors", "episodes", "buyers_per_episode", "loss_window", "accept_window"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {value!r}")
        if not (math.isfinite(self.episode_length) and self.episode_length > 0):
            raise ValueError(f"episode_length must be > 0, got {self.episode_length!r}")
        if not 0.0 <= self.pr_index <= 1.0:
            raise ValueError(f"pr_index must be in [0, 1], got {self.pr_index!r}")
        if not (math.isfinite(self.icaa_alpha) and self.icaa_alpha >= 0):
            raise ValueError(f"icaa_alpha must be >= 0, got {self.icaa_alpha!r}")
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if self.capacity.low <= 0:
            raise ValueError(f"capacity range must be positive, got low {self.capacity.low!r}")
        if self.base_price.low < 0:
            raise ValueError(f"base_price range must be >= 0, got low {self.base_price.low!r}")
        if self.markup.low <= 0:
            raise ValueError(f"markup range must be positive, got low {self.markup.low!r}")
        if self.bundle.low < 0:
            raise ValueError(f"bundle range must be >= 0, got low {self.bundle.low!r}")
        if self.duration.low <= 0:
            raise ValueError(f"duration range must be positive, got low {self.duration.low!r}")
        if self.max_wait.low < 0:
            raise ValueError(f"max_wait range must be >= 0, got low {self.max_wait.low!r}")


# Config file schema: [scenario] and [auction] hold scalar keys; one section
# per sampling distribution with low/high keys.
_SCALAR_SECTIONS = {
    "scenario": ("strategy", "n_vendors", "episodes", "episode_length", "buyers_per_episode", "seed"),
    "auction": ("loss_window", "accept_window", "pr_index", "icaa_alpha"),
}
_RANGE_SECTIONS = ("capacity", "base_price", "markup", "bundle", "duration", "max_wait")
_INT_KEYS = {"n_vendors", "episodes", "buyers_per_episode", "seed", "loss_window", "accept_window"}


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse a scenario config file; unknown sections or keys are errors."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValueError(f"config file not found or unreadable: {path}")

    values: dict[str, object] = {}
    for section in parser.sections():
        if section in _SCALAR_SECTIONS:
            allowed = _SCALAR_SECTIONS[section]
            for key, raw in parser.items(section):
                if key not in allowed:
                    raise ValueError(f"unknown key {key!r} in section [{section}]")
                values[key] = _parse_scalar(key, raw)
        elif section in _RANGE_SECTIONS:
            for key in parser.options(section):
                if key not in ("low", "high"):
                    raise ValueError(f"unknown key {key!r} in section [{section}]")
            try:
                low = parser.getfloat(section, "low")
                high = parser.getfloat(section, "high")
            except (configparser.NoOptionError, ValueError) as exc:
                raise ValueError(f"section [{section}] needs numeric low and high: {exc}") from exc
            values[section] = UniformRange(low, high)
        else:
            raise ValueError(f"unknown section [{section}]")

    config = replace(ScenarioConfig(), **values)
    config.validate()
    return config


def _parse_scalar(key: str, raw: str):
    if key == "strategy":
        return parse_strategy(raw)
    try:
        if key in _INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ValueError(f"invalid value for {key}: {raw!r}") from exc


def parse_strategy(name: str) -> StrategyKind:
    try:
        return StrategyKind(name.strip().lower())
    except ValueError:
        valid = ", ".join(kind.value for kind in StrategyKind)
        raise ValueError(f"unknown strategy {name!r} (expected one of: {valid})") from None


def write_default_config(path: str | Path) -> None:
    """Write the default configuration in the documented file format."""
    config = ScenarioConfig()
    lines = [
        "[scenario]",
        f"strategy = {config.strategy.value}",
        f"n_vendors = {config.n_vendors}",
        f"episodes = {config.episodes}",
        f"episode_length = {config.episode_length:g}",
        f"buyers_per_episode = {config.buyers_per_episode}",
        f"seed = {config.seed}",
        "",
        "[auction]",
        f"loss_window = {config.loss_window}",
        f"accept_window = {config.accept_window}",
        f"pr_index = {config.pr_index:g}",
        f"icaa_alpha = {config.icaa_alpha:g}",
        "",
    ]
    for section in _RANGE_SECTIONS:
        rng: UniformRange = getattr(config, section)
        lines += [f"[{section}]", f"low = {rng.low:g}", f"high = {rng.high:g}", ""]
    Path(path).write_text("\n".join(lines), encoding="utf-8")


# fields() is used by the CLI to validate override names; re-export for convenience
CONFIG_FIELDS = tuple(f.name for f in fields(ScenarioConfig))
