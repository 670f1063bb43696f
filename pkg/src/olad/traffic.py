"""Traffic classes and aggregate demand quantities.

Flows are partitioned into suspicious and trusted sets. Attack traffic is
always suspicious, and the benign remainder is split by a trust fraction.
Aggregate bandwidths are in Gbps; per-flow rates are in Mbps.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

MBPS_PER_GBPS = 1000.0


@dataclass(frozen=True)
class TrafficMix:
    """Aggregate demand of benign and attack traffic plus the trusted share."""

    legit_demand: float
    attack_demand: float
    trust_fraction: float = 0.0

    def __post_init__(self) -> None:
        if not self.legit_demand >= 0.0:
            raise ValueError(f"legit_demand must be >= 0, got {self.legit_demand}")
        if not self.attack_demand >= 0.0:
            raise ValueError(f"attack_demand must be >= 0, got {self.attack_demand}")
        if not 0.0 <= self.trust_fraction <= 1.0:
            raise ValueError(f"trust_fraction must be in [0, 1], got {self.trust_fraction}")

    @property
    def t_trusted(self) -> float:
        return self.trust_fraction * self.legit_demand

    @property
    def t_susp_benign(self) -> float:
        return (1.0 - self.trust_fraction) * self.legit_demand

    @property
    def t_suspicious(self) -> float:
        return self.t_susp_benign + self.attack_demand

    @property
    def t_total(self) -> float:
        return self.legit_demand + self.attack_demand


class Quantities(NamedTuple):
    t_trusted: float
    t_susp_benign: float
    t_suspicious: float
    t_total: float


def derive_quantities(mix: TrafficMix) -> Quantities:
    """Return trusted, suspicious-benign, suspicious and total demand."""
    return Quantities(mix.t_trusted, mix.t_susp_benign, mix.t_suspicious, mix.t_total)


class FlowClass(str, Enum):
    BOT = "bot"
    LEGIT = "legit"


@dataclass(frozen=True)
class Flow:
    id: str
    rate: float  # Mbps
    flow_class: FlowClass
    rate_adaptive: bool = True
    detected: bool = False

    def __post_init__(self) -> None:
        if not self.rate >= 0.0:
            raise ValueError(f"flow {self.id}: rate must be >= 0, got {self.rate}")
        if self.flow_class is FlowClass.LEGIT and self.detected:
            raise ValueError(f"flow {self.id}: legit flows cannot be marked detected")

    @property
    def is_bot(self) -> bool:
        return self.flow_class is FlowClass.BOT


@dataclass(frozen=True)
class FlowSet:
    flows: tuple[Flow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "flows", tuple(self.flows))
        ids = [f.id for f in self.flows]
        if len(set(ids)) != len(ids):
            raise ValueError("flow ids must be unique")

    def __len__(self) -> int:
        return len(self.flows)

    def __iter__(self):
        return iter(self.flows)

    @property
    def bots(self) -> tuple[Flow, ...]:
        return tuple(f for f in self.flows if f.is_bot)

    @property
    def legit(self) -> tuple[Flow, ...]:
        return tuple(f for f in self.flows if not f.is_bot)

    def demand_gbps(self, flow_class: FlowClass | None = None) -> float:
        """Summed offered rate in Gbps, optionally restricted to one class."""
        rates = (f.rate for f in self.flows if flow_class is None or f.flow_class is flow_class)
        return sum(rates) / MBPS_PER_GBPS


def _even_flows(prefix: str, count: int, rate: float, cls: FlowClass, adaptive: bool) -> Iterable[Flow]:
    width = len(str(max(count - 1, 0)))
    for i in range(count):
        yield Flow(f"{prefix}{i:0{width}d}", rate, cls, rate_adaptive=adaptive)


def expand_flows(
    mix: TrafficMix, legit_count: int, bot_count: int, adaptive_bots: bool = False
) -> FlowSet:
    """Split each class of a mix evenly over the given number of flows.

    Legit flows are always rate-adaptive. Raises ValueError if a class has
    nonzero demand but no flows to carry it.
    """
    if legit_count < 0 or bot_count < 0:
        raise ValueError("flow counts must be >= 0")
    if mix.legit_demand > 0 and legit_count == 0:
        raise ValueError("nonzero legit demand needs legit_count >= 1")
    if mix.attack_demand > 0 and bot_count == 0:
        raise ValueError("nonzero attack demand needs bot_count >= 1")

    flows: list[Flow] = []
    if legit_count:
        rate = mix.legit_demand * MBPS_PER_GBPS / legit_count
        flows.extend(_even_flows("legit-", legit_count, rate, FlowClass.LEGIT, True))
    if bot_count:
        rate = mix.attack_demand * MBPS_PER_GBPS / bot_count
        flows.extend(_even_flows("bot-", bot_count, rate, FlowClass.BOT, adaptive_bots))
    return FlowSet(tuple(flows))
