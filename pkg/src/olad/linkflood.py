"""Link-flooding attacks: bandwidth sharing, attacker sizing and bot detection.

Bots are found by temporary bandwidth expansion (TBE): extra capacity is
offered to a partition of flows and the ones that do not speed up are
flagged and black-holed. With topology-limited expansion this takes several
rounds; with enough backup wavelengths a single round tests every flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

from olad.traffic import MBPS_PER_GBPS, Flow, FlowSet, TrafficMix, expand_flows

DETECTION_TARGET = 0.9


class ExpansionMode(str, Enum):
    MNETWORK = "mnetwork"
    MIDEAL = "mideal"


@dataclass(frozen=True)
class LinkFloodScenario:
    link_capacity: float  # Gbps
    guaranteed_rate: float  # Mbps
    flows: FlowSet
    tbe_duration: float = 5.0  # s
    rounds_to_90: int = 10
    expansion_mode: ExpansionMode = ExpansionMode.MNETWORK

    def __post_init__(self) -> None:
        object.__setattr__(self, "expansion_mode", ExpansionMode(self.expansion_mode))
        if not self.link_capacity > 0:
            raise ValueError(f"link_capacity must be > 0, got {self.link_capacity}")
        if not self.guaranteed_rate > 0:
            raise ValueError(f"guaranteed_rate must be > 0, got {self.guaranteed_rate}")
        if not self.tbe_duration > 0:
            raise ValueError(f"tbe_duration must be > 0, got {self.tbe_duration}")
        if self.expansion_mode is ExpansionMode.MNETWORK and not 5 <= self.rounds_to_90 <= 10:
            raise ValueError(f"rounds_to_90 must be in [5, 10], got {self.rounds_to_90}")

    @property
    def rounds(self) -> int:
        if self.expansion_mode is ExpansionMode.MIDEAL:
            return 1
        return self.rounds_to_90


class TimelineStep(NamedTuple):
    time: float
    detected_fraction: float
    legit_goodput: float


@dataclass(frozen=True)
class DetectionTimeline:
    steps: tuple[TimelineStep, ...]
    mitigation_time: float
    final_flows: FlowSet = field(default_factory=FlowSet)


class AttackSize(NamedTuple):
    bot_count: int
    attack_volume: float


def share_rates(rates: Sequence[float], capacity: float) -> list[float]:
    """Scale offered rates down proportionally when they exceed ``capacity``."""
    offered = math.fsum(rates)
    if offered <= capacity:
        return list(rates)
    scale = capacity / offered
    return [r * scale for r in rates]


def fair_share(scenario: LinkFloodScenario, flows: Sequence[Flow] | None = None) -> dict[str, float]:
    """Delivered rate in Mbps per flow id on the target link."""
    flows = scenario.flows.flows if flows is None else flows
    delivered = share_rates([f.rate for f in flows], scenario.link_capacity * MBPS_PER_GBPS)
    return {f.id: d for f, d in zip(flows, delivered)}


def legit_goodput(scenario: LinkFloodScenario, flows: Sequence[Flow] | None = None) -> float:
    flows = scenario.flows.flows if flows is None else flows
    delivered = fair_share(scenario, flows)
    return math.fsum(delivered[f.id] for f in flows if not f.is_bot) / MBPS_PER_GBPS


def required_attack(
    link_capacity: float, guaranteed_rate: float, reduction_factor: float, bot_rate: float
) -> AttackSize:
    """Attack volume (Gbps) and bot count needed to cut legit rates by ``reduction_factor``."""
    if not (link_capacity > 0 and guaranteed_rate > 0 and bot_rate > 0):
        raise ValueError("link_capacity, guaranteed_rate and bot_rate must be > 0")
    if not reduction_factor > 1:
        raise ValueError(f"reduction_factor must be > 1, got {reduction_factor}")
    volume = link_capacity * reduction_factor
    bots = math.ceil(volume * MBPS_PER_GBPS / bot_rate - 1e-9)
    return AttackSize(bots, volume)


def sized_scenario(
    link_capacity: float = 10.0,
    guaranteed_rate: float = 100.0,
    reduction_factor: float = 10.0,
    bot_rate: float = 10.0,
    *,
    legit_count: int | None = None,
    bot_count: int | None = None,
    adaptive_bots: bool = False,
    tbe_duration: float = 5.0,
    rounds_to_90: int = 10,
    expansion_mode: ExpansionMode = ExpansionMode.MNETWORK,
) -> LinkFloodScenario:
    """Build a scenario where every legit sender offers its guaranteed rate.

    By default the link is exactly filled by legit senders and the attacker
    is sized with :func:`required_attack`.
    """
    if legit_count is None:
        legit_count = round(link_capacity * MBPS_PER_GBPS / guaranteed_rate)
    if bot_count is None:
        bot_count = required_attack(link_capacity, guaranteed_rate, reduction_factor, bot_rate).bot_count
    mix = TrafficMix(
        legit_demand=legit_count * guaranteed_rate / MBPS_PER_GBPS,
        attack_demand=bot_count * bot_rate / MBPS_PER_GBPS,
    )
    flows = expand_flows(mix, legit_count, bot_count, adaptive_bots)
    return LinkFloodScenario(
        link_capacity, guaranteed_rate, flows, tbe_duration, rounds_to_90, expansion_mode
    )


def simulate_detection(scenario: LinkFloodScenario) -> DetectionTimeline:
    """Run TBE rounds until 90% of bots are flagged.

    Detection progresses linearly, ``0.9 * r / R`` after round ``r`` of ``R``.
    Bots are flagged in flow-set order and black-holed at the round boundary;
    legit goodput is then recomputed on the surviving flows. The last 10% of
    bots are never found.
    """
    flows = list(scenario.flows.flows)
    bot_idx = [i for i, f in enumerate(flows) if f.is_bot]
    if not bot_idx:
        raise ValueError("simulate_detection needs at least one bot flow")
    if any(flows[i].rate_adaptive for i in bot_idx):
        raise ValueError("rate-adaptive bots cannot be told apart by bandwidth expansion")

    rounds = scenario.rounds
    steps = [TimelineStep(0.0, 0.0, legit_goodput(scenario, flows))]
    flagged = 0
    for r in range(1, rounds + 1):
        fraction = r / rounds * DETECTION_TARGET
        target = math.ceil(fraction * len(bot_idx) - 1e-9)
        for i in bot_idx[flagged:target]:
            f = flows[i]
            flows[i] = Flow(f.id, f.rate, f.flow_class, f.rate_adaptive, detected=True)
        flagged = target
        alive = [f for f in flows if not f.detected]
        steps.append(TimelineStep(r * scenario.tbe_duration, fraction, legit_goodput(scenario, alive)))

    mitigation = next(s.time for s in steps if s.detected_fraction >= DETECTION_TARGET)
    return DetectionTimeline(tuple(steps), mitigation, FlowSet(tuple(flows)))
