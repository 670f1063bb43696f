"""Goodput models for direct volumetric attacks.

Under saturation every bit is treated alike, so a class receives capacity in
proportion to its share of the offered load. The scrubber removes all attack
traffic but can only ingest ``scrubber_capacity`` Gbps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from olad.traffic import TrafficMix


@dataclass(frozen=True)
class DirectDefenseParams:
    victim_capacity: float = 10.0
    scrubber_capacity: float = 40.0

    def __post_init__(self) -> None:
        if not self.victim_capacity > 0:
            raise ValueError(f"victim_capacity must be > 0, got {self.victim_capacity}")
        if not self.scrubber_capacity > 0:
            raise ValueError(f"scrubber_capacity must be > 0, got {self.scrubber_capacity}")


class GoodputBreakdown(NamedTuple):
    trusted: float
    scrubbed: float
    total: float


class Improvement(NamedTuple):
    scrubber_pct: float
    olad_pct: float
    delta_points: float


def proportional_share(share: float, offered: float, capacity: float) -> float:
    """Portion of ``capacity`` that ``share`` gets out of ``offered`` load."""
    if offered <= capacity:
        return share
    return capacity * share / offered


def goodput_baseline(mix: TrafficMix, p: DirectDefenseParams) -> float:
    return proportional_share(mix.legit_demand, mix.t_total, p.victim_capacity)


def goodput_scrubber(mix: TrafficMix, p: DirectDefenseParams) -> float:
    out = proportional_share(mix.legit_demand, mix.t_total, p.scrubber_capacity)
    return min(out, p.victim_capacity)


def goodput_olad(mix: TrafficMix, p: DirectDefenseParams) -> GoodputBreakdown:
    """Trusted traffic bypasses the scrubber; everything else goes through it.

    If the victim link cannot take both, trusted traffic keeps priority and the
    scrubbed share is cut first.
    """
    trusted = min(mix.t_trusted, p.victim_capacity)
    scrubbed = proportional_share(mix.t_susp_benign, mix.t_suspicious, p.scrubber_capacity)
    scrubbed = min(scrubbed, p.victim_capacity - trusted)
    return GoodputBreakdown(trusted, scrubbed, trusted + scrubbed)


def improvement_points(mix: TrafficMix, p: DirectDefenseParams) -> Improvement:
    if not mix.legit_demand > 0:
        raise ValueError("improvement_points needs legit_demand > 0")
    scrubber_pct = 100.0 * goodput_scrubber(mix, p) / mix.legit_demand
    olad_pct = 100.0 * goodput_olad(mix, p).total / mix.legit_demand
    return Improvement(scrubber_pct, olad_pct, olad_pct - scrubber_pct)
