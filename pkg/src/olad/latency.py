"""Latency of legitimate traffic under each defense.

Each model is a fixed delay that stretches linearly with the demand/capacity
ratio once the bottleneck saturates. Times are in milliseconds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from olad.traffic import TrafficMix


class Variant(str, Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"


@dataclass(frozen=True)
class LatencyParams:
    delta: float = 100.0
    epsilon: float = 100.0
    apl: float = 0.04
    scaling_factor: float = 2.0
    victim_capacity: float = 10.0
    scrubber_capacity: float = 40.0

    def __post_init__(self) -> None:
        if not self.delta > 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not 0.0 <= self.apl <= 1.0:
            raise ValueError(f"apl must be in [0, 1], got {self.apl}")
        if not self.scaling_factor >= 1.0:
            raise ValueError(f"scaling_factor must be >= 1, got {self.scaling_factor}")
        if not (self.victim_capacity > 0 and self.scrubber_capacity > 0):
            raise ValueError("capacities must be > 0")


def stretched(base: float, demand: float, capacity: float) -> float:
    if demand <= capacity:
        return base
    return base * demand / capacity


def latency_baseline(t_total: float, p: LatencyParams) -> float:
    return stretched(p.delta, t_total, p.victim_capacity)


def latency_scrubber(t_total: float, p: LatencyParams) -> float:
    return stretched(p.delta + p.epsilon, t_total, p.scrubber_capacity)


def latency_spiffy(t_total: float, base_capacity: float, p: LatencyParams) -> float:
    """Detour latency while the link is expanded to ``scaling_factor`` times its size."""
    if not base_capacity > 0:
        raise ValueError(f"base_capacity must be > 0, got {base_capacity}")
    return stretched(p.delta * (1.0 + p.apl), t_total, p.scaling_factor * base_capacity)


def latency_olad(
    mix: TrafficMix,
    p: LatencyParams,
    variant: Variant = Variant.DIRECT,
    base_capacity: float | None = None,
) -> float:
    """Demand-weighted mean latency of trusted and suspicious-benign traffic.

    Trusted traffic rides its own uncongested wavelength and sees ``delta``.
    Suspicious-benign traffic sees the defense path: the scrubber for direct
    attacks, the expanded detour for indirect ones. ``base_capacity`` defaults
    to the victim capacity.
    """
    if not mix.legit_demand > 0:
        raise ValueError("latency_olad needs legit_demand > 0")
    variant = Variant(variant)
    if variant is Variant.DIRECT:
        defense = latency_scrubber(mix.t_total, p)
    else:
        base = p.victim_capacity if base_capacity is None else base_capacity
        defense = latency_spiffy(mix.t_total, base, p)
    trusted, susp = mix.t_trusted, mix.t_susp_benign
    return (p.delta * trusted + defense * susp) / (trusted + susp)
