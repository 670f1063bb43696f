"""Throughput, latency and controller models for optical-layer DDoS defense."""

from olad.controller import (
    Controller,
    InsufficientCapacity,
    NetworkGraph,
    Phase,
    Role,
    Wavelength,
    detect_trigger,
    plan_allocation,
)
from olad.direct import (
    DirectDefenseParams,
    goodput_baseline,
    goodput_olad,
    goodput_scrubber,
    improvement_points,
)
from olad.latency import (
    LatencyParams,
    Variant,
    latency_baseline,
    latency_olad,
    latency_scrubber,
    latency_spiffy,
)
from olad.linkflood import (
    ExpansionMode,
    LinkFloodScenario,
    fair_share,
    required_attack,
    simulate_detection,
)
from olad.traffic import Flow, FlowClass, FlowSet, TrafficMix, derive_quantities, expand_flows

__version__ = "0.1.0"
