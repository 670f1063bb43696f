"""Scenario files.

A scenario is a YAML mapping of sections. Every section and key is optional
and defaults to the reference scenario (7 Gbps of legit traffic into a
10 Gbps victim behind a 40 Gbps scrubber). Unknown keys are errors. See
``scenarios/paper.yaml`` for a commented example.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import yaml

from olad.controller import NetworkGraph, Role, Wavelength, link_key
from olad.direct import DirectDefenseParams
from olad.latency import LatencyParams
from olad.linkflood import ExpansionMode, LinkFloodScenario, sized_scenario
from olad.traffic import TrafficMix

PAPER_SCENARIO = Path(__file__).with_name("scenarios") / "paper.yaml"


class ConfigError(ValueError):
    """Invalid scenario content. ``line`` is 1-based when known."""

    def __init__(self, message: str, source: str = "<config>", line: int | None = None) -> None:
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class SweepSpec:
    attack_min: float = 0.0
    attack_max: float = 100.0
    attack_step: float = 1.0

    def __post_init__(self) -> None:
        if not self.attack_min >= 0:
            raise ValueError(f"attack_min must be >= 0, got {self.attack_min}")
        if not self.attack_min <= self.attack_max:
            raise ValueError("attack_min must be <= attack_max")
        if not self.attack_step > 0:
            raise ValueError(f"attack_step must be > 0, got {self.attack_step}")

    def values(self) -> list[float]:
        # index-based to avoid accumulating float error over long sweeps
        n = int((self.attack_max - self.attack_min) / self.attack_step + 1e-9)
        return [self.attack_min + i * self.attack_step for i in range(n + 1)]


@dataclass(frozen=True)
class LatencySettings:
    delta: float = 100.0
    epsilon: float = 100.0
    apls: tuple[float, ...] = (0.04, 0.24)
    scaling_factor: float = 2.0
    base_capacity: float = 10.0

    def params(self, network: DirectDefenseParams, apl: float | None = None) -> LatencyParams:
        return LatencyParams(
            delta=self.delta,
            epsilon=self.epsilon,
            apl=self.apls[0] if apl is None else apl,
            scaling_factor=self.scaling_factor,
            victim_capacity=network.victim_capacity,
            scrubber_capacity=network.scrubber_capacity,
        )


@dataclass(frozen=True)
class LinkFloodSettings:
    link_capacity: float = 10.0
    guaranteed_rate: float = 100.0
    reduction_factor: float = 10.0
    bot_rate: float = 10.0
    legit_count: int | None = None
    bot_count: int | None = None
    adaptive_bots: bool = False
    tbe_duration: float = 5.0
    rounds_to_90: int = 10

    def scenario(self, mode: ExpansionMode) -> LinkFloodScenario:
        return sized_scenario(
            self.link_capacity,
            self.guaranteed_rate,
            self.reduction_factor,
            self.bot_rate,
            legit_count=self.legit_count,
            bot_count=self.bot_count,
            adaptive_bots=self.adaptive_bots,
            tbe_duration=self.tbe_duration,
            rounds_to_90=self.rounds_to_90,
            expansion_mode=mode,
        )


def _default_graph() -> NetworkGraph:
    ab = link_key("A", "B")
    return NetworkGraph(
        frozenset({"A", "B"}),
        (
            Wavelength(0, ab, 10, Role.ACTIVE, "carrying", "suspicious", 10.0),
            Wavelength(1, ab, 10, Role.BACKUP),
        ),
    )


@dataclass(frozen=True)
class ControllerSettings:
    headroom: float = 1.0
    switch_delay_us: float = 100.0
    link: tuple[str, str] = ("A", "B")
    graph: NetworkGraph = field(default_factory=_default_graph)


@dataclass(frozen=True)
class ScenarioConfig:
    traffic: TrafficMix = TrafficMix(7.0, 100.0, 0.4)
    trust_fractions: tuple[float, ...] = (0.4, 0.8)
    network: DirectDefenseParams = DirectDefenseParams()
    latency: LatencySettings = LatencySettings()
    sweep: SweepSpec = SweepSpec()
    linkflood: LinkFloodSettings = LinkFloodSettings()
    controller: ControllerSettings = ControllerSettings()
    output: Path | None = None

    def mix(self, attack: float | None = None, trust_fraction: float | None = None) -> TrafficMix:
        return TrafficMix(
            self.traffic.legit_demand,
            self.traffic.attack_demand if attack is None else attack,
            self.trust_fractions[0] if trust_fraction is None else trust_fraction,
        )


# -- parsing -----------------------------------------------------------------


def _number(v: Any) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise TypeError(f"expected a number, got {v!r}")
    return float(v)


def _integer(v: Any) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"expected an integer, got {v!r}")
    return v


def _optional(conv: Callable[[Any], Any]) -> Callable[[Any], Any]:
    return lambda v: None if v is None else conv(v)


def _boolean(v: Any) -> bool:
    if not isinstance(v, bool):
        raise TypeError(f"expected true/false, got {v!r}")
    return v


def _numbers(v: Any) -> tuple[float, ...]:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return (float(v),)
    if not isinstance(v, list) or not v:
        raise TypeError(f"expected a non-empty list of numbers, got {v!r}")
    return tuple(_number(x) for x in v)


def _pair(v: Any) -> tuple[str, str]:
    if not isinstance(v, list) or len(v) != 2:
        raise TypeError(f"expected a pair of node names, got {v!r}")
    return (str(v[0]), str(v[1]))


def _list(v: Any) -> list:
    if not isinstance(v, list):
        raise TypeError(f"expected a list, got {v!r}")
    return v


def _path(v: Any) -> Path | None:
    return None if v is None else Path(str(v))


SECTIONS: dict[str, dict[str, Callable[[Any], Any]]] = {
    "traffic": {
        "legit_demand": _number,
        "attack_demand": _number,
        "trust_fractions": _numbers,
    },
    "network": {"victim_capacity": _number, "scrubber_capacity": _number},
    "latency": {
        "delta_ms": _number,
        "epsilon_ms": _number,
        "apl": _numbers,
        "scaling_factor": _number,
        "base_capacity": _number,
    },
    "sweep": {"attack_min": _number, "attack_max": _number, "attack_step": _number},
    "linkflood": {
        "link_capacity": _number,
        "guaranteed_rate_mbps": _number,
        "reduction_factor": _number,
        "bot_rate_mbps": _number,
        "legit_count": _optional(_integer),
        "bot_count": _optional(_integer),
        "adaptive_bots": _boolean,
        "tbe_duration_s": _number,
        "rounds_to_90": _integer,
    },
    "controller": {
        "headroom": _number,
        "switch_delay_us": _number,
        "link": _pair,
        "nodes": lambda v: [str(x) for x in _list(v)],
        "wavelengths": _list,
    },
    "output": {"path": _path},
}

WAVELENGTH_KEYS = {"id", "endpoints", "capacity", "role", "state", "carrying", "load"}


def _line_index(node: yaml.Node, prefix: tuple = (), out: dict | None = None) -> dict[tuple, int]:
    """Map each key path (and list index) to the 1-based line it appears on."""
    out = {} if out is None else out
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            path = prefix + (k.value,)
            out[path] = k.start_mark.line + 1
            _line_index(v, path, out)
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            out[prefix + (i,)] = v.start_mark.line + 1
            _line_index(v, prefix + (i,), out)
    return out


class _Parser:
    def __init__(self, text: str, source: str) -> None:
        self.source = source
        try:
            root = yaml.compose(text, Loader=yaml.SafeLoader)
            self.data = yaml.safe_load(text)
        except yaml.MarkedYAMLError as exc:
            mark = exc.problem_mark
            line = mark.line + 1 if mark is not None else None
            raise ConfigError(f"parse error: {exc.problem}", source, line) from None
        self.lines = _line_index(root) if root is not None else {}
        if self.data is None:
            self.data = {}
        if not isinstance(self.data, dict):
            raise ConfigError("top level must be a mapping of sections", source, 1)

    def error(self, message: str, *path: Any) -> ConfigError:
        while path and path not in self.lines:
            path = path[:-1]
        return ConfigError(message, self.source, self.lines.get(path))

    def section(self, name: str) -> dict[str, Any]:
        raw = self.data.get(name, {}) or {}
        if not isinstance(raw, dict):
            raise self.error(f"section '{name}' must be a mapping", name)
        schema = SECTIONS[name]
        out = {}
        for key, value in raw.items():
            if key not in schema:
                raise self.error(f"unknown key '{key}' in section '{name}'", name, key)
            try:
                out[key] = schema[key](value)
            except (TypeError, ValueError) as exc:
                raise self.error(f"{name}.{key}: {exc}", name, key) from None
        return out

    def build(self, what: str, section: str, factory: Callable[..., Any], **kwargs: Any) -> Any:
        try:
            return factory(**kwargs)
        except (TypeError, ValueError) as exc:
            # no per-key location for cross-field errors; point at the section
            raise self.error(f"invalid {what}: {exc}", section) from None

    def wavelengths(self, raw: list) -> list[Wavelength]:
        out = []
        for i, entry in enumerate(raw):
            where = ("controller", "wavelengths", i)
            if not isinstance(entry, dict):
                raise self.error("each wavelength must be a mapping", *where)
            for key in entry:
                if key not in WAVELENGTH_KEYS:
                    raise self.error(f"unknown wavelength key '{key}'", *where, key)
            try:
                a, b = _pair(entry.get("endpoints"))
                wl = Wavelength(
                    id=_integer(entry.get("id", i)),
                    endpoints=link_key(a, b),
                    capacity=_integer(entry.get("capacity")),
                    role=Role(entry.get("role", "active")),
                    state=entry.get("state", "carrying" if entry.get("carrying") else "idle"),
                    carrying=entry.get("carrying"),
                    load=_number(entry.get("load", 0.0)),
                )
            except (TypeError, ValueError) as exc:
                raise self.error(f"wavelength {i}: {exc}", *where) from None
            out.append(wl)
        return out


def parse_config(text: str, source: str = "<config>") -> ScenarioConfig:
    p = _Parser(text, source)
    for name in p.data:
        if name not in SECTIONS:
            raise p.error(f"unknown section '{name}'", name)

    defaults = ScenarioConfig()
    t = p.section("traffic")
    fractions = t.get("trust_fractions", defaults.trust_fractions)
    traffic = p.build(
        "traffic",
        "traffic",
        TrafficMix,
        legit_demand=t.get("legit_demand", defaults.traffic.legit_demand),
        attack_demand=t.get("attack_demand", defaults.traffic.attack_demand),
        trust_fraction=fractions[0],
    )
    for f in fractions:
        if not 0.0 <= f <= 1.0:
            raise p.error(f"trust fraction {f} outside [0, 1]", "traffic", "trust_fractions")

    n = p.section("network")
    network = p.build("network", "network", DirectDefenseParams, **n)

    lat = p.section("latency")
    d = defaults.latency
    latency = LatencySettings(
        delta=lat.get("delta_ms", d.delta),
        epsilon=lat.get("epsilon_ms", d.epsilon),
        apls=lat.get("apl", d.apls),
        scaling_factor=lat.get("scaling_factor", d.scaling_factor),
        base_capacity=lat.get("base_capacity", d.base_capacity),
    )
    for apl in latency.apls:
        p.build("latency", "latency", latency.params, network=network, apl=apl)
    if not latency.base_capacity > 0:
        raise p.error("base_capacity must be > 0", "latency", "base_capacity")

    sweep = p.build("sweep", "sweep", SweepSpec, **p.section("sweep"))

    lf = p.section("linkflood")
    linkflood = LinkFloodSettings(
        link_capacity=lf.get("link_capacity", 10.0),
        guaranteed_rate=lf.get("guaranteed_rate_mbps", 100.0),
        reduction_factor=lf.get("reduction_factor", 10.0),
        bot_rate=lf.get("bot_rate_mbps", 10.0),
        legit_count=lf.get("legit_count"),
        bot_count=lf.get("bot_count"),
        adaptive_bots=lf.get("adaptive_bots", False),
        tbe_duration=lf.get("tbe_duration_s", 5.0),
        rounds_to_90=lf.get("rounds_to_90", 10),
    )
    if linkflood.bot_count == 0:
        raise p.error("link-flood scenario has no bot flows", "linkflood", "bot_count")
    if linkflood.adaptive_bots:
        raise p.error(
            "adaptive bots are not detectable by bandwidth expansion", "linkflood", "adaptive_bots"
        )
    p.build("linkflood", "linkflood", linkflood.scenario, mode=ExpansionMode.MNETWORK)

    c = p.section("controller")
    dc = defaults.controller
    if "wavelengths" in c or "nodes" in c:
        wls = p.wavelengths(c.get("wavelengths", []))
        nodes = c.get("nodes") or sorted({x for w in wls for x in w.endpoints})
        graph = p.build("controller graph", "controller", NetworkGraph, nodes=frozenset(nodes), wavelengths=tuple(wls))
    else:
        graph = dc.graph
    controller = ControllerSettings(
        headroom=c.get("headroom", dc.headroom),
        switch_delay_us=c.get("switch_delay_us", dc.switch_delay_us),
        link=c.get("link", dc.link),
        graph=graph,
    )
    if not controller.headroom >= 1.0:
        raise p.error("headroom must be >= 1", "controller", "headroom")
    if not controller.switch_delay_us >= 0:
        raise p.error("switch_delay_us must be >= 0", "controller", "switch_delay_us")
    if controller.link[0] == controller.link[1]:
        raise p.error("link endpoints must differ", "controller", "link")

    out = p.section("output").get("path")
    return ScenarioConfig(traffic, tuple(fractions), network, latency, sweep, linkflood, controller, out)


def load_config(path: str | Path) -> ScenarioConfig:
    """Read and validate a scenario file. Raises OSError or ConfigError."""
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), str(path))


def default_config() -> ScenarioConfig:
    return load_config(PAPER_SCENARIO)
