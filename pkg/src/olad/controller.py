"""Optical-layer defense controller.

The enterprise network is a multi-graph whose edges are wavelengths. When an
attack is detected the controller borrows backup wavelengths (and, as a last
resort, preempts low-priority ones) on the affected link, switches them over
to carry trusted traffic, and hands them back once the attack is over. Every
step is recorded in a timestamped event log.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from olad.traffic import TrafficMix

CAPACITIES = (1, 10, 25, 40, 80, 100)
DEFAULT_SWITCH_DELAY_US = 100.0


class Role(str, Enum):
    ACTIVE = "active"
    BACKUP = "backup"
    LOW_PRIORITY = "low-priority"


class LinkState(str, Enum):
    IDLE = "idle"
    CARRYING = "carrying"
    RECONFIGURING = "reconfiguring"


class Phase(str, Enum):
    NORMAL = "Normal"
    ATTACK_DETECTED = "AttackDetected"
    RECONFIGURING = "Reconfiguring"
    MITIGATING = "Mitigating"
    RESTORED = "Restored"


_NEXT_PHASE = {
    Phase.NORMAL: Phase.ATTACK_DETECTED,
    Phase.ATTACK_DETECTED: Phase.RECONFIGURING,
    Phase.RECONFIGURING: Phase.MITIGATING,
    Phase.MITIGATING: Phase.RESTORED,
    Phase.RESTORED: Phase.NORMAL,
}


class InsufficientCapacity(Exception):
    """The link's spare wavelengths cannot cover the requested demand."""

    def __init__(self, demand: float, available: float) -> None:
        self.demand = demand
        self.available = available
        self.shortfall = demand - available
        super().__init__(
            f"insufficient spare capacity: need {demand:.3f} Gbps, "
            f"have {available:.3f} Gbps (shortfall {self.shortfall:.3f} Gbps)"
        )


class IllegalTransition(Exception):
    pass


def link_key(x: str, y: str) -> frozenset[str]:
    if x == y:
        raise ValueError(f"a link needs two distinct endpoints, got {x!r} twice")
    return frozenset((x, y))


@dataclass(frozen=True)
class Wavelength:
    id: int
    endpoints: frozenset[str]
    capacity: int
    role: Role = Role.ACTIVE
    state: LinkState = LinkState.IDLE
    carrying: str | None = None
    load: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "endpoints", frozenset(self.endpoints))
        object.__setattr__(self, "role", Role(self.role))
        object.__setattr__(self, "state", LinkState(self.state))
        if len(self.endpoints) != 2:
            raise ValueError(f"wavelength {self.id}: needs two distinct endpoints")
        if self.capacity not in CAPACITIES:
            raise ValueError(f"wavelength {self.id}: capacity {self.capacity} not in {CAPACITIES}")
        if (self.state is LinkState.CARRYING) != (self.carrying is not None):
            raise ValueError(f"wavelength {self.id}: carrying label must match state")
        if not 0.0 <= self.load <= self.capacity:
            raise ValueError(f"wavelength {self.id}: load {self.load} exceeds capacity {self.capacity}")

    @property
    def label(self) -> str:
        a, b = sorted(self.endpoints)
        return f"wavelength {self.id} {a}-{b} {self.capacity}G {self.role.value}"

    @property
    def status(self) -> str:
        if self.state is LinkState.CARRYING:
            return f"carrying({self.carrying})"
        return self.state.value


@dataclass(frozen=True)
class NetworkGraph:
    nodes: frozenset[str]
    wavelengths: tuple[Wavelength, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "wavelengths", tuple(self.wavelengths))
        ids = [w.id for w in self.wavelengths]
        if len(set(ids)) != len(ids):
            raise ValueError("wavelength ids must be unique")
        for w in self.wavelengths:
            if not w.endpoints <= self.nodes:
                raise ValueError(f"wavelength {w.id}: endpoints {sorted(w.endpoints)} not in graph")

    def get(self, wid: int) -> Wavelength:
        for w in self.wavelengths:
            if w.id == wid:
                return w
        raise KeyError(wid)

    def on_link(self, link: Iterable[str]) -> tuple[Wavelength, ...]:
        key = frozenset(link)
        return tuple(w for w in self.wavelengths if w.endpoints == key)

    def with_wavelength(self, new: Wavelength) -> NetworkGraph:
        return replace(self, wavelengths=tuple(new if w.id == new.id else w for w in self.wavelengths))


def is_spare(w: Wavelength) -> bool:
    """Backup channels sitting idle, or low-priority channels that may be preempted."""
    if w.role is Role.BACKUP:
        return w.state is LinkState.IDLE
    if w.role is Role.LOW_PRIORITY:
        return w.state is not LinkState.RECONFIGURING and w.carrying in (None, "low-priority")
    return False


def _preference(w: Wavelength) -> tuple:
    return (w.role is Role.LOW_PRIORITY, -w.capacity, w.id)


def plan_allocation(graph: NetworkGraph, link: Iterable[str], demand: float) -> tuple[Wavelength, ...]:
    """Choose spare wavelengths on ``link`` whose capacities cover ``demand``.

    Backup channels are taken before low-priority ones, largest first, lower
    id first among equals. The greedy pick is then refined: each channel is
    swapped for the smallest unused channel of the same role that still
    keeps the demand covered, and channels that are no longer needed are
    dropped (low-priority first, smallest first).
    """
    if not demand > 0:
        raise ValueError(f"demand must be > 0, got {demand}")
    spare = sorted((w for w in graph.on_link(link) if is_spare(w)), key=_preference)
    available = sum(w.capacity for w in spare)
    if available < demand:
        raise InsufficientCapacity(demand, available)

    chosen: list[Wavelength] = []
    total = 0
    for w in spare:
        if total >= demand:
            break
        chosen.append(w)
        total += w.capacity

    taken = {w.id for w in chosen}
    for i, w in enumerate(chosen):
        fits = [
            u
            for u in spare
            if u.id not in taken
            and u.role is w.role
            and u.capacity < w.capacity
            and total - w.capacity + u.capacity >= demand
        ]
        if fits:
            smaller = min(fits, key=lambda u: (u.capacity, u.id))
            chosen[i] = smaller
            taken.discard(w.id)
            taken.add(smaller.id)
            total += smaller.capacity - w.capacity

    drop_order = sorted(chosen, key=lambda w: (w.role is not Role.LOW_PRIORITY, w.capacity, -w.id))
    for w in drop_order:
        if total - w.capacity >= demand:
            chosen.remove(w)
            total -= w.capacity
    return tuple(sorted(chosen, key=_preference))


def detect_trigger(mix: TrafficMix, victim_capacity: float, headroom: float = 1.0) -> bool:
    if not headroom >= 1.0:
        raise ValueError(f"headroom must be >= 1, got {headroom}")
    return mix.t_total > headroom * victim_capacity


class Event(NamedTuple):
    timestamp_us: float
    phase: Phase
    text: str

    def format(self) -> str:
        return f"{self.timestamp_us:.3f}\t{self.phase.value}\t{self.text}"


@dataclass(frozen=True)
class ControllerState:
    phase: Phase
    event_log: tuple[Event, ...]
    graph: NetworkGraph
    clock_us: float = 0.0


def format_event_log(events: Iterable[Event]) -> str:
    return "".join(e.format() + "\n" for e in events)


@dataclass
class Controller:
    """Single-owner reconfiguration state machine.

    Use :attr:`state` to take an immutable snapshot for inspection.
    """

    graph: NetworkGraph
    switch_delay_us: float = DEFAULT_SWITCH_DELAY_US
    phase: Phase = Phase.NORMAL
    clock_us: float = 0.0
    events: list[Event] = field(default_factory=list)
    _saved: dict[int, Wavelength] = field(default_factory=dict, repr=False)

    @property
    def state(self) -> ControllerState:
        return ControllerState(self.phase, tuple(self.events), self.graph, self.clock_us)

    @property
    def event_log(self) -> str:
        return format_event_log(self.events)

    def _log(self, text: str) -> None:
        self.events.append(Event(self.clock_us, self.phase, text))

    def _advance(self, to: Phase) -> None:
        if _NEXT_PHASE[self.phase] is not to:
            raise IllegalTransition(f"cannot go from {self.phase.value} to {to.value}")
        self.phase = to

    def _require(self, phase: Phase, action: str) -> None:
        if self.phase is not phase:
            raise IllegalTransition(f"{action} requires phase {phase.value}, controller is {self.phase.value}")

    def observe(self, mix: TrafficMix, victim_capacity: float, headroom: float = 1.0) -> bool:
        """Raise the alarm if offered load exceeds ``headroom`` x capacity."""
        self._require(Phase.NORMAL, "observe")
        limit = f"{headroom:.3f} x {victim_capacity:.3f} Gbps"
        if not detect_trigger(mix, victim_capacity, headroom):
            self._log(f"no attack: offered {mix.t_total:.3f} Gbps <= {limit}")
            return False
        self._advance(Phase.ATTACK_DETECTED)
        self._log(f"attack detected: offered {mix.t_total:.3f} Gbps > {limit}")
        return True

    def plan(self, link: Iterable[str], demand: float) -> tuple[Wavelength, ...]:
        return plan_allocation(self.graph, link, demand)

    def apply_reconfiguration(
        self,
        plan: Sequence[Wavelength],
        switch_delay_us: float | None = None,
        *,
        demand: float = 0.0,
        traffic: str = "trusted",
    ) -> ControllerState:
        """Switch every planned wavelength over to ``traffic``.

        Each wavelength goes through two timed transitions, into reconfiguring
        and then into carrying, each taking ``switch_delay_us``. ``demand`` Gbps
        is spread over the plan in order. Preempted low-priority traffic is
        dropped for the duration of the mitigation.
        """
        self._require(Phase.ATTACK_DETECTED, "apply_reconfiguration")
        if not plan:
            raise ValueError("plan must contain at least one wavelength")
        delay = self.switch_delay_us if switch_delay_us is None else switch_delay_us
        if not delay >= 0:
            raise ValueError(f"switch delay must be >= 0, got {delay}")
        current = [self.graph.get(w.id) for w in plan]
        for w in current:
            if not is_spare(w):
                raise ValueError(f"{w.label} is not available ({w.status})")
        if demand > sum(w.capacity for w in current):
            raise InsufficientCapacity(demand, sum(w.capacity for w in current))

        self._advance(Phase.RECONFIGURING)
        remaining = demand
        for n, w in enumerate(current):
            self._saved[w.id] = w
            note = ""
            if w.state is LinkState.CARRYING:
                note = f"; preempted {w.load:.3f} Gbps of {w.carrying} traffic (dropped)"
            switching = replace(w, state=LinkState.RECONFIGURING, carrying=None, load=0.0)
            self.graph = self.graph.with_wavelength(switching)
            self.clock_us += delay
            self._log(f"{w.label}: {w.status} -> {switching.status}{note}")

            load = min(float(w.capacity), remaining)
            remaining -= load
            live = replace(switching, state=LinkState.CARRYING, carrying=traffic, load=load)
            self.graph = self.graph.with_wavelength(live)
            self.clock_us += delay
            if n == len(current) - 1:
                self._advance(Phase.MITIGATING)
            self._log(f"{w.label}: {switching.status} -> {live.status} load {load:.3f} Gbps")
        return self.state

    def release(self, switch_delay_us: float | None = None) -> ControllerState:
        """Hand every borrowed wavelength back in its pre-attack state."""
        self._require(Phase.MITIGATING, "release")
        delay = self.switch_delay_us if switch_delay_us is None else switch_delay_us
        self._advance(Phase.RESTORED)
        for wid, original in self._saved.items():
            now = self.graph.get(wid)
            self.graph = self.graph.with_wavelength(original)
            self.clock_us += delay
            self._log(f"{original.label}: {now.status} -> {original.status}")
        self._saved.clear()
        self._advance(Phase.NORMAL)
        self._log("pre-attack configuration restored")
        return self.state
