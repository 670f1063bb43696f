"""Attack-strength sweeps, timelines and traces as delimited tables.

Numbers are written with exactly three fractional digits and LF line endings
so regenerated files compare byte-for-byte.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from olad.config import ScenarioConfig
from olad.controller import Controller
from olad.direct import goodput_baseline, goodput_olad, goodput_scrubber
from olad.latency import Variant, latency_baseline, latency_olad, latency_scrubber, latency_spiffy
from olad.linkflood import ExpansionMode, simulate_detection


@dataclass
class Table:
    columns: list[str]
    rows: list[list[object]] = field(default_factory=list)

    def column(self, name: str) -> list[object]:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def records(self) -> list[dict[str, object]]:
        return [dict(zip(self.columns, r)) for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_cell(v) for v in row) + "\n")
        return buf.getvalue()


def format_cell(v: object) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        # keeps "-0.000" out of golden files
        return f"{v:.3f}" if v != 0 else "0.000"
    return str(v)


def _tag(value: float) -> str:
    return f"{value:.2f}"


def direct_columns(fractions: Sequence[float]) -> list[str]:
    cols = ["attack_gbps", "baseline_goodput", "scrubber_goodput"]
    for f in fractions:
        cols += [f"olad_trusted_f{_tag(f)}", f"olad_scrubbed_f{_tag(f)}", f"olad_total_f{_tag(f)}"]
    return cols


def run_direct_sweep(config: ScenarioConfig) -> Table:
    """Goodput (Gbps) of legit senders for each attack strength."""
    table = Table(direct_columns(config.trust_fractions))
    p = config.network
    for attack in config.sweep.values():
        mix = config.mix(attack, 0.0)
        row: list[object] = [attack, goodput_baseline(mix, p), goodput_scrubber(mix, p)]
        for f in config.trust_fractions:
            row.extend(goodput_olad(config.mix(attack, f), p))
        table.rows.append(row)
    return table


def latency_columns(config: ScenarioConfig) -> list[str]:
    cols = ["attack_gbps", "total_gbps", "latency_baseline_ms", "latency_scrubber_ms"]
    cols += [f"latency_spiffy_apl{_tag(a)}_ms" for a in config.latency.apls]
    cols += [f"latency_olad_f{_tag(f)}_ms" for f in config.trust_fractions]
    return cols


def run_latency_sweep(config: ScenarioConfig) -> Table:
    """Latency (ms) of legit traffic for each attack strength.

    The O-LAD columns use the direct (scrubber) variant.
    """
    table = Table(latency_columns(config))
    lat = config.latency
    p = lat.params(config.network)
    for attack in config.sweep.values():
        total = config.mix(attack).t_total
        row: list[object] = [attack, total, latency_baseline(total, p), latency_scrubber(total, p)]
        for apl in lat.apls:
            row.append(latency_spiffy(total, lat.base_capacity, lat.params(config.network, apl)))
        for f in config.trust_fractions:
            row.append(latency_olad(config.mix(attack, f), p, Variant.DIRECT, lat.base_capacity))
        table.rows.append(row)
    return table


LINKFLOOD_COLUMNS = ["mode", "round", "time_s", "detected_fraction", "legit_goodput_gbps"]


def run_linkflood(config: ScenarioConfig) -> Table:
    """Detection timelines for topology-limited and ideal expansion, one after the other."""
    table = Table(list(LINKFLOOD_COLUMNS))
    for mode in (ExpansionMode.MNETWORK, ExpansionMode.MIDEAL):
        timeline = simulate_detection(config.linkflood.scenario(mode))
        for r, step in enumerate(timeline.steps):
            table.rows.append([mode.value, r, step.time, step.detected_fraction, step.legit_goodput])
    return table


def run_controller_trace(config: ScenarioConfig) -> Controller:
    """Detect, plan, apply and release against the configured graph.

    Trusted demand of the first trust fraction is moved onto spare
    wavelengths. Raises InsufficientCapacity when the link cannot cover it.
    """
    cc = config.controller
    ctl = Controller(cc.graph, cc.switch_delay_us)
    mix = config.mix()
    if not ctl.observe(mix, config.network.victim_capacity, cc.headroom):
        return ctl
    plan = ctl.plan(cc.link, mix.t_trusted)
    ctl.apply_reconfiguration(plan, demand=mix.t_trusted)
    ctl.release()
    return ctl


FIGURE_FILES = ("direct.csv", "latency.csv", "linkflood.csv", "controller.log")


def write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run_figures(config: ScenarioConfig, outdir: Path) -> list[Path]:
    """Write all four datasets into ``outdir``; returns the paths written."""
    outdir.mkdir(parents=True, exist_ok=True)
    outputs: Iterable[tuple[str, str]] = (
        ("direct.csv", run_direct_sweep(config).to_csv()),
        ("latency.csv", run_latency_sweep(config).to_csv()),
        ("linkflood.csv", run_linkflood(config).to_csv()),
        ("controller.log", run_controller_trace(config).event_log),
    )
    written = []
    for name, text in outputs:
        path = outdir / name
        write_text(path, text)
        written.append(path)
    return written
