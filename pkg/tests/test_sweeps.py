from dataclasses import replace
from pathlib import Path

import pytest

from olad.config import ScenarioConfig, SweepSpec, default_config, parse_config
from olad.controller import InsufficientCapacity
from olad.direct import goodput_baseline, goodput_olad, goodput_scrubber
from olad.latency import latency_olad, latency_scrubber, latency_spiffy
from olad.sweeps import (
    FIGURE_FILES,
    format_cell,
    run_controller_trace,
    run_direct_sweep,
    run_figures,
    run_latency_sweep,
    run_linkflood,
)
from olad.traffic import TrafficMix

GOLDEN = Path(__file__).with_name("golden")


def row_at(table, attack):
    (rec,) = [r for r in table.records() if r["attack_gbps"] == attack]
    return rec


def test_direct_sweep_defaults():
    t = run_direct_sweep(default_config())
    assert len(t.rows) == 101
    rec = row_at(t, 100.0)
    assert rec["scrubber_goodput"] == pytest.approx(2.617, abs=5e-4)
    assert rec["olad_total_f0.40"] == pytest.approx(4.412, abs=5e-4)
    assert t.column("attack_gbps") == sorted(t.column("attack_gbps"))


def test_single_point_sweep():
    cfg = replace(default_config(), sweep=SweepSpec(0, 0, 1))
    t = run_direct_sweep(cfg)
    assert len(t.rows) == 1
    assert all(v == 7.0 for k, v in t.records()[0].items() if k.endswith("goodput") or k.startswith("olad_total"))


def test_zero_trust_column_equals_scrubber():
    cfg = replace(default_config(), trust_fractions=(0.0,), sweep=SweepSpec(0, 200, 1))
    t = run_direct_sweep(cfg)
    assert t.column("olad_total_f0.00") == t.column("scrubber_goodput")


def test_latency_sweep_rows():
    t = run_latency_sweep(default_config())
    assert row_at(t, 100.0)["latency_olad_f0.40_ms"] == pytest.approx(361)
    zero = row_at(t, 0.0)
    assert (zero["latency_scrubber_ms"], zero["latency_baseline_ms"]) == (200, 100)
    knee = row_at(t, 13.0)
    assert (knee["latency_spiffy_apl0.04_ms"], knee["latency_spiffy_apl0.24_ms"]) == (104, pytest.approx(124))


def test_rows_recompute_from_model_operations():
    cfg = default_config()
    p = cfg.network
    for rec in run_direct_sweep(cfg).records():
        a = rec["attack_gbps"]
        assert rec["baseline_goodput"] == goodput_baseline(TrafficMix(7, a), p)
        assert rec["scrubber_goodput"] == goodput_scrubber(TrafficMix(7, a), p)
        assert rec["olad_total_f0.80"] == goodput_olad(TrafficMix(7, a, 0.8), p).total
    lp = cfg.latency.params(p)
    for rec in run_latency_sweep(cfg).records():
        total = rec["total_gbps"]
        assert rec["latency_scrubber_ms"] == latency_scrubber(total, lp)
        assert rec["latency_spiffy_apl0.24_ms"] == latency_spiffy(total, 10, cfg.latency.params(p, 0.24))
        assert rec["latency_olad_f0.40_ms"] == latency_olad(TrafficMix(7, rec["attack_gbps"], 0.4), lp)


def test_linkflood_table():
    t = run_linkflood(default_config())
    net = [r for r in t.records() if r["mode"] == "mnetwork"]
    ideal = [r for r in t.records() if r["mode"] == "mideal"]
    assert net[-1]["time_s"] == 50 and ideal[-1]["time_s"] == 5
    cfg5 = parse_config("linkflood: {rounds_to_90: 5}")
    net5 = [r for r in run_linkflood(cfg5).records() if r["mode"] == "mnetwork"]
    assert net5[-1]["time_s"] == 25


def test_controller_trace_selects_backup():
    ctl = run_controller_trace(default_config())
    text = ctl.event_log
    assert "wavelength 1 A-B 10G backup: reconfiguring -> carrying(trusted) load 2.800 Gbps" in text
    assert ctl.phase.value == "Normal"


def test_controller_trace_insufficient():
    cfg = parse_config("controller:\n  wavelengths: []\n  nodes: [A, B]\n")
    with pytest.raises(InsufficientCapacity):
        run_controller_trace(cfg)


def test_format_cell():
    assert format_cell(2.6168224) == "2.617"
    assert format_cell(-0.0) == "0.000"
    assert format_cell(3) == "3"
    assert format_cell("mideal") == "mideal"


def test_figures_match_golden(tmp_path):
    run_figures(default_config(), tmp_path)
    for name in FIGURE_FILES:
        assert (tmp_path / name).read_bytes() == (GOLDEN / name).read_bytes(), name
