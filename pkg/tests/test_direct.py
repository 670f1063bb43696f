import pytest
from hypothesis import given, strategies as st

from olad.direct import (
    DirectDefenseParams,
    goodput_baseline,
    goodput_olad,
    goodput_scrubber,
    improvement_points,
)
from olad.traffic import TrafficMix

from oracles import exact_share

P = DirectDefenseParams(victim_capacity=10, scrubber_capacity=40)


@pytest.mark.parametrize("attack, expected", [(0, 7.0), (40, 1.489), (100, 0.654)])
def test_baseline(attack, expected):
    assert goodput_baseline(TrafficMix(7, attack), P) == pytest.approx(expected, abs=5e-4)


@pytest.mark.parametrize("attack, expected", [(33, 7.0), (40, 5.957), (100, 2.617)])
def test_scrubber(attack, expected):
    assert goodput_scrubber(TrafficMix(7, attack), P) == pytest.approx(expected, abs=5e-4)


@pytest.mark.parametrize(
    "attack, f, expected",
    [(100, 0.4, (2.8, 1.612, 4.412)), (100, 0.8, (5.6, 0.552, 6.152)), (40, 0.4, (2.8, 3.801, 6.601))],
)
def test_olad(attack, f, expected):
    got = goodput_olad(TrafficMix(7, attack, f), P)
    assert tuple(got) == pytest.approx(expected, abs=5e-4)


def test_olad_matches_exact_oracle():
    # 40 Gbps attack, 40% trusted: scrubber sees 4.2 + 40 Gbps
    got = goodput_olad(TrafficMix(7, 40, 0.4), P)
    assert got.scrubbed == pytest.approx(float(exact_share("4.2", "44.2", 40)), rel=1e-12)


def test_improvement_points():
    assert improvement_points(TrafficMix(7, 100, 0.4), P).delta_points == pytest.approx(25, abs=1)
    assert improvement_points(TrafficMix(7, 100, 0.8), P).delta_points == pytest.approx(51, abs=1)
    assert improvement_points(TrafficMix(7, 0, 0.6), P).delta_points == 0
    with pytest.raises(ValueError):
        improvement_points(TrafficMix(0, 10, 0.5), P)


def test_trusted_prioritised_when_victim_link_is_tight():
    p = DirectDefenseParams(victim_capacity=5, scrubber_capacity=40)
    got = goodput_olad(TrafficMix(7, 0, 0.5), p)
    assert got == (3.5, 1.5, 5.0)


attack = st.floats(min_value=0, max_value=1e5, allow_nan=False)
legit = st.floats(min_value=0, max_value=100, allow_nan=False)
frac = st.floats(min_value=0, max_value=1)
caps = st.floats(min_value=0.1, max_value=500)


@given(legit, attack, caps, caps)
def test_zero_trust_is_plain_scrubbing(l, a, tc, td):
    p = DirectDefenseParams(tc, td)
    assert goodput_olad(TrafficMix(l, a, 0.0), p).total == goodput_scrubber(TrafficMix(l, a), p)


@given(legit, attack, attack, frac, caps, caps)
def test_monotone_in_attack(l, a1, a2, f, tc, td):
    p = DirectDefenseParams(tc, td)
    lo, hi = sorted((a1, a2))
    for fn in (goodput_baseline, goodput_scrubber, lambda m, p: goodput_olad(m, p).total):
        assert fn(TrafficMix(l, hi, f), p) <= fn(TrafficMix(l, lo, f), p) + 1e-9


@given(legit, attack, frac, frac, caps, caps)
def test_monotone_in_trust(l, a, f1, f2, tc, td):
    p = DirectDefenseParams(tc, td)
    lo, hi = sorted((f1, f2))
    assert goodput_olad(TrafficMix(l, a, lo), p).total <= goodput_olad(TrafficMix(l, a, hi), p).total + 1e-9


@given(legit, attack, frac, caps, caps)
def test_clamp_and_breakdown(l, a, f, tc, td):
    p = DirectDefenseParams(tc, td)
    mix = TrafficMix(l, a, f)
    bound = min(l, tc) + 1e-9
    got = goodput_olad(mix, p)
    assert goodput_baseline(mix, p) <= bound
    assert goodput_scrubber(mix, p) <= bound
    assert got.total <= bound
    assert got.trusted >= 0 and got.scrubbed >= 0
    assert got.total == pytest.approx(got.trusted + got.scrubbed)


@given(legit, attack, frac, caps, caps)
def test_dominance_when_scrubber_is_larger(l, a, f, tc, extra):
    p = DirectDefenseParams(tc, tc + extra)
    mix = TrafficMix(l, a, f)
    assert goodput_olad(mix, p).total + 1e-9 >= goodput_scrubber(mix, p) >= goodput_baseline(mix, p) - 1e-9


@pytest.mark.parametrize("f", [0.0, 0.4, 0.8, 1.0])
def test_asymptote(f):
    mix = TrafficMix(7, 1e6, f)
    assert abs(goodput_olad(mix, P).total - f * 7) < 1e-3
    assert goodput_scrubber(mix, P) < 1e-3
