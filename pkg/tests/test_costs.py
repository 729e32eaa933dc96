from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkdplan import ComponentCounts, CostTable, PhysicsParams, Topology, ValidationError, component_counts, link_counts, phase_cost
from qkdplan.costs import COMPONENTS, load_cost_table, parse_cost_table, segments
from qkdplan.errors import TopologyParseError

PH = PhysicsParams()


@pytest.mark.parametrize("e, d, want", [(160, 160, 1), (161, 160, 2), (80, 160, 1), (320, 160, 2), (Fraction(1601, 10), 160, 2)])
def test_segments(e, d, want):
    assert segments(e, d) == want


@pytest.mark.parametrize("e, d", [(0, 160), (-1, 160), (160, 0)])
def test_segments_rejects_nonpositive(e, d):
    with pytest.raises(ValidationError):
        segments(e, d)


def line(lengths):
    n = len(lengths) + 1
    return Topology.from_records(n, [(i + 1, i + 2, e, 1, 1) for i, e in enumerate(lengths)])


def test_single_link_p2():
    t = line([160])
    c = component_counts(t.links, 2, PH)
    assert c == ComponentCounts(tx_count=4, rx_count=2, lkm_count=2, si_count=0, muxdemux_count=1, channel_cost_length=1120)


def test_empty_route():
    assert component_counts([], 5, PH) == ComponentCounts()


def test_two_links_p1():
    t = line([160, 160])
    c = component_counts(t.links, 1, PH)
    assert c == ComponentCounts(4, 2, 4, 0, 2, Fraction(1280))


def test_long_span_relays():
    # 500 km over 160 km spacing: s=4, ceil(3.125+1)=5 LKMs, 3 relays.
    c = link_counts(500, 1, PH)
    assert (c.tx_count, c.rx_count, c.lkm_count, c.si_count, c.muxdemux_count) == (8, 4, 5, 3, 7)
    assert c.channel_cost_length == 2000


def test_rejects_non_path():
    t = Topology.from_records(3, [(1, 2, 10, 1, 1), (2, 1, 10, 1, 1), (2, 3, 10, 1, 1)])
    with pytest.raises(ValidationError):
        component_counts([t.link(1, 2), t.link(1, 2)], 1, PH)
    with pytest.raises(ValidationError):
        component_counts([t.link(1, 2), t.link(2, 1)], 1, PH)
    with pytest.raises(ValidationError):
        component_counts([t.link(2, 3), t.link(1, 2)], 1, PH)
    with pytest.raises(ValidationError):
        component_counts([t.link(1, 2)], -1, PH)


def test_phase_costs_defaults():
    c = ComponentCounts(4, 2, 2, 0, 1, Fraction(1120))
    table = CostTable.defaults()
    assert phase_cost(ComponentCounts(), table, "reservation") == 0
    assert phase_cost(c, table, "reservation") == 14320
    assert phase_cost(c, table, "on-demand") == 53380
    assert phase_cost(c, table, "utilization") == 14320


lengths = st.lists(st.integers(1, 20000).map(lambda v: Fraction(v, 10)), min_size=0, max_size=6)


@settings(max_examples=1000)
@given(lengths, lengths, st.integers(0, 40))
def test_additivity(a, b, P):
    route = line(a + b).links
    left, right = route[: len(a)], route[len(a) :]
    assert component_counts(route, P, PH) == component_counts(left, P, PH) + component_counts(right, P, PH)


@settings(max_examples=1000)
@given(lengths, st.integers(0, 40))
def test_homogeneity(a, P):
    route = line(a).links
    one, two = component_counts(route, P, PH), component_counts(route, 2 * P, PH)
    assert two.tx_count == 2 * one.tx_count
    assert two.rx_count == 2 * one.rx_count
    assert one.tx_count == 2 * one.rx_count
    assert (two.lkm_count, two.si_count, two.muxdemux_count) == (one.lkm_count, one.si_count, one.muxdemux_count)


counts = st.builds(
    ComponentCounts,
    st.integers(0, 100),
    st.integers(0, 100),
    st.integers(0, 100),
    st.integers(0, 100),
    st.integers(0, 100),
    st.integers(0, 10**6).map(lambda v: Fraction(v, 10)),
)


@given(counts, counts, st.integers(0, 5))
def test_phase_cost_linear(a, b, k):
    table = CostTable.defaults()
    for ph in ("reservation", "utilization", "on-demand"):
        assert phase_cost(a + b, table, ph) == phase_cost(a, table, ph) + phase_cost(b, table, ph)
        scaled = ComponentCounts(*(k * v for v in a.by_component().values()))
        assert phase_cost(scaled, table, ph) == k * phase_cost(a, table, ph)


@given(counts)
def test_on_demand_dominates(c):
    table = CostTable.defaults()
    assert phase_cost(c, table, "on-demand") >= phase_cost(c, table, "utilization") >= 0


def test_table_validation():
    with pytest.raises(ValidationError):
        CostTable.defaults().replace(beta_o_tx=1000)
    with pytest.raises(ValidationError):
        CostTable.defaults().replace(beta_r_km=-1)
    with pytest.raises(ValidationError):
        CostTable.defaults().replace(beta_x_tx=1)
    assert CostTable.defaults().scaled(2).price("on-demand", "ch") == 8


def test_cost_file(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("# cheaper channels\nbeta_r_ch = 0.5\nbeta_o_tx=7000\n")
    t = load_cost_table(f)
    assert t.price("reservation", "ch") == Fraction(1, 2)
    assert t.price("on-demand", "tx") == 7000
    assert t.price("utilization", "rx") == 2250
    assert parse_cost_table(CostTable.defaults().to_text()) == CostTable.defaults()
    with pytest.raises(TopologyParseError):
        parse_cost_table("beta_r_zz = 1\n")
    with pytest.raises(TopologyParseError):
        parse_cost_table("beta_r_tx 1\n")


def test_defaults_values():
    t = CostTable.defaults()
    assert [t.price("reservation", c) for c in COMPONENTS] == [1500, 2250, 1200, 150, 300, 1]
    assert [t.price("utilization", c) for c in COMPONENTS] == [1500, 2250, 1200, 150, 300, 1]
    assert [t.price("on-demand", c) for c in COMPONENTS] == [6000, 9000, 3000, 500, 900, 4]
