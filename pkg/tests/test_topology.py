from fractions import Fraction

import pytest

from qkdplan import (
    TopologyParseError,
    UnknownNodeError,
    ValidationError,
    load_topology,
    neighbors_in,
    neighbors_out,
    parse_topology,
    usnet,
)
from qkdplan.topology import USNET_PATH, Link, Topology, serialize_topology


def test_three_node_file(tmp_path):
    f = tmp_path / "t.txt"
    f.write_text("# tiny\nnodes: 3\n1 2 100.0 150 50\n2 1 100.0 150 50\n")
    t = load_topology(f)
    assert t.nodes == (1, 2, 3)
    assert len(t.links) == 2
    assert t.link(1, 2).length_km == 100


def test_usnet_counts():
    t = usnet()
    records = [l for l in USNET_PATH.read_text().splitlines() if l.strip() and not l.startswith("#") and not l.startswith("nodes")]
    assert len(t.nodes) == 24
    assert len(t.links) == len(records) == 86
    assert all(t.has_link(l.head, l.tail) for l in t.links)


def test_dangling_endpoint():
    with pytest.raises(ValidationError, match="dangling"):
        parse_topology("nodes: 3\n1 9 100.0 1 1\n")


@pytest.mark.parametrize(
    "body, match",
    [
        ("1 2 0.0 1 1", "nonpositive"),
        ("1 2 -5.0 1 1", "nonpositive"),
        ("1 2 10.0 1 1\n1 2 20.0 1 1", "duplicate"),
        ("1 1 10.0 1 1", "self-loop"),
        ("1 2 10.0 -1 1", "negative capacity"),
    ],
)
def test_invariant_violations(body, match):
    with pytest.raises(ValidationError, match=match):
        parse_topology("nodes: 2\n" + body + "\n")


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("1 2 10.0 1 1\n", 1),
        ("nodes: 2\n1 2 10.0 1\n", 2),
        ("nodes: 2\n\n1 2 ten 1 1\n", 3),
        ("nodes: 2\n1 2 10.25 1 1\n", 2),
        ("nodes: x\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(TopologyParseError) as exc:
        parse_topology(text)
    assert exc.value.lineno == lineno
    assert str(exc.value).startswith(f"line {lineno}:")


def test_missing_header():
    with pytest.raises(TopologyParseError):
        parse_topology("")


def test_neighbors_usnet_node1():
    t = usnet()
    out = neighbors_out(t, 1)
    expected = sorted((l for l in t.links if l.tail == 1), key=lambda l: l.head)
    assert list(out) == expected
    assert [l.head for l in out] == sorted(l.head for l in out)


def test_neighbors_empty_and_unknown():
    t = parse_topology("nodes: 3\n1 2 10.0 1 1\n")
    assert neighbors_out(t, 3) == ()
    assert neighbors_in(t, 1) == ()
    with pytest.raises(UnknownNodeError):
        neighbors_out(t, 999)
    with pytest.raises(KeyError):
        neighbors_in(t, 999)


def test_degree_sums():
    t = usnet()
    assert sum(len(neighbors_out(t, n)) for n in t.nodes) == len(t.links)
    assert sum(len(neighbors_in(t, n)) for n in t.nodes) == len(t.links)
    for n in t.nodes:
        assert all(l.tail == n for l in neighbors_out(t, n))
        assert all(l.head == n for l in neighbors_in(t, n))


def test_round_trip_is_canonical():
    messy = "nodes: 3\n# comment\n2 1 100 5 1\n1 2 100.5 5 1   # trailing\n\n3 1 7 0 0\n"
    t = parse_topology(messy)
    text = serialize_topology(t)
    assert text == "nodes: 3\n1 2 100.5 5 1\n2 1 100.0 5 1\n3 1 7.0 0 0\n"
    assert serialize_topology(parse_topology(text)) == text
    assert parse_topology(text) == t


def test_usnet_round_trip():
    t = usnet()
    assert parse_topology(serialize_topology(t)) == t


def test_with_capacities():
    t = usnet().with_capacities(qkd=15, km=3)
    assert {(l.qkd_capacity, l.km_capacity) for l in t.links} == {(15, 3)}


def test_link_ordering_ignores_attributes():
    a = Link(1, 2, Fraction(5), 1, 1)
    b = Link(1, 2, Fraction(7), 3, 3)
    assert a == b
    assert Link(1, 3, Fraction(1), 0, 0) > a
    assert Topology((1, 2), (a,)).link(1, 2) is a
