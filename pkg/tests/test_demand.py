from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkdplan import ChainRequest, PhysicsParams, ScenarioSet, ValidationError, parallel_links, point_request, uniform_request
from qkdplan.demand import expected_parallel_links, format_requests, nominal_parallel_links, parse_requests
from qkdplan.errors import TopologyParseError


def kd(v):
    return PhysicsParams(key_rate_kbps=v)


@pytest.mark.parametrize("kappa, rate, want", [(0, 1, 0), (5, 2, 3), (4, 2, 2), (1, 1, 1), (Fraction(1, 2), 1, 1)])
def test_parallel_links(kappa, rate, want):
    assert parallel_links(kappa, kd(rate)) == want


def test_parallel_links_negative():
    with pytest.raises(ValidationError):
        parallel_links(-1, PhysicsParams())


@given(st.integers(0, 10**6), st.integers(1, 1000))
def test_parallel_links_bracket(kappa, rate):
    p = parallel_links(kappa, kd(rate))
    assert rate * p >= kappa
    if kappa > 0:
        assert rate * (p - 1) < kappa


@given(st.integers(0, 500), st.integers(0, 500), st.integers(1, 50), st.integers(1, 50))
def test_parallel_links_monotone(a, b, r1, r2):
    lo, hi = sorted((a, b))
    rlo, rhi = sorted((r1, r2))
    assert parallel_links(lo, kd(rlo)) <= parallel_links(hi, kd(rlo))
    assert parallel_links(hi, kd(rhi)) <= parallel_links(hi, kd(rlo))


def test_physics_spacing():
    assert PhysicsParams().spacing_km == 160
    assert PhysicsParams.from_spacing(200).theta_km == 100
    assert PhysicsParams(theta_km=80.5).spacing_km == Fraction(161)
    with pytest.raises(ValidationError):
        PhysicsParams(key_rate_kbps=0)
    with pytest.raises(ValidationError):
        PhysicsParams(theta_km=-1)


def test_uniform_request():
    r = uniform_request(1, 2, 0)
    assert r.probabilities == (1,)
    r = uniform_request(1, 2, 4)
    assert r.probabilities == (Fraction(1, 5),) * 5
    assert r.max_rate == 4
    with pytest.raises(ValidationError):
        uniform_request(3, 3, 2)


def test_request_validation():
    with pytest.raises(ValidationError):
        ChainRequest("1", 1, 2, (Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValidationError):
        ChainRequest("1", 1, 2, (Fraction(3, 2), Fraction(-1, 2)))
    with pytest.raises(ValidationError):
        ChainRequest("a_b", 1, 2, (1,))
    ChainRequest("1", 1, 2, (0.5, 0.5 + 1e-12))


def test_point_request():
    r = point_request(1, 2, 3)
    assert r.probabilities == (0, 0, 0, 1)


@pytest.mark.parametrize("k, rate, want", [(0, 1, 0), (2, 1, 1), (3, 2, 1), (4, 1, 2)])
def test_expected_parallel_links(k, rate, want):
    assert expected_parallel_links(uniform_request(1, 2, k), kd(rate)) == want


@pytest.mark.parametrize("k", range(0, 51, 7))
@pytest.mark.parametrize("rate", [1, 2, 3])
def test_expected_matches_enumeration(k, rate):
    r = uniform_request(1, 2, k)
    brute = sum(Fraction(-(-w // rate), k + 1) for w in range(k + 1))
    assert expected_parallel_links(r, kd(rate)) == brute


def test_nominal_policies():
    r = uniform_request(1, 2, 3)  # mean 1.5 rounds up
    ph = PhysicsParams()
    assert nominal_parallel_links(r, ph) == 2
    assert nominal_parallel_links(r, ph, "max") == 3
    assert nominal_parallel_links(r, ph, "min") == 0
    assert nominal_parallel_links(r, ph, 1) == 1
    with pytest.raises(ValidationError):
        nominal_parallel_links(r, ph, 7)
    with pytest.raises(ValidationError):
        nominal_parallel_links(r, ph, "mode")


def test_joint_scenarios():
    a = uniform_request(1, 2, 1, id="a")
    b = uniform_request(2, 3, 2, id="b")
    s = ScenarioSet((a, b), "joint")
    assert len(s) == s.joint_size == 6
    total = sum(s.weight(0, t) for t in range(len(s)))
    assert total == 1
    for t, (wa, wb) in enumerate(s.indices):
        assert s.weight(0, t) == a.probability(wa) * b.probability(wb)
        assert s.rate(1, t) == wb


def test_shared_scenarios_pad_with_zero_weight():
    a = uniform_request(1, 2, 1, id="a")
    b = uniform_request(2, 3, 3, id="b")
    s = ScenarioSet((a, b))
    assert len(s) == 4
    assert [s.rate(0, t) for t in range(4)] == [0, 1, 1, 1]
    assert [s.weight(0, t) for t in range(4)] == [Fraction(1, 2)] * 2 + [0, 0]
    with pytest.raises(ValidationError):
        ScenarioSet((a,), "psi")


def test_request_file_round_trip():
    text = "# requests\n1 1 23 4\nb2 5 6 2 dist=point\n"
    reqs = parse_requests(text)
    assert reqs[0] == uniform_request(1, 23, 4, id="1")
    assert reqs[1] == point_request(5, 6, 2, id="b2")
    assert parse_requests(format_requests(reqs)) == reqs


@pytest.mark.parametrize("text", ["1 1 2\n", "1 1 2 x\n", "1 1 2 3 dist=normal\n", "1 1 2 3\n1 2 3 1\n", "1 2 2 3\n"])
def test_request_file_errors(text):
    with pytest.raises(TopologyParseError):
        parse_requests(text)
