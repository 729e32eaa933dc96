import random

import pytest

from qkdplan import (
    InfeasibleError,
    ProgramOptions,
    Topology,
    ValidationError,
    baseline_for_program,
    baseline_plan,
    build,
    point_request,
    solve,
    uniform_request,
    usnet,
)
from qkdplan.instances import random_tiny_instance, sample_requests
from qkdplan.paths import k_shortest_paths

from conftest import bidirectional

MODES = ["on_demand_only", "reserve_max"]


@pytest.mark.parametrize("mode", MODES)
def test_zero_demand_energy_only(triangle, mode):
    opts = ProgramOptions(energy={2: 4, 3: 9})
    sol = baseline_plan(triangle, [uniform_request(1, 3, 0)], mode=mode, options=opts)
    assert sol.routes == {"1": (1, 2, 3)}
    assert sol.total_cost == 13
    assert baseline_plan(triangle, [], mode=mode).total_cost == 0


def test_single_path_deterministic(line3):
    p = build(line3, [point_request(1, 3, 2)])
    base = baseline_for_program(p, "on_demand_only")
    assert base.reserved_total("qkd") == 0
    assert base.total_cost >= solve(p).total_cost
    assert base.label == "on_demand_only"


def test_reserve_max_reserves_peak(line3):
    p = build(line3, [uniform_request(1, 3, 3)])
    base = baseline_for_program(p, "reserve_max")
    assert {a.reserved for (k, _, _), a in base.allocations.items() if k == "qkd"} == {9}
    assert base.expected_ondemand("qkd") == 0


def test_errors(triangle):
    with pytest.raises(ValidationError):
        baseline_plan(triangle, [uniform_request(1, 3, 1)], mode="co_qbn")
    t = Topology.from_records(3, [(1, 2, 10, 1, 1)])
    with pytest.raises(InfeasibleError):
        baseline_plan(t, [uniform_request(1, 3, 1)])


@pytest.mark.parametrize("seed", range(40))
@pytest.mark.parametrize("mode", MODES)
def test_feasible_and_dominated(seed, mode):
    t, reqs = random_tiny_instance(random.Random(seed))
    p = build(t, reqs)
    try:
        sp = solve(p, k=50)
    except InfeasibleError:
        return
    base = baseline_for_program(p, mode)
    assert p.violations(base.to_assignment()) == []
    assert p.evaluate(base.to_assignment()) == base.total_cost
    assert sp.total_cost <= base.total_cost


def test_strict_reserve_max_is_feasible():
    t = bidirectional(2, [(1, 2, 400, 4, 1)])
    p = build(t, [point_request(1, 2, 1, id="a"), point_request(1, 2, 1, id="b")], policy=ProgramOptions(strict_reservation=True))
    base = baseline_for_program(p, "reserve_max")
    assert p.violations(base.to_assignment()) == []


def test_routes_ignore_demand():
    t = usnet()
    routes = None
    for k in (0, 1, 4, 9):
        reqs = [uniform_request(s, d, k, id=str(i)) for i, (s, d) in enumerate([(1, 23), (5, 17), (24, 2)])]
        got = baseline_plan(t, reqs).routes
        assert routes is None or got == routes
        routes = got
    assert routes["0"] == k_shortest_paths(t, 1, 23, 1)[0]


@pytest.mark.parametrize("mode", MODES)
def test_usnet_dominance(mode):
    t = usnet()
    reqs = sample_requests(t, 15, seed=3)
    p = build(t, reqs)
    assert solve(p).total_cost <= baseline_for_program(p, mode).total_cost
