"""Shortest-path baseline without stochastic reservation planning.

Each request is routed on its shortest path by length and provisioned by a
fixed rule, then priced under the same objective as the optimized plan:

``on_demand_only``
    nothing is reserved; every scenario's demand is bought on demand.
``reserve_max``
    each request reserves its largest-scenario demand on every route link;
    utilized wavelengths are granted in request order up to the per-scenario
    link capacity, the rest is bought on demand.
"""

from __future__ import annotations

from typing import Sequence

from .costs import CostTable
from .demand import ChainRequest, PhysicsParams
from .errors import InfeasibleError, ValidationError
from .paths import k_shortest_paths
from .program import KINDS, DeterministicProgram, ProgramOptions, build
from .solver import Allocation, PlanSolution, price_plan
from .topology import Topology

__all__ = ["BASELINE_MODES", "baseline_plan", "baseline_for_program"]

BASELINE_MODES = ("on_demand_only", "reserve_max")


def baseline_for_program(p: DeterministicProgram, mode: str = "on_demand_only") -> PlanSolution:
    """Baseline plan priced under an existing program's objective."""
    if mode not in BASELINE_MODES:
        raise ValidationError(f"unknown baseline mode {mode!r}")
    ctx = p.context
    t = ctx.topology
    strict = ctx.options.strict_reservation
    routes = {}
    for r in ctx.requests:
        paths = k_shortest_paths(t, r.source, r.destination, 1)
        if not paths:
            raise InfeasibleError(f"request {r.id}: {r.destination} unreachable from {r.source}")
        routes[r.id] = paths[0]

    users: dict[tuple[int, int], list[str]] = {}
    for r in ctx.requests:
        for link in t.path_links(routes[r.id]):
            users.setdefault(link.key, []).append(r.id)

    allocations = {}
    for key in sorted(users):
        link = t.link(*key)
        for kind in KINDS:
            cap = link.qkd_capacity if kind == "qkd" else link.km_capacity
            blocks = [ctx.block(link, f, kind) for f in users[key]]
            T = len(blocks[0].demand)
            if mode == "on_demand_only":
                reserved = [0] * len(blocks)
            else:
                reserved = [b.max_demand for b in blocks]
                if strict:
                    left = cap
                    for j, r in enumerate(reserved):
                        reserved[j] = min(r, left)
                        left -= reserved[j]
            used = [[0] * T for _ in blocks]
            for w in range(T):
                left = cap
                for j, b in enumerate(blocks):
                    u = min(reserved[j], b.demand[w], left)
                    used[j][w] = u
                    left -= u
            for j, (f, b) in enumerate(zip(users[key], blocks)):
                allocations[(kind, key, f)] = Allocation(
                    reserved[j],
                    tuple(used[j]),
                    tuple(d - u for d, u in zip(b.demand, used[j])),
                )
    return price_plan(p, routes, allocations, optimal=False, restricted=True, label=mode)


def baseline_plan(
    topology: Topology,
    requests: Sequence[ChainRequest],
    cost_table: CostTable | None = None,
    physics: PhysicsParams | None = None,
    mode: str = "on_demand_only",
    options: ProgramOptions | None = None,
) -> PlanSolution:
    """Shortest-path baseline for an instance (see module docstring)."""
    p = build(topology, requests, cost_table, physics, options)
    return baseline_for_program(p, mode)
