"""Exact solver for desk-scale planning programs.

Routes are chosen by branch-and-bound over each request's ``k`` shortest
candidate paths. For a fixed route assignment the remaining integer program
separates by link and wavelength kind: reservations are set by a newsvendor
search and utilized wavelengths take ``min(reserved, demand)``, unless the
per-scenario link capacity binds, in which case reservation vectors are
searched exhaustively and each scenario's capacity is handed out greedily by
marginal saving.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InfeasibleError
from .paths import k_shortest_paths
from .program import (
    KINDS,
    _ONDEMAND,
    _RESERVE,
    _USE,
    DeterministicProgram,
    ProgramContext,
    WavelengthBlock,
    var_name,
)
from .topology import Link

__all__ = [
    "Allocation",
    "PlanSolution",
    "newsvendor",
    "allocate_link",
    "inner_allocate",
    "price_plan",
    "solve",
]

logger = logging.getLogger(__name__)

DEFAULT_K = 8
DEFAULT_BUDGET = 1_000_000
DEFAULT_WORK_LIMIT = 200_000


@dataclass(frozen=True)
class Allocation:
    """Wavelengths of one kind for one request on one link."""

    reserved: int
    used: tuple[int, ...]
    ondemand: tuple[int, ...]


@dataclass
class PlanSolution:
    """Routes, wavelength allocation and cost breakdown of a plan.

    ``allocations`` is keyed by ``(kind, (tail, head), request_id)`` with kind
    ``"qkd"`` (the y variables) or ``"km"`` (the z variables); links absent
    from the map carry no wavelengths.
    """

    program: DeterministicProgram
    routes: dict[str, tuple[int, ...]]
    allocations: dict[tuple, Allocation]
    first_stage_cost: Fraction
    second_stage_cost: Fraction
    ledger: dict[tuple[str, str], Fraction]
    optimal: bool = True
    restricted: bool = False
    nodes_explored: int = 0
    label: str = "sp"

    @property
    def total_cost(self) -> Fraction:
        return self.first_stage_cost + self.second_stage_cost

    @property
    def status(self) -> str:
        return "optimal" if self.optimal else "incumbent"

    def route_links(self, request_id: str) -> list[Link]:
        return list(self.program.context.topology.path_links(self.routes[request_id]))

    def to_assignment(self) -> dict[str, int]:
        """Values of every nonzero program variable."""
        out: dict[str, int] = {}
        ctx = self.program.context
        for f, path in self.routes.items():
            for link in ctx.topology.path_links(path):
                out[var_name("x", link, f)] = 1
        for (kind, key, f), a in self.allocations.items():
            if a.reserved:
                out[var_name(_RESERVE[kind], key, f)] = a.reserved
            for w, (u, o) in enumerate(zip(a.used, a.ondemand)):
                if u:
                    out[var_name(_USE[kind], key, f, w)] = u
                if o:
                    out[var_name(_ONDEMAND[kind], key, f, w)] = o
        return out

    def reserved_total(self, kind: str) -> int:
        return sum(a.reserved for (k, _, _), a in self.allocations.items() if k == kind)

    def expected_ondemand(self, kind: str) -> Fraction:
        ctx = self.program.context
        total = Fraction(0)
        for (k, key, f), a in self.allocations.items():
            if k != kind:
                continue
            weights = ctx.block(key, f, kind).weight
            total += sum((w * o for w, o in zip(weights, a.ondemand)), Fraction(0))
        return total

    def expected_used(self, kind: str) -> Fraction:
        ctx = self.program.context
        total = Fraction(0)
        for (k, key, f), a in self.allocations.items():
            if k != kind:
                continue
            weights = ctx.block(key, f, kind).weight
            total += sum((w * u for w, u in zip(weights, a.used)), Fraction(0))
        return total

    def phase_cost(self, phase: str, kind: str | None = None) -> Fraction:
        """Ledger total for a phase (``reservation``, ``utilization``, ``on-demand``, ``energy``)."""
        return sum(
            (v for (ph, comp), v in self.ledger.items() if ph == phase and (kind is None or comp.startswith(kind + ":"))),
            Fraction(0),
        )


def _block_cost(blk: WavelengthBlock, r: int, used: Sequence[int]) -> Fraction:
    total = blk.reserve_cost * r
    for u, d, cu, co in zip(used, blk.demand, blk.use_cost, blk.ondemand_cost):
        total += cu * u + co * (d - u)
    return total


def newsvendor(blk: WavelengthBlock, capacity: int | None = None, strict: bool = False):
    """Cost-minimal reservation for one block when it has the link to itself.

    Candidate levels are zero and each scenario's demand (capped by the link
    capacity); the expected cost is piecewise linear between them. Ties go to
    the smallest level. Returns ``(reserved, cost)`` or ``None`` when a pinned
    level violates a strict capacity bound.
    """
    cap = blk.capacity if capacity is None else capacity
    if blk.pin is not None:
        if strict and blk.pin > cap:
            return None
        candidates = [blk.pin]
    else:
        candidates = sorted({0} | {min(d, cap) for d in blk.demand})
    best = None
    for r in candidates:
        used = [min(r, d, cap) for d in blk.demand]
        cost = _block_cost(blk, r, used)
        if best is None or cost < best[1]:
            best = (r, cost)
    return best


def _greedy_use(blocks: Sequence[WavelengthBlock], reserved: Sequence[int], t: int, cap: int, order) -> list[int]:
    used = [0] * len(blocks)
    left = cap
    for j in order:
        if left <= 0:
            break
        u = min(reserved[j], blocks[j].demand[t], left)
        used[j] = u
        left -= u
    return used


def allocate_link(
    blocks: Sequence[WavelengthBlock],
    capacity: int,
    strict: bool = False,
    work_limit: int = DEFAULT_WORK_LIMIT,
):
    """Optimal allocation of one wavelength kind on one link.

    Returns ``(allocations, cost, exact)``; ``allocations`` is ``None`` when no
    feasible allocation exists (a pinned level above a strict capacity).
    """
    n = len(blocks)
    if n == 0:
        return [], Fraction(0), True
    T = len(blocks[0].demand)
    solo = [newsvendor(b, capacity, strict) for b in blocks]
    if all(s is not None for s in solo):
        res = [s[0] for s in solo]
        fits = (not strict or sum(res) <= capacity) and all(
            sum(min(res[j], blocks[j].demand[t]) for j in range(n)) <= capacity for t in range(T)
        )
        if fits:
            allocs = []
            for b, r in zip(blocks, res):
                used = tuple(min(r, d) for d in b.demand)
                allocs.append(Allocation(r, used, tuple(d - u for d, u in zip(b.demand, used))))
            return allocs, sum((s[1] for s in solo), Fraction(0)), True

    # Capacity binds: search reservation vectors, greedy per-scenario use.
    orders = [
        sorted(range(n), key=lambda j: (-(blocks[j].ondemand_cost[t] - blocks[j].use_cost[t]), j))
        for t in range(T)
    ]
    ranges = [
        (b.pin,) if b.pin is not None else range(min(b.max_demand, capacity) + 1) for b in blocks
    ]
    size = 1
    for rg in ranges:
        size *= len(rg)
    exact = size <= work_limit
    if exact:
        vectors = itertools.product(*ranges)
    else:
        logger.warning(
            "capacity-binding link search needs %d evaluations (limit %d); using a "
            "non-exhaustive allocation, export the program to LP for an exact answer",
            size,
            work_limit,
        )
        base = [s[0] if s is not None else b.pin for s, b in zip(solo, blocks)]
        if strict:
            while sum(base) > capacity:
                j = max((j for j in range(n) if blocks[j].pin is None and base[j] > 0), key=lambda j: base[j], default=None)
                if j is None:
                    break
                base[j] -= 1
        vectors = [tuple(base)]
    best = None
    for r in vectors:
        if strict and sum(r) > capacity:
            continue
        cost = sum((blocks[j].reserve_cost * r[j] for j in range(n)), Fraction(0))
        used_by_t = []
        for t in range(T):
            used = _greedy_use(blocks, r, t, capacity, orders[t])
            used_by_t.append(used)
            for j in range(n):
                cost += blocks[j].use_cost[t] * used[j] + blocks[j].ondemand_cost[t] * (blocks[j].demand[t] - used[j])
        if best is None or cost < best[0]:
            best = (cost, r, used_by_t)
    if best is None:
        return None, None, exact
    cost, r, used_by_t = best
    allocs = []
    for j, b in enumerate(blocks):
        used = tuple(used_by_t[t][j] for t in range(T))
        allocs.append(Allocation(r[j], used, tuple(d - u for d, u in zip(b.demand, used))))
    return allocs, cost, exact


def inner_allocate(
    route_assignment: Mapping[str, Sequence[int]],
    program: DeterministicProgram,
    work_limit: int = DEFAULT_WORK_LIMIT,
):
    """Optimal wavelength allocation for fixed routes.

    Returns ``(allocations, cost, exact)`` where ``cost`` includes energy
    terms; ``allocations`` is ``None`` if the routes admit no feasible
    allocation.
    """
    ctx = program.context
    t = ctx.topology
    strict = ctx.options.strict_reservation
    users: dict[tuple[int, int], list[str]] = {}
    cost = Fraction(0)
    for f in sorted(route_assignment, key=ctx.position.__getitem__):
        for link in t.path_links(route_assignment[f]):
            users.setdefault(link.key, []).append(f)
            cost += ctx.energy(link, f)
    allocations: dict[tuple, Allocation] = {}
    exact = True
    for key in sorted(users):
        link = t.link(*key)
        for kind in KINDS:
            blocks = [ctx.block(link, f, kind) for f in users[key]]
            cap = link.qkd_capacity if kind == "qkd" else link.km_capacity
            allocs, c, ok = allocate_link(blocks, cap, strict, work_limit)
            if allocs is None:
                return None, None, ok
            exact = exact and ok
            cost += c
            for f, a in zip(users[key], allocs):
                allocations[(kind, key, f)] = a
    return allocations, cost, exact


def price_plan(program: DeterministicProgram, routes, allocations, **extra) -> PlanSolution:
    """Cost ledger and stage totals of a plan under the program's objective."""
    ctx = program.context
    ledger: dict[tuple[str, str], Fraction] = {}

    def add(phase, comp, v):
        if v:
            ledger[(phase, comp)] = ledger.get((phase, comp), Fraction(0)) + v

    for f, path in routes.items():
        for link in ctx.topology.path_links(path):
            add("energy", "x", ctx.energy(link, f))
    for (kind, key, f), a in allocations.items():
        blk = ctx.block(key, f, kind)
        for comp, price in blk.reserve_unit.items():
            add("reservation", f"{kind}:{comp}", price * a.reserved)
        for w, (u, o) in enumerate(zip(a.used, a.ondemand)):
            weight = blk.weight[w]
            if not weight:
                continue
            for comp, price in blk.use_unit[w].items():
                add("utilization", f"{kind}:{comp}", weight * price * u)
            for comp, price in blk.ondemand_unit[w].items():
                add("on-demand", f"{kind}:{comp}", weight * price * o)
    first = sum((v for (ph, _), v in ledger.items() if ph in ("energy", "reservation")), Fraction(0))
    second = sum((v for (ph, _), v in ledger.items() if ph in ("utilization", "on-demand")), Fraction(0))
    return PlanSolution(program, dict(routes), dict(allocations), first, second, ledger, **extra)


def _relaxed_route_cost(ctx: ProgramContext, f: str, path) -> Fraction:
    strict = ctx.options.strict_reservation
    total = Fraction(0)
    for link in ctx.topology.path_links(path):
        total += ctx.energy(link, f)
        for kind in KINDS:
            blk = ctx.block(link, f, kind)
            nv = newsvendor(blk, None, strict)
            if nv is None:
                return None
            total += nv[1]
    return total


def solve(
    p: DeterministicProgram,
    k: int = DEFAULT_K,
    budget: int = DEFAULT_BUDGET,
    work_limit: int = DEFAULT_WORK_LIMIT,
) -> PlanSolution:
    """Minimum-cost plan over each request's ``k`` shortest candidate routes.

    The lower bound of a partial route assignment adds, for every request,
    its cost when alone on the network; the bound is exact whenever no link
    capacity binds. Among equal-cost plans the lexicographically smallest
    tuple of routes (in request order) is returned.

    Raises
    ------
    InfeasibleError
        If some request has no candidate route.
    """
    ctx = p.context
    reqs = ctx.requests
    restricted = False
    cands: list[list[tuple[Fraction, tuple[int, ...]]]] = []
    for r in reqs:
        paths = k_shortest_paths(ctx.topology, r.source, r.destination, k + 1)
        if len(paths) > k:
            restricted = True
            paths = paths[:k]
        scored = []
        for path in paths:
            c = _relaxed_route_cost(ctx, r.id, path)
            if c is not None:
                scored.append((c, path))
        if not scored:
            raise InfeasibleError(f"request {r.id}: no feasible route from {r.source} to {r.destination}")
        scored.sort()
        cands.append(scored)

    n = len(reqs)
    rest = [Fraction(0)] * (n + 1)
    for j in range(n - 1, -1, -1):
        rest[j] = rest[j + 1] + cands[j][0][0]

    best: dict = {"cost": None, "routes": None, "alloc": None, "exact": True}
    nodes = 0
    exhausted = False
    chosen: list[tuple[int, ...]] = []

    def visit(j: int, partial: Fraction) -> None:
        nonlocal nodes, exhausted
        if exhausted:
            return
        nodes += 1
        # The first dive always reaches a leaf so that an incumbent exists.
        if nodes > budget and best["cost"] is not None:
            exhausted = True
            return
        if j == n:
            routes = {r.id: path for r, path in zip(reqs, chosen)}
            alloc, cost, ok = inner_allocate(routes, p, work_limit)
            if alloc is None:
                return
            key = tuple(chosen)
            if best["cost"] is None or (cost, key) < (best["cost"], best["routes"]):
                best.update(cost=cost, routes=key, alloc=alloc, exact=ok)
            return
        for c, path in cands[j]:
            bound = partial + c + rest[j + 1]
            if best["cost"] is not None:
                if bound > best["cost"]:
                    break
                prefix = tuple(chosen) + (path,)
                if bound == best["cost"] and prefix > best["routes"][: j + 1]:
                    continue
            chosen.append(path)
            visit(j + 1, partial + c)
            chosen.pop()
            if exhausted:
                return

    visit(0, Fraction(0))
    if best["cost"] is None:
        raise InfeasibleError("no feasible plan within the candidate routes")
    routes = {r.id: path for r, path in zip(reqs, best["routes"])}
    sol = price_plan(
        p,
        routes,
        best["alloc"],
        optimal=not exhausted and best["exact"],
        restricted=restricted,
        nodes_explored=nodes,
    )
    if exhausted:
        logger.warning("node budget %d exhausted; returning incumbent", budget)
    return sol
