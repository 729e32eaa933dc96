"""Deterministic-equivalent integer program for joint routing and wavelength planning.

Variables (for every directed link ``(i, n)``, request ``f`` and scenario
index ``w``):

``x_i_n_f``       route indicator, binary
``yr_i_n_f``      reserved QKD wavelengths
``zr_i_n_f``      reserved KM wavelengths
``ye_i_n_f_w``    utilized reserved QKD wavelengths in scenario ``w``
``yo_i_n_f_w``    on-demand QKD wavelengths in scenario ``w``
``ze_i_n_f_w``, ``zo_i_n_f_w``   the KM counterparts

Constraint tags: ``src_out``..``out_deg`` route flow, ``cap_y``/``cap_z`` per-scenario
link capacity on utilized wavelengths, ``use_y``/``use_z`` utilized <= reserved,
``lin_y``/``lin_z`` the big-M linearization ``ye <= W*x``, ``cover_y``/``cover_z``
demand coverage. Optional tags ``strict_y``/``strict_z`` bound reservations by
capacity and ``pin_y``/``pin_z`` force a reservation level on route links.

The objective prices reservations once and utilized / on-demand wavelengths
per scenario, weighted by scenario probability. Hardware cost per QKD
wavelength is the single-link count for one parallel link divided by the
wavelengths one link occupies.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .costs import CostTable, link_counts
from .demand import (
    ChainRequest,
    PhysicsParams,
    ScenarioSet,
    _as_fraction,
    nominal_parallel_links,
    parallel_links,
)
from .errors import ValidationError
from .topology import Link, Topology, neighbors_in, neighbors_out

__all__ = [
    "ProgramOptions",
    "WavelengthBlock",
    "ProgramContext",
    "Variable",
    "Constraint",
    "DeterministicProgram",
    "build",
    "var_name",
    "census_prediction",
    "bilinear_objective",
    "bilinear_violations",
]

logger = logging.getLogger(__name__)

KINDS = ("qkd", "km")
_RESERVE = {"qkd": "yr", "km": "zr"}
_USE = {"qkd": "ye", "km": "ze"}
_ONDEMAND = {"qkd": "yo", "km": "zo"}


@dataclass(frozen=True)
class ProgramOptions:
    """Modelling choices that are not fixed by the formulation.

    Parameters
    ----------
    scenario_mode : {"shared", "joint"}
        Scenario indexing, see :class:`~qkdplan.demand.ScenarioSet`.
    nominal : {"mean", "max", "min"} or int
        Nominal scenario for first-stage pricing when
        ``hardware_scaling="nominal"``.
    hardware_scaling : {"per_wavelength", "nominal"}
        ``per_wavelength`` prices tx/rx hardware per wavelength (counts for
        one parallel link over the QKD wavelengths per link). ``nominal``
        multiplies the per-wavelength tx/rx price by the parallel-link count
        of the nominal scenario (first stage) or of each scenario (second
        stage), as the objective is printed.
    demand_form : {"per_scenario", "summed"}
        ``summed`` reproduces the printed demand constraint whose right-hand
        side sums demand over all scenarios.
    strict_reservation : bool
        Also bound the sum of reservations on a link by its capacity.
    energy : mapping
        ``B^eng`` weights keyed by node or by ``(node, request_id)``.
    pins : mapping
        ``{"qkd": level, "km": level}`` forces the reservation on every
        route link of every request to ``level``.
    """

    scenario_mode: str = "shared"
    nominal: object = "mean"
    hardware_scaling: str = "per_wavelength"
    demand_form: str = "per_scenario"
    strict_reservation: bool = False
    energy: Mapping = field(default_factory=dict)
    pins: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.hardware_scaling not in ("per_wavelength", "nominal"):
            raise ValidationError(f"unknown hardware_scaling {self.hardware_scaling!r}")
        if self.demand_form not in ("per_scenario", "summed"):
            raise ValidationError(f"unknown demand_form {self.demand_form!r}")
        for kind, level in self.pins.items():
            if kind not in KINDS:
                raise ValidationError(f"pin kind must be 'qkd' or 'km', got {kind!r}")
            if int(level) != level or level < 0:
                raise ValidationError(f"pinned reservation must be a nonnegative integer, got {level!r}")
        for key, value in self.energy.items():
            if _as_fraction(value) < 0:
                raise ValidationError(f"energy weight for {key!r} is negative")

    def energy_weight(self, node: int, request_id: str) -> Fraction:
        if (node, request_id) in self.energy:
            return _as_fraction(self.energy[(node, request_id)])
        return _as_fraction(self.energy.get(node, 0))


@dataclass(frozen=True)
class WavelengthBlock:
    """Everything the objective and constraints say about one (link, request, kind).

    ``reserve_unit`` maps component to first-stage price per reserved
    wavelength. ``use_unit[w]`` / ``ondemand_unit[w]`` are the unweighted
    second-stage prices at scenario index ``w``; ``weight[w]`` is the
    scenario's probability weight.
    """

    link: Link
    request: str
    kind: str
    demand: tuple[int, ...]
    weight: tuple[Fraction, ...]
    reserve_unit: Mapping[str, Fraction]
    use_unit: tuple[Mapping[str, Fraction], ...]
    ondemand_unit: tuple[Mapping[str, Fraction], ...]
    capacity: int
    pin: int | None = None

    @cached_property
    def reserve_cost(self) -> Fraction:
        return sum(self.reserve_unit.values(), Fraction(0))

    @cached_property
    def use_cost(self) -> tuple[Fraction, ...]:
        return tuple(w * sum(u.values(), Fraction(0)) for w, u in zip(self.weight, self.use_unit))

    @cached_property
    def ondemand_cost(self) -> tuple[Fraction, ...]:
        return tuple(w * sum(u.values(), Fraction(0)) for w, u in zip(self.weight, self.ondemand_unit))

    @cached_property
    def max_demand(self) -> int:
        return max(self.demand, default=0)


def var_name(tag: str, link: Link | tuple[int, int], request: str, index: int | None = None) -> str:
    i, n = link.key if isinstance(link, Link) else link
    name = f"{tag}_{i}_{n}_{request}"
    return name if index is None else f"{name}_{index}"


class ProgramContext:
    """Instance data and derived coefficient blocks for one program."""

    def __init__(
        self,
        topology: Topology,
        requests: Sequence[ChainRequest],
        costs: CostTable,
        physics: PhysicsParams,
        options: ProgramOptions,
    ):
        self.topology = topology
        self.requests = tuple(requests)
        self.costs = costs
        self.physics = physics
        self.options = options
        self.scenarios = ScenarioSet(self.requests, options.scenario_mode)
        self.position = {r.id: p for p, r in enumerate(self.requests)}
        if len(self.position) != len(self.requests):
            raise ValidationError("duplicate request ids")
        self._blocks: dict[tuple, WavelengthBlock] = {}
        self._demand: dict[tuple[str, str], tuple[int, ...]] = {}

    def request(self, request_id: str) -> ChainRequest:
        return self.requests[self.position[request_id]]

    def demand(self, request_id: str, kind: str) -> tuple[int, ...]:
        """Wavelength demand of a request on each route link, per scenario index."""
        key = (request_id, kind)
        if key not in self._demand:
            pos = self.position[request_id]
            r = self.requests[pos]
            per_link = (
                self.physics.qkd_wavelengths_per_link
                if kind == "qkd"
                else self.physics.km_wavelengths_per_link
            )
            if self.options.demand_form == "summed":
                total = sum(parallel_links(w, self.physics) for w in r.scenarios) * per_link
                d = (total,) * len(self.scenarios)
            else:
                d = tuple(
                    parallel_links(self.scenarios.rate(pos, t), self.physics) * per_link
                    for t in range(len(self.scenarios))
                )
            self._demand[key] = d
        return self._demand[key]

    def _hardware_scale(self, pos: int, t: int | None) -> int:
        if self.options.hardware_scaling == "per_wavelength":
            return 1
        r = self.requests[pos]
        if t is None:
            return nominal_parallel_links(r, self.physics, self.options.nominal)
        return parallel_links(self.scenarios.rate(pos, t), self.physics)

    def _unit_prices(self, link: Link, kind: str, phase: str, scale: int) -> dict[str, Fraction]:
        row = self.costs.prices[phase]
        counts = link_counts(link.length_km, 1, self.physics)
        e = link.length_km
        if kind == "qkd":
            per = Fraction(1, self.physics.qkd_wavelengths_per_link)
            return {
                "tx": counts.tx_count * scale * per * row["tx"],
                "rx": counts.rx_count * scale * per * row["rx"],
                "ch": e * row["ch"],
            }
        return {
            "km": counts.lkm_count * row["km"],
            "si": counts.si_count * row["si"],
            "md": counts.muxdemux_count * row["md"],
            "ch": e * row["ch"],
        }

    def block(self, link: Link | tuple[int, int], request_id: str, kind: str) -> WavelengthBlock:
        if not isinstance(link, Link):
            link = self.topology.link(*link)
        key = (link.key, request_id, kind)
        blk = self._blocks.get(key)
        if blk is None:
            pos = self.position[request_id]
            T = len(self.scenarios)
            blk = WavelengthBlock(
                link=link,
                request=request_id,
                kind=kind,
                demand=self.demand(request_id, kind),
                weight=tuple(self.scenarios.weight(pos, t) for t in range(T)),
                reserve_unit=self._unit_prices(link, kind, "r", self._hardware_scale(pos, None)),
                use_unit=tuple(
                    self._unit_prices(link, kind, "e", self._hardware_scale(pos, t)) for t in range(T)
                ),
                ondemand_unit=tuple(
                    self._unit_prices(link, kind, "o", self._hardware_scale(pos, t)) for t in range(T)
                ),
                capacity=link.qkd_capacity if kind == "qkd" else link.km_capacity,
                pin=self.options.pins.get(kind),
            )
            self._blocks[key] = blk
        return blk

    def energy(self, link: Link, request_id: str) -> Fraction:
        return self.options.energy_weight(link.head, request_id)


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "binary" | "integer"
    tag: str
    index: tuple


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: Mapping[str, Fraction]
    sense: str  # "<=", ">=", "="
    rhs: Fraction
    tag: str

    def satisfied(self, assignment: Mapping[str, int]) -> bool:
        lhs = sum((c * assignment.get(v, 0) for v, c in self.coeffs.items()), Fraction(0))
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


class DeterministicProgram:
    """Solver-agnostic integer linear program.

    Programs returned by :func:`build` carry a :class:`ProgramContext` and
    materialize their rows on first access. Programs created directly start
    empty and are filled with :meth:`add_variable` / :meth:`add_constraint`.
    """

    def __init__(self, context: ProgramContext | None = None):
        self.context = context
        self._variables: dict[str, Variable] | None = None
        self._constraints: list[Constraint] | None = None
        self._objective: dict[str, Fraction] | None = None
        if context is None:
            self._variables, self._constraints, self._objective = {}, [], {}

    def _ensure(self) -> None:
        if self._variables is None:
            self._variables, self._constraints, self._objective = {}, [], {}
            _populate(self)

    @property
    def variables(self) -> dict[str, Variable]:
        self._ensure()
        return self._variables

    @property
    def constraints(self) -> list[Constraint]:
        self._ensure()
        return self._constraints

    @property
    def objective(self) -> dict[str, Fraction]:
        self._ensure()
        return self._objective

    def add_variable(self, name: str, kind: str = "integer", tag: str = "", index: tuple = ()) -> Variable:
        if name in self._variables:
            raise ValidationError(f"variable {name!r} declared twice")
        if kind not in ("binary", "integer"):
            raise ValidationError(f"unknown variable kind {kind!r}")
        v = Variable(name, kind, tag, tuple(index))
        self._variables[name] = v
        return v

    def add_constraint(self, name: str, coeffs: Mapping[str, Fraction], sense: str, rhs, tag: str) -> Constraint:
        if sense not in ("<=", ">=", "="):
            raise ValidationError(f"unknown constraint sense {sense!r}")
        for v in coeffs:
            if v not in self._variables:
                raise ValidationError(f"constraint {name!r} references undeclared variable {v!r}")
        c = Constraint(name, dict(coeffs), sense, Fraction(rhs), tag)
        self._constraints.append(c)
        return c

    def set_objective(self, name: str, coeff) -> None:
        if name not in self._variables:
            raise ValidationError(f"objective references undeclared variable {name!r}")
        coeff = Fraction(coeff)
        if coeff:
            self._objective[name] = coeff
        else:
            self._objective.pop(name, None)

    def census(self) -> Counter:
        """Number of constraints per tag."""
        return Counter(c.tag for c in self.constraints)

    def evaluate(self, assignment: Mapping[str, int]) -> Fraction:
        """Objective value of an assignment; unspecified variables are zero."""
        return sum((c * assignment.get(v, 0) for v, c in self.objective.items()), Fraction(0))

    def violations(self, assignment: Mapping[str, int]) -> list[str]:
        """Names of violated constraints, plus domain violations."""
        bad = []
        for name, value in assignment.items():
            var = self.variables.get(name)
            if var is None:
                bad.append(f"undeclared:{name}")
            elif value != int(value) or value < 0 or (var.kind == "binary" and value > 1):
                bad.append(f"domain:{name}")
        bad.extend(c.name for c in self.constraints if not c.satisfied(assignment))
        return bad


def census_prediction(topology: Topology, n_requests: int, n_indices: int, options=ProgramOptions()) -> Counter:
    """Closed-form constraint counts per tag."""
    F, N, E, T = n_requests, len(topology.nodes), len(topology.links), n_indices
    if F == 0:
        return Counter()
    out = Counter(
        src_out=F,
        dst_in=F,
        transit=F * (N - 2),
        out_deg=F * N,
        cap_y=E * T,
        cap_z=E * T,
        use_y=E * F * T,
        use_z=E * F * T,
        lin_y=E * F * T,
        lin_z=E * F * T,
        cover_y=E * F * T,
        cover_z=E * F * T,
    )
    if options.strict_reservation:
        out.update(strict_y=E, strict_z=E)
    if "qkd" in options.pins:
        out.update(pin_y=E * F)
    if "km" in options.pins:
        out.update(pin_z=E * F)
    return out


def _populate(p: DeterministicProgram) -> None:
    ctx = p.context
    t, reqs = ctx.topology, ctx.requests
    T = len(ctx.scenarios)
    if not reqs:
        return
    for r in reqs:
        for link in t.links:
            xn = var_name("x", link, r.id)
            p.add_variable(xn, "binary", "x", (link.tail, link.head, r.id))
            p.set_objective(xn, ctx.energy(link, r.id))
            for kind in KINDS:
                blk = ctx.block(link, r.id, kind)
                rn = var_name(_RESERVE[kind], link, r.id)
                p.add_variable(rn, "integer", _RESERVE[kind], (link.tail, link.head, r.id))
                p.set_objective(rn, blk.reserve_cost)
                for w in range(T):
                    un = var_name(_USE[kind], link, r.id, w)
                    on = var_name(_ONDEMAND[kind], link, r.id, w)
                    p.add_variable(un, "integer", _USE[kind], (link.tail, link.head, r.id, w))
                    p.add_variable(on, "integer", _ONDEMAND[kind], (link.tail, link.head, r.id, w))
                    p.set_objective(un, blk.use_cost[w])
                    p.set_objective(on, blk.ondemand_cost[w])

    for r in reqs:
        f = r.id
        x = lambda link: var_name("x", link, f)
        src_out = {x(l): Fraction(1) for l in neighbors_out(t, r.source)}
        src_in = {x(l): Fraction(-1) for l in neighbors_in(t, r.source)}
        p.add_constraint(f"src_out_{f}", {**src_out, **src_in}, "=", 1, "src_out")
        dst_in = {x(l): Fraction(1) for l in neighbors_in(t, r.destination)}
        dst_out = {x(l): Fraction(-1) for l in neighbors_out(t, r.destination)}
        p.add_constraint(f"dst_in_{f}", {**dst_in, **dst_out}, "=", 1, "dst_in")
        for n in t.nodes:
            if n in (r.source, r.destination):
                continue
            coeffs = {x(l): Fraction(1) for l in neighbors_out(t, n)}
            coeffs.update({x(l): Fraction(-1) for l in neighbors_in(t, n)})
            p.add_constraint(f"transit_{f}_{n}", coeffs, "=", 0, "transit")
        for n in t.nodes:
            p.add_constraint(
                f"out_deg_{f}_{n}", {x(l): Fraction(1) for l in neighbors_out(t, n)}, "<=", 1, "out_deg"
            )

    for link in t.links:
        for kind, tag, use in (("qkd", "cap_y", "ye"), ("km", "cap_z", "ze")):
            cap = link.qkd_capacity if kind == "qkd" else link.km_capacity
            for w in range(T):
                p.add_constraint(
                    f"{tag}_{link.tail}_{link.head}_{w}",
                    {var_name(use, link, r.id, w): Fraction(1) for r in reqs},
                    "<=",
                    cap,
                    tag,
                )

    couple = {"qkd": "use_y", "km": "use_z"}
    cover = {"qkd": "cover_y", "km": "cover_z"}
    lin = {"qkd": "lin_y", "km": "lin_z"}
    for r in reqs:
        for link in t.links:
            xn = var_name("x", link, r.id)
            for kind in KINDS:
                blk = ctx.block(link, r.id, kind)
                rn = var_name(_RESERVE[kind], link, r.id)
                suffix = f"{link.tail}_{link.head}_{r.id}"
                for w in range(T):
                    un = var_name(_USE[kind], link, r.id, w)
                    on = var_name(_ONDEMAND[kind], link, r.id, w)
                    p.add_constraint(
                        f"{couple[kind]}_{suffix}_{w}", {un: Fraction(1), rn: Fraction(-1)}, "<=", 0, couple[kind]
                    )
                    p.add_constraint(
                        f"{lin[kind]}_{suffix}_{w}",
                        {un: Fraction(1), xn: Fraction(-blk.capacity)},
                        "<=",
                        0,
                        lin[kind],
                    )
                    cov = {un: Fraction(1), on: Fraction(1)}
                    if blk.demand[w]:
                        cov[xn] = Fraction(-blk.demand[w])
                    p.add_constraint(f"{cover[kind]}_{suffix}_{w}", cov, ">=", 0, cover[kind])

    opts = ctx.options
    if opts.strict_reservation:
        for link in t.links:
            for kind, tag in (("qkd", "strict_y"), ("km", "strict_z")):
                cap = link.qkd_capacity if kind == "qkd" else link.km_capacity
                p.add_constraint(
                    f"{tag}_{link.tail}_{link.head}",
                    {var_name(_RESERVE[kind], link, r.id): Fraction(1) for r in reqs},
                    "<=",
                    cap,
                    tag,
                )
    for kind, level in sorted(opts.pins.items()):
        tag = "pin_y" if kind == "qkd" else "pin_z"
        for r in reqs:
            for link in t.links:
                coeffs = {var_name(_RESERVE[kind], link, r.id): Fraction(1)}
                if level:
                    coeffs[var_name("x", link, r.id)] = Fraction(-level)
                p.add_constraint(f"{tag}_{link.tail}_{link.head}_{r.id}", coeffs, "=", 0, tag)


def build(
    topology: Topology,
    requests: Sequence[ChainRequest],
    cost_table: CostTable | None = None,
    physics: PhysicsParams | None = None,
    policy: ProgramOptions | None = None,
) -> DeterministicProgram:
    """Assemble the deterministic-equivalent program for an instance.

    Raises
    ------
    ValidationError
        If a request endpoint is not a topology node or a request has an
        empty scenario set.
    """
    cost_table = cost_table or CostTable.defaults()
    physics = physics or PhysicsParams()
    policy = policy or ProgramOptions()
    requests = tuple(requests)
    for r in requests:
        r.validate_against(topology)
    if policy.scenario_mode == "joint":
        size = ScenarioSet(requests, "joint").joint_size
        if size > 4096:
            raise ValidationError(f"joint scenario space has {size} points; use shared mode")
    ctx = ProgramContext(topology, requests, cost_table, physics, policy)
    logger.debug(
        "built program context: %d links, %d requests, %d scenario indices",
        len(topology.links),
        len(requests),
        len(ctx.scenarios),
    )
    return DeterministicProgram(ctx)


# Product-form evaluation, kept separate from the coefficient blocks above so the
# linearized program can be checked against it.


def _route_of(ctx: ProgramContext, assignment: Mapping[str, int], request_id: str) -> list[Link]:
    return [l for l in ctx.topology.links if assignment.get(var_name("x", l, request_id), 0) == 1]


def bilinear_objective(ctx: ProgramContext, assignment: Mapping[str, int]) -> Fraction:
    """Objective computed term by term from component counts and phase prices.

    Hardware on a link is priced from ``link_counts`` of one parallel link;
    tx/rx hardware is shared by the QKD wavelengths of that link.
    """
    total = Fraction(0)
    wq = ctx.physics.qkd_wavelengths_per_link
    T = len(ctx.scenarios)
    for pos, r in enumerate(ctx.requests):
        for link in ctx.topology.links:
            g = lambda tag, w=None: assignment.get(var_name(tag, link, r.id, w), 0)
            total += ctx.options.energy_weight(link.head, r.id) * g("x")
            counts = link_counts(link.length_km, 1, ctx.physics)
            e = link.length_km

            def qkd_price(ph, scale):
                b = ctx.costs.prices[ph]
                return Fraction(scale, wq) * (counts.tx_count * b["tx"] + counts.rx_count * b["rx"]) + e * b["ch"]

            def km_price(ph):
                b = ctx.costs.prices[ph]
                return counts.lkm_count * b["km"] + counts.si_count * b["si"] + counts.muxdemux_count * b["md"] + e * b["ch"]

            if ctx.options.hardware_scaling == "nominal":
                s0 = nominal_parallel_links(r, ctx.physics, ctx.options.nominal)
            else:
                s0 = 1
            total += qkd_price("r", s0) * g("yr") + km_price("r") * g("zr")
            for w in range(T):
                prob = ctx.scenarios.weight(pos, w)
                if ctx.options.hardware_scaling == "nominal":
                    s = parallel_links(ctx.scenarios.rate(pos, w), ctx.physics)
                else:
                    s = 1
                total += prob * (
                    qkd_price("e", s) * g("ye", w)
                    + km_price("e") * g("ze", w)
                    + qkd_price("o", s) * g("yo", w)
                    + km_price("o") * g("zo", w)
                )
    return total


def bilinear_violations(ctx: ProgramContext, assignment: Mapping[str, int]) -> list[str]:
    """Check the product-form constraints (utilized wavelengths multiplied by ``x``).

    Flow constraints are checked by walking the route; demand constraints use
    the per-scenario right-hand side.
    """
    bad = []
    t = ctx.topology
    T = len(ctx.scenarios)
    for pos, r in enumerate(ctx.requests):
        x = {l.key: assignment.get(var_name("x", l, r.id), 0) for l in t.links}
        for n in t.nodes:
            out = sum(x[l.key] for l in neighbors_out(t, n))
            inn = sum(x[l.key] for l in neighbors_in(t, n))
            want = 1 if n == r.source else -1 if n == r.destination else 0
            if out - inn != want:
                bad.append(f"flow_{r.id}_{n}")
            if out > 1:
                bad.append(f"loop_{r.id}_{n}")
        for link in t.links:
            xv = x[link.key]
            for kind, mult in (("qkd", ctx.physics.qkd_wavelengths_per_link), ("km", ctx.physics.km_wavelengths_per_link)):
                res = assignment.get(var_name(_RESERVE[kind], link, r.id), 0)
                for w in range(T):
                    use = assignment.get(var_name(_USE[kind], link, r.id, w), 0)
                    od = assignment.get(var_name(_ONDEMAND[kind], link, r.id, w), 0)
                    if use * xv > res * xv:
                        bad.append(f"couple_{kind}_{link.key}_{r.id}_{w}")
                    need = parallel_links(ctx.scenarios.rate(pos, w), ctx.physics) * mult * xv
                    if use * xv + od < need:
                        bad.append(f"demand_{kind}_{link.key}_{r.id}_{w}")
    for link in t.links:
        for w in range(T):
            for kind, cap in (("qkd", link.qkd_capacity), ("km", link.km_capacity)):
                used = sum(
                    assignment.get(var_name(_USE[kind], link, r.id, w), 0)
                    * assignment.get(var_name("x", link, r.id), 0)
                    for r in ctx.requests
                )
                if used > cap:
                    bad.append(f"capacity_{kind}_{link.key}_{w}")
    return bad
