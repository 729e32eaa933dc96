"""Experiment harness: config files, the three sweeps and their CSV series.

A config is a plain ``key = value`` file::

    topology = usnet
    experiment = cost_structure
    axis = reserved_qkd
    values = auto
    requests = 5
    k_min = 4
    k_max = 4
    seed = 7

Every randomized input is drawn from a ``random.Random`` seeded by the config
seed (and, for request sampling, the request count), so a config always
produces the same rows.
"""

from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path

from .baseline import BASELINE_MODES, baseline_for_program
from .costs import CostTable, load_cost_table
from .demand import PhysicsParams, point_request
from .errors import ValidationError
from .instances import line_topology, sample_requests
from .program import ProgramOptions, build
from .report import format_solution
from .solver import DEFAULT_BUDGET, DEFAULT_K, PlanSolution, solve
from .topology import Topology, load_topology, usnet

__all__ = [
    "ExperimentConfig",
    "parse_config",
    "load_config",
    "run_cost_structure_sweep",
    "run_utilization_sweep",
    "run_baseline_comparison",
    "run_experiment",
    "write_csv",
    "AXES",
]

AXES = ("reserved_qkd", "reserved_km", "secret_key_rate", "request_count")
_EXPERIMENT_AXES = {
    "cost_structure": ("reserved_qkd", "reserved_km"),
    "utilization": ("secret_key_rate",),
    "baseline": ("request_count",),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of one sweep; see the module docstring for the file format.

    ``topology`` is ``usnet``, ``line`` (a seeded line of ``line_nodes``
    nodes with span lengths drawn from ``line_min_km..line_max_km``) or a
    topology file path. ``values`` is a comma list, an inclusive range
    ``a:b`` or ``a:b:step``, or ``auto`` (cost-structure sweeps only:
    ``0..2L`` where ``L`` is the largest per-link level in the free optimum).
    """

    experiment: str = "cost_structure"
    topology: str = "usnet"
    axis: str = "reserved_qkd"
    values: str = "auto"
    seed: int | None = None
    requests: int = 5
    k_min: int = 1
    k_max: int = 4
    source: int | None = None
    destination: int | None = None
    theta_km: Fraction = Fraction(80)
    key_rate_kbps: Fraction = Fraction(1)
    cost_table: str | None = None
    qkd_capacity: int | None = None
    km_capacity: int | None = None
    line_nodes: int = 5
    line_min_km: int = 321
    line_max_km: int = 800
    k: int = DEFAULT_K
    budget: int = DEFAULT_BUDGET
    baseline_mode: str = "both"
    strict_reservation: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.experiment not in _EXPERIMENT_AXES:
            raise ValidationError(f"unknown experiment {self.experiment!r}")
        if self.axis not in _EXPERIMENT_AXES[self.experiment]:
            raise ValidationError(
                f"axis {self.axis!r} does not fit experiment {self.experiment!r}; "
                f"expected one of {_EXPERIMENT_AXES[self.experiment]}"
            )
        if self.baseline_mode not in BASELINE_MODES + ("both",):
            raise ValidationError(f"unknown baseline mode {self.baseline_mode!r}")
        if not 0 <= self.k_min <= self.k_max:
            raise ValidationError("need 0 <= k_min <= k_max")
        if self.values != "auto":
            vals = self.sweep_values()
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ValidationError("sweep values must be strictly increasing")
            if any(v < 0 for v in vals):
                raise ValidationError("sweep values must be nonnegative")
        elif self.experiment != "cost_structure":
            raise ValidationError("values = auto is only defined for cost-structure sweeps")

    @property
    def randomized(self) -> bool:
        return self.topology == "line" or self.experiment in ("cost_structure", "baseline")

    def require_seed(self) -> int:
        if self.seed is None:
            raise ValidationError("this config draws random inputs; a seed is mandatory")
        return self.seed

    def sweep_values(self) -> list[int]:
        text = self.values.strip()
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            a, b, step = parts
            if step <= 0:
                raise ValidationError("range step must be positive")
            return list(range(a, b + 1, step))
        return [int(v) for v in text.split(",") if v.strip()]

    def physics(self) -> PhysicsParams:
        return PhysicsParams(theta_km=self.theta_km, key_rate_kbps=self.key_rate_kbps)

    def costs(self) -> CostTable:
        return load_cost_table(self.cost_table) if self.cost_table else CostTable.defaults()

    def load_topology(self) -> Topology:
        if self.topology == "usnet":
            t = usnet()
        elif self.topology == "line":
            rng = random.Random(f"{self.require_seed()}:line")
            t = line_topology(rng, self.line_nodes, (self.line_min_km, self.line_max_km))
        else:
            t = load_topology(self.topology)
        if self.qkd_capacity is not None or self.km_capacity is not None:
            t = t.with_capacities(self.qkd_capacity, self.km_capacity)
        return t

    def options(self, **kw) -> ProgramOptions:
        return ProgramOptions(strict_reservation=self.strict_reservation, **kw)


_BOOL = {"true": True, "false": False, "yes": True, "no": False, "1": True, "0": False}


def parse_config(text: str, **overrides) -> ExperimentConfig:
    """Parse ``key = value`` config text; keyword overrides win over the file."""
    types = {f.name: f.type for f in fields(ExperimentConfig)}
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in types:
            raise ValidationError(f"config line {lineno}: unknown or malformed entry {raw.strip()!r}")
        values[key] = _convert(key, types[key], value, lineno)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)


def _convert(key: str, typ: str, value: str, lineno: int):
    try:
        if typ.startswith("int"):
            return int(value)
        if typ == "Fraction":
            return Fraction(value)
        if typ == "bool":
            return _BOOL[value.lower()]
    except (ValueError, KeyError, ZeroDivisionError):
        raise ValidationError(f"config line {lineno}: bad value {value!r} for {key}") from None
    if value.lower() in ("none", "") and typ.endswith("None"):
        return None
    return value


def load_config(path: str | Path, **overrides) -> ExperimentConfig:
    return parse_config(Path(path).read_text(), **overrides)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{float(v):.6f}"
    if v is None:
        return ""
    return str(v)


def write_csv(header: list[str], rows: list[list], path: str | Path | None = None) -> str:
    """CSV text with LF line endings and ``.6f`` money columns; written to ``path`` if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_bytes(text.encode("ascii"))
    return text


def _map(fn, items, workers: int):
    # Results always come back in input order, whatever the completion order.
    if workers <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _dump(dump_dir, name: str, sol: PlanSolution) -> None:
    if dump_dir is None:
        return
    d = Path(dump_dir)
    d.mkdir(parents=True, exist_ok=True)
    (d / f"{name}.txt").write_text(format_solution(sol))


# Cost structure -------------------------------------------------------------

COST_HEADER = [
    "kind",
    "reserved_level",
    "reserved_total",
    "first_stage_cost",
    "second_stage_cost",
    "on_demand_cost",
    "total_cost",
]


def _cost_instance(cfg: ExperimentConfig):
    t = cfg.load_topology()
    reqs = sample_requests(t, cfg.requests, cfg.require_seed(), (cfg.k_min, cfg.k_max))
    return t, reqs


def _cost_point(args):
    cfg, kind, level = args
    t, reqs = _cost_instance(cfg)
    pins = {} if level is None else {kind: level}
    p = build(t, reqs, cfg.costs(), cfg.physics(), cfg.options(pins=pins))
    return solve(p, cfg.k, cfg.budget)


def run_cost_structure_sweep(cfg: ExperimentConfig, dump_dir=None) -> tuple[list[str], list[list]]:
    """Total cost against a forced per-link reservation level of one kind.

    Each row pins the reservation of the swept kind to ``reserved_level`` on
    every route link of every request; the other kind stays free. The first
    row is the unpinned optimum. ``on_demand_cost`` is the expected on-demand
    cost of the swept kind.
    """
    kind = "qkd" if cfg.axis == "reserved_qkd" else "km"
    free = _cost_point((cfg, kind, None))
    if cfg.values == "auto":
        top = max((a.reserved for (k, _, _), a in free.allocations.items() if k == kind), default=0)
        levels = list(range(0, 2 * top + 1))
    else:
        levels = cfg.sweep_values()
    sols = _map(_cost_point, [(cfg, kind, v) for v in levels], cfg.workers)
    rows = []
    for level, sol in [("optimum", free)] + list(zip(levels, sols)):
        _dump(dump_dir, f"{cfg.axis}_{level}", sol)
        rows.append(
            [
                kind,
                level,
                sol.reserved_total(kind),
                sol.first_stage_cost,
                sol.second_stage_cost,
                sol.phase_cost("on-demand", kind),
                sol.total_cost,
            ]
        )
    return COST_HEADER, rows


# Utilization ----------------------------------------------------------------

UTIL_HEADER = ["rate", "reserved_qkd", "reserved_km", "on_demand_qkd", "on_demand_km", "total_cost"]


def _util_point(args):
    cfg, rate = args
    t = cfg.load_topology()
    s = cfg.source if cfg.source is not None else t.nodes[0]
    d = cfg.destination if cfg.destination is not None else t.nodes[-1]
    p = build(t, [point_request(s, d, rate)], cfg.costs(), cfg.physics(), cfg.options())
    return solve(p, cfg.k, cfg.budget)


def run_utilization_sweep(cfg: ExperimentConfig, dump_dir=None) -> tuple[list[str], list[list]]:
    """Wavelengths by phase against a deterministic secret-key rate.

    Counts are summed over the route links of the single request.
    """
    rates = cfg.sweep_values()
    sols = _map(_util_point, [(cfg, r) for r in rates], cfg.workers)
    rows = []
    for rate, sol in zip(rates, sols):
        _dump(dump_dir, f"rate_{rate}", sol)
        rows.append(
            [
                rate,
                sol.reserved_total("qkd"),
                sol.reserved_total("km"),
                sol.expected_ondemand("qkd"),
                sol.expected_ondemand("km"),
                sol.total_cost,
            ]
        )
    return UTIL_HEADER, rows


# Baseline comparison --------------------------------------------------------

BASELINE_HEADER = ["request_count", "mode", "sp_cost", "baseline_cost", "improvement_pct", "sp_status"]


def _baseline_point(args):
    cfg, count = args
    t = cfg.load_topology()
    reqs = sample_requests(t, count, cfg.require_seed(), (cfg.k_min, cfg.k_max))
    p = build(t, reqs, cfg.costs(), cfg.physics(), cfg.options())
    modes = BASELINE_MODES if cfg.baseline_mode == "both" else (cfg.baseline_mode,)
    sp = solve(p, cfg.k, cfg.budget)
    return sp, [baseline_for_program(p, m) for m in modes]


def improvement_pct(sp_cost: Fraction, baseline_cost: Fraction) -> Fraction | None:
    if baseline_cost == 0:
        return None
    return (baseline_cost - sp_cost) / baseline_cost * 100


def run_baseline_comparison(cfg: ExperimentConfig, dump_dir=None) -> tuple[list[str], list[list]]:
    """Optimized plan against the shortest-path baseline for growing request sets."""
    counts = cfg.sweep_values()
    results = _map(_baseline_point, [(cfg, n) for n in counts], cfg.workers)
    rows = []
    for n, (sp, bases) in zip(counts, results):
        _dump(dump_dir, f"sp_{n}", sp)
        for b in bases:
            _dump(dump_dir, f"{b.label}_{n}", b)
            rows.append([n, b.label, sp.total_cost, b.total_cost, improvement_pct(sp.total_cost, b.total_cost), sp.status])
    return BASELINE_HEADER, rows


_RUNNERS = {
    "cost_structure": run_cost_structure_sweep,
    "utilization": run_utilization_sweep,
    "baseline": run_baseline_comparison,
}


def run_experiment(cfg: ExperimentConfig, out_dir=None, dump_solutions: bool = False) -> tuple[str, Path | None]:
    """Run the sweep named by ``cfg.experiment``; returns the CSV text and its path."""
    dump_dir = None
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        if dump_solutions:
            dump_dir = Path(out_dir) / "solutions"
    header, rows = _RUNNERS[cfg.experiment](cfg, dump_dir=dump_dir)
    path = None if out_dir is None else Path(out_dir) / f"{cfg.experiment}_{cfg.axis}.csv"
    return write_csv(header, rows, path), path


def with_overrides(cfg: ExperimentConfig, **kw) -> ExperimentConfig:
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None})
