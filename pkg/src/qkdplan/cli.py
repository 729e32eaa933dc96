"""Command-line entry point, ``python -m qkdplan``.

Exit status: 0 optimal, 3 budget exhausted (incumbent returned), 4 infeasible,
2 bad input, 1 oracle mismatch in ``validate``.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from .costs import CostTable, load_cost_table
from .demand import PhysicsParams, load_requests
from .errors import InfeasibleError, QKDPlanError
from .experiments import load_config, run_experiment
from .instances import random_tiny_instance
from .lpformat import export_lp
from .oracle import brute_force_oracle
from .program import ProgramOptions, build
from .report import format_solution
from .solver import DEFAULT_BUDGET, DEFAULT_K, solve
from .topology import load_topology, usnet

EXIT_OPTIMAL = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_INCUMBENT = 3
EXIT_INFEASIBLE = 4


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--topology", default="usnet", help="topology file, or 'usnet' for the bundled network")
    p.add_argument("--requests", required=True, help="request file: 'f S D K [dist=uniform|point]' per line")
    p.add_argument("--cost-table", help="key-value price file; missing keys fall back to the default table")
    p.add_argument("--theta-km", default="80", help="MDI-QRx to MDI-QTx distance (default 80)")
    p.add_argument("--key-rate", default="1", help="secret-key rate per QKD link, kbps (default 1)")
    p.add_argument("--scenario-mode", choices=("shared", "joint"), default="shared")
    p.add_argument("--strict-reservation", action="store_true", help="also bound reservations by capacity")


def _build(args):
    t = usnet() if args.topology == "usnet" else load_topology(args.topology)
    reqs = load_requests(args.requests)
    table = load_cost_table(args.cost_table) if args.cost_table else CostTable.defaults()
    physics = PhysicsParams(theta_km=args.theta_km, key_rate_kbps=args.key_rate)
    opts = ProgramOptions(scenario_mode=args.scenario_mode, strict_reservation=args.strict_reservation)
    return build(t, reqs, table, physics, opts)


def cmd_plan(args) -> int:
    p = _build(args)
    sol = solve(p, args.k, args.budget)
    text = format_solution(sol)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "plan.txt").write_text(text)
    sys.stdout.write(text)
    return EXIT_OPTIMAL if sol.optimal else EXIT_INCUMBENT


def cmd_sweep(args) -> int:
    cfg = load_config(args.config, seed=args.seed, workers=args.workers)
    text, path = run_experiment(cfg, args.out_dir, args.dump_solutions)
    if path is None:
        sys.stdout.write(text)
    else:
        print(f"wrote {path}")
    return EXIT_OPTIMAL


def cmd_export_lp(args) -> int:
    p = _build(args)
    path = export_lp(p, args.output)
    print(f"wrote {path}: {len(p.variables)} variables, {len(p.constraints)} constraints")
    return EXIT_OPTIMAL


def cmd_validate(args) -> int:
    seed = 0 if args.seed is None else args.seed
    mismatches = 0
    for i in range(args.instances):
        t, reqs = random_tiny_instance(random.Random(f"{seed}:{i}"))
        p = build(t, reqs)
        ref = brute_force_oracle(p)
        try:
            got = solve(p, k=args.k).total_cost
        except InfeasibleError:
            got = None
        want = ref.objective if ref.feasible else None
        if got != want:
            mismatches += 1
            print(f"instance {i}: solver {got} oracle {want}")
    print(f"{args.instances - mismatches}/{args.instances} instances agree with the oracle")
    return EXIT_OPTIMAL if mismatches == 0 else EXIT_MISMATCH


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qkdplan", description="QKD wavelength reservation planning")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="solve one instance and print the report")
    _instance_args(p)
    p.add_argument("--k", type=int, default=DEFAULT_K, help="candidate routes per request")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="branch-and-bound node limit")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_plan)

    s = sub.add_parser("sweep", help="run an experiment config and emit its CSV")
    s.add_argument("config")
    s.add_argument("--seed", type=int, help="overrides the config seed")
    s.add_argument("--out-dir", help="write the CSV here instead of stdout")
    s.add_argument("--dump-solutions", action="store_true", help="also write every plan report under OUT_DIR/solutions")
    s.add_argument("--workers", type=int, help="parallel sweep points")
    s.set_defaults(func=cmd_sweep)

    e = sub.add_parser("export-lp", help="write the deterministic-equivalent program as an LP file")
    _instance_args(e)
    e.add_argument("output")
    e.set_defaults(func=cmd_export_lp)

    v = sub.add_parser("validate", help="cross-check the solver against the exhaustive oracle")
    v.add_argument("--instances", type=int, default=100)
    v.add_argument("--seed", type=int)
    v.add_argument("--k", type=int, default=50)
    v.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (QKDPlanError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
