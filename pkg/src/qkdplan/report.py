"""Plain-text solution reports: key-value header plus a per-link table."""

from __future__ import annotations

from fractions import Fraction

from .solver import PlanSolution

__all__ = ["format_solution", "money"]


def money(v: Fraction) -> str:
    return f"{float(v):.6f}"


def format_solution(sol: PlanSolution) -> str:
    ctx = sol.program.context
    lines = [
        f"label: {sol.label}",
        f"status: {sol.status}",
        f"restricted: {str(sol.restricted).lower()}",
        f"requests: {len(sol.routes)}",
        f"first_stage_cost: {money(sol.first_stage_cost)}",
        f"second_stage_cost: {money(sol.second_stage_cost)}",
        f"total_cost: {money(sol.total_cost)}",
        f"reserved_qkd: {sol.reserved_total('qkd')}",
        f"reserved_km: {sol.reserved_total('km')}",
        f"expected_ondemand_qkd: {float(sol.expected_ondemand('qkd')):.6f}",
        f"expected_ondemand_km: {float(sol.expected_ondemand('km')):.6f}",
    ]
    for phase in ("energy", "reservation", "utilization", "on-demand"):
        lines.append(f"cost.{phase}: {money(sol.phase_cost(phase))}")
    for (phase, comp), v in sorted(sol.ledger.items()):
        lines.append(f"ledger.{phase}.{comp}: {money(v)}")
    for r in ctx.requests:
        if r.id in sol.routes:
            lines.append(f"route.{r.id}: {'-'.join(map(str, sol.routes[r.id]))}")
    lines.append("")
    lines.append("kind  link     request  reserved  used                ondemand")
    for (kind, key, f), a in sorted(sol.allocations.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0])):
        used = ",".join(map(str, a.used))
        ond = ",".join(map(str, a.ondemand))
        lines.append(f"{kind:<5} {key[0]:>3}-{key[1]:<4} {f:<8} {a.reserved:>8}  {used:<18}  {ond}")
    return "\n".join(lines) + "\n"
