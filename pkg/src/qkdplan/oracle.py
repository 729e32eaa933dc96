"""Exhaustive reference optimizer for tiny programs.

Works only from the program's rows: route indicators are enumerated over every
choice of at most one outgoing link per node and filtered by the flow
constraints, and for each link and wavelength kind every integer reservation
and utilization vector within the bound is tried. The only reductions used
are exact ones: with all objective coefficients nonnegative, variables of
links a request does not traverse are zero, and on-demand wavelengths take
the least value that covers demand.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import SizeGuardError
from .program import DeterministicProgram, var_name
from .topology import neighbors_out

__all__ = ["OracleResult", "brute_force_oracle", "enumerate_routings"]

MAX_NODES = 5
MAX_REQUESTS = 2
MAX_RATE = 2
MAX_BOUND = 6


@dataclass
class OracleResult:
    feasible: bool
    objective: Fraction | None
    assignment: dict[str, int] | None
    routings_checked: int = 0


def enumerate_routings(p: DeterministicProgram, request_id: str) -> list[frozenset]:
    """All link sets whose indicators satisfy the request's flow constraints."""
    t = p.context.topology
    rows = [c for c in p.constraints if c.tag in ("src_out", "dst_in", "transit", "out_deg") and _row_request(c) == request_id]
    choices = [(None,) + neighbors_out(t, n) for n in t.nodes]
    out = []
    for pick in itertools.product(*choices):
        links = frozenset(l.key for l in pick if l is not None)
        assignment = {var_name("x", key, request_id): 1 for key in links}
        if all(c.satisfied(assignment) for c in rows):
            out.append(links)
    return out


def _fields(c) -> list[str]:
    """Index fields of a row name, after its tag prefix."""
    return c.name[len(c.tag) + 1 :].split("_")


def _row_request(c) -> str:
    return _fields(c)[0]


_COVER = re.compile(r"^(cover_y|cover_z)_(\d+)_(\d+)_(\w+)_(\d+)$")


def brute_force_oracle(p: DeterministicProgram, bound: int | None = None) -> OracleResult:
    """Minimum objective of a tiny program by exhaustive enumeration.

    Raises
    ------
    SizeGuardError
        If the instance exceeds 5 nodes, 2 requests, rate 2 or bound 6.
    """
    ctx = p.context
    t, reqs = ctx.topology, ctx.requests
    if len(t.nodes) > MAX_NODES or len(reqs) > MAX_REQUESTS or any(r.max_rate > MAX_RATE for r in reqs):
        raise SizeGuardError("oracle limited to 5 nodes, 2 requests, K <= 2")
    obj = p.objective
    cons = p.constraints

    # Demand, capacity, pin and strict data, read back from the rows.
    demand: dict[tuple, int] = {}
    for c in cons:
        if c.tag in ("cover_y", "cover_z"):
            kind = "qkd" if c.tag == "cover_y" else "km"
            m = _COVER.match(c.name)
            i, j, f, w = int(m[2]), int(m[3]), m[4], int(m[5])
            xn = var_name("x", (i, j), f)
            demand[(kind, (i, j), f, w)] = int(-c.coeffs.get(xn, 0))
    cap: dict[tuple, int] = {}
    for c in cons:
        if c.tag in ("cap_y", "cap_z"):
            kind = "qkd" if c.tag == "cap_y" else "km"
            i, j, w = _fields(c)
            cap[(kind, (int(i), int(j)), int(w))] = int(c.rhs)
    strict_cap: dict[tuple, int] = {}
    pins: dict[tuple, int] = {}
    for c in cons:
        if c.tag in ("strict_y", "strict_z"):
            i, j = _fields(c)
            strict_cap[("qkd" if c.tag == "strict_y" else "km", (int(i), int(j)))] = int(c.rhs)
        elif c.tag in ("pin_y", "pin_z"):
            i, j, f = _fields(c)
            level = -c.coeffs.get(var_name("x", (int(i), int(j)), f), 0)
            pins[("qkd" if c.tag == "pin_y" else "km", (int(i), int(j)), f)] = int(level)

    T = len(ctx.scenarios)
    if bound is None:
        bound = max(demand.values(), default=0)
    if bound > MAX_BOUND:
        raise SizeGuardError(f"variable bound {bound} exceeds {MAX_BOUND}")

    prefix = {"qkd": ("yr", "ye", "yo"), "km": ("zr", "ze", "zo")}
    cache: dict[tuple, tuple] = {}

    def block_min(kind, key, users):
        """Cheapest assignment of one kind on one link for the given requests."""
        ck = (kind, key, users)
        if ck in cache:
            return cache[ck]
        rn, un, on = prefix[kind]
        best = None
        r_ranges = []
        for f in users:
            if (kind, key, f) in pins:
                r_ranges.append((pins[(kind, key, f)],))
            else:
                r_ranges.append(range(bound + 1))
        for r in itertools.product(*r_ranges):
            if (kind, key) in strict_cap and sum(r) > strict_cap[(kind, key)]:
                continue
            cost = sum((obj.get(var_name(rn, key, f), 0) * rv for f, rv in zip(users, r)), Fraction(0))
            values = {var_name(rn, key, f): rv for f, rv in zip(users, r)}
            for w in range(T):
                best_w = None
                for u in itertools.product(*(range(rv + 1) for rv in r)):
                    if sum(u) > cap[(kind, key, w)]:
                        continue
                    cw = Fraction(0)
                    vals = {}
                    for f, uv in zip(users, u):
                        ov = max(0, demand[(kind, key, f, w)] - uv)
                        if ov > bound:
                            break
                        cw += obj.get(var_name(un, key, f, w), 0) * uv + obj.get(var_name(on, key, f, w), 0) * ov
                        vals[var_name(un, key, f, w)] = uv
                        vals[var_name(on, key, f, w)] = ov
                    else:
                        if best_w is None or cw < best_w[0]:
                            best_w = (cw, vals)
                if best_w is None:
                    cost = None
                    break
                cost += best_w[0]
                values.update(best_w[1])
            if cost is not None and (best is None or cost < best[0]):
                best = (cost, values)
        cache[ck] = best
        return best

    routings = [enumerate_routings(p, r.id) for r in reqs]
    best = None
    checked = 0
    for combo in itertools.product(*routings):
        checked += 1
        total = Fraction(0)
        values: dict[str, int] = {}
        for r, links in zip(reqs, combo):
            for key in links:
                xn = var_name("x", key, r.id)
                values[xn] = 1
                total += obj.get(xn, 0)
        used_links = sorted(set().union(*combo)) if combo else []
        feasible = True
        for key in used_links:
            users = tuple(r.id for r, links in zip(reqs, combo) if key in links)
            for kind in ("qkd", "km"):
                b = block_min(kind, key, users)
                if b is None:
                    feasible = False
                    break
                total += b[0]
                values.update(b[1])
            if not feasible:
                break
        if feasible and (best is None or total < best[0]):
            best = (total, values)
    if best is None:
        return OracleResult(False, None, None, checked)
    assignment = {k: v for k, v in best[1].items() if v}
    violated = p.violations(assignment)
    if violated:
        raise AssertionError(f"oracle assignment violates {violated[:5]}")
    return OracleResult(True, best[0], assignment, checked)
