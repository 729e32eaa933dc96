"""Solve a read-back LP file with scipy's HiGHS MILP interface."""

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from qkdplan.lpformat import read_lp


def solve_lp_file(path):
    m = read_lp(path)
    names = m.variables
    col = {n: j for j, n in enumerate(names)}
    c = np.zeros(len(names))
    for n, v in m.objective.items():
        c[col[n]] = v
    A = np.zeros((len(m.rows), len(names)))
    lo = np.full(len(m.rows), -np.inf)
    hi = np.full(len(m.rows), np.inf)
    for i, (_, coeffs, sense, rhs) in enumerate(m.rows):
        for n, v in coeffs.items():
            A[i, col[n]] = v
        if sense in ("<=", "="):
            hi[i] = rhs
        if sense in (">=", "="):
            lo[i] = rhs
    binaries = set(m.binaries)
    ub = np.array([1.0 if n in binaries else np.inf for n in names])
    cons = [LinearConstraint(A, lo, hi)] if len(m.rows) else []
    res = milp(c, constraints=cons, integrality=np.ones(len(names)), bounds=Bounds(np.zeros(len(names)), ub))
    return res
