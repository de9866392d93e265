"""Adaptive integration of the affine linear systems used by both solvers."""

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StiffnessError

DEFAULT_REL_TOL = 1e-9
DEFAULT_ABS_TOL = 1e-12
# Dormand-Prince 5(4); "DOP853" is accepted for long runs.
DEFAULT_METHOD = "RK45"
_METHODS = {"RK45", "DOP853", "RK23"}


def check_time_grid(t_grid):
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise ValueError("time grid needs at least two samples")
    if t[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if not np.all(np.diff(t) > 0):
        raise ValueError("time grid must be strictly increasing")
    return t


def check_tolerances(rel_tol, abs_tol):
    for name, tol in (("rel_tol", rel_tol), ("abs_tol", abs_tol)):
        if not 0 < tol <= 1e-3:
            raise ValueError(f"{name} must lie in (0, 1e-3], got {tol!r}")


def solve_affine(matrix, offset, y0, t_grid, rel_tol=DEFAULT_REL_TOL,
                 abs_tol=DEFAULT_ABS_TOL, method=DEFAULT_METHOD):
    """Integrate ``dy/dt = matrix @ y + offset`` and sample it on ``t_grid``.

    Returns an array of shape ``(len(t_grid), len(y0))``. Works for real and
    complex systems.
    """
    t = check_time_grid(t_grid)
    check_tolerances(rel_tol, abs_tol)
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(_METHODS)}")
    matrix = np.ascontiguousarray(matrix)
    offset = np.asarray(offset)
    y0 = np.asarray(y0, dtype=np.result_type(matrix, offset, y0))

    def rhs(_t, y):
        return matrix @ y + offset

    sol = solve_ivp(rhs, (t[0], t[-1]), y0, method=method, t_eval=t,
                    rtol=rel_tol, atol=abs_tol)
    if sol.status != 0 or sol.y.shape[1] != t.size:
        reached = float(sol.t[-1]) if sol.t.size else 0.0
        raise StiffnessError(f"integration failed: {sol.message}", t_reached=reached)
    return sol.y.T.copy()
