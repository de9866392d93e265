"""Generalized Bloch equations for the donor electron-nuclear spin pair.

The state is the 15 real expectation values <S>, <I> and the 3x3 correlation
matrix <S_a I_b>. The equations are linear with a constant inhomogeneity, so
the right-hand side is also exposed as an explicit 15x15 generator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import FrameError
from .integrate import DEFAULT_ABS_TOL, DEFAULT_METHOD, DEFAULT_REL_TOL, solve_affine

LEVI_CIVITA = np.zeros((3, 3, 3))
for _a, _b, _c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_a, _b, _c] = 1.0
    LEVI_CIVITA[_a, _c, _b] = -1.0

Z_HAT = np.array([0.0, 0.0, 1.0])
# Z_CROSS @ w == cross(z_hat, w)
Z_CROSS = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])

COMPONENT_NAMES = (
    "Sx", "Sy", "Sz", "Ix", "Iy", "Iz",
    "SIxx", "SIxy", "SIxz", "SIyx", "SIyy", "SIyz", "SIzx", "SIzy", "SIzz",
)

BOUND_TOL = 1e-9


class Frame(enum.Enum):
    LAB = "lab"
    ROTATING = "rotating"


@dataclass(frozen=True)
class BlochState:
    """Expectation values <S>, <I> and <S_a I_b> (row a: electron, column b: nucleus)."""

    s: np.ndarray
    i: np.ndarray
    si: np.ndarray
    frame: Frame = Frame.LAB

    def __post_init__(self):
        object.__setattr__(self, "s", np.asarray(self.s, dtype=float).reshape(3))
        object.__setattr__(self, "i", np.asarray(self.i, dtype=float).reshape(3))
        object.__setattr__(self, "si", np.asarray(self.si, dtype=float).reshape(3, 3))

    @classmethod
    def zero(cls, frame=Frame.LAB):
        return cls(np.zeros(3), np.zeros(3), np.zeros((3, 3)), frame)

    @classmethod
    def product(cls, s, i, frame=Frame.LAB):
        """Uncorrelated electron and nucleus, <S_a I_b> = <S_a><I_b>."""
        s = np.asarray(s, dtype=float)
        i = np.asarray(i, dtype=float)
        return cls(s, i, np.outer(s, i), frame)

    @classmethod
    def from_vector(cls, v, frame=Frame.LAB):
        v = np.asarray(v, dtype=float)
        return cls(v[0:3], v[3:6], v[6:15].reshape(3, 3), frame)

    def as_vector(self):
        return np.concatenate([self.s, self.i, self.si.ravel()])

    def within_bounds(self, tol=BOUND_TOL):
        return bool(
            np.linalg.norm(self.s) <= 0.5 + tol
            and np.linalg.norm(self.i) <= 0.5 + tol
            and np.all(np.abs(self.si) <= 0.25 + tol)
        )


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution; ``vectors[k]`` is the 15-vector at ``times[k]``."""

    times: np.ndarray
    vectors: np.ndarray
    params: object = None
    frame: Frame = Frame.LAB
    time_unit: str = "s"
    solver: str = "bloch"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        vectors = np.asarray(self.vectors, dtype=float)
        if vectors.shape != (times.size, 15):
            raise ValueError(f"vectors must have shape ({times.size}, 15), got {vectors.shape}")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("trajectory times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "vectors", vectors)

    def __len__(self):
        return self.times.size

    @property
    def s(self):
        return self.vectors[:, 0:3]

    @property
    def i(self):
        return self.vectors[:, 3:6]

    @property
    def si(self):
        return self.vectors[:, 6:15].reshape(-1, 3, 3)

    @property
    def states(self):
        return [BlochState.from_vector(v, self.frame) for v in self.vectors]

    def component(self, name):
        return self.vectors[:, COMPONENT_NAMES.index(name)]

    def max_bound_violation(self):
        """Largest excess over |s| <= 1/2, |i| <= 1/2, |si_ab| <= 1/4 (<= 0 means none)."""
        s_excess = np.linalg.norm(self.s, axis=1) - 0.5
        i_excess = np.linalg.norm(self.i, axis=1) - 0.5
        si_excess = np.abs(self.vectors[:, 6:]).max(axis=1) - 0.25
        return float(max(s_excess.max(), i_excess.max(), si_excess.max()))


def _cross_correlation(si):
    # v_a = eps_abc <S_b I_c>, i.e. <S x I>
    return np.einsum("abc,bc->a", LEVI_CIVITA, si)


def bloch_rhs(state, params, gamma_e=None, hyperfine_tensor_sign=1.0):
    """Time derivative of a lab-frame BlochState.

    ds/dt  = omega_e z x s - A <S x I> - Gamma_e (s - (p_e/2) z)
    di/dt  = -omega_n z x i + A <S x I>
    dsi/dt = omega_e Zx si + omega_n si Zx + (A/4) eps.(s - i) - Gamma_e si

    ``Zx`` is the matrix of ``z x``; right-multiplying rotates the nuclear
    (column) index with the opposite sense to the electron row index. The
    signs of the last two terms are the ones for which these equations coincide
    with the density-matrix equation. ``hyperfine_tensor_sign`` flips the sign
    of the (A/4) term; it exists only so the oracle comparison can be shown to
    catch a wrong sign.
    """
    if state.frame is not Frame.LAB:
        raise FrameError("bloch_rhs expects a lab-frame state")
    if gamma_e is None:
        gamma_e = params.gamma_e
    A, we, wn, pe = params.A, params.omega_e, params.omega_n, params.p_e
    s, i, si = state.s, state.i, state.si
    v = _cross_correlation(si)
    ds = we * np.cross(Z_HAT, s) - A * v - gamma_e * (s - 0.5 * pe * Z_HAT)
    di = -wn * np.cross(Z_HAT, i) + A * v
    tensor = np.einsum("abc,c->ab", LEVI_CIVITA, s - i)
    dsi = (we * Z_CROSS @ si + wn * si @ Z_CROSS
           + hyperfine_tensor_sign * 0.25 * A * tensor - gamma_e * si)
    return BlochState(ds, di, dsi, Frame.LAB)


def generator(params, gamma_e=None, hyperfine_tensor_sign=1.0):
    """Return ``(M, c)`` with ``d/dt y = M @ y + c`` for the 15-vector ``y``."""
    if gamma_e is None:
        gamma_e = params.gamma_e

    def apply(v):
        return bloch_rhs(BlochState.from_vector(v), params, gamma_e,
                         hyperfine_tensor_sign).as_vector()

    offset = apply(np.zeros(15))
    matrix = np.column_stack([apply(e) - offset for e in np.eye(15)])
    return matrix, offset


def stationary_state(params, gamma_e=None):
    """Fixed point of the lab-frame equations (requires Gamma_e > 0)."""
    matrix, offset = generator(params, gamma_e)
    return BlochState.from_vector(np.linalg.solve(matrix, -offset))


def evolve_bloch(state0, params, t_grid, rel_tol=DEFAULT_REL_TOL, abs_tol=DEFAULT_ABS_TOL,
                 method=DEFAULT_METHOD, gamma_e=None, hyperfine_tensor_sign=1.0):
    """Integrate the Bloch equations from ``state0`` over ``t_grid``.

    ``t_grid`` is in seconds, or in units of 1/A for dimensionless params.
    """
    if state0.frame is not Frame.LAB:
        raise FrameError("evolve_bloch integrates in the lab frame")
    if gamma_e is None:
        gamma_e = params.gamma_e
    matrix, offset = generator(params, gamma_e, hyperfine_tensor_sign)
    vectors = solve_affine(matrix, offset, state0.as_vector(), t_grid, rel_tol, abs_tol, method)
    return Trajectory(t_grid, vectors, params, Frame.LAB, params.time_unit, "bloch",
                      {"rel_tol": rel_tol, "abs_tol": abs_tol, "method": method,
                       "gamma_e": gamma_e})


def _rz(angles):
    c, s = np.cos(angles), np.sin(angles)
    out = np.zeros((angles.size, 3, 3))
    out[:, 0, 0] = c
    out[:, 0, 1] = -s
    out[:, 1, 0] = s
    out[:, 1, 1] = c
    out[:, 2, 2] = 1.0
    return out


def to_rotating_frame(traj, omega_e=None, omega_n=None):
    """Transform to the frame where the electron turns at omega_e and the nucleus at -omega_n."""
    if traj.frame is not Frame.LAB:
        raise FrameError("trajectory is already in the rotating frame")
    if omega_e is None:
        omega_e = traj.params.omega_e
    if omega_n is None:
        omega_n = traj.params.omega_n
    re = _rz(-omega_e * traj.times)
    rn = _rz(omega_n * traj.times)
    s = np.einsum("kab,kb->ka", re, traj.s)
    i = np.einsum("kab,kb->ka", rn, traj.i)
    si = np.einsum("kab,kbc,kdc->kad", re, traj.si, rn)
    vectors = np.concatenate([s, i, si.reshape(-1, 9)], axis=1)
    return Trajectory(traj.times, vectors, traj.params, Frame.ROTATING, traj.time_unit,
                      traj.solver, dict(traj.meta))
