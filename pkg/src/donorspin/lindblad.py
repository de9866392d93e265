"""Density-matrix evolution of the electron-nuclear pair (the exact oracle).

Basis order of the 4x4 matrices is (up-Up, up-Down, down-Up, down-Down): the
electron is the first tensor factor, the nucleus the second. All Hamiltonians
are in rad/s with hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bloch import BlochState, Frame, Trajectory
from .errors import NotAStateError
from .integrate import DEFAULT_ABS_TOL, DEFAULT_METHOD, DEFAULT_REL_TOL, solve_affine

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_ID2 = np.eye(2, dtype=complex)

PSD_TOL = 1e-10


@dataclass(frozen=True)
class SpinOperators:
    S: tuple
    I: tuple

    @property
    def S_plus(self):
        return self.S[0] + 1j * self.S[1]

    @property
    def S_minus(self):
        return self.S[0] - 1j * self.S[1]


def spin_operators():
    S = tuple(np.kron(p / 2, _ID2) for p in PAULI)
    I = tuple(np.kron(_ID2, p / 2) for p in PAULI)  # noqa: E741
    return SpinOperators(S, I)


OPS = spin_operators()
SX, SY, SZ = OPS.S
IX, IY, IZ = OPS.I


def build_hamiltonian(params, frame=Frame.LAB, secular=True):
    """Spin Hamiltonian in rad/s.

    Lab frame: ``omega_e S_z - omega_n I_z + A S.I``.

    Rotating frame (resonant drive, electron rotating at omega_esr):
    ``(omega_e - omega_esr) S_z - omega_n I_z + Omega_perp S_x + A S_z I_z``.
    With ``secular=False`` both spins are put in the frame turning at omega_esr,
    where the full ``A S.I`` stays time independent and the nuclear Zeeman term
    becomes ``-(omega_n + omega_esr) I_z``.
    """
    A = params.A
    if frame is Frame.LAB:
        return (params.omega_e * SZ - params.omega_n * IZ
                + A * (SX @ IX + SY @ IY + SZ @ IZ))
    params.require_drive()
    detuning = params.omega_e - params.omega_esr
    drive = params.omega_perp * SX
    if secular:
        return detuning * SZ - params.omega_n * IZ + drive + A * SZ @ IZ
    return (detuning * SZ - (params.omega_n + params.omega_esr) * IZ + drive
            + A * (SX @ IX + SY @ IY + SZ @ IZ))


# The pump is p_e times the electron S_z tensored with the *normalized* nuclear
# identity (1/2), i.e. p_e S_z / 2 on the pair. This is the only constant term
# that relaxes <S_z> to p_e/2 without touching <I> or <S I>.
def _pump(p_e):
    return 0.5 * p_e * SZ


def liouville_rhs(rho, params, frame=Frame.LAB, gamma_e=None, secular=True):
    """``-i[H, rho] + Gamma_e (sum_a S_a rho S_a - 3/4 rho + pump)``."""
    if gamma_e is None:
        gamma_e = params.gamma_e
    h = build_hamiltonian(params, frame, secular)
    out = -1j * (h @ rho - rho @ h)
    if gamma_e:
        dissipator = SX @ rho @ SX + SY @ rho @ SY + SZ @ rho @ SZ - 0.75 * rho
        out = out + gamma_e * (dissipator + _pump(params.p_e))
    return out


def superoperator(params, frame=Frame.LAB, gamma_e=None, secular=True):
    """Return ``(L, c)`` with ``d vec(rho)/dt = L @ vec(rho) + c`` (row-major vec)."""
    if gamma_e is None:
        gamma_e = params.gamma_e
    zero = np.zeros((4, 4), dtype=complex)
    offset = liouville_rhs(zero, params, frame, gamma_e, secular).ravel()
    columns = []
    for k in range(16):
        basis = np.zeros(16, dtype=complex)
        basis[k] = 1.0
        columns.append(liouville_rhs(basis.reshape(4, 4), params, frame, gamma_e,
                                     secular).ravel() - offset)
    return np.column_stack(columns), offset


class DensityDiagnostics(NamedTuple):
    hermiticity: float  # max |rho - rho^dagger|
    trace_error: float  # |Tr rho - 1|
    min_eigenvalue: float
    purity: float  # Tr rho^2


def diagnose(rho):
    rho = np.asarray(rho)
    herm = float(np.abs(rho - rho.conj().T).max())
    hermitian_part = 0.5 * (rho + rho.conj().T)
    return DensityDiagnostics(
        herm,
        float(abs(np.trace(rho) - 1.0)),
        float(np.linalg.eigvalsh(hermitian_part).min()),
        float(np.real(np.trace(hermitian_part @ hermitian_part))),
    )


def is_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-12, psd_tol=PSD_TOL):
    d = diagnose(rho)
    return d.hermiticity < herm_tol and d.trace_error < trace_tol and d.min_eigenvalue > -psd_tol


def evolve_density(rho0, params, t_grid, rel_tol=DEFAULT_REL_TOL, abs_tol=DEFAULT_ABS_TOL,
                   frame=Frame.LAB, secular=True, method=DEFAULT_METHOD, gamma_e=None):
    """Integrate the master equation; returns an array of shape (len(t_grid), 4, 4).

    Output samples are symmetrized, rho <- (rho + rho^dagger)/2. Trace is
    checked against ``10 * rel_tol``; positivity is not enforced (see
    :func:`diagnose`) because the constant pump term of this model does not
    guarantee it for strongly polarized electrons.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if not is_density_matrix(rho0, herm_tol=1e-10, trace_tol=1e-10):
        raise NotAStateError("initial density matrix is not a valid state")
    L, c = superoperator(params, frame, gamma_e, secular)
    flat = solve_affine(L, c, rho0.ravel(), t_grid, rel_tol, abs_tol, method)
    rhos = flat.reshape(-1, 4, 4)
    rhos = 0.5 * (rhos + np.conj(np.transpose(rhos, (0, 2, 1))))
    trace_err = np.abs(np.trace(rhos, axis1=1, axis2=2) - 1.0).max()
    if trace_err > max(10 * rel_tol, 1e-12):
        raise NotAStateError(f"trace drifted by {trace_err:.3e}")
    return rhos


def expectations(rho, frame=Frame.LAB):
    """<S_a>, <I_b> and <S_a I_b> of one density matrix."""
    rho = np.asarray(rho)
    s = [np.real(np.trace(rho @ op)) for op in OPS.S]
    i = [np.real(np.trace(rho @ op)) for op in OPS.I]
    si = [[np.real(np.trace(rho @ a @ b)) for b in OPS.I] for a in OPS.S]
    return BlochState(s, i, si, frame)


_OBSERVABLES = np.array(list(OPS.S) + list(OPS.I) + [a @ b for a in OPS.S for b in OPS.I])


def expectation_vectors(rhos):
    """Vectorized :func:`expectations` for a stack of density matrices -> (n, 15)."""
    rhos = np.asarray(rhos)
    # Tr(rho O) = sum_jk rho_jk O_kj
    return np.real(np.einsum("njk,okj->no", rhos, _OBSERVABLES))


def density_from_expectations(state, check=True):
    """Rebuild rho from the 15 expectation values.

    rho = (1/4)[1 + 2 s.sigma (x) 1 + 2 i.(1 (x) sigma) + 4 si_ab sigma_a (x) sigma_b]
    Raises NotAStateError if the result has an eigenvalue below -1e-10.
    """
    rho = np.eye(4, dtype=complex)
    for a in range(3):
        rho += 2.0 * state.s[a] * np.kron(PAULI[a], _ID2)
        rho += 2.0 * state.i[a] * np.kron(_ID2, PAULI[a])
        for b in range(3):
            rho += 4.0 * state.si[a, b] * np.kron(PAULI[a], PAULI[b])
    rho /= 4.0
    if check:
        lowest = np.linalg.eigvalsh(rho).min()
        if lowest < -PSD_TOL:
            raise NotAStateError(
                f"expectation values are not jointly realizable (min eigenvalue {lowest:.3e})")
    return rho


def density_trajectory(rhos, t_grid, params, frame=Frame.LAB):
    """Wrap a density-matrix stack as a Bloch-vector Trajectory."""
    return Trajectory(t_grid, expectation_vectors(rhos), params, frame,
                      params.time_unit if params is not None else "s", "lindblad")
