"""EDMR read-out: resonance fields, shot noise and the read-out sensitivity criterion."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidDriveError, ParameterError
from .rates import effective_coupling
from .units import CONSTANTS


def resonance_fields(omega_esr, A, gamma_e_gyromag=CONSTANTS.gamma_e):
    """Fields ``(B_minus, B_plus)`` of the two hyperfine-split EDMR lines.

    B_minus is the line for a nucleus aligned with the field, B_plus against it.
    """
    if not omega_esr > A / 2:
        raise InvalidDriveError(f"omega_esr must exceed A/2, got {omega_esr!r}")
    return (omega_esr - A / 2) / gamma_e_gyromag, (omega_esr + A / 2) / gamma_e_gyromag


def n_electrons(current, t1n, constants=CONSTANTS):
    return current * t1n / constants.e_charge


def shot_noise_relative(current, t1n, constants=CONSTANTS):
    """Relative shot noise ``1/sqrt(N)`` accumulated over ``t1n``."""
    if not (current > 0 and t1n > 0):
        raise ValueError("current and t1n must be positive")
    return 1.0 / math.sqrt(n_electrons(current, t1n, constants))


def driven_t1n(omega_perp, A, omega_e, a_sq=None):
    """Nuclear flip time under saturating drive, ``2 (omega_e/A)^2 / Omega_perp``."""
    a2 = A * A if a_sq is None else a_sq
    return 2.0 * omega_e**2 / (a2 * omega_perp)


def sensitivity_threshold(current, omega_perp, A_hf, omega_e, constants=CONSTANTS):
    """Smallest detectable relative EDMR current, ``sqrt(e Omega_perp / 2I) (A/omega_e)``.

    Assumes the two lines are resolved (A > 1/T2e*); that is for the caller to
    attest.
    """
    if not (current > 0 and omega_perp > 0 and A_hf > 0 and omega_e > 0):
        raise ValueError("all inputs must be positive")
    return math.sqrt(constants.e_charge * omega_perp / (2.0 * current)) * (A_hf / omega_e)


def spin_dependent_scattering_contrast(B, B_perp, temperature, constants=CONSTANTS):
    """EXTERNAL MODEL: prior prediction for a single donor in a 0.1 um^2 transistor.

    ``6e-6 tanh(hbar omega_e / 2 k_B T) (B / 1 T) (B_perp / 0.3 G)``. This is a
    convenience for comparisons, not part of the read-out theory here.
    """
    x = constants.hbar * constants.gamma_e * B / (2.0 * constants.k_B * temperature)
    return 6e-6 * math.tanh(x) * (B / 1.0) * (B_perp / 3e-5)


@dataclass(frozen=True)
class SensitivityResult:
    threshold: float
    shot_noise_relative: float
    n_electrons: float
    t1n: float
    measured_or_model_contrast: Optional[float]
    passed: Optional[bool]
    margin: Optional[float]
    lines_resolved: bool = True
    t2e_star: Optional[float] = None

    def as_dict(self):
        out = dict(self.__dict__)
        out["pass"] = out.pop("passed")
        return out


def evaluate_readout(params, model_contrast=None, lines_resolved=True, t2e_star=None):
    """Compare a (measured or modeled) EDMR contrast with the shot-noise threshold.

    Uses the recombination-averaged A^2 when ionization/capture rates are set.
    """
    if params.current is None:
        raise ParameterError("current not set")
    params.require_drive()
    if model_contrast is not None and not model_contrast > 0:
        raise ValueError("model_contrast must be positive")
    if params.gamma_i is None and params.gamma_c is None:
        a_sq = params.A**2
    else:
        _, a_sq = effective_coupling(params, gamma_e=0.0)
    if a_sq <= 0:
        raise ParameterError("effective hyperfine coupling vanishes; no read-out possible")
    a_eff = math.sqrt(a_sq)
    c = params.constants
    threshold = sensitivity_threshold(params.current, params.omega_perp, a_eff, params.omega_e, c)
    t1n = driven_t1n(params.omega_perp, params.A, params.omega_e, a_sq)
    passed = margin = None
    if model_contrast is not None:
        margin = model_contrast / threshold
        passed = model_contrast > threshold
    return SensitivityResult(
        threshold=threshold,
        shot_noise_relative=shot_noise_relative(params.current, t1n, c),
        n_electrons=n_electrons(params.current, t1n, c),
        t1n=t1n,
        measured_or_model_contrast=model_contrast,
        passed=passed,
        margin=margin,
        lines_resolved=lines_resolved,
        t2e_star=t2e_star,
    )
