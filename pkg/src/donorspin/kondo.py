"""Kondo-renormalized exchange scattering and coupling-regime classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DivergenceError, InvalidDriveError, KondoRegimeError
from .units import CONSTANTS

# Factor-of-3 windows around the exact matching conditions Gamma_e = omega_e
# (strong) and Gamma_e = Omega_perp (weak).
BAND_FACTOR = 3.0
# Gamma_e below this fraction of A counts as decoupled from the electron gas.
DECOUPLED_FRACTION = 1e-6


class Regime(enum.Enum):
    KONDO_SCREENED = "KondoScreened"
    STRONG = "Strong"
    INTERMEDIATE = "Intermediate"
    WEAK = "Weak"
    DECOUPLED = "Decoupled"


def jeff_nu_squared(temperature, T_kondo, constants=CONSTANTS):
    """Dimensionless renormalized coupling ``|J_eff nu|^2`` for T > T_K.

    ``[pi^2 + (4/3) |ln(T/T_K)|^2]^-1``. At or below T_K the donor is Kondo
    screened and KondoRegimeError is raised; T_K = 0 gives 0 (no coupling).
    """
    if T_kondo == 0.0:
        return 0.0
    if not (temperature > 0 and T_kondo > 0):
        raise ValueError("temperature and T_kondo must be positive")
    if temperature <= T_kondo:
        raise KondoRegimeError(
            f"kondo screened: temperature {temperature} K <= T_K {T_kondo} K",
            advisory_rate=constants.k_B * T_kondo / constants.hbar,
        )
    log_ratio = math.log(temperature / T_kondo)
    return 1.0 / (math.pi**2 + (4.0 / 3.0) * abs(log_ratio) ** 2)


def _x_coth_x(x):
    if x < 1e-4:
        return 1.0 + x * x / 3.0
    return x / math.tanh(x)


def gamma_e(jeff_nu_sq, omega_e, temperature, constants=CONSTANTS):
    """Exchange relaxation rate ``2 pi |J nu|^2 omega_e coth(hbar omega_e / 2 k_B T)``.

    Written as ``2 pi |J nu|^2 (2 k_B T / hbar) x coth(x)`` so that tiny and zero
    Zeeman frequencies stay finite.
    """
    if jeff_nu_sq < 0 or omega_e < 0 or temperature <= 0:
        raise ValueError("gamma_e needs jeff_nu_sq >= 0, omega_e >= 0, temperature > 0")
    thermal = 2.0 * constants.k_B * temperature / constants.hbar
    x = omega_e / thermal
    return 2.0 * math.pi * jeff_nu_sq * thermal * _x_coth_x(x)


def strong_coupling_log_ratio(p_e):
    """ln(T/T_K) at which Gamma_e ~ omega_e, with the pi^2 term dropped."""
    p = abs(p_e)
    if p == 0.0:
        raise DivergenceError("strong coupling needs nonzero electron polarization")
    if p > 1.0:
        raise ValueError(f"|p_e| must be <= 1, got {p_e!r}")
    return math.sqrt(3.0 * math.pi / (2.0 * p))


def weak_coupling_log_ratio(p_e, B, B_perp):
    """ln(T/T_K) at which Gamma_e ~ Omega_perp (optimal EDMR)."""
    strong = strong_coupling_log_ratio(p_e)
    if not B > 0:
        raise ValueError("B must be positive")
    if not 0 < B_perp <= B:
        raise InvalidDriveError(f"need 0 < B_perp <= B, got B_perp={B_perp!r}, B={B!r}")
    return strong * math.sqrt(B / B_perp)


@dataclass(frozen=True)
class RegimeReport:
    """Where a donor sits among the gate-tunable coupling regimes.

    Raw numbers are included so callers can apply their own bands. Fields that
    do not apply (e.g. the Kondo quantities when Gamma_e was given directly) are
    None. ``gamma_e`` is None in the screened regime, where ``advisory_rate``
    holds the scale k_B T_K / hbar instead.
    """

    regime: Regime
    gamma_e: Optional[float]
    jeff_nu_sq: Optional[float]
    log_ratio: Optional[float]
    strong_threshold: Optional[float]
    weak_threshold: Optional[float]
    gamma_e_over_omega_e: Optional[float] = None
    gamma_e_over_omega_perp: Optional[float] = None
    advisory_rate: Optional[float] = None

    def as_dict(self):
        out = dict(self.__dict__)
        out["regime"] = self.regime.value
        return out


def classify_regime(params):
    """Classify ``params`` into one of the five coupling regimes."""
    p_abs = abs(params.p_e)
    strong = strong_coupling_log_ratio(params.p_e) if p_abs > 0 else None
    weak = None
    if strong is not None and params.B_perp is not None and params.B is not None \
            and 0 < params.B_perp <= params.B:
        weak = weak_coupling_log_ratio(params.p_e, params.B, params.B_perp)

    jnu = log_ratio = None
    if params.gamma_e_override is None and params.T_kondo is not None:
        if params.T_kondo > 0:
            log_ratio = math.log(params.temperature / params.T_kondo)
        try:
            jnu = jeff_nu_squared(params.temperature, params.T_kondo, params.constants)
        except KondoRegimeError as exc:
            return RegimeReport(Regime.KONDO_SCREENED, None, None, log_ratio, strong, weak,
                                advisory_rate=exc.advisory_rate)
    rate = params.gamma_e

    ratio_e = rate / params.omega_e if params.omega_e > 0 else None
    ratio_perp = rate / params.omega_perp if params.omega_perp else None
    if ratio_e is not None and 1.0 / BAND_FACTOR <= ratio_e <= BAND_FACTOR:
        regime = Regime.STRONG
    elif ratio_perp is not None and 1.0 / BAND_FACTOR <= ratio_perp <= BAND_FACTOR:
        regime = Regime.WEAK
    elif rate < DECOUPLED_FRACTION * params.A:
        regime = Regime.DECOUPLED
    else:
        regime = Regime.INTERMEDIATE
    return RegimeReport(regime, rate, jnu, log_ratio, strong, weak, ratio_e, ratio_perp)
