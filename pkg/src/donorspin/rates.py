"""Nuclear-spin relaxation rates: closed forms, substitution rules and fits."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bloch import Frame, to_rotating_frame
from .errors import InsufficientDecayError, ParameterError

# Upper edge of the Omega_perp << A window, as a fraction of A.
DRIVE_VALIDITY_FRACTION = 0.1
FIT_WINDOW = (0.05, 0.80)
NON_EXPONENTIAL_RMS = 0.05


class RateSource(enum.Enum):
    ANALYTIC = "Analytic"
    FITTED_FROM_BLOCH = "FittedFromBloch"
    FITTED_FROM_LINDBLAD = "FittedFromLindblad"


class Observable(enum.Enum):
    TRANSVERSE = "i_perp"
    IZ = "iz"


@dataclass(frozen=True)
class RateSet:
    gamma_e: float
    inv_T2n: float
    inv_T1n: float
    source: RateSource = RateSource.ANALYTIC
    diagnostics: dict = field(default_factory=dict)
    warning: Optional[str] = None

    def __post_init__(self):
        for name in ("gamma_e", "inv_T2n", "inv_T1n"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")

    @property
    def T1n(self):
        return math.inf if self.inv_T1n == 0 else 1.0 / self.inv_T1n

    @property
    def T2n(self):
        return math.inf if self.inv_T2n == 0 else 1.0 / self.inv_T2n


def _a_sq(A, a_sq):
    if a_sq is None:
        if not A > 0:
            raise ValueError("A must be positive")
        return A * A
    if a_sq < 0:
        raise ValueError("a_sq must be >= 0")
    return a_sq


def inv_t2n_analytic(gamma_e, A, a_sq=None):
    """Current-induced nuclear decoherence rate ``(Gamma/2) / (1 + 2 (Gamma/A)^2)``.

    ``a_sq`` replaces A^2 (recombination-averaged hyperfine coupling).
    """
    a2 = _a_sq(A, a_sq)
    if gamma_e < 0:
        raise ValueError("gamma_e must be >= 0")
    if gamma_e == 0:
        return 0.0
    return 0.5 * gamma_e * a2 / (a2 + 2.0 * gamma_e**2)


def inv_t1n_analytic(gamma_e, A, b_tilde, a_sq=None):
    """Current-induced nuclear spin-flip rate ``Gamma / (1 + 2 (Gamma/A)^2 + 2 (B~/A)^2)``."""
    a2 = _a_sq(A, a_sq)
    if gamma_e < 0 or b_tilde < 0:
        raise ValueError("gamma_e and b_tilde must be >= 0")
    if gamma_e == 0:
        return 0.0
    return gamma_e * a2 / (a2 + 2.0 * gamma_e**2 + 2.0 * b_tilde**2)


def t1n_peak(A, b_tilde, a_sq=None):
    """Exact maximizer of :func:`inv_t1n_analytic` over Gamma_e and the peak rate.

    For B~ >> A these approach Gamma_e ~ B~ and A^2 / (4 B~).
    """
    a2 = _a_sq(A, a_sq)
    if b_tilde < 0:
        raise ValueError("b_tilde must be >= 0")
    gamma_star = math.sqrt(0.5 * a2 + b_tilde**2)
    max_rate = math.sqrt(a2) / (2.0 * math.sqrt(2.0) * math.sqrt(1.0 + 2.0 * b_tilde**2 / a2))
    return gamma_star, max_rate


def apply_drive_substitution(A, b_tilde, omega_perp, gamma_e=None, a_sq=None):
    """Rates of a resonantly driven donor: the closed forms with Gamma_e -> Omega_perp.

    Valid for Omega_perp >~ Gamma_e and Omega_perp << A. Outside that window the
    result carries a ``warning`` instead of raising.
    """
    if not omega_perp > 0:
        raise ParameterError(f"omega_perp must be positive, got {omega_perp!r}")
    a2 = _a_sq(A, a_sq)
    problems = []
    if omega_perp > DRIVE_VALIDITY_FRACTION * math.sqrt(a2):
        problems.append("omega_perp not << A")
    if gamma_e is not None and gamma_e > omega_perp:
        problems.append("gamma_e > omega_perp (electron not saturated)")
    return RateSet(
        gamma_e=omega_perp,
        inv_T2n=inv_t2n_analytic(omega_perp, A, a2),
        inv_T1n=inv_t1n_analytic(omega_perp, A, b_tilde, a2),
        diagnostics={"substitution": "gamma_e->omega_perp", "undriven_gamma_e": gamma_e},
        warning="; ".join(problems) or None,
    )


def apply_recombination_substitution(gamma_e, gamma_i, gamma_c, A):
    """Gamma_e -> Gamma_e + Gamma_i + Gamma_c and A^2 -> A^2 Gamma_i / (Gamma_i + Gamma_c)."""
    gamma_i = gamma_i or 0.0
    gamma_c = gamma_c or 0.0
    if min(gamma_e, gamma_i, gamma_c) < 0:
        raise ParameterError("rates must be >= 0")
    if gamma_i + gamma_c == 0:
        raise ParameterError("recombination substitution needs gamma_i + gamma_c > 0")
    return gamma_e + gamma_i + gamma_c, A * A * gamma_i / (gamma_i + gamma_c)


def effective_coupling(params, gamma_e=None):
    """(Gamma_e, A^2) after the recombination substitution, if ionization/capture are set."""
    if gamma_e is None:
        gamma_e = params.gamma_e
    if params.gamma_i is None and params.gamma_c is None:
        return gamma_e, params.A**2
    return apply_recombination_substitution(gamma_e, params.gamma_i, params.gamma_c, params.A)


def analytic_rates(params, gamma_e=None):
    g, a2 = effective_coupling(params, gamma_e)
    return RateSet(g, inv_t2n_analytic(g, params.A, a2),
                   inv_t1n_analytic(g, params.A, params.b_tilde, a2))


def readout_contrast(inv_t2n, inv_t1n, t_edmr=0.0):
    """Probability ``exp(-max(T2n, t_EDMR) / T1n)`` that the nucleus survives read-out."""
    if not (inv_t2n > 0 and inv_t1n > 0):
        raise ValueError("rates must be positive")
    if t_edmr < 0:
        raise ValueError("t_edmr must be >= 0")
    return math.exp(-max(1.0 / inv_t2n, t_edmr) * inv_t1n)


@dataclass(frozen=True)
class FitResult:
    rate: float
    rms_log_residual: float
    window: tuple
    n_points: int
    asymptote: float
    long_time_mean: Optional[float]
    non_exponential: bool
    observable: Observable


def fit_decay(t, deviation, window=FIT_WINDOW):
    """Fit ``log|deviation|`` linearly in t over the [5%, 80%] window.

    The window runs from the first sample at or below 80% of the initial
    deviation up to the first sample below 5%. Returns ``(rate, rms, (t0, t1), n)``.
    """
    t = np.asarray(t, dtype=float)
    y = np.abs(np.asarray(deviation, dtype=float))
    y0 = y[0]
    if not y0 > 0:
        raise InsufficientDecayError("observable starts at its asymptote")
    lo, hi = window
    if y.min() > y0 / math.e:
        raise InsufficientDecayError(
            f"observable decayed only to {y.min() / y0:.3f} of its initial deviation")
    start = int(np.argmax(y <= hi * y0))
    below = np.nonzero(y[start:] < lo * y0)[0]
    stop = start + int(below[0]) if below.size else y.size
    if stop - start < 3:
        raise InsufficientDecayError("fewer than 3 samples inside the fit window")
    tw, lw = t[start:stop], np.log(y[start:stop])
    slope, intercept = np.polyfit(tw, lw, 1)
    rms = float(np.sqrt(np.mean((lw - (slope * tw + intercept)) ** 2)))
    return -float(slope), rms, (float(tw[0]), float(tw[-1])), stop - start


def fit_exponential_rate(traj, observable, p_e=None):
    """Fit the decay rate of |<I_perp>| or of <I_z> - p_e/2 along a trajectory."""
    observable = Observable(observable)
    if p_e is None:
        p_e = traj.params.p_e
    if observable is Observable.TRANSVERSE:
        # |i_perp| is invariant under z rotations, so either frame gives the same envelope.
        rot = traj if traj.frame is Frame.ROTATING else to_rotating_frame(traj)
        values = np.hypot(rot.i[:, 0], rot.i[:, 1])
        asymptote = 0.0
    else:
        values = traj.i[:, 2]
        asymptote = 0.5 * p_e
    rate, rms, window, n = fit_decay(traj.times, values - asymptote)
    tail = values[int(0.9 * len(values)):]
    return FitResult(rate, rms, window, n, asymptote, float(tail.mean()),
                     rms > NON_EXPONENTIAL_RMS, observable)


def fitted_rate_set(traj_t2, traj_t1, p_e=None):
    """RateSet from two fitted trajectories (transverse and longitudinal)."""
    fit2 = fit_exponential_rate(traj_t2, Observable.TRANSVERSE, p_e)
    fit1 = fit_exponential_rate(traj_t1, Observable.IZ, p_e)
    source = (RateSource.FITTED_FROM_LINDBLAD if traj_t1.solver == "lindblad"
              else RateSource.FITTED_FROM_BLOCH)
    return RateSet(traj_t1.meta.get("gamma_e", traj_t1.params.gamma_e), fit2.rate, fit1.rate,
                   source, {"t2_fit": fit2, "t1_fit": fit1})
