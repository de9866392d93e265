"""Validated physical inputs and the quantities derived from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import kondo
from .errors import GammaEUnavailableError, InvalidDriveError, ParameterError
from .units import CONSTANTS, Constants, gauss_to_tesla, to_angular


def _positive(name, value):
    if value is None or not math.isfinite(value) or value <= 0:
        raise ParameterError(f"{name} must be finite and > 0, got {value!r}")


def _non_negative(name, value):
    if value is not None and (not math.isfinite(value) or value < 0):
        raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """All physical inputs of one donor electron-nuclear spin pair.

    Frequencies are angular (rad/s), fields in T, temperatures in K, current in A.
    The derived fields ``omega_e``, ``omega_n``, ``b_tilde``, ``p_e`` and
    ``omega_perp`` are computed once at construction.

    In dimensionless mode ``A`` is 1, every frequency is a multiple of A and time
    is measured in units of 1/A. The Zeeman frequencies and the polarization are
    then given directly through the ``*_override`` fields instead of being
    derived from ``B`` and ``temperature``.
    """

    A: float
    B: Optional[float] = None
    temperature: Optional[float] = None
    T_kondo: Optional[float] = None
    gamma_e_override: Optional[float] = None
    B_perp: Optional[float] = None
    omega_esr: Optional[float] = None
    current: Optional[float] = None
    gamma_i: Optional[float] = None
    gamma_c: Optional[float] = None
    omega_e_override: Optional[float] = None
    omega_n_override: Optional[float] = None
    p_e_override: Optional[float] = None
    omega_perp_override: Optional[float] = None
    dimensionless: bool = False
    constants: Constants = CONSTANTS

    omega_e: float = field(init=False)
    omega_n: float = field(init=False)
    b_tilde: float = field(init=False)
    p_e: float = field(init=False)
    omega_perp: Optional[float] = field(init=False)

    def __post_init__(self):
        # A = 0 switches the hyperfine coupling off (reference runs); rates need A > 0.
        if self.A is None or not math.isfinite(self.A) or self.A < 0:
            raise ParameterError(f"A must be finite and >= 0, got {self.A!r}")
        if self.dimensionless:
            if self.omega_e_override is None:
                raise ParameterError("dimensionless mode needs omega_e_override")
            if self.T_kondo is not None:
                raise ParameterError("dimensionless mode takes gamma_e_override in units of A, "
                                     "not T_kondo")
        else:
            _positive("B", self.B)
            _positive("temperature", self.temperature)
        if self.B is not None:
            _positive("B", self.B)
        if self.temperature is not None:
            _positive("temperature", self.temperature)
        for name in ("T_kondo", "gamma_e_override", "current", "gamma_i", "gamma_c",
                     "omega_e_override", "omega_n_override", "omega_esr"):
            _non_negative(name, getattr(self, name))
        if self.T_kondo is not None and self.gamma_e_override is not None:
            raise ParameterError("give either T_kondo or gamma_e_override, not both")

        c = self.constants
        omega_e = self.omega_e_override if self.omega_e_override is not None else c.gamma_e * self.B
        if self.omega_n_override is not None:
            omega_n = self.omega_n_override
        elif self.B is not None and not self.dimensionless:
            omega_n = c.gamma_n * self.B
        else:
            omega_n = omega_e * c.gamma_n / c.gamma_e
        if self.p_e_override is not None:
            p_e = self.p_e_override
            if not -1.0 <= p_e <= 0.0:
                raise ParameterError(f"p_e must lie in [-1, 0], got {p_e!r}")
        elif self.temperature is not None and not self.dimensionless:
            p_e = -math.tanh(c.hbar * omega_e / (2.0 * c.k_B * self.temperature))
        else:
            raise ParameterError("dimensionless mode needs p_e_override")

        if self.omega_perp_override is not None:
            _positive("omega_perp", self.omega_perp_override)
            omega_perp = self.omega_perp_override
        elif self.B_perp is not None:
            _positive("B_perp", self.B_perp)
            omega_perp = c.gamma_e * self.B_perp
        else:
            omega_perp = None

        object.__setattr__(self, "omega_e", omega_e)
        object.__setattr__(self, "omega_n", omega_n)
        object.__setattr__(self, "b_tilde", omega_e + omega_n)
        object.__setattr__(self, "p_e", p_e)
        object.__setattr__(self, "omega_perp", omega_perp)

    @classmethod
    def in_units_of_A(cls, omega_e, gamma_e, p_e=-1.0, omega_n=0.0, omega_perp=None,
                      detuning=0.0, A=1.0, **kwargs):
        """Dimensionless parameters: A = 1, frequencies as multiples of A.

        ``A=0`` keeps the same frequency unit but switches the hyperfine term off.
        """
        omega_esr = None if omega_perp is None else omega_e - detuning
        return cls(A=A, dimensionless=True, omega_e_override=omega_e,
                   omega_n_override=omega_n, p_e_override=p_e, gamma_e_override=gamma_e,
                   omega_perp_override=omega_perp, omega_esr=omega_esr, **kwargs)

    @property
    def has_drive(self):
        return self.omega_perp is not None

    @property
    def time_unit(self):
        return "1/A" if self.dimensionless else "s"

    @property
    def gamma_e(self):
        """Exchange-scattering rate of the donor electron (rad/s).

        Raises GammaEUnavailableError without a source and KondoRegimeError for
        temperature <= T_kondo. A Kondo temperature of exactly zero means the
        donor is decoupled from the electron gas and gives 0.
        """
        if self.gamma_e_override is not None:
            return self.gamma_e_override
        if self.T_kondo is None:
            raise GammaEUnavailableError("gamma_e unavailable")
        if self.T_kondo == 0.0:
            return 0.0
        if self.temperature is None:
            raise GammaEUnavailableError("gamma_e unavailable: temperature missing")
        jnu = kondo.jeff_nu_squared(self.temperature, self.T_kondo, constants=self.constants)
        return kondo.gamma_e(jnu, self.omega_e, self.temperature, constants=self.constants)

    def require_drive(self):
        if self.omega_perp is None:
            raise InvalidDriveError("drive amplitude (B_perp) not set")
        if self.omega_esr is None:
            raise InvalidDriveError("drive frequency (omega_esr) not set")

    def with_updates(self, **changes):
        """Copy with some input fields replaced (derived fields are recomputed)."""
        import dataclasses

        names = {f.name for f in dataclasses.fields(self) if f.init}
        kwargs = {n: getattr(self, n) for n in names}
        kwargs.update(changes)
        return SystemParams(**kwargs)


# Config keys, one per line as ``key = value``; '#' starts a comment.
CONFIG_KEYS = {
    "A_MHz", "B_T", "temperature_K", "T_kondo_K", "gamma_e_override_rad_s", "B_perp_G",
    "f_esr_GHz", "current_uA", "gamma_i_per_s", "gamma_c_per_s", "dimensionless",
    # dimensionless-mode keys, all in units of A
    "omega_e_A", "omega_n_A", "p_e", "omega_perp_A", "detuning_A",
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_config(config_text):
    """Parse flat ``key = value`` text into a dict of raw strings."""
    values = {}
    for lineno, raw in enumerate(config_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ParameterError(f"line {lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _float(values, key):
    if key not in values or values[key] in ("", None):
        return None
    try:
        return float(values[key])
    except (TypeError, ValueError):
        raise ParameterError(f"{key}: not a number: {values[key]!r}") from None


def _bool(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ParameterError(f"dimensionless: not a boolean: {value!r}")


def params_from_mapping(values, constants=CONSTANTS, require_gamma_e=False):
    """Build SystemParams from a mapping of config keys to raw values."""
    unknown = set(values) - CONFIG_KEYS
    if unknown:
        raise ParameterError(f"unknown keys: {sorted(unknown)}")
    get = lambda key: _float(values, key)  # noqa: E731
    dimensionless = _bool(values.get("dimensionless", False))

    if dimensionless:
        params = _dimensionless_params(values, get, constants)
    else:
        for key in ("A_MHz", "B_T", "temperature_K"):
            if get(key) is None:
                raise ParameterError(f"missing mandatory key {key}")
        f_esr = get("f_esr_GHz")
        b_perp = get("B_perp_G")
        current = get("current_uA")
        params = SystemParams(
            A=to_angular(get("A_MHz") * 1e6),
            B=get("B_T"),
            temperature=get("temperature_K"),
            T_kondo=get("T_kondo_K"),
            gamma_e_override=get("gamma_e_override_rad_s"),
            B_perp=None if b_perp is None else gauss_to_tesla(b_perp),
            omega_esr=None if f_esr is None else to_angular(f_esr * 1e9),
            current=None if current is None else current * 1e-6,
            gamma_i=get("gamma_i_per_s"),
            gamma_c=get("gamma_c_per_s"),
            constants=constants,
        )
    if require_gamma_e:
        params.gamma_e  # raises when no source is available
    return params


def _dimensionless_params(values, get, constants):
    # Explicit *_A keys win; otherwise physical keys are converted and scaled by A.
    A_phys = get("A_MHz")
    # A_MHz = 0 switches the hyperfine coupling off; frequencies stay in the given units
    hyperfine_off = A_phys == 0
    A_phys = None if not A_phys else to_angular(A_phys * 1e6)
    B = get("B_T")
    T = get("temperature_K")

    omega_e = get("omega_e_A")
    if omega_e is None:
        if A_phys is None or B is None:
            raise ParameterError("dimensionless mode needs omega_e_A (or A_MHz and B_T)")
        omega_e = constants.gamma_e * B / A_phys
    omega_n = get("omega_n_A")
    if omega_n is None:
        omega_n = omega_e * constants.gamma_n / constants.gamma_e
    p_e = get("p_e")
    if p_e is None:
        if T is None:
            raise ParameterError("dimensionless mode needs p_e (or temperature_K)")
        omega_e_phys = omega_e * A_phys if A_phys is not None else constants.gamma_e * B
        p_e = -math.tanh(constants.hbar * omega_e_phys / (2.0 * constants.k_B * T))
    omega_perp = get("omega_perp_A")
    if omega_perp is None and get("B_perp_G") is not None:
        if A_phys is None:
            raise ParameterError("B_perp_G in dimensionless mode needs A_MHz")
        omega_perp = constants.gamma_e * gauss_to_tesla(get("B_perp_G")) / A_phys
    detuning = get("detuning_A") or 0.0
    current = get("current_uA")
    return SystemParams(
        A=0.0 if hyperfine_off else 1.0,
        B=B,
        temperature=T,
        T_kondo=get("T_kondo_K"),
        gamma_e_override=get("gamma_e_override_rad_s"),
        omega_e_override=omega_e,
        omega_n_override=omega_n,
        p_e_override=p_e,
        omega_perp_override=omega_perp,
        omega_esr=None if omega_perp is None else omega_e - detuning,
        current=None if current is None else current * 1e-6,
        gamma_i=get("gamma_i_per_s"),
        gamma_c=get("gamma_c_per_s"),
        dimensionless=True,
        constants=constants,
    )


def load_params(config_text, overrides=None, constants=CONSTANTS, require_gamma_e=False):
    """Parse config text (plus optional key overrides) into SystemParams."""
    values = parse_config(config_text)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return params_from_mapping(values, constants=constants, require_gamma_e=require_gamma_e)
