"""Physical constants and the few unit conversions this package needs.

Internally every frequency is an angular frequency in rad/s, fields are in
tesla, temperatures in kelvin and currents in ampere.
"""

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Constants:
    """SI constants.

    ``gamma_e`` defaults to 2π·28 GHz/T so that the electron Zeeman frequency is
    28 GHz at 1 T; ``gamma_n`` defaults to the ³¹P value.
    """

    hbar: float = 1.054571817e-34  # J s
    k_B: float = 1.380649e-23  # J/K
    e_charge: float = 1.602176634e-19  # C
    gamma_e: float = TWO_PI * 28.0e9  # rad/(s T)
    gamma_n: float = TWO_PI * 17.23e6  # rad/(s T)

    def __post_init__(self):
        for name in ("hbar", "k_B", "e_charge", "gamma_e", "gamma_n"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"constant {name} must be finite and positive, got {value!r}")


CONSTANTS = Constants()


def to_angular(frequency_hz):
    """Convert a cyclic frequency in Hz to rad/s."""
    return TWO_PI * frequency_hz


def to_hertz(omega):
    """Convert an angular frequency in rad/s to Hz."""
    return omega / TWO_PI


def gauss_to_tesla(b):
    return b / 1e4


def tesla_to_gauss(b):
    return b * 1e4
