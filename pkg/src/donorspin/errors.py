"""Exception hierarchy shared by all donorspin modules."""


class DonorSpinError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(DonorSpinError, ValueError):
    """Invalid or inconsistent physical input."""


class GammaEUnavailableError(ParameterError):
    """Neither a Kondo temperature nor a direct exchange rate was supplied."""


class InvalidDriveError(ParameterError):
    """Drive settings missing or outside their allowed range."""


class KondoRegimeError(DonorSpinError):
    """Temperature at or below the Kondo temperature.

    The exponential exchange-scattering model only holds above T_K; below it the
    donor electron is screened into a Kondo singlet and only a rate scale
    ``k_B T_K / hbar`` is known. ``advisory_rate`` carries that scale.
    """

    def __init__(self, message, advisory_rate=None):
        super().__init__(message)
        self.advisory_rate = advisory_rate


class DivergenceError(DonorSpinError, ValueError):
    """A requested threshold is infinite (e.g. zero electron polarization)."""


class NotAStateError(DonorSpinError, ValueError):
    """A matrix or set of expectation values is not a physical two-spin state."""


class FrameError(DonorSpinError, ValueError):
    """Operation applied to a trajectory in the wrong reference frame."""


class StiffnessError(DonorSpinError, RuntimeError):
    """The adaptive integrator could not advance (step-size underflow)."""

    def __init__(self, message, t_reached):
        super().__init__(f"{message} (reached t={t_reached!r})")
        self.t_reached = t_reached


class InsufficientDecayError(DonorSpinError):
    """A trajectory is too short for an exponential rate to be fitted."""
