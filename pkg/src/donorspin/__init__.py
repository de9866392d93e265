"""Donor electron-nuclear spin dynamics under an electric current."""

from .bloch import BlochState, Frame, Trajectory, evolve_bloch
from .errors import (
    DivergenceError,
    DonorSpinError,
    FrameError,
    GammaEUnavailableError,
    InsufficientDecayError,
    InvalidDriveError,
    KondoRegimeError,
    NotAStateError,
    ParameterError,
    StiffnessError,
)
from .lindblad import evolve_density
from .params import SystemParams, load_params
from .units import CONSTANTS, Constants

__version__ = "0.1.0"
