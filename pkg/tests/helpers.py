import numpy as np


def random_density(rng, rank=None):
    """Random mixed state of the given rank (drawn from 1..4 when omitted)."""
    rank = rank or int(rng.integers(1, 5))
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
