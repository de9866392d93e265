import math

import pytest

from donorspin.units import (
    CONSTANTS,
    Constants,
    gauss_to_tesla,
    tesla_to_gauss,
    to_angular,
    to_hertz,
)


@pytest.mark.parametrize("hz, expected", [
    (120e6, 7.5398e8),
    (0.0, 0.0),
    (28e9, 1.7593e11),
])
def test_to_angular(hz, expected):
    assert to_angular(hz) == pytest.approx(expected, rel=1e-4, abs=0)


@pytest.mark.parametrize("gauss, tesla", [(0.3, 3e-5), (1e4, 1.0), (0.0, 0.0)])
def test_gauss_to_tesla(gauss, tesla):
    assert gauss_to_tesla(gauss) == pytest.approx(tesla, rel=1e-15)


@pytest.mark.parametrize("x", [0.3, 1.0, 12345.678, 1e-9])
def test_round_trips(x):
    assert tesla_to_gauss(gauss_to_tesla(x)) == pytest.approx(x, rel=4e-16)
    assert to_hertz(to_angular(x)) == pytest.approx(x, rel=4e-16)


def test_electron_zeeman_at_one_tesla_is_28_ghz():
    assert to_hertz(CONSTANTS.gamma_e * 1.0) == pytest.approx(28e9, rel=0.01)


def test_constants_must_be_positive():
    with pytest.raises(ValueError):
        Constants(hbar=-1.0)
    with pytest.raises(ValueError):
        Constants(gamma_n=math.nan)
