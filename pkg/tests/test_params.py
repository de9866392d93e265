import math

import pytest
from hypothesis import given, strategies as st

from donorspin import SystemParams, load_params
from donorspin.errors import GammaEUnavailableError, KondoRegimeError, ParameterError
from donorspin.units import to_hertz

BASE = "A_MHz = 120\nB_T = 1.0\n"


def test_load_phosphorus_config():
    p = load_params(BASE + "temperature_K = 1.0\ngamma_e_override_rad_s = 1e9  # direct\n")
    assert to_hertz(p.omega_e) == pytest.approx(28e9, rel=1e-12)
    assert to_hertz(p.A) == pytest.approx(120e6, rel=1e-12)
    assert p.gamma_e == 1e9
    assert p.b_tilde > p.omega_e > 0
    assert -1 < p.p_e < 0


def test_polarization_saturates_at_low_temperature():
    p = load_params(BASE + "temperature_K = 1e-6\n")
    assert p.p_e == pytest.approx(-1.0, abs=1e-12)


def test_missing_gamma_source_fails_only_when_needed():
    p = load_params(BASE + "temperature_K = 1.0\n")
    with pytest.raises(GammaEUnavailableError, match="gamma_e unavailable"):
        p.gamma_e
    with pytest.raises(GammaEUnavailableError):
        load_params(BASE + "temperature_K = 1.0\n", require_gamma_e=True)


def test_both_gamma_sources_rejected():
    with pytest.raises(ParameterError):
        load_params(BASE + "temperature_K = 1\nT_kondo_K = 0.1\ngamma_e_override_rad_s = 1e9\n")


@pytest.mark.parametrize("text", [
    "B_T = 1\ntemperature_K = 1\n",
    "A_MHz = 120\ntemperature_K = 1\n",
    "A_MHz = 120\nB_T = 1\n",
    BASE + "temperature_K = 0\n",
    "A_MHz = -1\nB_T = 1\ntemperature_K = 1\n",
    BASE + "temperature_K = 1\nbogus = 3\n",
    BASE + "temperature_K = abc\n",
    BASE + "temperature_K\n",
])
def test_invalid_configs(text):
    with pytest.raises(ParameterError):
        load_params(text)


def test_overrides_win_over_file():
    p = load_params(BASE + "temperature_K = 1.0\n", overrides={"temperature_K": "2.0"})
    assert p.temperature == 2.0


def test_kondo_temperature_gives_gamma():
    p = load_params(BASE + "temperature_K = 1.0\nT_kondo_K = 0.1\n")
    assert p.gamma_e > 0
    with pytest.raises(KondoRegimeError):
        load_params(BASE + "temperature_K = 1.0\nT_kondo_K = 1.0\n").gamma_e


def test_zero_kondo_temperature_means_decoupled():
    p = load_params(BASE + "temperature_K = 1.0\nT_kondo_K = 0\n")
    assert p.gamma_e == 0.0


def test_drive_and_current_units():
    p = load_params(BASE + "temperature_K = 1\nB_perp_G = 0.3\ncurrent_uA = 1\nf_esr_GHz = 28\n")
    assert p.B_perp == pytest.approx(3e-5, rel=1e-15)
    assert to_hertz(p.omega_perp) == pytest.approx(8.4e5, rel=1e-12)
    assert p.current == pytest.approx(1e-6, rel=1e-15)
    assert to_hertz(p.omega_esr) == pytest.approx(28e9, rel=1e-12)


def test_dimensionless_keys():
    p = load_params("dimensionless = true\nomega_e_A = 50\np_e = -1\ngamma_e_override_rad_s = 1\n")
    assert p.A == 1.0 and p.omega_e == 50.0 and p.p_e == -1.0 and p.gamma_e == 1.0
    assert p.time_unit == "1/A"


def test_dimensionless_from_physical_keys():
    p = load_params(BASE + "temperature_K = 1\ndimensionless = yes\n")
    assert p.omega_e == pytest.approx(28e9 / 120e6, rel=1e-12)
    phys = load_params(BASE + "temperature_K = 1\n")
    assert p.p_e == pytest.approx(phys.p_e, rel=1e-12)


def test_dimensionless_rejects_kondo_temperature():
    with pytest.raises(ParameterError):
        load_params("dimensionless = 1\nomega_e_A = 5\np_e = -1\nT_kondo_K = 0.1\n")


def test_identical_text_gives_identical_params():
    text = BASE + "temperature_K = 0.37\nT_kondo_K = 0.01\n"
    a, b = load_params(text), load_params(text)
    assert a == b
    assert a.gamma_e == b.gamma_e


@given(st.floats(1e-3, 1e3), st.floats(1.0001, 10.0))
def test_polarization_increases_toward_zero_with_temperature(t, factor):
    low = SystemParams(A=1e9, B=1.0, temperature=t)
    high = SystemParams(A=1e9, B=1.0, temperature=t * factor)
    assert -1.0 <= low.p_e <= high.p_e <= 0.0
    assert math.isfinite(high.p_e)


def test_params_are_immutable(phosphorus):
    with pytest.raises(AttributeError):
        phosphorus.A = 1.0
    q = phosphorus.with_updates(temperature=2.0)
    assert q.temperature == 2.0 and phosphorus.temperature == 1.0
    assert q.p_e > phosphorus.p_e
