import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from donorspin import SystemParams
from donorspin.bloch import BlochState, Frame, Trajectory, evolve_bloch, to_rotating_frame
from donorspin.errors import InsufficientDecayError, ParameterError
from donorspin.rates import (
    Observable,
    RateSet,
    RateSource,
    analytic_rates,
    apply_drive_substitution,
    apply_recombination_substitution,
    fit_decay,
    fit_exponential_rate,
    fitted_rate_set,
    inv_t1n_analytic,
    inv_t2n_analytic,
    readout_contrast,
    t1n_peak,
)


def test_fit_recovers_synthetic_rate():
    t = np.linspace(0, 3, 3001)
    rate, rms, window, n = fit_decay(t, 0.4 * np.exp(-2.5 * t))
    assert rate == pytest.approx(2.5, rel=1e-6)
    assert rms < 1e-10
    assert window[0] == pytest.approx(-math.log(0.8) / 2.5, abs=1e-3)
    assert window[1] == pytest.approx(-math.log(0.05) / 2.5, abs=2e-3)
    assert n > 100


def test_fit_ignores_sign_of_deviation():
    t = np.linspace(0, 3, 301)
    assert fit_decay(t, -0.2 * np.exp(-1.7 * t))[0] == pytest.approx(1.7, rel=1e-6)


def test_fit_needs_decay():
    t = np.linspace(0, 1, 101)
    with pytest.raises(InsufficientDecayError):
        fit_decay(t, np.exp(-0.1 * t))
    with pytest.raises(InsufficientDecayError):
        fit_decay(t, np.zeros_like(t))


def _synthetic_trajectory(iz):
    vectors = np.zeros((iz.size, 15))
    vectors[:, 5] = iz
    return Trajectory(np.linspace(0, 10, iz.size), vectors)


def test_non_exponential_is_flagged():
    t = np.linspace(0, 10, 2001)
    wiggly = 0.5 * np.exp(-0.5 * t) * (1 + 0.9 * np.cos(4 * t)) / 1.9
    fit = fit_exponential_rate(_synthetic_trajectory(wiggly), "iz", p_e=0.0)
    assert fit.non_exponential
    clean = fit_exponential_rate(_synthetic_trajectory(-0.5 + np.exp(-t)), "iz", p_e=-1.0)
    assert not clean.non_exponential
    assert clean.rate == pytest.approx(1.0, rel=1e-6)
    assert clean.asymptote == -0.5
    assert clean.observable is Observable.IZ


def test_t2n_maximum_on_dense_grid():
    gammas = np.logspace(-3, 3, 200001)
    rates = np.array([inv_t2n_analytic(g, 1.0) for g in gammas[::50]])
    k = int(np.argmax(rates))
    assert gammas[::50][k] == pytest.approx(1 / math.sqrt(2), rel=2e-3)
    assert rates.max() == pytest.approx(1 / (4 * math.sqrt(2)), rel=1e-6)


@pytest.mark.parametrize("b_tilde", [0.0, 0.3, 2.0, 50.0])
def test_t1n_peak_matches_scan(b_tilde):
    gammas = np.logspace(-3, 4, 70001)
    rates = np.array([inv_t1n_analytic(g, 1.0, b_tilde) for g in gammas])
    g_star, max_rate = t1n_peak(1.0, b_tilde)
    assert gammas[np.argmax(rates)] == pytest.approx(g_star, rel=5e-4)
    assert rates.max() == pytest.approx(max_rate, rel=1e-6)
    assert max_rate >= rates.max()


def test_peak_in_zeeman_dominated_limit():
    g_star, max_rate = t1n_peak(1.0, 1e4)
    assert g_star == pytest.approx(1e4, rel=1e-8)
    assert max_rate == pytest.approx(1 / (4 * 1e4), rel=1e-8)


@pytest.mark.parametrize("gamma", [1e-4, 1e4])
def test_limits(gamma):
    if gamma < 1:
        assert inv_t2n_analytic(gamma, 1.0) == pytest.approx(gamma / 2, rel=1e-7)
        assert inv_t1n_analytic(gamma, 1.0, 0.0) == pytest.approx(gamma, rel=1e-7)
    else:
        assert inv_t2n_analytic(gamma, 1.0) == pytest.approx(1 / (4 * gamma), rel=1e-7)
        assert inv_t1n_analytic(gamma, 1.0, 0.0) == pytest.approx(1 / (2 * gamma), rel=1e-7)


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(0, 1e3), st.floats(1.0001, 10))
def test_zeeman_suppresses_spin_flips(gamma, b_tilde, factor):
    larger = b_tilde * factor + 1e-3
    assert inv_t1n_analytic(gamma, 1.0, larger) < inv_t1n_analytic(gamma, 1.0, b_tilde)
    assert inv_t1n_analytic(gamma, 1.0, b_tilde) <= 2 * inv_t2n_analytic(gamma, 1.0) * (1 + 1e-12)


def test_unimodal_in_gamma():
    gammas = np.logspace(-4, 4, 4001)
    for b in (0.0, 1.0, 30.0):
        d = np.diff([inv_t1n_analytic(g, 1.0, b) for g in gammas])
        sign_changes = np.count_nonzero(np.diff(np.sign(d)) != 0)
        assert sign_changes == 1


def test_zero_gamma_gives_zero_rates():
    assert inv_t2n_analytic(0.0, 1.0) == 0.0
    assert inv_t1n_analytic(0.0, 1.0, 5.0) == 0.0
    with pytest.raises(ValueError):
        inv_t2n_analytic(-1.0, 1.0)


def test_drive_substitution():
    rates = apply_drive_substitution(1.0, 100.0, 0.01, gamma_e=1e-3)
    assert rates.gamma_e == 0.01
    assert rates.inv_T2n == pytest.approx(inv_t2n_analytic(0.01, 1.0))
    assert rates.inv_T1n == pytest.approx(inv_t1n_analytic(0.01, 1.0, 100.0))
    assert rates.warning is None
    assert "omega_perp" in apply_drive_substitution(1.0, 100.0, 0.5).warning
    assert "saturated" in apply_drive_substitution(1.0, 100.0, 0.01, gamma_e=0.05).warning
    with pytest.raises(ParameterError):
        apply_drive_substitution(1.0, 100.0, 0.0)


def test_recombination_substitution():
    g, a2 = apply_recombination_substitution(1.0, 0.5, 0.5, 2.0)
    assert g == 2.0
    assert a2 == pytest.approx(2.0)
    assert apply_recombination_substitution(1.0, 0.3, None, 2.0) == (1.3, 4.0)
    with pytest.raises(ParameterError):
        apply_recombination_substitution(1.0, 0.0, 0.0, 2.0)
    p = SystemParams.in_units_of_A(omega_e=10.0, gamma_e=1.0, gamma_i=1.0, gamma_c=3.0)
    rates = analytic_rates(p)
    assert rates.gamma_e == 5.0
    assert rates.inv_T2n == pytest.approx(inv_t2n_analytic(5.0, 1.0, 0.25))


def test_contrast():
    assert readout_contrast(2.0, 1.0) == pytest.approx(math.exp(-0.5))
    assert readout_contrast(2.0, 1.0, t_edmr=3.0) == pytest.approx(math.exp(-3.0))
    # without a Zeeman term the flip time is at least half the decoherence time
    for g in np.logspace(-2, 2, 9):
        c = readout_contrast(inv_t2n_analytic(g, 1.0), inv_t1n_analytic(g, 1.0, 0.0))
        assert math.exp(-2) <= c < 1
    with pytest.raises(ValueError):
        readout_contrast(0.0, 1.0)


def test_rate_set():
    r = RateSet(1.0, 0.25, 0.0)
    assert r.T2n == 4.0 and math.isinf(r.T1n)
    assert r.source is RateSource.ANALYTIC
    with pytest.raises(ValueError):
        RateSet(1.0, -0.1, 0.0)
    with pytest.raises(ValueError):
        RateSet(1.0, math.nan, 0.0)


def test_phosphorus_rates(phosphorus):
    r = analytic_rates(phosphorus)
    g, A = phosphorus.gamma_e, phosphorus.A
    assert r.inv_T2n == pytest.approx(0.5 * g * A**2 / (A**2 + 2 * g**2), rel=1e-14)
    assert r.T1n == pytest.approx(1.24e-6, rel=0.01)


@pytest.mark.slow
def test_bloch_fits_follow_closed_forms_when_narrowed():
    # Gamma_e >> A: the spin-flip form is accurate; the decoherence form needs
    # omega_e >> Gamma_e too, otherwise flip-flops add to the transverse rate.
    p1 = SystemParams.in_units_of_A(omega_e=50.0, gamma_e=20.0, p_e=-1.0)
    p2 = p1.with_updates(omega_e_override=400.0)
    r1, r2 = analytic_rates(p1), analytic_rates(p2)
    t2 = evolve_bloch(BlochState.product([0, 0, -0.5], [0.5, 0, 0]), p2,
                      np.linspace(0, 4 / r2.inv_T2n, 2000))
    t1 = evolve_bloch(BlochState.product([0, 0, -0.5], [0, 0, 0.5]), p1,
                      np.linspace(0, 4 / r1.inv_T1n, 2000))
    fitted = fitted_rate_set(t2, t1)
    assert fitted.source is RateSource.FITTED_FROM_BLOCH
    assert fitted.inv_T2n == pytest.approx(r2.inv_T2n, rel=1e-2)
    assert fitted.inv_T1n == pytest.approx(r1.inv_T1n, rel=1e-3)
    assert not fitted.diagnostics["t1_fit"].non_exponential


def test_transverse_fit_is_frame_independent():
    p = SystemParams.in_units_of_A(omega_e=30.0, gamma_e=10.0, p_e=-1.0, omega_n=2.0)
    traj = evolve_bloch(BlochState.product([0, 0, 0], [0.5, 0, 0]), p, np.linspace(0, 400, 2000))
    lab = fit_exponential_rate(traj, "i_perp")
    rot = fit_exponential_rate(to_rotating_frame(traj), Observable.TRANSVERSE)
    assert lab.rate == pytest.approx(rot.rate, rel=1e-12)
    assert to_rotating_frame(traj).frame is Frame.ROTATING
