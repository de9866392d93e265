"""Command-line front end: ``donorspin {rates,trajectory,sweep,sensitivity,compare}``."""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import edmr, kondo, lindblad, rates
from .bloch import COMPONENT_NAMES, BlochState, Frame, Trajectory, evolve_bloch, to_rotating_frame
from .errors import (
    DonorSpinError,
    GammaEUnavailableError,
    InsufficientDecayError,
    KondoRegimeError,
    NotAStateError,
    ParameterError,
    StiffnessError,
)
from .integrate import DEFAULT_ABS_TOL, DEFAULT_METHOD, DEFAULT_REL_TOL
from .params import CONFIG_KEYS, load_params

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_KONDO = 3
EXIT_SOLVER = 4

CSV_HEADER = ("t",) + COMPONENT_NAMES
SWEEP_VARIABLES = {
    # name -> (config key, scale from grid unit to config unit)
    "gamma_e": "gamma_e_override_rad_s",
    "temperature": "temperature_K",
    "B": "B_T",
    "B_perp": "B_perp_G",
    "current": "current_uA",
}
SWEEP_COLUMNS = (
    "value", "gamma_e", "regime", "inv_T2n", "inv_T1n", "T2n", "T1n", "contrast",
    "driven_inv_T2n", "driven_inv_T1n", "threshold",
    "fit_inv_T2n", "fit_inv_T1n", "fit_rms_T2n", "fit_rms_T1n",
)
COMPARE_TOL = 1e-8


class CliError(Exception):
    def __init__(self, code, reason):
        super().__init__(reason)
        self.code = code
        self.reason = reason


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


# ---------------------------------------------------------------- params

def _overrides(args):
    values = {key: getattr(args, key) for key in CONFIG_KEYS
              if getattr(args, key, None) is not None}
    if args.dimensionless:
        values["dimensionless"] = "true"
    return values


def params_from_args(args, require_gamma_e=False, extra=None):
    text = Path(args.config).read_text() if args.config else ""
    overrides = _overrides(args)
    if extra:
        overrides.update(extra)
    params = load_params(text, overrides, require_gamma_e=require_gamma_e)
    if params.omega_perp is not None and params.omega_esr is None:
        # resonant drive by default
        params = params.with_updates(omega_esr=params.omega_e)
    return params


# ---------------------------------------------------------------- rates

def rates_report(params):
    report = {
        "A": params.A,
        "omega_e": params.omega_e,
        "omega_n": params.omega_n,
        "b_tilde": params.b_tilde,
        "p_e": params.p_e,
        "polarization_magnitude": abs(params.p_e),
        "time_unit": params.time_unit,
    }
    regime = kondo.classify_regime(params)
    report["regime"] = regime.as_dict()
    if regime.regime is kondo.Regime.KONDO_SCREENED:
        raise KondoRegimeError("kondo screened", advisory_rate=regime.advisory_rate)
    report["jeff_nu_sq"] = regime.jeff_nu_sq
    analytic = rates.analytic_rates(params)
    g_eff, a_sq = rates.effective_coupling(params)
    report.update({
        "gamma_e": params.gamma_e,
        "gamma_e_effective": g_eff,
        "A_sq_effective": a_sq,
        "inv_T1n": analytic.inv_T1n,
        "inv_T2n": analytic.inv_T2n,
        "T1n": _finite_or_none(analytic.T1n),
        "T2n": _finite_or_none(analytic.T2n),
    })
    gamma_star, max_rate = rates.t1n_peak(params.A, params.b_tilde, a_sq)
    report["t1n_peak"] = {"gamma_e_star": gamma_star, "max_inv_T1n": max_rate,
                          "T1n_min": 1.0 / max_rate}
    report["contrast"] = (rates.readout_contrast(analytic.inv_T2n, analytic.inv_T1n)
                          if analytic.inv_T1n > 0 and analytic.inv_T2n > 0 else None)
    if params.omega_perp is not None:
        driven = rates.apply_drive_substitution(params.A, params.b_tilde, params.omega_perp,
                                                gamma_e=g_eff, a_sq=a_sq)
        report["driven"] = {
            "omega_perp": params.omega_perp,
            "inv_T1n": driven.inv_T1n,
            "inv_T2n": driven.inv_T2n,
            "T1n": driven.T1n,
            "T2n": driven.T2n,
            "contrast": rates.readout_contrast(driven.inv_T2n, driven.inv_T1n),
            "warning": driven.warning,
        }
    return report


def cmd_rates(args):
    params = params_from_args(args, require_gamma_e=args.T_kondo_K is None)
    return _emit_json(rates_report(params), args.out)


# ---------------------------------------------------------------- trajectory

_ELECTRON_PRESETS = {
    "thermal_e": lambda p: np.array([0.0, 0.0, 0.5 * p.p_e]),
    "sz_up": lambda p: np.array([0.0, 0.0, 0.5]),
    "sx": lambda p: np.array([0.5, 0.0, 0.0]),
}
_NUCLEAR_PRESETS = {
    "iz_up": np.array([0.0, 0.0, 0.5]),
    "iz_down": np.array([0.0, 0.0, -0.5]),
    "ix": np.array([0.5, 0.0, 0.0]),
}
PRESETS = tuple(_ELECTRON_PRESETS) + tuple(_NUCLEAR_PRESETS)


def initial_state(text, params):
    """Parse ``preset[+preset]`` or 15 comma-separated numbers into a BlochState."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 15:
        try:
            state = BlochState.from_vector([float(p) for p in parts])
        except ValueError:
            raise ParameterError(f"initial state: bad number in {text!r}") from None
        lindblad.density_from_expectations(state)  # raises NotAStateError
        return state
    s = np.zeros(3)
    i = np.zeros(3)
    for name in text.split("+"):
        name = name.strip()
        if name in _ELECTRON_PRESETS:
            s = _ELECTRON_PRESETS[name](params)
        elif name in _NUCLEAR_PRESETS:
            i = _NUCLEAR_PRESETS[name]
        else:
            raise ParameterError(f"unknown initial-state preset {name!r}; choose from {PRESETS}")
    return BlochState.product(s, i)


def time_grid(t_end, samples):
    if samples < 2:
        raise ParameterError("sample count must be >= 2")
    if not t_end > 0:
        raise ParameterError("t_end must be positive")
    return np.linspace(0.0, t_end, samples)


def run_solver(solver, state0, params, t, rel_tol, abs_tol, method, driven=False,
               secular=True):
    if solver == "bloch":
        if driven:
            raise ParameterError("the driven rotating-frame model is only available for "
                                 "--solver lindblad")
        return evolve_bloch(state0, params, t, rel_tol, abs_tol, method)
    frame = Frame.ROTATING if driven else Frame.LAB
    rho0 = lindblad.density_from_expectations(state0)
    rhos = lindblad.evolve_density(rho0, params, t, rel_tol, abs_tol, frame=frame,
                                   secular=secular, method=method)
    traj = lindblad.density_trajectory(rhos, t, params, frame)
    return Trajectory(traj.times, traj.vectors, params, frame, params.time_unit, "lindblad",
                      {"rel_tol": rel_tol, "abs_tol": abs_tol, "method": method,
                       "gamma_e": params.gamma_e, "hyperfine": "secular" if secular else "full"})


def trajectory_csv(traj):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for t, row in zip(traj.times, traj.vectors):
        writer.writerow([_fmt(t)] + [_fmt(v) for v in row])
    return buf.getvalue()


def _params_dict(params):
    out = {}
    for name in ("A", "B", "temperature", "T_kondo", "gamma_e_override", "B_perp", "omega_esr",
                 "current", "gamma_i", "gamma_c", "dimensionless", "omega_e", "omega_n",
                 "b_tilde", "p_e", "omega_perp"):
        out[name] = getattr(params, name)
    return out


def cmd_trajectory(args):
    params = params_from_args(args, require_gamma_e=args.T_kondo_K is None)
    state0 = initial_state(args.initial, params)
    t = time_grid(args.t_end, args.samples)
    solvers = ("bloch", "lindblad") if args.solver == "both" else (args.solver,)
    out = Path(args.out) if args.out else None
    if out is None and len(solvers) > 1:
        raise ParameterError("--solver both needs --out")
    trajectories = {}
    for solver in solvers:
        traj = run_solver(solver, state0, params, t, args.rel_tol, args.abs_tol, args.method,
                          driven=args.driven, secular=args.hyperfine == "secular")
        if args.frame == "rotating" and traj.frame is Frame.LAB:
            traj = to_rotating_frame(traj)
        trajectories[solver] = traj

    written = []
    for solver, traj in trajectories.items():
        text = trajectory_csv(traj)
        if out is None:
            sys.stdout.write(text)
            continue
        path = out if len(solvers) == 1 else out.with_name(f"{out.stem}_{solver}{out.suffix}")
        path.write_text(text)
        written.append(str(path))

    meta = {
        "params": _params_dict(params),
        "frame": next(iter(trajectories.values())).frame.value,
        "solvers": list(solvers),
        "method": args.method,
        "rel_tol": args.rel_tol,
        "abs_tol": args.abs_tol,
        "initial": args.initial,
        "time_unit": params.time_unit,
        "files": written,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if len(solvers) == 2:
        meta["max_abs_difference"] = float(
            np.abs(trajectories["bloch"].vectors - trajectories["lindblad"].vectors).max())
    if out is not None:
        Path(str(out) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- sweep

def parse_grid(args):
    if args.grid:
        values = [float(v) for v in args.grid.split(",")]
    elif args.logspace:
        lo, hi, n = args.logspace
        values = list(np.logspace(math.log10(float(lo)), math.log10(float(hi)), int(n)))
    elif args.linspace:
        lo, hi, n = args.linspace
        values = list(np.linspace(float(lo), float(hi), int(n)))
    else:
        raise ParameterError("sweep needs --grid, --logspace or --linspace")
    arr = np.asarray(values)
    steps = np.diff(arr)
    if arr.size < 1 or not (np.all(steps > 0) or np.all(steps < 0)):
        raise ParameterError("sweep grid must be strictly monotone")
    return values


def fit_rates(params, rel_tol=DEFAULT_REL_TOL, abs_tol=DEFAULT_ABS_TOL, method=DEFAULT_METHOD,
              samples=2000, solver="bloch"):
    """Simulate and fit 1/T2n (from |<I_perp>|) and 1/T1n (from <I_z>) at one parameter set."""
    analytic = rates.analytic_rates(params)
    s0 = np.array([0.0, 0.0, 0.5 * params.p_e])
    runs = {}
    for key, i0, rate in (("t2", [0.5, 0.0, 0.0], analytic.inv_T2n),
                          ("t1", [0.0, 0.0, 0.5], analytic.inv_T1n)):
        if not rate > 0:
            raise InsufficientDecayError(f"no decay expected for {key}")
        t = np.linspace(0.0, 4.0 / rate, samples)
        runs[key] = run_solver(solver, BlochState.product(s0, i0), params, t, rel_tol, abs_tol,
                               method)
    return rates.fitted_rate_set(runs["t2"], runs["t1"])


def _sweep_row(task):
    params, value, fit, tol = task
    row = dict.fromkeys(SWEEP_COLUMNS)
    row["value"] = value
    regime = kondo.classify_regime(params)
    row["regime"] = regime.regime.value
    if regime.regime is kondo.Regime.KONDO_SCREENED:
        return row
    analytic = rates.analytic_rates(params)
    g_eff, a_sq = rates.effective_coupling(params)
    row.update(gamma_e=params.gamma_e, inv_T2n=analytic.inv_T2n, inv_T1n=analytic.inv_T1n,
               T2n=_finite_or_none(analytic.T2n), T1n=_finite_or_none(analytic.T1n))
    if analytic.inv_T1n > 0 and analytic.inv_T2n > 0:
        row["contrast"] = rates.readout_contrast(analytic.inv_T2n, analytic.inv_T1n)
    if params.omega_perp is not None:
        driven = rates.apply_drive_substitution(params.A, params.b_tilde, params.omega_perp,
                                                gamma_e=g_eff, a_sq=a_sq)
        row.update(driven_inv_T2n=driven.inv_T2n, driven_inv_T1n=driven.inv_T1n)
        if params.current is not None and a_sq > 0:
            row["threshold"] = edmr.sensitivity_threshold(
                params.current, params.omega_perp, math.sqrt(a_sq), params.omega_e,
                params.constants)
    if fit:
        fitted = fit_rates(params, *tol)
        row.update(fit_inv_T2n=fitted.inv_T2n, fit_inv_T1n=fitted.inv_T1n,
                   fit_rms_T2n=fitted.diagnostics["t2_fit"].rms_log_residual,
                   fit_rms_T1n=fitted.diagnostics["t1_fit"].rms_log_residual)
    return row


def sweep_rows(base_args, variable, values, fit=False, jobs=1, tol=None):
    key = SWEEP_VARIABLES[variable]
    tol = tol or (DEFAULT_REL_TOL, DEFAULT_ABS_TOL, DEFAULT_METHOD)
    tasks = []
    for value in values:
        extra = {key: repr(float(value))}
        params = params_from_args(base_args, extra=extra)
        tasks.append((params, value, fit, tol))
    if jobs > 1 and fit:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_row, tasks))
    return [_sweep_row(task) for task in tasks]


def cmd_sweep(args):
    values = parse_grid(args)
    if args.variable == "gamma_e" and args.T_kondo_K is not None:
        raise ParameterError("gamma_e sweep conflicts with T_kondo_K")
    rows = sweep_rows(args, args.variable, values, fit=args.fit, jobs=args.jobs,
                      tol=(args.rel_tol, args.abs_tol, args.method))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in SWEEP_COLUMNS])
    _write_text(buf.getvalue(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- sensitivity

def sensitivity_report(params, contrast=None, external_model=False, lines_resolved=True,
                       t2e_star=None):
    if external_model:
        if params.B is None or params.temperature is None or params.B_perp is None:
            raise ParameterError("external contrast model needs B_T, temperature_K and B_perp_G")
        contrast = edmr.spin_dependent_scattering_contrast(params.B, params.B_perp,
                                                           params.temperature, params.constants)
    result = edmr.evaluate_readout(params, contrast, lines_resolved, t2e_star)
    report = result.as_dict()
    report["contrast_source"] = ("external_model_spin_dependent_scattering" if external_model
                                 else ("user" if contrast is not None else None))
    gyro = params.constants.gamma_e if not params.dimensionless else 1.0
    b_minus, b_plus = edmr.resonance_fields(params.omega_esr, params.A, gyro)
    report.update(B_minus=b_minus, B_plus=b_plus, splitting=b_plus - b_minus,
                  omega_perp=params.omega_perp, omega_e=params.omega_e)
    if params.gamma_i is not None or params.gamma_c is not None:
        g_eff, a_sq = rates.effective_coupling(params, gamma_e=params.gamma_e
                                               if (params.gamma_e_override is not None
                                                   or params.T_kondo is not None) else 0.0)
        report.update(gamma_e_effective=g_eff, A_sq_effective=a_sq)
    return report


def cmd_sensitivity(args):
    params = params_from_args(args)
    report = sensitivity_report(params, args.contrast, args.external_model,
                                not args.lines_unresolved, args.t2e_star)
    return _emit_json(report, args.out)


# ---------------------------------------------------------------- compare

def random_state(rng):
    """Random mixed two-spin state (rank drawn from 1..4) as a density matrix."""
    rank = int(rng.integers(1, 5))
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def compare_solvers(params, n_states=20, t_end=2.0, samples=101, seed=0,
                    rel_tol=DEFAULT_REL_TOL, abs_tol=DEFAULT_ABS_TOL, method=DEFAULT_METHOD,
                    tensor_sign=1.0):
    """Run random initial states through both solvers and collect invariant diagnostics."""
    rng = np.random.default_rng(seed)
    t = time_grid(t_end, samples)
    gamma = params.gamma_e
    worst = {"oracle_equivalence": 0.0, "trace": 0.0, "hermiticity": 0.0,
             "bloch_bounds": -math.inf, "min_eigenvalue": math.inf, "purity_drift": 0.0}
    for _ in range(n_states):
        rho0 = random_state(rng)
        state0 = lindblad.expectations(rho0)
        rhos = lindblad.evolve_density(rho0, params, t, rel_tol, abs_tol, method=method)
        traj_l = lindblad.density_trajectory(rhos, t, params)
        traj_b = evolve_bloch(state0, params, t, rel_tol, abs_tol, method,
                              hyperfine_tensor_sign=tensor_sign)
        worst["oracle_equivalence"] = max(worst["oracle_equivalence"],
                                          float(np.abs(traj_b.vectors - traj_l.vectors).max()))
        diags = [lindblad.diagnose(r) for r in rhos]
        worst["trace"] = max(worst["trace"], max(d.trace_error for d in diags))
        worst["hermiticity"] = max(worst["hermiticity"], max(d.hermiticity for d in diags))
        worst["min_eigenvalue"] = min(worst["min_eigenvalue"], min(d.min_eigenvalue for d in diags))
        worst["bloch_bounds"] = max(worst["bloch_bounds"], traj_b.max_bound_violation())
        if gamma == 0:
            drift = max(abs(d.purity - diags[0].purity) for d in diags)
            worst["purity_drift"] = max(worst["purity_drift"], drift)
    checks = {
        "oracle_equivalence": worst["oracle_equivalence"] < COMPARE_TOL,
        "trace": worst["trace"] < max(10 * rel_tol, 1e-12),
        "hermiticity": worst["hermiticity"] < 1e-12,
        "bloch_bounds": worst["bloch_bounds"] <= 1e-9,
        "positivity": worst["min_eigenvalue"] > -1e-8,
        "purity_conservation": worst["purity_drift"] <= 1e-10 if gamma == 0 else True,
    }
    # how far each check is from its limit, for naming the worst offender
    failing = [name for name, ok in checks.items() if not ok]
    return {
        "n_states": n_states,
        "t_end": t_end,
        "samples": samples,
        "gamma_e": gamma,
        "max_deviation": worst["oracle_equivalence"],
        "tolerance": COMPARE_TOL,
        "worst": worst,
        "checks": checks,
        "pass": not failing,
        "worst_invariant": failing[0] if failing else None,
    }


def cmd_compare(args):
    params = params_from_args(args, require_gamma_e=args.T_kondo_K is None)
    report = compare_solvers(params, args.n_states, args.t_end, args.samples, args.seed,
                             args.rel_tol, args.abs_tol, args.method,
                             tensor_sign=-1.0 if args.corrupt_sign else 1.0)
    _emit_json(report, args.out)
    return EXIT_OK if report["pass"] else EXIT_SOLVER


# ---------------------------------------------------------------- plumbing

def _write_text(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out):
    _write_text(json.dumps(obj, indent=2, default=_json_default) + "\n", out)
    return EXIT_OK


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if hasattr(obj, "value"):
        return obj.value
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _tolerance(text):
    value = float(text)
    if not 0 < value <= 1e-3:
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1e-3]")
    return value


class _Parser(argparse.ArgumentParser):
    """Usage errors go out as the same one-line JSON as every other validation error."""

    def error(self, message):
        _fail(EXIT_VALIDATION, f"{self.prog}: {message}")
        raise SystemExit(EXIT_VALIDATION)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value parameter file")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--solver", choices=("bloch", "lindblad", "both"), default="bloch")
    common.add_argument("--rel-tol", type=_tolerance, default=DEFAULT_REL_TOL)
    common.add_argument("--abs-tol", type=_tolerance, default=DEFAULT_ABS_TOL)
    common.add_argument("--method", choices=("RK45", "DOP853"), default=DEFAULT_METHOD,
                        help="adaptive Runge-Kutta pair")
    common.add_argument("--dimensionless", action="store_true",
                        help="A = 1; frequencies in units of A, time in units of 1/A")
    common.add_argument("--fit", action="store_true")
    common.add_argument("--jobs", type=int, default=1)
    params = common.add_argument_group("parameters (override the config file)")
    for key in sorted(CONFIG_KEYS - {"dimensionless"}):
        params.add_argument(f"--{key}", dest=key, metavar="VALUE")

    parser = _Parser(prog="donorspin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rates", parents=[common], help="analytic rates and regime (JSON)")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("trajectory", parents=[common], help="time evolution (CSV)")
    p.add_argument("--initial", default="iz_up+thermal_e",
                   help=f"presets joined by '+' from {PRESETS}, or 15 numbers")
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--samples", type=int, default=1001)
    p.add_argument("--frame", choices=("lab", "rotating"), default="lab")
    p.add_argument("--driven", action="store_true",
                   help="resonant drive in the rotating frame (lindblad solver)")
    p.add_argument("--hyperfine", choices=("secular", "full"), default="secular")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("sweep", parents=[common], help="rates over a parameter grid (CSV)")
    p.add_argument("--variable", choices=tuple(SWEEP_VARIABLES), required=True)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--grid", help="comma-separated values in config units")
    grid.add_argument("--logspace", nargs=3, metavar=("START", "STOP", "N"))
    grid.add_argument("--linspace", nargs=3, metavar=("START", "STOP", "N"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sensitivity", parents=[common], help="EDMR read-out criterion (JSON)")
    p.add_argument("--contrast", type=float, help="measured or modeled (dI/I)_EDMR")
    p.add_argument("--external-model", action="store_true",
                   help="use the spin-dependent-scattering contrast model")
    p.add_argument("--lines-unresolved", action="store_true",
                   help="record that A > 1/T2e* does not hold")
    p.add_argument("--t2e-star", type=float)
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("compare", parents=[common], help="Bloch vs density-matrix check (JSON)")
    p.add_argument("--n-states", type=int, default=20)
    p.add_argument("--t-end", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corrupt-sign", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_compare)
    return parser


def _fail(code, reason):
    sys.stderr.write(json.dumps({"error": code, "reason": reason}) + "\n")
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs < 1:
            parser.error("--jobs must be >= 1")
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except KondoRegimeError:
        return _fail(EXIT_KONDO, "kondo screened")
    except GammaEUnavailableError:
        return _fail(EXIT_VALIDATION, "gamma_e unavailable")
    except (StiffnessError, InsufficientDecayError) as exc:
        return _fail(EXIT_SOLVER, str(exc))
    except NotAStateError as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    except (ParameterError, ValueError, OSError) as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    except DonorSpinError as exc:
        return _fail(EXIT_SOLVER, str(exc))


if __name__ == "__main__":
    sys.exit(main())
