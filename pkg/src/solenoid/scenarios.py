"""Scenario runner: solve -> propagate -> observe pipelines, sweeps, figures.

Outputs are deterministic CSV datasets (%.17g, UTF-8, LF): identical config
on the same platform reproduces files byte for byte.  Figure commands are
named after the source-figure labels and emit the plotted quantities; the
rendering itself is left to external tools.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import observables as obs
from . import oscillator as osc
from . import predictors as pred
from . import profiles as prof
from . import thermal
from .errors import InvalidInputError, NoAsymptoticOscillationError, NotSettledError
from .profiles import FrequencyProfile, GaugeKind

FLOAT_FMT = "%.17g"

OUTPUT_KINDS = ("trajectory", "covariance", "observables", "asymptotics")


@dataclass(frozen=True)
class Scenario:
    """One solve -> observe pipeline run."""

    profile: FrequencyProfile
    gauge: GaugeKind = GaugeKind.CIRCULAR
    beta: float = math.inf
    nu: float = 0.01
    s: float = 1.0
    t_start: float | None = None
    t_end: float = 30.0
    sample_count: int = 801
    outputs: tuple = ("observables",)
    ode_tol: float = 1e-10
    units: str = "natural"  # 'paper' reports E/E_i and M/(mu_B C)
    name: str = "scenario"

    def __post_init__(self):
        if self.sample_count < 2:
            raise InvalidInputError("sample_count must be >= 2")
        if not 1e-12 <= self.ode_tol <= 1e-6:
            raise InvalidInputError("ode_tol must lie in [1e-12, 1e-6]")
        for kind in self.outputs:
            if kind not in OUTPUT_KINDS:
                raise InvalidInputError(f"unknown output kind {kind!r}")
        if self.units not in ("natural", "paper"):
            raise InvalidInputError("units must be 'natural' or 'paper'")

    def resolved_t_start(self) -> float:
        return self.profile.t_start_default() if self.t_start is None else self.t_start

    def thermal_input(self) -> thermal.ThermalInput:
        omega_i = self.profile.omega_larmor(self.resolved_t_start())
        return thermal.ThermalInput(beta=self.beta, nu=self.nu, s=self.s,
                                    omega_i=omega_i)


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: 'profile.<field>' or a Scenario scalar field."""

    name: str
    values: tuple

    def __post_init__(self):
        if len(self.values) < 2:
            raise InvalidInputError("a sweep axis needs >= 2 grid values")


@dataclass(frozen=True)
class SweepSpec:
    base: Scenario
    axes: tuple
    max_runs: int = 100_000

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise InvalidInputError("sweeps support one or two axes")
        total = 1
        for ax in self.axes:
            total *= len(ax.values)
        if total > self.max_runs:
            raise InvalidInputError(
                f"sweep grid has {total} points, above the cap {self.max_runs}")


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return FLOAT_FMT % x


def write_csv(path, header, rows) -> None:
    """%.17g CSV with LF endings regardless of platform."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if not isinstance(v, str) else v
                              for v in row) + "\n")


# ---------------------------------------------------------------------------
# scenario execution
# ---------------------------------------------------------------------------

def run_scenario(scenario: Scenario, out_dir=None):
    """Execute the pipeline; returns (summary dict, {output: rows})."""
    t_start = scenario.resolved_t_start()
    coeffs = thermal.derive_thermal_coefficients(scenario.thermal_input())
    sol = osc.solve_numeric(scenario.profile, scenario.gauge, t_start=t_start,
                            t_end=scenario.t_end, tol=scenario.ode_tol,
                            num=scenario.sample_count)
    aux = None
    if scenario.gauge is GaugeKind.LANDAU:
        aux = osc.landau_auxiliary(scenario.profile, sol)

    e_i = coeffs.initial_energy
    mbc = thermal.MU_B * coeffs.C
    summary = {
        "name": scenario.name,
        "profile": scenario.profile.label(),
        "gauge": scenario.gauge.value,
        "omega_i_larmor": coeffs.omega_i,
        "wronskian_drift": sol.wronskian_drift,
        "initial_energy": e_i,
        "C": coeffs.C, "rho": coeffs.rho, "Upsilon": coeffs.Upsilon,
        "s0": coeffs.s0,
    }
    try:
        m1, m2 = prof.adiabaticity_metrics(scenario.profile, scenario.gauge,
                                           scenario.t_end)
        summary["adiabaticity_first_at_end"] = m1
        summary["adiabaticity_second_at_end"] = m2
    except Exception:
        summary["adiabaticity_first_at_end"] = math.nan
        summary["adiabaticity_second_at_end"] = math.nan
    try:
        summary["settled_at"] = osc.settled_time(scenario.profile, scenario.gauge)
    except (NoAsymptoticOscillationError, NotSettledError):
        summary["settled_at"] = math.nan

    datasets = {}
    if "trajectory" in scenario.outputs:
        header = ["t", "eps_re", "eps_im", "deps_re", "deps_im"]
        cols = [sol.t, sol.eps.real, sol.eps.imag, sol.deps.real, sol.deps.imag]
        if aux is not None:
            header += ["sigma_re", "sigma_im", "S", "chi"]
            cols += [aux.sigma.real, aux.sigma.imag, aux.S, aux.chi]
        datasets["trajectory"] = (header, list(zip(*cols)))

    if "observables" in scenario.outputs:
        header = ["t", "E", "E_over_Ei", "M_over_muBC", "sigma_E", "sigma_M"]
        rows = []
        for t in sol.t:
            rec = obs.observable_record(coeffs, sol, t, aux=aux)
            rows.append((t, rec.energy, rec.energy / e_i, rec.magmom / mbc,
                         rec.energy_variance, rec.magmom_variance))
        datasets["observables"] = (header, rows)
        summary["final_energy_ratio"] = rows[-1][2]
        summary["final_magmom_over_muBC"] = rows[-1][3]

    if "covariance" in scenario.outputs:
        from . import propagation

        header = ["t"] + [f"s{i}{j}" for i in range(1, 5) for j in range(i, 5)]
        rows = []
        for t in sol.t:
            if scenario.gauge is GaugeKind.CIRCULAR:
                lam = propagation.lambda_q_circular(scenario.profile, sol, t)
            else:
                lam = propagation.lambda_q_landau(scenario.profile, sol, aux, t)
            cov = propagation.propagate_covariance(
                thermal.initial_covariance(coeffs), lam)
            rows.append((t,) + tuple(cov[i, j] for i in range(4)
                                     for j in range(i, 4)))
        datasets["covariance"] = (header, rows)

    if "asymptotics" in scenario.outputs:
        header = ["u_plus_re", "u_plus_im", "u_minus_re", "u_minus_im",
                  "residual", "mean_moment_over_muBC", "osc_amplitude_over_muBC",
                  "ratio_R", "energy_ratio"]
        try:
            u = osc.extract_u_coefficients(sol)
            dec = obs.asymptotic_decomposition(u, coeffs)
            rows = [(u.u_plus.real, u.u_plus.imag, u.u_minus.real, u.u_minus.imag,
                     u.residual, dec.mean / mbc, dec.amplitude / mbc, dec.ratio,
                     dec.energy_ratio)]
            summary["u_plus"] = u.u_plus
            summary["u_minus"] = u.u_minus
            summary["u_normalization_defect"] = u.normalization_defect
        except (NoAsymptoticOscillationError, NotSettledError) as exc:
            rows = []
            summary["asymptotics_unavailable"] = str(exc)
        datasets["asymptotics"] = (header, rows)

    if out_dir is not None:
        out = Path(out_dir)
        for kind, (header, rows) in datasets.items():
            write_csv(out / f"{scenario.name}_{kind}.csv", header, rows)
        with open(out / f"{scenario.name}_summary.txt", "w", encoding="utf-8",
                  newline="\n") as fh:
            for key in sorted(summary):
                fh.write(f"{key} = {summary[key]}\n")
    return summary, datasets


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def _apply_axis(scenario: Scenario, name: str, value):
    if name.startswith("profile."):
        fieldname = name.split(".", 1)[1]
        new_profile = dataclasses.replace(scenario.profile, **{fieldname: value})
        return dataclasses.replace(scenario, profile=new_profile)
    return dataclasses.replace(scenario, **{name: value})


def _grid_points(spec: SweepSpec):
    if len(spec.axes) == 1:
        ax = spec.axes[0]
        return [((v,), _apply_axis(spec.base, ax.name, v)) for v in ax.values]
    ax1, ax2 = spec.axes
    points = []
    for v1 in ax1.values:
        for v2 in ax2.values:
            sc = _apply_axis(_apply_axis(spec.base, ax1.name, v1), ax2.name, v2)
            points.append(((v1, v2), sc))
    return points


def _run_point(args):
    values, scenario = args
    try:
        summary, _ = run_scenario(
            dataclasses.replace(scenario, outputs=("observables",)))
        return (values, "ok", summary.get("final_energy_ratio", math.nan),
                summary.get("final_magmom_over_muBC", math.nan),
                summary.get("wronskian_drift", math.nan), "")
    except Exception as exc:  # partial-failure report, not a crash
        return (values, "failed", math.nan, math.nan, math.nan,
                f"{type(exc).__name__}: {exc}")


def run_sweep(spec: SweepSpec, out_path=None, threads: int = 1):
    """One row per grid point, in grid order regardless of execution order.

    Returns (rows, failures); failures list (values, reason) pairs.
    """
    points = _grid_points(spec)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_point, points))
    else:
        results = [_run_point(p) for p in points]

    names = [ax.name.replace("profile.", "") for ax in spec.axes]
    header = names + ["status", "E_final_over_Ei", "M_final_over_muBC",
                      "wronskian_drift", "reason"]
    rows = []
    failures = []
    for values, status, e_ratio, m_ratio, drift, reason in results:
        rows.append(tuple(values) + (status, e_ratio, m_ratio, drift, reason))
        if status != "ok":
            failures.append((values, reason))
    if out_path is not None:
        write_csv(out_path, header, rows)
    return (header, rows), failures


# ---------------------------------------------------------------------------
# figure datasets
# ---------------------------------------------------------------------------

def _synthetic_coeffs(rho, s0_upsilon, omega_i=1.0):
    """Coefficient set pinned directly to the (rho, s0*Y) figure parameters."""
    return thermal.ThermalCoefficients(
        G=1.0 / (4.0 * omega_i), C=1.0, rho=rho, Upsilon=s0_upsilon, s=1.0,
        s0=1.0, omega_i=omega_i)


FIGURE_SETTINGS = {
    "low": dict(rho=0.0, s0_upsilon=1.0),
    "high": dict(rho=1.0, s0_upsilon=10.0),
}


def figure_ef_ei_vs_omega_f():
    """Final/initial energy vs omega_f for the exponential semi-axis ramp."""
    header = ["setting", "kappa", "omega_f", "E_ratio"]
    rows = []
    omega_f_grid = [round(-2.0 + 0.1 * k, 10) for k in range(41)]
    for setting, pars in FIGURE_SETTINGS.items():
        coeffs = _synthetic_coeffs(**pars)
        for kappa in (0.1, 1.0, 10.0):
            for omega_f in omega_f_grid:
                profile = prof.ExpSemiAxis(1.0, omega_f, kappa)
                ratio = pred.closed_form_final(
                    profile, GaugeKind.CIRCULAR, coeffs).energy_ratio
                rows.append((setting, kappa, omega_f, ratio))
    return header, rows


def figure_switch_off_vs_kappa():
    """E_f/E_i vs kappa for the omega_f = 0 exponential switch-off."""
    header = ["setting", "kappa", "E_ratio"]
    rows = []
    kappas = np.geomspace(0.005, 20.0, 121)
    settings = {"low": dict(rho=0.0, s0_upsilon=1.0),
                "high": dict(rho=1.0, s0_upsilon=5.0)}
    for setting, pars in settings.items():
        coeffs = _synthetic_coeffs(**pars)
        for kappa in kappas:
            profile = prof.ExpSemiAxis(1.0, 0.0, float(kappa))
            ratio = pred.closed_form_final(
                profile, GaugeKind.CIRCULAR, coeffs).energy_ratio
            rows.append((setting, float(kappa), ratio))
    return header, rows


def figure_invlin_circ_vs_landau():
    """E(tau)/E_i for both gauges, inverse-linear decay with Omega_0 t_0 = 1/2."""
    header = ["setting", "gauge", "tau", "E_ratio"]
    rows = []
    # same physical field for both gauges: Omega_0 = 1, t_0 = 1/2
    omega0_larmor, t_0 = 0.5, 0.5
    profile = prof.InverseLinear(omega0_larmor, t_0)
    taus = np.geomspace(1.0, 2000.0, 181)
    t_grid = (taus - 1.0) * t_0
    settings = {"low": dict(beta=math.inf, nu=1e-3, s=1.0),
                "high": dict(beta=0.05, nu=0.05 / 10.0, s=1.0)}
    # nu chosen so that Upsilon ~ 10 in the high-temperature setting
    for setting, pars in settings.items():
        coeffs = thermal.derive_thermal_coefficients(
            thermal.ThermalInput(omega_i=omega0_larmor, **pars))
        e_i = coeffs.initial_energy
        sol_c = osc.closed_form_solution(profile, GaugeKind.CIRCULAR, t_grid)
        for tau, t in zip(taus, t_grid):
            f_p, f_m = osc.f_plus_minus(profile, GaugeKind.CIRCULAR,
                                        sol_c.eps[sol_c.index_of(t)],
                                        sol_c.deps[sol_c.index_of(t)], t)
            e = obs.mean_energy_circular(coeffs, f_p, f_m, coeffs.omega_i)
            rows.append((setting, "circular", float(tau), e / e_i))
        sol_l = osc.closed_form_solution(profile, GaugeKind.LANDAU, t_grid)
        sig, s_vals, chi = osc.landau_auxiliary_closed_form(
            profile, GaugeKind.LANDAU, t_grid)
        aux = osc.LandauAuxiliary(t=t_grid, sigma=sig, S=s_vals, chi=chi)
        for tau, t in zip(taus, t_grid):
            kern = obs.landau_kernels(profile, sol_l, aux, t)
            e = obs.mean_energy_landau(coeffs, kern)
            rows.append((setting, "landau", float(tau), e / e_i))
    return header, rows


def figure_moment_ratio_vs_kappa():
    """Zero-temperature R = |dM|/|<<M>>| vs kappa, exponential semi-axis."""
    header = ["omega_f", "kappa", "R"]
    rows = []
    coeffs = _synthetic_coeffs(rho=0.0, s0_upsilon=1.0)
    kappas = np.geomspace(0.05, 50.0, 91)
    for omega_f in (-2.0, -0.5, 0.5, 2.0):
        for kappa in kappas:
            um2, upum = pred.exp_semi_axis_u_products(1.0, omega_f, float(kappa))
            up2 = um2 + 1.0
            mean = math.copysign(1.0, omega_f) * (
                (up2 if omega_f > 0 else um2)
                + coeffs.s0_Upsilon * (um2 if omega_f > 0 else up2))
            amp = 2.0 * math.sqrt(max(um2 * up2, 0.0))
            rows.append((omega_f, float(kappa), amp / abs(mean)))
    return header, rows


FIGURES = {
    "fig-EfEi-wf": figure_ef_ei_vs_omega_f,
    "fig-wf=0-2": figure_switch_off_vs_kappa,
    "fig-E-circ-Land-invlin": figure_invlin_circ_vs_landau,
    "fig-R(k)": figure_moment_ratio_vs_kappa,
}


def run_figure(label: str, out_dir=None):
    if label not in FIGURES:
        raise InvalidInputError(
            f"unknown figure label {label!r}; available: {', '.join(sorted(FIGURES))}")
    header, rows = FIGURES[label]()
    if out_dir is not None:
        safe = label.replace("(", "_").replace(")", "_").replace("=", "-")
        write_csv(Path(out_dir) / f"{safe}.csv", header, rows)
    return header, rows
