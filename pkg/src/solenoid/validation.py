"""Acceptance-criteria checks, runnable from the CLI and the test suite.

Each criterion function returns CheckResult entries carrying the measured
value, the expected value and the tolerance it was held to, so the report
reads the same from `solenoid validate` and from pytest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import observables as obs
from . import oscillator as osc
from . import predictors as pred
from . import propagation
from . import scenarios
from . import thermal
from .profiles import (
    Constant,
    EpsteinEckart,
    ExpSemiAxis,
    GaugeKind,
    InverseLinear,
    InverseQuadratic,
    MildSech,
    ParametricResonance,
    SechBarrier,
    SuddenJump,
)

SEED = 20260810


@dataclass(frozen=True)
class CheckResult:
    criterion: str
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.criterion} {self.name}: measured "
                f"{self.measured:.6g}, expected {self.expected:.6g} "
                f"(tol {self.tolerance:.2g}){'  ' + self.detail if self.detail else ''}")


def _abs_check(criterion, name, measured, expected, tol, detail=""):
    return CheckResult(criterion, name, float(measured), float(expected),
                       float(tol), bool(abs(measured - expected) <= tol), detail)


def _lt_check(criterion, name, measured, bound, detail=""):
    return CheckResult(criterion, name, float(measured), float(bound),
                       float(bound), bool(measured < bound), detail)


def _zero_temp(omega_i=1.0):
    return thermal.derive_thermal_coefficients(
        thermal.ThermalInput(math.inf, 0.01 * omega_i, 1.0, omega_i))


def _warm(beta=1.3, s=1.0, omega_i=1.0):
    return thermal.derive_thermal_coefficients(
        thermal.ThermalInput(beta, 0.01 * omega_i, s, omega_i))


# ---------------------------------------------------------------------------
# criterion 1: Wronskian suite
# ---------------------------------------------------------------------------

def _random_cases(rng):
    """(profile, gauge, t_start, t_end) draws for every variant."""
    cases = []
    gauges = (GaugeKind.CIRCULAR, GaugeKind.LANDAU)
    for k in range(10):
        g = gauges[k % 2]
        wi = rng.uniform(0.5, 2.0)
        cases.append((Constant(wi), g, None, 30.0))
        wf = rng.uniform(-2.0, 2.0)
        cases.append((SuddenJump(wi, wf), g, -3.0, 30.0))
        u = rng.uniform(0.1, 3.0)
        cases.append((InverseLinear(wi, u / wi), g, None, 50.0))
        u = rng.uniform(0.1, 3.0)
        cases.append((InverseQuadratic(wi, u / wi), g, None, 50.0))
        w0 = rng.uniform(0.5, 1.5)
        cases.append((SechBarrier(rng.uniform(0.0, 2.0), w0), g, None, 12.0 / w0))
        kap = rng.uniform(0.3, 3.0)
        cases.append((ExpSemiAxis(wi, rng.uniform(-1.5, 1.5), kap), g, None,
                      min(40.0 / kap + 20.0, 160.0)))
        kap = rng.uniform(0.3, 3.0)
        cases.append((EpsteinEckart(wi, rng.uniform(-1.5, 1.5), kap), g, None,
                      25.0 / kap))
        kap = rng.uniform(0.3, 2.0)
        cases.append((MildSech(wi, kap), g, None, 14.0 / kap))
        gam = rng.uniform(0.005, 0.045)
        cases.append((ParametricResonance(wi, gam), g, None,
                      min(1.0 / (wi * gam), 300.0)))
    return cases


def criterion_1(fast: bool = False):
    """Drift < 1e-8 for all 9 variants x 10 random draws."""
    rng = np.random.default_rng(SEED)
    cases = _random_cases(rng)
    if fast:
        cases = cases[:18]
    worst = 0.0
    worst_label = ""
    for profile, gauge, t_start, t_end in cases:
        sol = osc.solve_numeric(profile, gauge, t_start=t_start, t_end=t_end,
                                tol=1e-12, num=201)
        if sol.wronskian_drift > worst:
            worst = sol.wronskian_drift
            worst_label = f"{profile.label()} [{gauge.value}]"
    return [_lt_check("criterion-1", f"max Wronskian drift over {len(cases)} runs",
                      worst, 1e-8, detail=worst_label)]


# ---------------------------------------------------------------------------
# criterion 2: closed-form / numeric equivalence
# ---------------------------------------------------------------------------

def _closed_numeric_case(profile, gauge, t_end, n=400):
    sol = osc.solve_numeric(profile, gauge, t_end=t_end, tol=1e-11, num=n)
    eps_c, _ = osc.closed_form_epsilon(profile, gauge, sol.t, t_start=sol.t_start)
    scale = float(np.max(np.abs(eps_c)))
    return float(np.max(np.abs(eps_c - sol.eps)) / scale)


def criterion_2(fast: bool = False):
    cases = []
    for u in (0.3, 0.5, 2.0):
        cases.append((InverseLinear(1.0, u), GaugeKind.CIRCULAR, 50.0))
    for u in (0.3, 3.0):
        cases.append((InverseQuadratic(1.0, u), GaugeKind.CIRCULAR, 50.0))
    for r in (0.0, 0.5, 2.0):
        cases.append((SechBarrier(r, 1.0), GaugeKind.CIRCULAR, 13.0))
    for kap in (0.3, 1.0, 3.0):
        for wf in (-1.0, -0.5, 0.0, 0.5):
            cases.append((ExpSemiAxis(1.0, wf, kap), GaugeKind.CIRCULAR,
                          min(30.0 / kap, 80.0)))
            cases.append((EpsteinEckart(1.0, wf, kap), GaugeKind.CIRCULAR,
                          18.0 / kap))
    for mu in (0.1, math.sqrt(2.0), 10.0):
        cases.append((MildSech(1.0, 1.0 / mu), GaugeKind.CIRCULAR,
                      14.0 * mu))
    if fast:
        cases = cases[::5]
    out = []
    worst = 0.0
    worst_label = ""
    for profile, gauge, t_end in cases:
        err = _closed_numeric_case(profile, gauge, t_end)
        if err > worst:
            worst, worst_label = err, profile.label()
    out.append(_lt_check("criterion-2",
                         f"max |eps_closed - eps_numeric| over {len(cases)} grids",
                         worst, 1e-6, detail=worst_label))
    return out


# ---------------------------------------------------------------------------
# criterion 3: sudden-jump exact values
# ---------------------------------------------------------------------------

def criterion_3(fast: bool = False):
    out = []
    warm = _warm(beta=0.8, s=1.6)
    p = pred.sudden_jump_prediction(warm, 1.0, -1.0, GaugeKind.CIRCULAR)
    out.append(_abs_check("criterion-3", "circular inversion E_f/E_i=1 (formula)",
                          p.energy_ratio, 1.0, 1e-10))
    # pipeline route: closed-form jump solution through the trace formula
    prof_j = SuddenJump(1.0, -1.0)
    sol = osc.closed_form_solution(prof_j, GaugeKind.CIRCULAR,
                                   np.linspace(0.0, 20.0, 41))
    ratios = []
    for t in sol.t[1:]:
        i = sol.index_of(t)
        f_p, f_m = osc.f_plus_minus(prof_j, GaugeKind.CIRCULAR,
                                    sol.eps[i], sol.deps[i], t)
        ratios.append(obs.mean_energy_circular(warm, f_p, f_m, 1.0)
                      / warm.initial_energy)
    out.append(_abs_check("criterion-3", "circular inversion E_f/E_i=1 (pipeline)",
                          max(abs(r - 1.0) for r in ratios), 0.0, 1e-10))

    zero = _zero_temp()
    p = pred.sudden_jump_prediction(zero, 1.0, 0.0, GaugeKind.CIRCULAR)
    out.append(_abs_check("criterion-3", "circular switch-off E_f/E_i (formula)",
                          p.energy_ratio, 0.5, 1e-10))
    prof_0 = SuddenJump(1.0, 0.0)
    sol = osc.closed_form_solution(prof_0, GaugeKind.CIRCULAR,
                                   np.linspace(0.0, 20.0, 21))
    i = sol.index_of(sol.t[-1])
    f_p, f_m = osc.f_plus_minus(prof_0, GaugeKind.CIRCULAR, sol.eps[i],
                                sol.deps[i], sol.t[-1])
    out.append(_abs_check("criterion-3", "circular switch-off E_f/E_i (pipeline)",
                          obs.mean_energy_circular(zero, f_p, f_m, 1.0)
                          / zero.initial_energy, 0.5, 1e-10))

    p = pred.sudden_jump_prediction(zero, 1.0, 0.0, GaugeKind.LANDAU)
    out.append(_abs_check("criterion-3", "Landau switch-off E_f/E_i (formula)",
                          p.energy_ratio, 1.0, 1e-10))
    sol = osc.closed_form_solution(prof_0, GaugeKind.LANDAU,
                                   np.linspace(0.0, 12.0, 25))
    sig, s_vals, chi = osc.landau_auxiliary_closed_form(
        prof_0, GaugeKind.LANDAU, sol.t)
    aux = osc.LandauAuxiliary(t=sol.t, sigma=sig, S=s_vals, chi=chi)
    kern = obs.landau_kernels(prof_0, sol, aux, sol.t[-1])
    out.append(_abs_check("criterion-3", "Landau switch-off E_f/E_i (pipeline)",
                          obs.mean_energy_landau(zero, kern) / zero.initial_energy,
                          1.0, 1e-10))
    return out


# ---------------------------------------------------------------------------
# criterion 4: profile-specific finals
# ---------------------------------------------------------------------------

def criterion_4(fast: bool = False):
    out = []
    zero = _zero_temp()
    mbc = thermal.MU_B * zero.C

    prof_s = SechBarrier(0.0, 1.0)
    sol = osc.solve_numeric(prof_s, GaugeKind.CIRCULAR, t_end=22.0, tol=1e-12,
                            num=23)
    t = sol.t[-1]
    i = sol.index_of(t)
    f_p, f_m = osc.f_plus_minus(prof_s, GaugeKind.CIRCULAR, sol.eps[i],
                                sol.deps[i], t)
    ratio = obs.mean_energy_circular(zero, f_p, f_m, prof_s.omega_peak) \
        / (prof_s.omega_peak * zero.C)
    out.append(_abs_check("criterion-4", "sech barrier switch-off E(inf)/E_i",
                          ratio, 0.25, 1e-6))
    w_t = prof_s.omega(t, GaugeKind.CIRCULAR)
    m_inf = obs.mean_magmom_circular(zero, w_t, sol.eps[i])
    out.append(_abs_check("criterion-4", "sech barrier switch-off M(inf)",
                          m_inf, 0.0, 1e-6 * thermal.MU_B))

    kappa = 1.0 / math.sqrt(2.0)
    prof_l = MildSech(kappa / math.sqrt(2.0), kappa)  # mu_Landau = sqrt(2)
    zero_l = thermal.derive_thermal_coefficients(
        thermal.ThermalInput(math.inf, 0.001, 1.0, prof_l.omega_i))
    sol = osc.solve_numeric(prof_l, GaugeKind.LANDAU, t_end=26.0, tol=1e-12,
                            num=27)
    aux = osc.landau_auxiliary(prof_l, sol)
    kern = obs.landau_kernels(prof_l, sol, aux, sol.t[-1])
    ratio = obs.mean_energy_landau(zero_l, kern) / zero_l.initial_energy
    out.append(_abs_check("criterion-4", "Landau sech mu=sqrt2 E(inf)/E_i",
                          ratio, 1.0, 1e-4))

    for mu in (0.5, 2.0, 10.0):
        prof_e = ExpSemiAxis(1.0, 0.0, 1.0 / mu)
        expected = pred.closed_form_final(prof_e, GaugeKind.CIRCULAR,
                                          zero).energy_ratio
        t_end = 40.0 * mu
        sol = osc.solve_numeric(prof_e, GaugeKind.CIRCULAR, t_end=t_end,
                                tol=1e-12, num=21)
        i = sol.index_of(sol.t[-1])
        f_p, f_m = osc.f_plus_minus(prof_e, GaugeKind.CIRCULAR, sol.eps[i],
                                    sol.deps[i], sol.t[-1])
        ratio = obs.mean_energy_circular(zero, f_p, f_m, 1.0) / zero.initial_energy
        out.append(_abs_check("criterion-4",
                              f"switch-off Bessel final, mu={mu:g}",
                              ratio, expected, 1e-6))
    return out


# ---------------------------------------------------------------------------
# criterion 5: section-5 identities
# ---------------------------------------------------------------------------

def criterion_5(fast: bool = False):
    out = []
    worst = 0.0
    omega_fs = [w for w in np.linspace(-2.0, 2.0, 21) if abs(w) > 1e-12]
    kappas_a = (0.1, 1.0, 10.0)
    kappas_b = np.geomspace(0.1, 10.0, 5 if fast else 13)
    grids = [(k, w) for k in kappas_a for w in omega_fs]
    grids += [(float(k), w) for k in kappas_b for w in (0.2, 0.5, 1.0, 2.0)]
    if fast:
        grids = grids[::6]
    for kappa, omega_f in grids:
        worst = max(worst, pred.exp_semi_axis_identity_residual(1.0, omega_f, kappa))
    out.append(_lt_check("criterion-5",
                         f"Wronskian identity residual over {len(grids)} points",
                         worst, 1e-9))

    worst_u = 0.0
    for profile, gauge, t_end in (
            (SuddenJump(1.0, 1.7), GaugeKind.CIRCULAR, 60.0),
            (ExpSemiAxis(1.0, 0.6, 1.0), GaugeKind.CIRCULAR, 80.0),
            (EpsteinEckart(1.0, -0.8, 0.7), GaugeKind.LANDAU, 60.0)):
        sol = osc.solve_numeric(profile, gauge, t_end=t_end, tol=1e-12, num=3001)
        u = osc.extract_u_coefficients(sol)
        worst_u = max(worst_u, u.normalization_defect)
    out.append(_lt_check("criterion-5", "u-coefficient normalization defect",
                         worst_u, 1e-8))

    worst_r = 0.0
    for mu in (0.5, 1.0, 2.0, 5.0, 10.0):
        lam = pred.exp_semi_axis_lambda_bessel(mu)
        worst_r = max(worst_r, abs(pred.moment_ratio_from_lambda(lam) - 1.0))
    out.append(_abs_check("criterion-5", "R at omega_f=0 (Bessel lambda)",
                          1.0 + worst_r, 1.0, 1e-6))
    return out


# ---------------------------------------------------------------------------
# criterion 6: regime convergence
# ---------------------------------------------------------------------------

def criterion_6(fast: bool = False):
    out = []
    zero = _zero_temp()
    kappa = 100.0
    for omega_f, positive in ((-1.0, True), (0.5, False)):
        exact = pred.closed_form_final(ExpSemiAxis(1.0, omega_f, kappa),
                                       GaugeKind.CIRCULAR, zero).energy_ratio
        jump = pred.sudden_jump_prediction(zero, 1.0, omega_f,
                                           GaugeKind.CIRCULAR).energy_ratio
        corr = pred.sudden_jump_energy_correction(1.0, omega_f, kappa)
        diff = exact - jump
        out.append(CheckResult(
            "criterion-6", f"finite-kappa correction, omega_f={omega_f:g}",
            measured=diff, expected=corr, tolerance=0.2 * abs(corr),
            passed=bool(abs(diff - corr) <= 0.2 * abs(corr)
                        and (corr > 0) == positive),
            detail=f"sign {'positive' if corr > 0 else 'negative'}"))

    for omega_f in (0.5, 0.8):
        profile = EpsteinEckart(1.0, omega_f, 1.0 / 50.0)
        ratio = pred.closed_form_final(profile, GaugeKind.CIRCULAR,
                                       zero).energy_ratio
        out.append(_abs_check("criterion-6",
                              f"adiabatic Epstein-Eckart, omega_f={omega_f:g}",
                              ratio, omega_f, 5e-3))
        log_um2 = pred.epstein_eckart_log_um2(1.0, omega_f, 1.0 / 50.0)
        log_bound = pred.epstein_eckart_adiabatic_bound(1.0, omega_f, 1.0 / 50.0)
        out.append(_lt_check("criterion-6",
                             f"|u-|^2 within 2x of the exp estimate, "
                             f"omega_f={omega_f:g}",
                             abs(log_um2 - log_bound), math.log(2.0) + 1e-9,
                             detail=f"ln|u-|^2 = {log_um2:.2f}"))

    # slope-3 law on a 6-point negative-omega_f fit, kappa = omega_i/10
    wfs = np.linspace(-0.3, -0.05, 6)
    for family in ("epstein_eckart", "exp_semi_axis"):
        ratios = []
        for wf in wfs:
            if family == "epstein_eckart":
                um2 = math.exp(pred.epstein_eckart_log_um2(1.0, wf, 0.1))
            else:
                um2, _ = pred.exp_semi_axis_u_products(1.0, wf, 0.1)
            ratios.append(abs(wf) * (1.0 + 2.0 * um2))
        slope = float(np.polyfit(np.abs(wfs), ratios, 1)[0])
        out.append(CheckResult("criterion-6", f"slope-3 law ({family})",
                               measured=slope, expected=3.0, tolerance=0.3,
                               passed=bool(abs(slope - 3.0) <= 0.3)))
    return out


# ---------------------------------------------------------------------------
# criterion 7: fluctuation laws
# ---------------------------------------------------------------------------

def criterion_7(fast: bool = False):
    out = []
    warm = _warm(beta=0.9)
    profile = ExpSemiAxis(1.0, 0.55, 0.8)
    sol = osc.solve_numeric(profile, GaugeKind.CIRCULAR, t_end=25.0, tol=1e-12,
                            num=26)
    worst = 0.0
    for t in sol.t:
        w = profile.omega(t, GaugeKind.CIRCULAR)
        rec = obs.observable_record(warm, sol, t)
        cov = propagation.covariance_blocks_circular(warm, sol, t).assemble()
        engine = obs.energy_variance_from_cov(cov, 2.0 * w)
        worst = max(worst, abs(engine - rec.energy_variance)
                    / max(abs(rec.energy_variance), 1e-12))
    out.append(_lt_check("criterion-7",
                         "sigma_E = E^2 - w^2 vs fourth-moment engine",
                         worst, 1e-8))

    sig_e0 = obs.energy_variance_circular(warm, warm.initial_energy, 1.0)
    out.append(_abs_check("criterion-7", "sigma_E(0) = w_i^2 (C^2 - 1)",
                          sig_e0, warm.C ** 2 - 1.0, 1e-10))

    zero = _zero_temp()
    worst = 0.0
    for profile, t_end in ((ExpSemiAxis(1.0, 0.55, 0.8), 25.0),
                           (SechBarrier(0.7, 1.0), 12.0)):
        sol = osc.solve_numeric(profile, GaugeKind.CIRCULAR, t_end=t_end,
                                tol=1e-12, num=26)
        for t in sol.t:
            rec = obs.observable_record(zero, sol, t)
            worst = max(worst, abs(rec.magmom_variance - rec.magmom ** 2)
                        / max(rec.magmom ** 2, 1e-12))
    out.append(_lt_check("criterion-7", "zero-temperature sigma_M = M^2",
                         worst, 1e-8))

    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for _ in range(20):
        a = rng.normal(size=(4, 4))
        cov = a @ a.T + 0.1 * np.eye(4)
        for lbl in thermal.COORD_LABELS:
            got = obs.gaussian_fourth_moment(cov, (lbl,) * 4, 2.0)
            idx = thermal.COORD_LABELS.index(lbl)
            worst = max(worst, abs(got - 3.0 * cov[idx, idx] ** 2))
    out.append(_abs_check("criterion-7", "<x^4> = 3 <x^2>^2 (exact)",
                          worst, 0.0, 0.0))
    return out


# ---------------------------------------------------------------------------
# criterion 8: two-path covariance, positivity
# ---------------------------------------------------------------------------

def criterion_8(fast: bool = False):
    rng = np.random.default_rng(SEED + 8)
    worst_two_path = 0.0
    worst_neg = 0.0
    n_states = 2 if fast else 5
    for _ in range(n_states):
        beta = float(rng.uniform(0.3, 4.0))
        s = float(rng.uniform(0.5, 2.0))
        coeffs = thermal.derive_thermal_coefficients(
            thermal.ThermalInput(beta, 0.01, s, 1.0))
        sigma0 = thermal.initial_covariance(coeffs)
        profile = ExpSemiAxis(1.0, float(rng.uniform(0.2, 1.5)),
                              float(rng.uniform(0.4, 2.0)))
        sol = osc.solve_numeric(profile, GaugeKind.CIRCULAR, t_end=20.0,
                                tol=1e-12, num=21)
        for t in sol.t:
            lam = propagation.lambda_q_circular(profile, sol, t)
            via_lam = propagation.propagate_covariance(sigma0, lam)
            blocks = propagation.covariance_blocks_circular(coeffs, sol, t)
            scale = float(np.max(np.abs(via_lam)))
            worst_two_path = max(
                worst_two_path,
                float(np.max(np.abs(via_lam - blocks.assemble()))) / scale)
            eig = float(np.linalg.eigvalsh(via_lam).min())
            worst_neg = max(worst_neg, -eig / np.trace(via_lam))
        # Landau positivity along the same field
        sol_l = osc.solve_numeric(profile, GaugeKind.LANDAU, t_end=20.0,
                                  tol=1e-12, num=21)
        aux = osc.landau_auxiliary(profile, sol_l)
        for t in sol_l.t:
            lam = propagation.lambda_q_landau(profile, sol_l, aux, t)
            cov = propagation.propagate_covariance(sigma0, lam)
            eig = float(np.linalg.eigvalsh(cov).min())
            worst_neg = max(worst_neg, -eig / np.trace(cov))
    return [
        _lt_check("criterion-8", "two-path covariance equality", worst_two_path,
                  1e-9),
        _lt_check("criterion-8", "covariance negativity -min(eig)/trace",
                  worst_neg, 1e-10),
    ]


# ---------------------------------------------------------------------------
# criterion 9: parametric resonance
# ---------------------------------------------------------------------------

def _resonance_deviation(gauge, gamma=0.02):
    """Worst relative deviation of the drive-period-averaged pipeline energy
    from the slow-envelope prediction over w_base*gamma*t <= 2."""
    profile = ParametricResonance(1.0, gamma)
    coeffs = _zero_temp(profile.omega_larmor(0.0))
    wb = profile.omega_i * gauge.factor
    t_end = 2.0 / (wb * gamma)
    period = math.pi / wb
    n_per = 40
    num = int((t_end + period) / period) * n_per + 1
    sol = osc.solve_numeric(profile, gauge, t_end=t_end + period, tol=1e-11,
                            num=num)
    aux = osc.landau_auxiliary(profile, sol) if gauge is GaugeKind.LANDAU else None
    energies = np.empty(sol.t.shape)
    for k, t in enumerate(sol.t):
        if gauge is GaugeKind.CIRCULAR:
            energies[k] = obs.observable_record(coeffs, sol, t,
                                                with_variances=False).energy
        else:
            energies[k] = obs.mean_energy_landau(
                coeffs, obs.landau_kernels(profile, sol, aux, t))
    e0 = coeffs.initial_energy
    worst = 0.0
    for k in range(0, len(sol.t) - n_per, n_per // 4):
        seg_t = sol.t[k:k + n_per + 1]
        avg = float(np.trapz(energies[k:k + n_per + 1], seg_t)
                    / (seg_t[-1] - seg_t[0]))
        t_mid = 0.5 * (seg_t[0] + seg_t[-1])
        ref = pred.resonance_prediction(coeffs, gamma, gauge, t=t_mid).energy_ratio
        worst = max(worst, abs(avg / e0 / ref - 1.0))
    return worst


def criterion_9(fast: bool = False):
    out = [_lt_check("criterion-9", "circular resonance vs slow envelope",
                     _resonance_deviation(GaugeKind.CIRCULAR), 0.03,
                     detail="drive-period-averaged pipeline energy")]
    landau_dev = _resonance_deviation(GaugeKind.LANDAU)
    out.append(_lt_check(
        "criterion-9", "Landau resonance vs slow envelope", landau_dev, 0.03,
        detail="KNOWN RED: the source's Landau envelope freezes the auxiliary "
               "constant at i(u+ - u-); the exact integral pins it at its "
               "initial value, so the predicted K_Y growth term is absent "
               "from the exact dynamics (see decisions ledger)"))
    return out


# ---------------------------------------------------------------------------
# criterion 10: figure-dataset markers
# ---------------------------------------------------------------------------

def criterion_10(fast: bool = False):
    out = []
    header, rows = scenarios.run_figure("fig-EfEi-wf")
    pick = {(r[1], r[2]): r[3] for r in rows if r[0] == "high" and r[1] == 10.0}
    left = (pick[(10.0, 0.0)] - pick[(10.0, -0.1)]) / 0.1
    right = (pick[(10.0, 0.1)] - pick[(10.0, 0.0)]) / 0.1
    out.append(CheckResult("criterion-10", "cusp at omega_f=0 (high temperature)",
                           measured=right - left, expected=0.0, tolerance=0.0,
                           passed=bool(right - left > 0.0),
                           detail=f"left slope {left:.3f}, right slope {right:.3f}"))

    header, rows = scenarios.run_figure("fig-wf=0-2")
    xs = np.array([r[1] for r in rows if r[0] == "low" and 0.01 <= r[1] <= 0.05])
    ys = np.array([r[2] for r in rows if r[0] == "low" and 0.01 <= r[1] <= 0.05])
    coef = np.polyfit(xs, ys, 1)
    resid = ys - np.polyval(coef, xs)
    r2 = 1.0 - float(np.sum(resid ** 2)) / float(np.sum((ys - ys.mean()) ** 2))
    out.append(CheckResult("criterion-10", "switch-off linear-in-kappa tail",
                           measured=r2, expected=1.0, tolerance=0.01,
                           passed=bool(r2 > 0.99)))

    header, rows = scenarios.run_figure("fig-E-circ-Land-invlin")
    last_tau = max(r[2] for r in rows)
    for setting in ("low", "high"):
        fin = {r[1]: r[3] for r in rows
               if r[0] == setting and abs(r[2] - last_tau) < 1e-9}
        out.append(CheckResult(
            "criterion-10", f"Landau inverse-linear plateau above circular "
                            f"({setting})",
            measured=fin["landau"] - fin["circular"], expected=0.0, tolerance=0.0,
            passed=bool(fin["landau"] > fin["circular"]),
            detail=f"landau {fin['landau']:.4g} vs circular {fin['circular']:.4g}"))

    header, rows = scenarios.run_figure("fig-R(k)")
    biggest_k = max(r[1] for r in rows)
    worst = 0.0
    for omega_f in (-2.0, -0.5, 0.5, 2.0):
        r_big = [r[2] for r in rows
                 if r[0] == omega_f and abs(r[1] - biggest_k) < 1e-9][0]
        r_jump = abs(omega_f ** 2 - 1.0) / (omega_f ** 2 + 1.0)
        worst = max(worst, abs(r_big - r_jump))
    out.append(CheckResult("criterion-10", "R(kappa -> inf) -> sudden-jump value",
                           measured=worst, expected=0.0, tolerance=0.02,
                           passed=bool(worst < 0.02)))
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

ALL_CRITERIA = {
    "criterion-1": criterion_1,
    "criterion-2": criterion_2,
    "criterion-3": criterion_3,
    "criterion-4": criterion_4,
    "criterion-5": criterion_5,
    "criterion-6": criterion_6,
    "criterion-7": criterion_7,
    "criterion-8": criterion_8,
    "criterion-9": criterion_9,
    "criterion-10": criterion_10,
}

FAST_SUBSET = ("criterion-1", "criterion-3", "criterion-5", "criterion-7")


def run_suite(which: str = "full"):
    """Run the acceptance checks; returns a list of CheckResult."""
    fast = which == "fast"
    names = FAST_SUBSET if fast else tuple(ALL_CRITERIA)
    results = []
    for name in names:
        results.extend(ALL_CRITERIA[name](fast=fast))
    return results
