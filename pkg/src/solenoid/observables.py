"""Mean energy, mean magnetic moment, their variances, and asymptotics.

Circular-gauge quantities are expressed through F+- = w eps +- i eps' and
omega |eps|^2, which stay finite when the field is switched off (the
geometric 1/omega factors cancel analytically); Landau-gauge quantities go
through the kernel functions built from (eps, sigma, S, chi).

All outputs are in natural units: energies in hbar*omega, moments in units
where the Bohr magneton is 1/2 (the mu_B C normalization used in the paper's
figures is applied at the I/O layer).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import propagation
from .errors import (
    GeometricSingularityError,
    PreconditionError,
    RegimeValidityError,
    UnsupportedRegimeError,
)
from .oscillator import AsymptoticCoefficients, ComplexSolution, LandauAuxiliary
from .profiles import GaugeKind
from .thermal import MU_B, COORD_LABELS, ThermalCoefficients


@dataclass(frozen=True)
class ObservableRecord:
    """One output sample of the observable pipeline."""

    t: float
    energy: float
    magmom: float
    energy_variance: float | None = None
    magmom_variance: float | None = None


@dataclass(frozen=True)
class AsymptoticMoment:
    """Constant / oscillating decomposition of the settled magnetic moment."""

    mean: float
    amplitude: float
    ratio: float
    energy_ratio: float


@dataclass(frozen=True)
class LandauKernels:
    """Scalar kernels of the Landau-gauge energy and moment formulas."""

    K_Omega: float
    K_Y: float
    K_rho: float
    U: float
    V: float
    S_Omega: float
    S_Y: float
    S_rho: float
    N: float
    M: float


# ---------------------------------------------------------------------------
# circular gauge
# ---------------------------------------------------------------------------

def mean_energy_circular(coeffs: ThermalCoefficients, f_plus, f_minus,
                         omega_i: float) -> float:
    """E = (E_i / 4 w_i) [|F-|^2 + s0 Y |F+|^2 - 2 rho Re(F- F+)]."""
    e_i = omega_i * coeffs.C
    val = (abs(f_minus) ** 2 + coeffs.s0_Upsilon * abs(f_plus) ** 2
           - 2.0 * coeffs.rho * (f_minus * f_plus).real)
    return e_i / (4.0 * omega_i) * val


def mean_magmom_circular(coeffs: ThermalCoefficients, omega_t: float, eps) -> float:
    """M = -(mu_B C / 2){w|eps|^2 + 1 + Y s0 [w|eps|^2 - 1] - 2 rho w Re(eps^2)}.

    The derivative eps' does not enter.
    """
    we2 = omega_t * abs(eps) ** 2
    re2 = omega_t * (eps * eps).real
    return -(MU_B * coeffs.C / 2.0) * (
        we2 + 1.0 + coeffs.s0_Upsilon * (we2 - 1.0) - 2.0 * coeffs.rho * re2)


def energy_variance_circular(coeffs: ThermalCoefficients, energy: float,
                             omega_t: float) -> float:
    """sigma_E = E^2 - (hbar w)^2; exact for s = 1 at any temperature."""
    if abs(coeffs.s - 1.0) > 1e-12:
        raise UnsupportedRegimeError(
            "the closed energy-variance law holds for isotropic traps (s = 1) "
            "only; anisotropic fluctuation dynamics is out of scope")
    return energy * energy - omega_t * omega_t


def magmom_variance_circular(coeffs: ThermalCoefficients, sol: ComplexSolution,
                             t: float, regime: str = "general_s1") -> float:
    """Magnetic-moment variance in one of the tabulated regimes.

    regimes: 'zero_temp' (rho=0, C=Y=1), 'adiabatic', 'high_temp'
    (Y[w|eps|^2 - 1] >= 10), 'general_s1' (any temperature, s = 1, via the
    Gaussian fourth-moment engine).
    """
    if abs(coeffs.s - 1.0) > 1e-12:
        raise UnsupportedRegimeError(
            "magnetic-moment variance formulas are tabulated for isotropic "
            "traps (s = 1) only")
    i = sol.index_of(t)
    eps = sol.eps[i]
    w = sol.profile.omega(t, sol.gauge)
    we2 = w * abs(eps) ** 2

    if regime == "zero_temp":
        if not coeffs.is_zero_temperature(1e-12):
            raise RegimeValidityError(
                f"zero_temp regime needs (C, rho, Upsilon) = (1, 0, 1); got "
                f"({coeffs.C}, {coeffs.rho}, {coeffs.Upsilon})")
        return MU_B ** 2 * we2 ** 2
    if regime == "adiabatic":
        if abs(we2 - 1.0) > 0.1:
            raise RegimeValidityError(
                f"adiabatic regime needs w|eps|^2 ~ 1; got {we2:.6g} "
                "(|w|eps|^2 - 1| > 0.1)")
        phi = sol.phase[i]
        mbc = MU_B * coeffs.C
        c2 = math.cos(2.0 * phi)
        return mbc ** 2 * (2.0 + coeffs.Upsilon + coeffs.rho ** 2 * c2 * c2
                           - 4.0 * coeffs.rho * c2) / 2.0 - MU_B ** 2 / 2.0
    if regime == "high_temp":
        gap = coeffs.Upsilon * (we2 - 1.0)
        if gap < 10.0:
            raise RegimeValidityError(
                f"high_temp regime needs Upsilon (w|eps|^2 - 1) >= 10; got {gap:.6g}")
        # leading Upsilon^2 term equals the squared high-temperature mean
        # moment; the Gaussian fourth-moment engine and the classical
        # quadratic-form variance 2 Tr[(AS)^2] agree on the 1/4 prefactor
        return (MU_B * coeffs.C * coeffs.Upsilon) ** 2 * (we2 - 1.0) ** 2 / 4.0
    if regime == "general_s1":
        if abs(coeffs.s - 1.0) > 1e-12:
            raise UnsupportedRegimeError(
                "general magnetic-moment variance is tabulated for s = 1 only")
        cov = propagation.covariance_blocks_circular(coeffs, sol, t).assemble()
        return magmom_variance_from_cov(cov, w)
    raise RegimeValidityError(f"unknown regime {regime!r}")


# ---------------------------------------------------------------------------
# Gaussian fourth moments
# ---------------------------------------------------------------------------

def _commutator(i: int, j: int, omega_cyclotron: float) -> complex:
    # [x_r, y_r] = [y_c, x_c] = i/Omega; r-c cross commutators vanish
    if (i, j) == (0, 1):
        return 1j / omega_cyclotron
    if (i, j) == (1, 0):
        return -1j / omega_cyclotron
    if (i, j) == (3, 2):
        return 1j / omega_cyclotron
    if (i, j) == (2, 3):
        return -1j / omega_cyclotron
    return 0.0


def ordered_fourth_moment(cov: np.ndarray, indices, omega_cyclotron: float) -> complex:
    """<Q_i Q_j Q_k Q_l> in the given operator order (Wick + commutators).

    Second moments of the ordered pair are sigma_ij + [Q_i, Q_j]/2; the
    three-pairing Wick sum is exact for Gaussian states.
    """
    cov = np.asarray(cov)
    i, j, k, l = indices

    def m2(p, q):
        return cov[p, q] + 0.5 * _commutator(p, q, omega_cyclotron)

    return (m2(i, j) * m2(k, l) + m2(i, k) * m2(j, l) + m2(i, l) * m2(j, k))


def gaussian_fourth_moment(cov: np.ndarray, labels, omega_cyclotron: float) -> float:
    """Real part of the ordered fourth moment for coordinate labels.

    labels are four of {'x_r', 'y_r', 'x_c', 'y_c'}.  The anti-Hermitian
    (imaginary) part cancels pairwise in every physical assembly such as
    <H^2> or <M^2>, so those assemblies may sum real parts term by term.
    """
    idx = tuple(COORD_LABELS.index(lbl) for lbl in labels)
    return ordered_fourth_moment(cov, idx, omega_cyclotron).real


def energy_variance_from_cov(cov: np.ndarray, omega_cyclotron: float) -> float:
    """<H^2> - <H>^2 assembled with the fourth-moment engine (any s)."""
    cov = np.asarray(cov)
    pref = 0.5 * omega_cyclotron ** 2  # H = (m Omega^2 / 2)(x_r^2 + y_r^2)
    mean = pref * (cov[0, 0] + cov[1, 1])
    terms = 0.0
    for a in (0, 1):
        for b in (0, 1):
            terms += ordered_fourth_moment(cov, (a, a, b, b), omega_cyclotron).real
    return pref ** 2 * terms - mean * mean


def magmom_variance_from_cov(cov: np.ndarray, omega_larmor: float) -> float:
    """<M^2> - <M>^2 for M = -w (x_r^2 + y_r^2 + x_c x_r + y_c y_r)."""
    cov = np.asarray(cov)
    omega_cyc = 2.0 * omega_larmor
    # the four summands of -M/w as ordered index pairs
    terms = ((0, 0), (1, 1), (2, 0), (3, 1))
    mean = -omega_larmor * sum(cov[p, q] for p, q in terms)
    total = 0.0
    for p1, p2 in terms:
        for q1, q2 in terms:
            total += ordered_fourth_moment(cov, (p1, p2, q1, q2), omega_cyc).real
    return omega_larmor ** 2 * total - mean * mean


# ---------------------------------------------------------------------------
# Landau gauge
# ---------------------------------------------------------------------------

def _kernels_from_state(eps: complex, deps: complex, sigma: complex,
                        s_val: float, chi: float, w: float, w_i: float) -> LandauKernels:
    sq = math.sqrt(w_i)
    s_dot = (deps * sigma.conjugate()).imag
    chi_dot = 1.0 - w * s_val

    v = w * eps.real - sq * chi_dot
    u = deps.real + sq * s_dot
    k_omega = abs(deps) ** 2 + w * w * abs(eps) ** 2
    k_y = u * u + v * v
    k_rho = deps.real * u + w * eps.real * v

    n = (1.0 - 2.0 * chi_dot) * eps.real + chi * deps.real - s_dot * sigma.real
    m = w * eps.real ** 2 - deps.real * sigma.real
    s_om = deps.imag + sq * (w * abs(eps) ** 2 - (deps * sigma.conjugate()).real)
    s_y = sq * n + m + w_i * (chi * s_dot - s_val * chi_dot)
    s_rho = deps.imag + w_i * n + 2.0 * sq * m
    return LandauKernels(K_Omega=k_omega, K_Y=k_y, K_rho=k_rho, U=u, V=v,
                         S_Omega=s_om, S_Y=s_y, S_rho=s_rho, N=n, M=m)


def landau_kernels(profile, sol: ComplexSolution, aux: LandauAuxiliary,
                   t: float) -> LandauKernels:
    """All scalar kernels of the Landau energy/moment formulas at time t."""
    if sol.gauge is not GaugeKind.LANDAU:
        raise PreconditionError("Landau kernels need a Landau-gauge solution")
    if aux is None:
        raise PreconditionError("Landau kernels need the auxiliary functions")
    i = sol.index_of(t)
    eps, deps = complex(sol.eps[i]), complex(sol.deps[i])
    j = int(np.argmin(np.abs(aux.t - t)))
    if abs(aux.t[j] - t) > 1e-9 * max(1.0, abs(t)):
        raise PreconditionError(f"t = {t} is not an auxiliary sample time")
    sigma, s_val, chi = complex(aux.sigma[j]), float(aux.S[j]), float(aux.chi[j])
    w = profile.omega(t, GaugeKind.LANDAU)
    w_i = profile.omega_initial(GaugeKind.LANDAU)
    return _kernels_from_state(eps, deps, sigma, s_val, chi, w, w_i)


# the two spec operations share one kernel evaluation
landau_energy_kernels = landau_kernels
landau_magmom_kernels = landau_kernels


def mean_energy_landau(coeffs: ThermalCoefficients, kernels: LandauKernels) -> float:
    """E = (E_i / 2 Omega_i)[K_Omega + (Y/s) K_Y - 2 rho K_rho]."""
    omega_i_cyc = 2.0 * coeffs.omega_i
    e_i = coeffs.initial_energy
    return e_i / (2.0 * omega_i_cyc) * (
        kernels.K_Omega + coeffs.Upsilon / coeffs.s * kernels.K_Y
        - 2.0 * coeffs.rho * kernels.K_rho)


def mean_magmom_landau(coeffs: ThermalCoefficients, kernels: LandauKernels) -> float:
    """M = -(mu_B C / 2 sqrt(Omega_i))[S_Omega + (Y/s) sqrt(Omega_i) S_Y - rho S_rho]."""
    omega_i_cyc = 2.0 * coeffs.omega_i
    sq = math.sqrt(omega_i_cyc)
    return -(MU_B * coeffs.C / (2.0 * sq)) * (
        kernels.S_Omega + coeffs.Upsilon / coeffs.s * sq * kernels.S_Y
        - coeffs.rho * kernels.S_rho)


def landau_asymptotic_energy_ratio(u: AsymptoticCoefficients, u_sigma: complex,
                                   coeffs: ThermalCoefficients,
                                   omega_i_cyc: float) -> float:
    """Settled E_f/E_i from (u+-, u_sigma) in the Landau gauge."""
    up, um = u.u_plus, u.u_minus
    a = up + um.conjugate()
    b = up * u_sigma.conjugate() - um.conjugate() * u_sigma
    im_ba = (b * a.conjugate()).imag
    val = (1.0 + 2.0 * abs(um) ** 2
           + coeffs.Upsilon / coeffs.s * ((abs(a) ** 2 + abs(b) ** 2) / 2.0 + im_ba)
           - coeffs.rho * (abs(a) ** 2 + im_ba))
    return abs(u.omega_f) / omega_i_cyc * val


def landau_settled_state(u: AsymptoticCoefficients, u_sigma: complex,
                         omega_i_cyc: float, t: float, chi_offset: float = 0.0):
    """(eps, eps', sigma, S, chi) of the settled regime at time t.

    Everything is fixed by the three constants (u+, u-, u_sigma) except one
    real integration constant in chi, chi_offset = lim [chi - S'/Omega_f]
    (zero for the sudden jump and the resonance protocol, generally nonzero
    for smooth transitions: it integrates S' dOmega/Omega^2 over the ramp).
    """
    wf = u.omega_f
    awf = abs(wf)
    sq_i = math.sqrt(omega_i_cyc)
    ph = cmath.exp(1j * awf * t)
    eps = (u.u_plus * ph + u.u_minus / ph) / math.sqrt(awf)
    deps = 1j * math.sqrt(awf) * (u.u_plus * ph - u.u_minus / ph)
    sigma = -deps / wf + u_sigma / sq_i
    s_val = 1.0 / wf + (u_sigma.conjugate() * eps).imag / sq_i
    s_dot = (u_sigma.conjugate() * deps).imag / sq_i
    chi = s_dot / wf + chi_offset
    return eps, deps, sigma, s_val, chi


def landau_asymptotic_moment(u: AsymptoticCoefficients, u_sigma: complex,
                             coeffs: ThermalCoefficients, omega_i_cyc: float,
                             t: float, chi_offset: float = 0.0) -> float:
    """Settled-regime M(t) from the asymptotic constants (u+-, u_sigma).

    Substitutes the settled forms of (eps, sigma, S, chi) into the general
    kernel expressions; must agree with the direct trajectory evaluation at
    matched times once the transition has died out.
    """
    eps, deps, sigma, s_val, chi = landau_settled_state(
        u, u_sigma, omega_i_cyc, t, chi_offset)
    kern = _kernels_from_state(eps, deps, sigma, s_val, chi, u.omega_f, omega_i_cyc)
    return mean_magmom_landau(coeffs, kern)


# ---------------------------------------------------------------------------
# asymptotic decomposition (circular)
# ---------------------------------------------------------------------------

def asymptotic_decomposition(u: AsymptoticCoefficients, coeffs: ThermalCoefficients,
                             sign_of_omega_f: float | None = None) -> AsymptoticMoment:
    """Constant part, oscillation amplitude and their ratio R (circular gauge).

    The constant part is the analytic constant of the u-expansion, not a
    numerical time average (the time-average reading breaks down as
    omega_f -> 0, where the oscillation period diverges).
    """
    defect = abs(abs(u.u_plus) ** 2 - abs(u.u_minus) ** 2 - 1.0)
    if defect > 1e-8:
        raise PreconditionError(f"u+- normalization defect {defect:.3e} > 1e-8")
    sgn = sign_of_omega_f if sign_of_omega_f is not None else math.copysign(1.0, u.omega_f)
    up, um = u.u_plus, u.u_minus
    s0y = coeffs.s0_Upsilon
    rho = coeffs.rho
    mbc = MU_B * coeffs.C
    re_upm = (up * um).real

    u_lead, u_sub = (up, um) if sgn > 0 else (um, up)
    mean = -mbc * sgn * (abs(u_lead) ** 2 + s0y * abs(u_sub) ** 2 - 2.0 * rho * re_upm)

    upum = abs(up * um)
    amp_sq = ((1.0 + s0y) ** 2 * upum ** 2
              - 2.0 * rho * (1.0 + s0y) * re_upm * (abs(up) ** 2 + abs(um) ** 2)
              + rho ** 2 * abs(up ** 2 + (um.conjugate()) ** 2) ** 2)
    amplitude = mbc * math.sqrt(max(0.0, amp_sq))
    ratio = amplitude / abs(mean) if mean != 0.0 else math.inf
    energy_ratio = abs(u.omega_f) / coeffs.omega_i * (
        abs(up) ** 2 + s0y * abs(um) ** 2 - 2.0 * rho * re_upm)
    return AsymptoticMoment(mean=mean, amplitude=amplitude, ratio=ratio,
                            energy_ratio=energy_ratio)


# ---------------------------------------------------------------------------
# record assembly
# ---------------------------------------------------------------------------

def observable_record(coeffs: ThermalCoefficients, sol: ComplexSolution, t: float,
                      aux: LandauAuxiliary | None = None,
                      with_variances: bool = True) -> ObservableRecord:
    """Assemble (t, E, M, sigma_E, sigma_M) for one sample time.

    Variances are circular-gauge, s = 1 only (the Landau fluctuation
    formulas are out of scope); None marks them unavailable.
    """
    i = sol.index_of(t)
    if sol.gauge is GaugeKind.CIRCULAR:
        w = sol.profile.omega(t, GaugeKind.CIRCULAR)
        eps, deps = sol.eps[i], sol.deps[i]
        f_plus = w * eps + 1j * deps
        f_minus = w * eps - 1j * deps
        energy = mean_energy_circular(coeffs, f_plus, f_minus, coeffs.omega_i)
        magmom = mean_magmom_circular(coeffs, w, eps)
        var_e = var_m = None
        if with_variances and abs(coeffs.s - 1.0) < 1e-12:
            var_e = energy_variance_circular(coeffs, energy, w)
            try:
                var_m = magmom_variance_circular(coeffs, sol, t, "general_s1")
            except GeometricSingularityError:
                var_m = None
        return ObservableRecord(t=float(t), energy=energy, magmom=magmom,
                                energy_variance=var_e, magmom_variance=var_m)
    kern = landau_kernels(sol.profile, sol, aux, t)
    return ObservableRecord(
        t=float(t), energy=mean_energy_landau(coeffs, kern),
        magmom=mean_magmom_landau(coeffs, kern),
        energy_variance=None, magmom_variance=None)
