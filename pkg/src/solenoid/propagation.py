"""Propagators and covariance transport.

Canonical propagator Lambda_Q in the (x, y, p_x, p_y) basis, the geometric
transform U to (x_r, y_r, x_c, y_c), the geometric propagator Lambda_q, and
the congruence transport sigma(t) = Lambda sigma(0) Lambda^T, plus the
explicit circular-gauge covariance blocks that bypass the matrix products.

Covariance matrices are absolute (length^2 in natural units), i.e. they
include the thermal scale G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import profiles as _p
from .errors import GeometricSingularityError, PreconditionError
from .oscillator import ComplexSolution, LandauAuxiliary
from .profiles import FrequencyProfile, GaugeKind
from .thermal import ThermalCoefficients

#: relative guard below which the guiding-center decomposition degenerates
OMEGA_GUARD = 1e-12

_J4 = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])


@dataclass(frozen=True)
class PropagatorMatrix:
    """4x4 propagator with its basis tag."""

    matrix: np.ndarray
    basis: str  # "canonical" (x, y, p_x, p_y) or "geometric" (x_r, y_r, x_c, y_c)
    gauge: GaugeKind
    t: float


@dataclass(frozen=True)
class CovarianceBlocks:
    """2x2 relative / center / cross blocks of the geometric covariance."""

    sigma_r: np.ndarray
    sigma_c: np.ndarray
    sigma_rc: np.ndarray
    t: float

    def assemble(self) -> np.ndarray:
        return np.block([[self.sigma_r, self.sigma_rc],
                         [self.sigma_rc.T, self.sigma_c]])


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def _sample(sol: ComplexSolution, t: float):
    i = sol.index_of(t)
    return sol.eps[i], sol.deps[i], sol.phase[i]


def _guard_omega(profile, gauge, t):
    w = profile.omega(t, gauge)
    w0 = profile.omega_initial(gauge)
    if abs(w) < OMEGA_GUARD * abs(w0):
        raise GeometricSingularityError(
            f"|omega({t})| = {abs(w):.3e} below the geometric guard "
            f"{OMEGA_GUARD:g} * omega_i: the guiding-center decomposition "
            "degenerates; compute observables from F+- instead")
    return w


def u_matrix(omega_larmor: float, alpha: int) -> np.ndarray:
    """Geometric transform q = U Q; r = m*omega with the Larmor frequency."""
    r = omega_larmor
    if r == 0.0:
        raise GeometricSingularityError("U(t) requires omega(t) != 0")
    return 0.5 * np.array([
        [1.0 - alpha, 0.0, 0.0, -1.0 / r],
        [0.0, 1.0 + alpha, 1.0 / r, 0.0],
        [1.0 + alpha, 0.0, 0.0, 1.0 / r],
        [0.0, 1.0 - alpha, -1.0 / r, 0.0],
    ])


def u_matrix_inverse(omega_larmor: float, alpha: int) -> np.ndarray:
    r = omega_larmor
    return np.array([
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
        [0.0, r * (1.0 - alpha), 0.0, -r * (1.0 + alpha)],
        [-r * (1.0 + alpha), 0.0, r * (1.0 - alpha), 0.0],
    ])


# ---------------------------------------------------------------------------
# circular gauge
# ---------------------------------------------------------------------------

def lambda_canonical_circular(profile, sol: ComplexSolution, t: float) -> PropagatorMatrix:
    """Lambda_Q(t): canonical-basis propagator for the circular gauge."""
    if sol.gauge is not GaugeKind.CIRCULAR:
        raise PreconditionError("solution must be circular-gauge")
    eps, deps, phi = _sample(sol, t)
    w_i = profile.omega_initial(GaugeKind.CIRCULAR)
    rot = _rotation(phi)
    sw = math.sqrt(w_i)
    top = np.hstack([eps.real * rot, eps.imag * rot / w_i])
    bot = np.hstack([deps.real * rot, deps.imag * rot / w_i])
    return PropagatorMatrix(sw * np.vstack([top, bot]), "canonical",
                            GaugeKind.CIRCULAR, float(t))


def _circular_cs(profile, sol, t):
    eps, deps, phi = _sample(sol, t)
    w = profile.omega(t, GaugeKind.CIRCULAR)
    a_p = w * eps.real + deps.imag
    a_m = w * eps.real - deps.imag
    b_p = w * eps.imag + deps.real
    b_m = w * eps.imag - deps.real
    cphi, sphi = math.cos(phi), math.sin(phi)
    c1 = a_p * cphi - b_m * sphi
    s1 = a_p * sphi + b_m * cphi
    c2 = a_m * cphi + b_p * sphi
    s2 = a_m * sphi - b_p * cphi
    c3 = a_m * cphi - b_p * sphi
    s3 = a_m * sphi + b_p * cphi
    c4 = a_p * cphi + b_m * sphi
    s4 = a_p * sphi - b_m * cphi
    return (c1, s1), (c2, s2), (c3, s3), (c4, s4), w


def lambda_q_circular(profile, sol: ComplexSolution, t: float) -> PropagatorMatrix:
    """Geometric-basis propagator blocks lambda_j for the circular gauge."""
    if sol.gauge is not GaugeKind.CIRCULAR:
        raise PreconditionError("solution must be circular-gauge")
    _guard_omega(profile, GaugeKind.CIRCULAR, t)
    cs1, cs2, cs3, cs4, w = _circular_cs(profile, sol, t)
    w_i = profile.omega_initial(GaugeKind.CIRCULAR)
    pref = math.sqrt(w_i) / (2.0 * w)

    def block(cs):
        c, s = cs
        return pref * np.array([[c, s], [-s, c]])

    mat = np.block([[block(cs1), block(cs2)], [block(cs3), block(cs4)]])
    return PropagatorMatrix(mat, "geometric", GaugeKind.CIRCULAR, float(t))


def covariance_blocks_circular(coeffs: ThermalCoefficients, sol: ComplexSolution,
                               t: float) -> CovarianceBlocks:
    """Explicit closed-form covariance blocks (circular gauge).

    Dispatches to the isotropic forms (proportional to the unit matrix) when
    s = 1, otherwise assembles the general anisotropic expressions.
    """
    if sol.gauge is not GaugeKind.CIRCULAR:
        raise PreconditionError("solution must be circular-gauge")
    w = _guard_omega(sol.profile, GaugeKind.CIRCULAR, t)
    g, ups, rho, s = coeffs.G, coeffs.Upsilon, coeffs.rho, coeffs.s
    w_i = coeffs.omega_i
    pref = g * w_i / (4.0 * w * w)
    i = sol.index_of(t)
    eps, deps = sol.eps[i], sol.deps[i]

    if abs(s - 1.0) < 1e-14:
        f_p = w * eps + 1j * deps
        f_m = w * eps - 1j * deps
        re_fmfp = (f_m * f_p).real
        sr = pref * (abs(f_m) ** 2 + ups * abs(f_p) ** 2 - 2.0 * rho * re_fmfp) * np.eye(2)
        sc = pref * (abs(f_p) ** 2 + ups * abs(f_m) ** 2 - 2.0 * rho * re_fmfp) * np.eye(2)
        diag = (1.0 + ups) * (f_m * np.conj(f_p)).real \
            - rho * (f_m ** 2 + f_p ** 2).real
        off = -2.0 * w * (1.0 + ups) * (deps * np.conj(eps)).real
        src = pref * np.array([[diag, off], [-off, diag]])
        return CovarianceBlocks(sr, sc, src, float(t))

    cs1, cs2, cs3, cs4, _ = _circular_cs(sol.profile, sol, t)
    c1, s1 = cs1
    c2, s2 = cs2
    c3, s3 = cs3
    c4, s4 = cs4
    sinv = 1.0 / s

    def diag_block(ca, sa, cb, sb):
        cross = ca * cb + sa * sb
        m11 = ca * ca + sa * sa + ups * (s * cb * cb + sinv * sb * sb) - 2.0 * rho * cross
        m22 = ca * ca + sa * sa + ups * (s * sb * sb + sinv * cb * cb) - 2.0 * rho * cross
        m12 = ups * sb * cb * (sinv - s)
        return pref * np.array([[m11, m12], [m12, m22]])

    sr = diag_block(c1, s1, c2, s2)
    sc = diag_block(c3, s3, c4, s4)

    sig0 = np.array([[c1 * c3 + s1 * s3, s1 * c3 - c1 * s3],
                     [c1 * s3 - s1 * c3, c1 * c3 + s1 * s3]])
    sig_u = np.array([[s * c2 * c4 + sinv * s2 * s4, sinv * s2 * c4 - s * c2 * s4],
                      [sinv * c2 * s4 - s * s2 * c4, s * s2 * s4 + sinv * c2 * c4]])
    d_rho = c1 * c4 + s1 * s4 + c2 * c3 + s2 * s3
    o_rho = s1 * c4 + s2 * c3 - c1 * s4 - c2 * s3
    sig_rho = np.array([[d_rho, o_rho], [-o_rho, d_rho]])
    src = pref * (sig0 + ups * sig_u - rho * sig_rho)
    return CovarianceBlocks(sr, sc, src, float(t))


# ---------------------------------------------------------------------------
# Landau gauge
# ---------------------------------------------------------------------------

def _landau_state(profile, sol, aux, t):
    i = sol.index_of(t)
    eps, deps = sol.eps[i], sol.deps[i]
    j = int(np.argmin(np.abs(aux.t - t)))
    if abs(aux.t[j] - t) > 1e-9 * max(1.0, abs(t)):
        raise PreconditionError(f"t = {t} is not a sample time of the auxiliary")
    sigma, s_val, chi = aux.sigma[j], aux.S[j], aux.chi[j]
    w = profile.omega(t, GaugeKind.LANDAU)
    s_dot = (deps * np.conj(sigma)).imag
    chi_dot = 1.0 - w * s_val
    return eps, deps, sigma, s_val, chi, s_dot, chi_dot, w


def lambda_canonical_landau(profile, sol: ComplexSolution, aux: LandauAuxiliary,
                            t: float) -> PropagatorMatrix:
    """Lambda_Q(t) for the Landau gauge (p_x is conserved)."""
    if sol.gauge is not GaugeKind.LANDAU:
        raise PreconditionError("solution must be Landau-gauge")
    if aux is None:
        raise PreconditionError("Landau propagators need the auxiliary functions")
    eps, deps, sigma, s_val, chi, s_dot, chi_dot, w = _landau_state(profile, sol, aux, t)
    w_i = profile.omega_initial(GaugeKind.LANDAU)
    sq = math.sqrt(w_i)
    mat = np.array([
        [1.0, sq * sigma.real, chi, sigma.imag / sq],
        [0.0, sq * eps.real, -s_val, eps.imag / sq],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, sq * deps.real, -s_dot, deps.imag / sq],
    ])
    return PropagatorMatrix(mat, "canonical", GaugeKind.LANDAU, float(t))


def lambda_q_landau(profile, sol: ComplexSolution, aux: LandauAuxiliary,
                    t: float) -> PropagatorMatrix:
    """Geometric-basis propagator blocks for the Landau gauge."""
    if sol.gauge is not GaugeKind.LANDAU:
        raise PreconditionError("solution must be Landau-gauge")
    if aux is None:
        raise PreconditionError("Landau propagators need the auxiliary functions")
    _guard_omega(profile, GaugeKind.LANDAU, t)
    eps, deps, sigma, s_val, chi, s_dot, chi_dot, w = _landau_state(profile, sol, aux, t)
    w_i = profile.omega_initial(GaugeKind.LANDAU)
    sq = math.sqrt(w_i)

    lam1 = (sq / w) * np.array([[deps.imag, -deps.real],
                                [-w * eps.imag, w * eps.real]])
    lam2 = (sq / w) * np.array([[0.0, -(deps.real + sq * s_dot)],
                                [0.0, w * eps.real - sq * chi_dot]])
    om_sig = w * sigma + deps
    lam3 = np.array([[1.0 - (sq / w) * om_sig.imag, (sq / w) * om_sig.real],
                     [0.0, 0.0]])
    lam4 = np.array([[1.0, sq * (sigma + deps / w).real - w_i * (chi - s_dot / w)],
                     [0.0, w_i / w]])
    mat = np.block([[lam1, lam2], [lam3, lam4]])
    return PropagatorMatrix(mat, "geometric", GaugeKind.LANDAU, float(t))


# ---------------------------------------------------------------------------
# transport and diagnostics
# ---------------------------------------------------------------------------

def propagate_covariance(sigma0: np.ndarray, lam: PropagatorMatrix) -> np.ndarray:
    """sigma(t) = Lambda sigma(0) Lambda^T, symmetrized against roundoff."""
    sigma0 = np.asarray(sigma0, dtype=float)
    out = lam.matrix @ sigma0 @ lam.matrix.T
    sym = 0.5 * (out + out.T)
    resid = float(np.max(np.abs(out - out.T)))
    if resid > 1e-12 * max(1.0, float(np.max(np.abs(sym)))):
        import warnings

        warnings.warn(f"symmetrization residual {resid:.3e} after congruence "
                      "transform", stacklevel=2)
    return sym


def symplectic_residual(lam: PropagatorMatrix) -> float:
    """max |Lambda^T J Lambda - J| in the canonical basis."""
    if lam.basis != "canonical":
        raise PreconditionError("symplectic check applies to the canonical basis")
    m = lam.matrix
    return float(np.max(np.abs(m.T @ _J4 @ m - _J4)))


def lambda_q_from_canonical(profile, gauge, lam_canonical: PropagatorMatrix,
                            t: float, t_start: float) -> PropagatorMatrix:
    """Lambda_q = U(t) Lambda_Q U(0)^{-1}; cross-check path for the blocks."""
    alpha = 0 if gauge is GaugeKind.CIRCULAR else 1
    w_t = profile.omega_larmor(t)
    w_0 = profile.omega_larmor(t_start)
    mat = u_matrix(w_t, alpha) @ lam_canonical.matrix @ u_matrix_inverse(w_0, alpha)
    return PropagatorMatrix(mat, "geometric", gauge, float(t))


def mean_angular_momentum(cov: np.ndarray, omega_cyclotron: float) -> float:
    """<L> = (m Omega / 2)(Tr sigma_c - Tr sigma_r): conserved when alpha = 0."""
    cov = np.asarray(cov)
    tr_r = cov[0, 0] + cov[1, 1]
    tr_c = cov[2, 2] + cov[3, 3]
    return 0.5 * omega_cyclotron * (tr_c - tr_r)
