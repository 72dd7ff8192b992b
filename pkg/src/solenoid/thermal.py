"""Equilibrium initial state: scalar coefficients and 4x4 covariance matrix.

Natural units hbar = m = c = |e| = 1 throughout the package, so the Bohr
magneton is 1/2 and the cyclotron frequency is twice the Larmor one.  Zero
temperature is encoded as beta = math.inf rather than a huge float, which
keeps coth/tanh away from their overflow regions.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

#: Bohr magneton in natural units
MU_B = 0.5

#: coordinate order of every 4x4 covariance/propagator matrix in the package
COORD_LABELS = ("x_r", "y_r", "x_c", "y_c")


@dataclass(frozen=True)
class ThermalInput:
    """Physical parameters of the initial equilibrium state.

    beta is the inverse temperature (math.inf = zero temperature), nu the
    effective frequency of the weak confining potential, s its anisotropy
    factor and omega_i the initial Larmor frequency.
    """

    beta: float
    nu: float
    s: float
    omega_i: float

    def __post_init__(self):
        if not (self.omega_i > 0.0 and math.isfinite(self.omega_i)):
            raise InvalidInputError(f"omega_i must be positive, got {self.omega_i!r}")
        if not (self.nu > 0.0 and math.isfinite(self.nu)):
            raise InvalidInputError(f"nu must be positive, got {self.nu!r}")
        if not (self.s > 0.0 and math.isfinite(self.s)):
            raise InvalidInputError(f"s must be positive, got {self.s!r}")
        if not (self.beta > 0.0):
            raise InvalidInputError(
                f"beta must be positive (math.inf = zero temperature), got {self.beta!r}")
        if self.nu > 0.1 * self.omega_i:
            warnings.warn(
                f"trap frequency nu = {self.nu} is not small against omega_i = "
                f"{self.omega_i}; the equilibrium covariance assumes nu << omega_i",
                stacklevel=3)


@dataclass(frozen=True)
class ThermalCoefficients:
    """Derived scalars seeding the initial covariance.

    G is the covariance scale C/(4 omega_i); C = coth(omega_i beta) >= 1;
    rho = tanh(omega_i beta)/(omega_i beta) in [0, 1];
    Upsilon = tanh(omega_i beta)/tanh(beta nu) >= 1; s0 = (s + 1/s)/2.
    """

    G: float
    C: float
    rho: float
    Upsilon: float
    s: float
    s0: float
    omega_i: float

    @property
    def initial_energy(self) -> float:
        return self.omega_i * self.C

    @property
    def s0_Upsilon(self) -> float:
        return self.s0 * self.Upsilon

    def is_zero_temperature(self, tol: float = 0.0) -> bool:
        return self.rho <= tol and abs(self.C - 1.0) <= tol and abs(self.Upsilon - 1.0) <= tol


def derive_thermal_coefficients(inp: ThermalInput) -> ThermalCoefficients:
    """Map (beta, nu, s, omega_i) to the covariance coefficients.

    At beta = inf the indeterminate forms are bypassed and
    (C, rho, Upsilon) = (1, 0, 1) exactly.
    """
    s0 = 0.5 * (inp.s + 1.0 / inp.s)
    if math.isinf(inp.beta):
        c = 1.0
        rho = 0.0
        ups = 1.0
    else:
        x = inp.omega_i * inp.beta
        tx = math.tanh(x)
        c = 1.0 / tx
        rho = tx / x
        ups = tx / math.tanh(inp.beta * inp.nu)
    g = c / (4.0 * inp.omega_i)
    return ThermalCoefficients(G=g, C=c, rho=rho, Upsilon=ups, s=inp.s, s0=s0,
                               omega_i=inp.omega_i)


def initial_covariance(coeffs: ThermalCoefficients) -> np.ndarray:
    """Equilibrium 4x4 covariance in the (x_r, y_r, x_c, y_c) basis."""
    g, rho, ups, s = coeffs.G, coeffs.rho, coeffs.Upsilon, coeffs.s
    return g * np.array([
        [1.0, 0.0, -rho, 0.0],
        [0.0, 1.0, 0.0, -rho],
        [-rho, 0.0, s * ups, 0.0],
        [0.0, -rho, 0.0, ups / s],
    ])


def initial_observables(coeffs: ThermalCoefficients, omega_i: float):
    """(mean energy, mean magnetic moment) of the equilibrium state.

    The magnetic moment is the Landau-Darwin value mu_B C (rho - 1) <= 0.
    """
    if not omega_i > 0.0:
        raise InvalidInputError("omega_i must be positive")
    energy = omega_i * coeffs.C
    magmom = MU_B * coeffs.C * (coeffs.rho - 1.0)
    return energy, magmom


def confinement_diagnostic(coeffs: ThermalCoefficients, radius: float):
    """Check 2G(1 + s0 Upsilon) << R^2 with a two-decade margin.

    Returns (ok, ratio) where ratio = 2G(1 + s0 Upsilon)/R^2 and ok means
    ratio < 1e-2.  An applicability remark, never an error: a warning is
    emitted when the margin is violated.
    """
    if not radius > 0.0:
        raise InvalidInputError("container radius must be positive")
    spread = 2.0 * coeffs.G * (1.0 + coeffs.s0 * coeffs.Upsilon)
    ratio = spread / radius ** 2
    ok = ratio < 1e-2
    if not ok:
        warnings.warn(
            f"thermal spread 2G(1+s0*Upsilon) = {spread:.6g} is not small against "
            f"R^2 = {radius ** 2:.6g} (ratio {ratio:.3g}); results assume a much "
            "larger container", stacklevel=2)
    return ok, ratio


def validate_covariance(mat: np.ndarray, tol: float = 1e-10) -> None:
    """Raise unless mat is a symmetric 4x4 with positive diagonal."""
    mat = np.asarray(mat)
    if mat.shape != (4, 4):
        raise InvalidInputError(f"covariance must be 4x4, got {mat.shape}")
    if not np.allclose(mat, mat.T, rtol=0.0, atol=tol * max(1.0, float(np.abs(mat).max()))):
        raise InvalidInputError("covariance must be symmetric")
    if np.any(np.diag(mat) <= 0.0):
        raise InvalidInputError("covariance diagonal entries must be positive")
