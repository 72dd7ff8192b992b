"""solenoid: quantum charged-particle dynamics in time-dependent magnetic fields.

Exact time evolution of the mean energy, mean magnetic moment and their
quantum fluctuations for a spinless charged particle in a planar magnetic
field B(t), under both the circular and the Landau gauge, via the complex
classical oscillator solution and Gaussian covariance propagation.

Natural units hbar = m = c = |e| = 1 (Bohr magneton = 1/2, cyclotron
frequency = twice the Larmor frequency).
"""

from ._backend import backend_name
from .observables import (
    AsymptoticMoment,
    LandauKernels,
    ObservableRecord,
    asymptotic_decomposition,
    gaussian_fourth_moment,
    mean_energy_circular,
    mean_energy_landau,
    mean_magmom_circular,
    mean_magmom_landau,
)
from .oscillator import (
    AsymptoticCoefficients,
    ComplexSolution,
    LandauAuxiliary,
    closed_form_epsilon,
    closed_form_solution,
    extract_u_coefficients,
    f_plus_minus,
    landau_auxiliary,
    solve_numeric,
)
from .profiles import (
    Constant,
    EpsteinEckart,
    ExpSemiAxis,
    FrequencyProfile,
    GaugeKind,
    InverseLinear,
    InverseQuadratic,
    MildSech,
    ParametricResonance,
    Parsed,
    SechBarrier,
    SuddenJump,
    adiabaticity_metrics,
    format_profile,
    omega_at,
    parse_profile,
)
from .scenarios import Scenario, SweepAxis, SweepSpec, run_figure, run_scenario, run_sweep
from .thermal import (
    MU_B,
    ThermalCoefficients,
    ThermalInput,
    confinement_diagnostic,
    derive_thermal_coefficients,
    initial_covariance,
    initial_observables,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
