"""Time-dependent Larmor-frequency laws and the profile mini-language.

Every profile stores its parameters in the Larmor convention; evaluation
under a gauge applies the cyclotron doubling Omega(t) = 2*omega(t).  The one
deliberate exception is the parametric-resonance law, whose modulation must
sit at twice the *gauge* frequency to be resonant, so its Landau form is
Omega_i[1 + 2 gamma cos(2 Omega_i t)] rather than twice the circular law.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

from scipy.integrate import quad

from .errors import InvalidInputError, ProfileSyntaxError, SingularPointError


class GaugeKind(Enum):
    """Gauge choice; fixes which frequency drives the oscillator equation."""

    CIRCULAR = "circular"
    LANDAU = "landau"

    @property
    def factor(self) -> float:
        return 1.0 if self is GaugeKind.CIRCULAR else 2.0


_GAMMA_WARN = 0.05
_GAMMA_MAX = 0.2


def _require_positive(name, value):
    if not (value > 0.0) or not math.isfinite(value):
        raise InvalidInputError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class FrequencyProfile:
    """Base class of the profile tagged union."""

    #: kernel variant id; None routes to the Python kernel with a callable
    kernel_id = None

    # -- Larmor-convention law and derivatives --------------------------------

    def omega_larmor(self, t: float) -> float:
        raise NotImplementedError

    def domega_larmor(self, t: float) -> float:
        raise NotImplementedError

    def d2omega_larmor(self, t: float) -> float:
        raise NotImplementedError

    # -- gauge-aware views -----------------------------------------------------

    def omega(self, t: float, gauge: GaugeKind) -> float:
        return gauge.factor * self.omega_larmor(t)

    def domega(self, t: float, gauge: GaugeKind) -> float:
        return gauge.factor * self.domega_larmor(t)

    def d2omega(self, t: float, gauge: GaugeKind) -> float:
        return gauge.factor * self.d2omega_larmor(t)

    def omega_initial(self, gauge: GaugeKind) -> float:
        """Frequency at the canonical start time."""
        return self.omega(self.t_start_default(), gauge)

    def omega_final_larmor(self):
        """Larmor t->+inf limit, or None if the law has no settled value."""
        return None

    # -- structure -------------------------------------------------------------

    def breakpoints(self):
        """Times where the law (or a derivative) is discontinuous."""
        return ()

    def t_start_default(self) -> float:
        """Canonical time where the initial conditions are imposed."""
        return 0.0

    def kernel_args(self, gauge: GaugeKind):
        """(pid, p0, p1, p2, p3, factor) for the integration kernels."""
        raise NotImplementedError

    def phase_larmor(self, t: float, t_start: float):
        """Analytic int_{t_start}^t omega dtau, or None when not elementary."""
        return None

    def label(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(FrequencyProfile):
    omega_i: float

    kernel_id = 0

    def __post_init__(self):
        _require_positive("omega_i", self.omega_i)

    def omega_larmor(self, t):
        return self.omega_i

    def domega_larmor(self, t):
        return 0.0

    def d2omega_larmor(self, t):
        return 0.0

    def omega_final_larmor(self):
        return self.omega_i

    def kernel_args(self, gauge):
        return (0, self.omega_i, 0.0, 0.0, 0.0, gauge.factor)

    def phase_larmor(self, t, t_start):
        return self.omega_i * (t - t_start)

    def label(self):
        return f"constant(omega_i={self.omega_i!r})"


@dataclass(frozen=True)
class SuddenJump(FrequencyProfile):
    """Instantaneous jump omega_i -> omega_f at t = 0."""

    omega_i: float
    omega_f: float

    kernel_id = 1

    def __post_init__(self):
        _require_positive("omega_i", self.omega_i)
        if not math.isfinite(self.omega_f):
            raise InvalidInputError("omega_f must be finite")

    def omega_larmor(self, t):
        return self.omega_i if t <= 0.0 else self.omega_f

    def domega_larmor(self, t):
        return 0.0

    def d2omega_larmor(self, t):
        return 0.0

    def omega_final_larmor(self):
        return self.omega_f

    def breakpoints(self):
        return (0.0,)

    def kernel_args(self, gauge):
        f = gauge.factor
        return (1, self.omega_i, self.omega_f, 0.0, 0.0, f)

    def phase_larmor(self, t, t_start):
        return self.omega_i * (min(t, 0.0) - t_start) + self.omega_f * max(t, 0.0)

    def label(self):
        return f"sudden_jump(omega_i={self.omega_i!r}, omega_f={self.omega_f!r})"


@dataclass(frozen=True)
class InverseLinear(FrequencyProfile):
    """omega_0 / (1 + t/t_0) for t >= 0; frozen at omega_0 before."""

    omega_0: float
    t_0: float

    kernel_id = 2

    def __post_init__(self):
        _require_positive("omega0", self.omega_0)
        _require_positive("t0", self.t_0)

    @property
    def u(self) -> float:
        return self.omega_0 * self.t_0

    def omega_larmor(self, t):
        return self.omega_0 if t <= 0.0 else self.omega_0 / (1.0 + t / self.t_0)

    def domega_larmor(self, t):
        if t <= 0.0:
            return 0.0
        tau = 1.0 + t / self.t_0
        return -self.omega_0 / (self.t_0 * tau * tau)

    def d2omega_larmor(self, t):
        if t <= 0.0:
            return 0.0
        tau = 1.0 + t / self.t_0
        return 2.0 * self.omega_0 / (self.t_0 ** 2 * tau ** 3)

    def breakpoints(self):
        return (0.0,)

    def kernel_args(self, gauge):
        return (2, self.omega_0, self.t_0, 0.0, 0.0, gauge.factor)

    def phase_larmor(self, t, t_start):
        pre = self.omega_0 * (min(t, 0.0) - t_start)
        if t <= 0.0:
            return pre
        return pre + self.u * math.log(1.0 + t / self.t_0)

    def label(self):
        return f"inverse_linear(omega0={self.omega_0!r}, t0={self.t_0!r})"


@dataclass(frozen=True)
class InverseQuadratic(FrequencyProfile):
    """omega_0 / (1 + t/t_0)^2 for t >= 0; the adiabatic form is exact here."""

    omega_0: float
    t_0: float

    kernel_id = 3

    def __post_init__(self):
        _require_positive("omega0", self.omega_0)
        _require_positive("t0", self.t_0)

    @property
    def u(self) -> float:
        return self.omega_0 * self.t_0

    def omega_larmor(self, t):
        if t <= 0.0:
            return self.omega_0
        tau = 1.0 + t / self.t_0
        return self.omega_0 / (tau * tau)

    def domega_larmor(self, t):
        if t <= 0.0:
            return 0.0
        tau = 1.0 + t / self.t_0
        return -2.0 * self.omega_0 / (self.t_0 * tau ** 3)

    def d2omega_larmor(self, t):
        if t <= 0.0:
            return 0.0
        tau = 1.0 + t / self.t_0
        return 6.0 * self.omega_0 / (self.t_0 ** 2 * tau ** 4)

    def omega_final_larmor(self):
        return 0.0

    def breakpoints(self):
        return (0.0,)

    def kernel_args(self, gauge):
        return (3, self.omega_0, self.t_0, 0.0, 0.0, gauge.factor)

    def phase_larmor(self, t, t_start):
        pre = self.omega_0 * (min(t, 0.0) - t_start)
        if t <= 0.0:
            return pre
        tau = 1.0 + t / self.t_0
        return pre + self.u * (1.0 - 1.0 / tau)

    def label(self):
        return f"inverse_quadratic(omega0={self.omega_0!r}, t0={self.t_0!r})"


@dataclass(frozen=True)
class SechBarrier(FrequencyProfile):
    """omega^2(t) = omega_inf^2 + 2 omega_0^2 / cosh^2(omega_0 t), full axis.

    The peak sits at t = 0 where omega(0) = sqrt(omega_inf^2 + 2 omega_0^2);
    initial conditions are imposed there (the derivative vanishes).
    """

    omega_inf: float
    omega_0: float

    kernel_id = 4

    def __post_init__(self):
        _require_positive("omega0", self.omega_0)
        if self.omega_inf < 0.0 or not math.isfinite(self.omega_inf):
            raise InvalidInputError("omega (asymptotic value) must be >= 0")

    @property
    def omega_peak(self) -> float:
        return math.sqrt(self.omega_inf ** 2 + 2.0 * self.omega_0 ** 2)

    def _w_terms(self, t):
        x = self.omega_0 * t
        sech = 1.0 / math.cosh(x)
        tanh = math.tanh(x)
        w2 = self.omega_inf ** 2 + 2.0 * self.omega_0 ** 2 * sech * sech
        dw2 = -4.0 * self.omega_0 ** 3 * sech * sech * tanh
        d2w2 = -4.0 * self.omega_0 ** 4 * sech * sech * (sech * sech - 2.0 * tanh * tanh)
        return w2, dw2, d2w2

    def omega_larmor(self, t):
        w2, _, _ = self._w_terms(t)
        return math.sqrt(w2)

    def domega_larmor(self, t):
        w2, dw2, _ = self._w_terms(t)
        return dw2 / (2.0 * math.sqrt(w2))

    def d2omega_larmor(self, t):
        w2, dw2, d2w2 = self._w_terms(t)
        w = math.sqrt(w2)
        return d2w2 / (2.0 * w) - dw2 * dw2 / (4.0 * w2 * w)

    def omega_final_larmor(self):
        return self.omega_inf

    def kernel_args(self, gauge):
        return (4, self.omega_inf, self.omega_0, 0.0, 0.0, gauge.factor)

    def label(self):
        return f"sech_barrier(omega={self.omega_inf!r}, omega0={self.omega_0!r})"


@dataclass(frozen=True)
class ExpSemiAxis(FrequencyProfile):
    """omega_f + (omega_i - omega_f) exp(-kappa t) for t >= 0."""

    omega_i: float
    omega_f: float
    kappa: float

    kernel_id = 5

    def __post_init__(self):
        _require_positive("omega_i", self.omega_i)
        _require_positive("kappa", self.kappa)
        if not math.isfinite(self.omega_f):
            raise InvalidInputError("omega_f must be finite")

    def omega_larmor(self, t):
        if t <= 0.0:
            return self.omega_i
        return self.omega_f + (self.omega_i - self.omega_f) * math.exp(-self.kappa * t)

    def domega_larmor(self, t):
        if t <= 0.0:
            return 0.0
        return -self.kappa * (self.omega_i - self.omega_f) * math.exp(-self.kappa * t)

    def d2omega_larmor(self, t):
        if t <= 0.0:
            return 0.0
        return self.kappa ** 2 * (self.omega_i - self.omega_f) * math.exp(-self.kappa * t)

    def omega_final_larmor(self):
        return self.omega_f

    def breakpoints(self):
        return (0.0,)

    def kernel_args(self, gauge):
        return (5, self.omega_i, self.omega_f, self.kappa, 0.0, gauge.factor)

    def phase_larmor(self, t, t_start):
        pre = self.omega_i * (min(t, 0.0) - t_start)
        if t <= 0.0:
            return pre
        return pre + self.omega_f * t + (self.omega_i - self.omega_f) * (
            -math.expm1(-self.kappa * t)) / self.kappa

    def label(self):
        return (f"exp_semi_axis(omega_i={self.omega_i!r}, "
                f"omega_f={self.omega_f!r}, kappa={self.kappa!r})")


def _softstep_antideriv(kappa, s):
    """Antiderivative of 1/(1 + e^(kappa s)), zero limit at s -> +inf."""
    x = kappa * s
    if x > 30.0:
        return -math.exp(-x) / kappa
    return s - math.log1p(math.exp(x)) / kappa


@dataclass(frozen=True)
class EpsteinEckart(FrequencyProfile):
    """Smoothed step (omega_f e^(kt) + omega_i)/(e^(kt) + 1) on the full axis."""

    omega_i: float
    omega_f: float
    kappa: float

    kernel_id = 6

    def __post_init__(self):
        _require_positive("omega_i", self.omega_i)
        _require_positive("kappa", self.kappa)
        if not math.isfinite(self.omega_f):
            raise InvalidInputError("omega_f must be finite")

    def _p(self, t):
        x = self.kappa * t
        if x > 0.0:
            e = math.exp(-x)
            return e / (1.0 + e)
        return 1.0 / (1.0 + math.exp(x))

    def omega_larmor(self, t):
        return self.omega_f + (self.omega_i - self.omega_f) * self._p(t)

    def domega_larmor(self, t):
        p = self._p(t)
        return -self.kappa * (self.omega_i - self.omega_f) * p * (1.0 - p)

    def d2omega_larmor(self, t):
        p = self._p(t)
        return self.kappa ** 2 * (self.omega_i - self.omega_f) * p * (1.0 - p) * (1.0 - 2.0 * p)

    def omega_final_larmor(self):
        return self.omega_f

    def t_start_default(self):
        # 40 e-foldings before the transition midpoint; the law and its
        # derivatives match the t -> -inf limit to ~1e-17 there
        return -40.0 / self.kappa

    def kernel_args(self, gauge):
        return (6, self.omega_i, self.omega_f, self.kappa, 0.0, gauge.factor)

    def phase_larmor(self, t, t_start):
        d = self.omega_i - self.omega_f
        return self.omega_f * (t - t_start) + d * (
            _softstep_antideriv(self.kappa, t) - _softstep_antideriv(self.kappa, t_start))

    def label(self):
        return (f"epstein_eckart(omega_i={self.omega_i!r}, "
                f"omega_f={self.omega_f!r}, kappa={self.kappa!r})")


@dataclass(frozen=True)
class MildSech(FrequencyProfile):
    """omega_i / cosh(kappa t); smooth switch-on at t = 0 (zero derivative)."""

    omega_i: float
    kappa: float

    kernel_id = 7

    def __post_init__(self):
        _require_positive("omega_i", self.omega_i)
        _require_positive("kappa", self.kappa)

    def omega_larmor(self, t):
        return self.omega_i / math.cosh(self.kappa * t)

    def domega_larmor(self, t):
        return -self.kappa * self.omega_larmor(t) * math.tanh(self.kappa * t)

    def d2omega_larmor(self, t):
        x = self.kappa * t
        sech = 1.0 / math.cosh(x)
        tanh = math.tanh(x)
        return self.kappa ** 2 * self.omega_i * sech * (tanh * tanh - sech * sech)

    def omega_final_larmor(self):
        return 0.0

    def kernel_args(self, gauge):
        return (7, self.omega_i, self.kappa, 0.0, 0.0, gauge.factor)

    def phase_larmor(self, t, t_start):
        # int sech = gudermannian
        gd = lambda x: math.atan(math.sinh(x))
        return self.omega_i / self.kappa * (gd(self.kappa * t) - gd(self.kappa * t_start))

    def label(self):
        return f"mild_sech(omega_i={self.omega_i!r}, kappa={self.kappa!r})"


@dataclass(frozen=True)
class ParametricResonance(FrequencyProfile):
    """Base frequency modulated at twice itself: w_a[1 + 2 gamma cos(2 w_a t)].

    w_a is the gauge frequency (omega_i for circular, 2 omega_i for Landau);
    the modulation frequency follows the gauge so that the drive stays
    resonant in both cases.
    """

    omega_i: float
    gamma: float

    kernel_id = 8

    def __post_init__(self):
        _require_positive("omega_i", self.omega_i)
        if abs(self.gamma) >= _GAMMA_MAX:
            raise InvalidInputError(
                f"|gamma| must be < {_GAMMA_MAX} (two-timescale solution needs |gamma| << 1)")
        if abs(self.gamma) > _GAMMA_WARN:
            warnings.warn(
                f"parametric resonance with |gamma| = {abs(self.gamma)} > {_GAMMA_WARN}: "
                "the slow-envelope formulas degrade", stacklevel=3)

    def _base(self, gauge):
        return gauge.factor * self.omega_i

    def omega_larmor(self, t):
        wb = self.omega_i
        return wb * (1.0 + 2.0 * self.gamma * math.cos(2.0 * wb * t))

    def domega_larmor(self, t):
        wb = self.omega_i
        return -4.0 * self.gamma * wb * wb * math.sin(2.0 * wb * t)

    def d2omega_larmor(self, t):
        wb = self.omega_i
        return -8.0 * self.gamma * wb ** 3 * math.cos(2.0 * wb * t)

    def omega(self, t, gauge):
        wb = self._base(gauge)
        return wb * (1.0 + 2.0 * self.gamma * math.cos(2.0 * wb * t))

    def domega(self, t, gauge):
        wb = self._base(gauge)
        return -4.0 * self.gamma * wb * wb * math.sin(2.0 * wb * t)

    def d2omega(self, t, gauge):
        wb = self._base(gauge)
        return -8.0 * self.gamma * wb ** 3 * math.cos(2.0 * wb * t)

    def kernel_args(self, gauge):
        # modulation is tied to the gauge frequency: fold the factor into p0
        return (8, self._base(gauge), self.gamma, 0.0, 0.0, 1.0)

    def phase_larmor(self, t, t_start):
        wb = self.omega_i
        f = lambda x: wb * x + self.gamma * math.sin(2.0 * wb * x)
        return f(t) - f(t_start)

    def phase_gauge(self, t, t_start, gauge):
        wb = self._base(gauge)
        f = lambda x: wb * x + self.gamma * math.sin(2.0 * wb * x)
        return f(t) - f(t_start)

    def label(self):
        return f"parametric_resonance(omega_i={self.omega_i!r}, gamma={self.gamma!r})"


@dataclass(frozen=True)
class Parsed(FrequencyProfile):
    """omega(t) = omega_i * f(t) with f given in the expression mini-language."""

    omega_i: float
    expression: str

    kernel_id = None

    def __post_init__(self):
        _require_positive("omega_i", self.omega_i)
        ast = _parse_expression(self.expression, 0)
        object.__setattr__(self, "_ast", ast)
        probe = self.omega_larmor(0.0)
        if not math.isfinite(probe):
            raise ProfileSyntaxError(
                f"expression evaluates to a non-finite value at t=0: {probe!r}", 0)

    def omega_larmor(self, t):
        return self.omega_i * _eval_ast(self._ast, t)

    def domega_larmor(self, t):
        h = 1e-5 * max(1.0, abs(t))
        return (self.omega_larmor(t + h) - self.omega_larmor(t - h)) / (2.0 * h)

    def d2omega_larmor(self, t):
        h = 1e-5 * max(1.0, abs(t))
        return (self.omega_larmor(t + h) - 2.0 * self.omega_larmor(t)
                + self.omega_larmor(t - h)) / (h * h)

    def kernel_args(self, gauge):
        raise NotImplementedError("parsed profiles run on the Python kernel")

    def freq_callable(self, gauge):
        factor = gauge.factor
        return lambda t: factor * self.omega_larmor(t)

    def label(self):
        return f'expr(omega_i={self.omega_i!r}, "{self.expression}")'


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def omega_at(profile: FrequencyProfile, gauge: GaugeKind, t: float) -> float:
    """Oscillator frequency of `profile` under `gauge` at time t."""
    return profile.omega(t, gauge)


def adiabaticity_metrics(profile: FrequencyProfile, gauge: GaugeKind, t: float):
    """(|dw/dt| / w^2, |d2w/dt2| / w^3) for the gauge frequency at t."""
    w = profile.omega(t, gauge)
    if w == 0.0:
        raise SingularPointError(
            f"omega({t}) = 0 for {profile.label()}: adiabaticity metrics diverge "
            "at the zero crossing")
    dw = profile.domega(t, gauge)
    d2w = profile.d2omega(t, gauge)
    return abs(dw) / w ** 2, abs(d2w) / abs(w) ** 3


def phase(profile: FrequencyProfile, gauge: GaugeKind, t: float, t_start: float) -> float:
    """Rotation phase int_{t_start}^t omega_gauge dtau."""
    if isinstance(profile, ParametricResonance):
        return profile.phase_gauge(t, t_start, gauge)
    p = profile.phase_larmor(t, t_start)
    if p is not None:
        return gauge.factor * p
    val, _ = quad(lambda x: profile.omega(x, gauge), t_start, t, limit=400)
    return val


# ---------------------------------------------------------------------------
# mini-language
# ---------------------------------------------------------------------------

_VARIANTS = {
    "constant": (Constant, ("omega_i",)),
    "sudden_jump": (SuddenJump, ("omega_i", "omega_f")),
    "inverse_linear": (InverseLinear, ("omega0", "t0")),
    "inverse_quadratic": (InverseQuadratic, ("omega0", "t0")),
    "sech_barrier": (SechBarrier, ("omega", "omega0")),
    "exp_semi_axis": (ExpSemiAxis, ("omega_i", "omega_f", "kappa")),
    "epstein_eckart": (EpsteinEckart, ("omega_i", "omega_f", "kappa")),
    "mild_sech": (MildSech, ("omega_i", "kappa")),
    "parametric_resonance": (ParametricResonance, ("omega_i", "gamma")),
}

_FIELD_BY_KW = {
    "omega_i": "omega_i", "omega_f": "omega_f", "omega0": "omega_0",
    "t0": "t_0", "kappa": "kappa", "gamma": "gamma", "omega": "omega_inf",
}


def parse_profile(text: str) -> FrequencyProfile:
    """Parse mini-language text like ``inverse_linear(omega0=1, t0=0.5)``.

    Errors carry the byte offset of the failure in ``.offset``.
    """
    s = text.strip()
    base = text.index(s[0]) if s else 0
    i = 0
    while i < len(s) and (s[i].isalnum() or s[i] == "_"):
        i += 1
    name = s[:i]
    if not name:
        raise ProfileSyntaxError("expected a profile name", base)
    if i >= len(s) or s[i] != "(":
        raise ProfileSyntaxError("expected '(' after profile name", base + i)
    if not s.endswith(")"):
        raise ProfileSyntaxError("expected ')' at end of profile", base + len(s))
    body = s[i + 1:-1]
    body_off = base + i + 1

    if name == "expr":
        return _parse_expr_variant(body, body_off)
    if name not in _VARIANTS:
        raise ProfileSyntaxError(f"unknown profile variant {name!r}", base)

    cls, kwnames = _VARIANTS[name]
    kwargs = {}
    for part, off in _split_args(body, body_off):
        if "=" not in part:
            raise ProfileSyntaxError("expected keyword=value argument", off)
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in kwnames:
            raise ProfileSyntaxError(
                f"unknown argument {key!r} for {name} (expected {', '.join(kwnames)})", off)
        try:
            num = float(val.strip())
        except ValueError:
            raise ProfileSyntaxError(f"bad numeric value {val.strip()!r}", off) from None
        kwargs[key] = num
    missing = [k for k in kwnames if k not in kwargs]
    if missing:
        raise ProfileSyntaxError(f"missing argument(s) {', '.join(missing)} for {name}", base)

    field_kwargs = {_FIELD_BY_KW[key]: value for key, value in kwargs.items()}
    return cls(**field_kwargs)


def _parse_expr_variant(body, body_off):
    omega_i = None
    expr_text = None
    expr_off = body_off
    for part, off in _split_args(body, body_off):
        p = part.strip()
        if p.startswith('"') or p.startswith("'"):
            if len(p) < 2 or p[-1] != p[0]:
                raise ProfileSyntaxError("unterminated expression string", off)
            expr_text = p[1:-1]
            expr_off = off + part.index(p[0]) + 1
        elif "=" in p:
            key, _, val = p.partition("=")
            if key.strip() != "omega_i":
                raise ProfileSyntaxError(f"unknown argument {key.strip()!r} for expr", off)
            try:
                omega_i = float(val.strip())
            except ValueError:
                raise ProfileSyntaxError(f"bad numeric value {val.strip()!r}", off) from None
        else:
            raise ProfileSyntaxError("expr takes omega_i=<num> and a quoted expression", off)
    if omega_i is None:
        raise ProfileSyntaxError("missing argument omega_i for expr", body_off)
    if expr_text is None:
        raise ProfileSyntaxError("missing expression string for expr", body_off)
    _parse_expression(expr_text, expr_off)  # validate with real offsets
    return Parsed(omega_i=omega_i, expression=expr_text)


def _split_args(body, body_off):
    """Split a comma-separated argument body, respecting quotes and parens."""
    parts = []
    depth = 0
    quote = None
    start = 0
    for i, ch in enumerate(body):
        if quote:
            if ch == quote:
                quote = None
            continue
        if ch in "\"'":
            quote = ch
        elif ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((body[start:i], body_off + start))
            start = i + 1
    if quote:
        raise ProfileSyntaxError("unterminated string", body_off + len(body))
    tail = body[start:]
    if tail.strip():
        parts.append((tail, body_off + start))
    return parts


def format_profile(profile: FrequencyProfile) -> str:
    """Canonical mini-language text; reparses to an identical structure."""
    return profile.label()


# -- expression sub-language -------------------------------------------------

_FUNCS = {
    "cosh": math.cosh,
    "sech": lambda x: 1.0 / math.cosh(x),
    "tanh": math.tanh,
    "exp": math.exp,
    "cos": math.cos,
    "sin": math.sin,
}


def _tokenize(text, base):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^(),":
            tokens.append((ch, ch, base + i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and (text[j].isdigit() or text[j] in ".eE"
                             or (text[j] in "+-" and j > i and text[j - 1] in "eE")):
                j += 1
            try:
                val = float(text[i:j])
            except ValueError:
                raise ProfileSyntaxError(f"bad number {text[i:j]!r}", base + i) from None
            tokens.append(("num", val, base + i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], base + i))
            i = j
            continue
        raise ProfileSyntaxError(f"unexpected character {ch!r}", base + i)
    tokens.append(("end", None, base + n))
    return tokens


def _parse_expression(text, base):
    """Parse the omega(t) expression sub-language into an AST tuple."""
    tokens = _tokenize(text, base)
    pos = [0]

    def peek():
        return tokens[pos[0]]

    def advance():
        tok = tokens[pos[0]]
        pos[0] += 1
        return tok

    def expect(kind):
        tok = advance()
        if tok[0] != kind:
            raise ProfileSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_sum():
        node = parse_product()
        while peek()[0] in "+-":
            op = advance()[0]
            node = (op, node, parse_product())
        return node

    def parse_product():
        node = parse_unary()
        while peek()[0] in "*/":
            op = advance()[0]
            node = (op, node, parse_unary())
        return node

    def parse_unary():
        if peek()[0] == "-":
            advance()
            return ("neg", parse_unary())
        if peek()[0] == "+":
            advance()
            return parse_unary()
        return parse_power()

    def parse_power():
        node = parse_atom()
        if peek()[0] == "^":
            advance()
            return ("^", node, parse_unary())  # right associative
        return node

    def parse_atom():
        kind, value, off = advance()
        if kind == "num":
            return ("num", value)
        if kind == "name":
            if value == "t":
                return ("t",)
            if value in _FUNCS:
                expect("(")
                arg = parse_sum()
                expect(")")
                return ("call", value, arg)
            raise ProfileSyntaxError(f"unknown identifier {value!r}", off)
        if kind == "(":
            node = parse_sum()
            expect(")")
            return node
        raise ProfileSyntaxError(f"unexpected token {value!r}", off)

    node = parse_sum()
    tok = peek()
    if tok[0] != "end":
        raise ProfileSyntaxError(f"unexpected trailing input {tok[1]!r}", tok[2])
    return node


def _eval_ast(node, t):
    op = node[0]
    if op == "num":
        return node[1]
    if op == "t":
        return t
    if op == "neg":
        return -_eval_ast(node[1], t)
    if op == "+":
        return _eval_ast(node[1], t) + _eval_ast(node[2], t)
    if op == "-":
        return _eval_ast(node[1], t) - _eval_ast(node[2], t)
    if op == "*":
        return _eval_ast(node[1], t) * _eval_ast(node[2], t)
    if op == "/":
        return _eval_ast(node[1], t) / _eval_ast(node[2], t)
    if op == "^":
        return _eval_ast(node[1], t) ** _eval_ast(node[2], t)
    if op == "call":
        return _FUNCS[node[1]](_eval_ast(node[2], t))
    raise AssertionError(f"bad AST node {node!r}")
