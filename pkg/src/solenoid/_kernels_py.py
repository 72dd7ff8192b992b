"""Pure-Python oscillator integration kernel.

Reference implementation of the adaptive Dormand-Prince 5(4) integrator used
for the complex classical oscillator equation

    eps'' + w(t)^2 eps = 0

together with the bookkeeping states that every downstream quantity needs:
the rotation phase phi = int w dt, the auxiliary integral sigma = int w*eps dt
and chi = int (1 - w*Im(eps sigma*)) dt.

The compiled Cython twin (solenoid._kernels) implements the identical
algorithm; either backend may serve a run (see solenoid._backend).

State layout (8 doubles):
    y = [Re eps, Im eps, Re eps', Im eps', phi, Re sigma, Im sigma, chi]

Profile variant ids (params p0..p3, Larmor convention; the gauge factor
multiplies the returned frequency):
    0 constant         p0=omega_i
    1 sudden jump      p0=omega_i, p1=omega_f
    2 inverse linear   p0=omega_0, p1=t_0
    3 inverse quadratic p0=omega_0, p1=t_0
    4 sech barrier     p0=omega_inf, p1=omega_0
    5 exp semi-axis    p0=omega_i, p1=omega_f, p2=kappa
    6 Epstein-Eckart   p0=omega_i, p1=omega_f, p2=kappa
    7 mild sech        p0=omega_i, p1=kappa
    8 parametric resonance p0=omega_base (already gauge scaled), p1=gamma
"""

import math

import numpy as np

COMPILED = False

# Status codes returned by integrate()
OK = 0
STEP_UNDERFLOW = 1
MAX_STEPS_EXCEEDED = 2

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# error weights b - bhat
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)
# dense-output coefficients (Hairer's CONTD5)
_D1 = -12715105075.0 / 11282082432.0
_D3 = 87487479700.0 / 32700410799.0
_D4 = -10690763975.0 / 1880347072.0
_D5 = 701980252875.0 / 199316789632.0
_D6 = -1453857185.0 / 822651844.0
_D7 = 69997945.0 / 29380423.0

_NSTATE = 8


def larmor(pid, p0, p1, p2, p3, t):
    """Larmor-frequency law of analytic variant `pid` at time t."""
    if pid == 0:
        return p0
    if pid == 1:
        return p0 if t <= 0.0 else p1
    if pid == 2:
        return p0 if t <= 0.0 else p0 / (1.0 + t / p1)
    if pid == 3:
        if t <= 0.0:
            return p0
        tau = 1.0 + t / p1
        return p0 / (tau * tau)
    if pid == 4:
        sech = 1.0 / math.cosh(p1 * t)
        return math.sqrt(p0 * p0 + 2.0 * p1 * p1 * sech * sech)
    if pid == 5:
        return p0 if t <= 0.0 else p1 + (p0 - p1) * math.exp(-p2 * t)
    if pid == 6:
        # omega_f + (omega_i - omega_f)/(1 + e^(kt)), stable for both signs of t
        if p2 * t > 0.0:
            return p1 + (p0 - p1) / (1.0 + math.exp(p2 * t))
        e = math.exp(p2 * t)
        return (p1 * e + p0) / (e + 1.0)
    if pid == 7:
        return p0 / math.cosh(p1 * t)
    if pid == 8:
        return p0 * (1.0 + 2.0 * p1 * math.cos(2.0 * p0 * t))
    raise ValueError(f"unknown profile id {pid}")


def _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t, y, f):
    if freq_fn is not None:
        w = factor * freq_fn(t)
    else:
        w = factor * larmor(pid, p0, p1, p2, p3, t)
    w2 = w * w
    f[0] = y[2]
    f[1] = y[3]
    f[2] = -w2 * y[0]
    f[3] = -w2 * y[1]
    f[4] = w
    f[5] = w * y[0]
    f[6] = w * y[1]
    f[7] = 1.0 - w * (y[1] * y[5] - y[0] * y[6])


def _wronskian_defect(y):
    # Im(eps' eps*) - 1 = (di*er - dr*ei) - 1
    return (y[3] * y[0] - y[2] * y[1]) - 1.0


def _error_norm(err, y0, y1, rtol, atol):
    s = 0.0
    for i in range(_NSTATE):
        sc = atol + rtol * max(abs(y0[i]), abs(y1[i]))
        r = err[i] / sc
        s += r * r
    return math.sqrt(s / _NSTATE)


def _initial_step(pid, p0, p1, p2, p3, factor, freq_fn, t0, direction, y0, f0, rtol, atol):
    """Hairer-style starting step size estimate."""
    d0 = 0.0
    d1 = 0.0
    for i in range(_NSTATE):
        sc = atol + rtol * abs(y0[i])
        d0 += (y0[i] / sc) ** 2
        d1 += (f0[i] / sc) ** 2
    d0 = math.sqrt(d0 / _NSTATE)
    d1 = math.sqrt(d1 / _NSTATE)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    y1 = [y0[i] + direction * h0 * f0[i] for i in range(_NSTATE)]
    f1 = [0.0] * _NSTATE
    _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t0 + direction * h0, y1, f1)
    d2 = 0.0
    for i in range(_NSTATE):
        sc = atol + rtol * abs(y0[i])
        d2 += ((f1[i] - f0[i]) / sc) ** 2
    d2 = math.sqrt(d2 / _NSTATE) / h0
    dm = max(d1, d2)
    h1 = (0.01 / dm) ** 0.2 if dm > 1e-15 else max(1e-6, h0 * 1e-3)
    return min(100.0 * h0, h1)


def integrate(pid, p0, p1, p2, p3, factor, y0, t0, t1, rtol, atol, t_eval,
              breakpoints=(), max_steps=10_000_000, freq_fn=None):
    """Integrate the oscillator system from t0 to t1 (t1 > t0).

    Returns (yout, drift, nsteps, status): yout has one row of the 8-component
    state per entry of t_eval (which must be sorted and inside [t0, t1]);
    drift is the max |Im(eps' eps*) - 1| over every accepted step endpoint and
    every dense sample.
    """
    t_eval = np.asarray(t_eval, dtype=float)
    n_eval = t_eval.shape[0]
    yout = np.empty((n_eval, _NSTATE), dtype=float)

    # segment boundaries: sorted breakpoints strictly inside (t0, t1)
    seg = [t0]
    for b in sorted(breakpoints):
        if t0 < b < t1:
            seg.append(b)
    seg.append(t1)

    y = list(map(float, y0))
    drift = abs(_wronskian_defect(y))
    nsteps = 0
    i_eval = 0

    # emit any samples at exactly t0
    while i_eval < n_eval and t_eval[i_eval] <= t0:
        yout[i_eval, :] = y
        i_eval += 1

    k1 = [0.0] * _NSTATE
    k2 = [0.0] * _NSTATE
    k3 = [0.0] * _NSTATE
    k4 = [0.0] * _NSTATE
    k5 = [0.0] * _NSTATE
    k6 = [0.0] * _NSTATE
    k7 = [0.0] * _NSTATE
    ytmp = [0.0] * _NSTATE
    ynew = [0.0] * _NSTATE
    err = [0.0] * _NSTATE

    for iseg in range(len(seg) - 1):
        ta, tb = seg[iseg], seg[iseg + 1]
        if tb <= ta:
            continue
        t = ta
        _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t, y, k1)
        h = _initial_step(pid, p0, p1, p2, p3, factor, freq_fn, t, 1.0, y, k1, rtol, atol)
        h = min(h, tb - ta)
        first = True

        while t < tb:
            if nsteps >= max_steps:
                return yout, drift, nsteps, MAX_STEPS_EXCEEDED
            if h < 1e-14 * max(1.0, abs(t)):
                return yout, drift, nsteps, STEP_UNDERFLOW
            if t + h > tb:
                h = tb - t

            if not first:
                pass  # k1 already holds f(t, y) via FSAL
            for i in range(_NSTATE):
                ytmp[i] = y[i] + h * _A21 * k1[i]
            _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t + _C2 * h, ytmp, k2)
            for i in range(_NSTATE):
                ytmp[i] = y[i] + h * (_A31 * k1[i] + _A32 * k2[i])
            _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t + _C3 * h, ytmp, k3)
            for i in range(_NSTATE):
                ytmp[i] = y[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
            _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t + _C4 * h, ytmp, k4)
            for i in range(_NSTATE):
                ytmp[i] = y[i] + h * (_A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i] + _A54 * k4[i])
            _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t + _C5 * h, ytmp, k5)
            for i in range(_NSTATE):
                ytmp[i] = y[i] + h * (
                    _A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i] + _A64 * k4[i] + _A65 * k5[i]
                )
            _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t + h, ytmp, k6)
            for i in range(_NSTATE):
                ynew[i] = y[i] + h * (
                    _B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i] + _B5 * k5[i] + _B6 * k6[i]
                )
            _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t + h, ynew, k7)
            nsteps += 1

            for i in range(_NSTATE):
                err[i] = h * (
                    _E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i] + _E5 * k5[i]
                    + _E6 * k6[i] + _E7 * k7[i]
                )
            en = _error_norm(err, y, ynew, rtol, atol)

            if en <= 1.0:
                # dense output for samples inside (t, t+h]
                if i_eval < n_eval and t_eval[i_eval] <= t + h:
                    rc2 = [ynew[i] - y[i] for i in range(_NSTATE)]
                    rc3 = [h * k1[i] - rc2[i] for i in range(_NSTATE)]
                    rc4 = [rc2[i] - h * k7[i] - rc3[i] for i in range(_NSTATE)]
                    rc5 = [
                        h * (_D1 * k1[i] + _D3 * k3[i] + _D4 * k4[i]
                             + _D5 * k5[i] + _D6 * k6[i] + _D7 * k7[i])
                        for i in range(_NSTATE)
                    ]
                    while i_eval < n_eval and t_eval[i_eval] <= t + h:
                        th = (t_eval[i_eval] - t) / h
                        th1 = 1.0 - th
                        for i in range(_NSTATE):
                            yout[i_eval, i] = y[i] + th * (
                                rc2[i] + th1 * (rc3[i] + th * (rc4[i] + th1 * rc5[i]))
                            )
                        d = abs(_wronskian_defect(yout[i_eval]))
                        if d > drift:
                            drift = d
                        i_eval += 1

                t += h
                y, ynew = ynew, y
                k1, k7 = k7, k1  # FSAL
                first = False
                d = abs(_wronskian_defect(y))
                if d > drift:
                    drift = d
                fac = 0.9 * en ** -0.2 if en > 1e-30 else 5.0
                h *= min(5.0, max(0.2, fac))
            else:
                h *= max(0.2, 0.9 * en ** -0.2)
                first = True
                _rhs(pid, p0, p1, p2, p3, factor, freq_fn, t, y, k1)

    # samples at exactly t1 that floating point left behind
    while i_eval < n_eval:
        yout[i_eval, :] = y
        i_eval += 1

    return yout, drift, nsteps, OK
