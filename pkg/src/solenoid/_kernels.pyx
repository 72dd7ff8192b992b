# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled oscillator integration kernel (Dormand-Prince 5(4), dense output).

Mirror of solenoid._kernels_py for the analytic profile variants; see that
module for the state layout and variant ids.  Parsed/expression profiles are
served by the Python kernel only.
"""

from libc.math cimport cos, cosh, exp, fabs, sqrt

import numpy as np

COMPILED = True

OK = 0
STEP_UNDERFLOW = 1
MAX_STEPS_EXCEEDED = 2

cdef int NSTATE = 8

cdef double C2 = 1.0 / 5.0
cdef double C3 = 3.0 / 10.0
cdef double C4 = 4.0 / 5.0
cdef double C5 = 8.0 / 9.0
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0
cdef double D1 = -12715105075.0 / 11282082432.0
cdef double D3 = 87487479700.0 / 32700410799.0
cdef double D4 = -10690763975.0 / 1880347072.0
cdef double D5 = 701980252875.0 / 199316789632.0
cdef double D6 = -1453857185.0 / 822651844.0
cdef double D7 = 69997945.0 / 29380423.0


cdef inline double _larmor(int pid, double p0, double p1, double p2, double p3,
                           double t) nogil:
    cdef double tau, sech, e
    if pid == 0:
        return p0
    elif pid == 1:
        return p0 if t <= 0.0 else p1
    elif pid == 2:
        return p0 if t <= 0.0 else p0 / (1.0 + t / p1)
    elif pid == 3:
        if t <= 0.0:
            return p0
        tau = 1.0 + t / p1
        return p0 / (tau * tau)
    elif pid == 4:
        sech = 1.0 / cosh(p1 * t)
        return sqrt(p0 * p0 + 2.0 * p1 * p1 * sech * sech)
    elif pid == 5:
        return p0 if t <= 0.0 else p1 + (p0 - p1) * exp(-p2 * t)
    elif pid == 6:
        if p2 * t > 0.0:
            return p1 + (p0 - p1) / (1.0 + exp(p2 * t))
        e = exp(p2 * t)
        return (p1 * e + p0) / (e + 1.0)
    elif pid == 7:
        return p0 / cosh(p1 * t)
    else:
        return p0 * (1.0 + 2.0 * p1 * cos(2.0 * p0 * t))


cdef inline void _rhs(int pid, double p0, double p1, double p2, double p3,
                      double factor, double t, double *y, double *f) nogil:
    cdef double w = factor * _larmor(pid, p0, p1, p2, p3, t)
    cdef double w2 = w * w
    f[0] = y[2]
    f[1] = y[3]
    f[2] = -w2 * y[0]
    f[3] = -w2 * y[1]
    f[4] = w
    f[5] = w * y[0]
    f[6] = w * y[1]
    f[7] = 1.0 - w * (y[1] * y[5] - y[0] * y[6])


cdef inline double _defect(double *y) nogil:
    return (y[3] * y[0] - y[2] * y[1]) - 1.0


cdef inline double _err_norm(double *err, double *y0, double *y1,
                             double rtol, double atol) nogil:
    cdef double s = 0.0, sc, r, a0, a1
    cdef int i
    for i in range(NSTATE):
        a0 = fabs(y0[i])
        a1 = fabs(y1[i])
        sc = atol + rtol * (a0 if a0 > a1 else a1)
        r = err[i] / sc
        s += r * r
    return sqrt(s / NSTATE)


def larmor(int pid, double p0, double p1, double p2, double p3, double t):
    """Scalar Larmor-frequency evaluation (compiled path)."""
    return _larmor(pid, p0, p1, p2, p3, t)


def integrate(int pid, double p0, double p1, double p2, double p3,
              double factor, y0, double t0, double t1, double rtol,
              double atol, t_eval, breakpoints=(), long max_steps=10_000_000,
              freq_fn=None):
    """Compiled counterpart of solenoid._kernels_py.integrate."""
    if freq_fn is not None:
        raise ValueError("compiled kernel serves analytic variants only")

    cdef double[::1] te = np.ascontiguousarray(t_eval, dtype=np.float64)
    cdef Py_ssize_t n_eval = te.shape[0]
    yout_arr = np.empty((n_eval, NSTATE), dtype=np.float64)
    cdef double[:, ::1] yout = yout_arr

    segs_list = [t0]
    for b in sorted(breakpoints):
        if t0 < b < t1:
            segs_list.append(float(b))
    segs_list.append(t1)
    cdef double[::1] segs = np.asarray(segs_list, dtype=np.float64)
    cdef Py_ssize_t nseg = segs.shape[0] - 1

    cdef double y[8]
    cdef double k1[8]
    cdef double k2[8]
    cdef double k3[8]
    cdef double k4[8]
    cdef double k5[8]
    cdef double k6[8]
    cdef double k7[8]
    cdef double ytmp[8]
    cdef double ynew[8]
    cdef double err[8]
    cdef double rc2[8]
    cdef double rc3[8]
    cdef double rc4[8]
    cdef double rc5[8]
    cdef int i
    for i in range(NSTATE):
        y[i] = y0[i]

    cdef double drift = fabs(_defect(y))
    cdef long nsteps = 0
    cdef Py_ssize_t i_eval = 0
    cdef int status = OK

    while i_eval < n_eval and te[i_eval] <= t0:
        for i in range(NSTATE):
            yout[i_eval, i] = y[i]
        i_eval += 1

    cdef Py_ssize_t iseg
    cdef double ta, tb, t, h, en, fac, th, th1, d
    cdef double d0, d1, d2, sc, h0, h1, dm
    cdef bint done = False

    for iseg in range(nseg):
        ta = segs[iseg]
        tb = segs[iseg + 1]
        if tb <= ta or done:
            continue
        t = ta
        _rhs(pid, p0, p1, p2, p3, factor, t, y, k1)

        # starting step size (Hairer heuristic)
        d0 = 0.0
        d1 = 0.0
        for i in range(NSTATE):
            sc = atol + rtol * fabs(y[i])
            d0 += (y[i] / sc) * (y[i] / sc)
            d1 += (k1[i] / sc) * (k1[i] / sc)
        d0 = sqrt(d0 / NSTATE)
        d1 = sqrt(d1 / NSTATE)
        h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
        for i in range(NSTATE):
            ytmp[i] = y[i] + h0 * k1[i]
        _rhs(pid, p0, p1, p2, p3, factor, t + h0, ytmp, k2)
        d2 = 0.0
        for i in range(NSTATE):
            sc = atol + rtol * fabs(y[i])
            d2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc)
        d2 = sqrt(d2 / NSTATE) / h0
        dm = d1 if d1 > d2 else d2
        h1 = (0.01 / dm) ** 0.2 if dm > 1e-15 else (1e-6 if 1e-6 > h0 * 1e-3 else h0 * 1e-3)
        h = 100.0 * h0 if 100.0 * h0 < h1 else h1
        if h > tb - ta:
            h = tb - ta

        while t < tb:
            if nsteps >= max_steps:
                status = MAX_STEPS_EXCEEDED
                done = True
                break
            if h < 1e-14 * (1.0 if fabs(t) < 1.0 else fabs(t)):
                status = STEP_UNDERFLOW
                done = True
                break
            if t + h > tb:
                h = tb - t

            for i in range(NSTATE):
                ytmp[i] = y[i] + h * A21 * k1[i]
            _rhs(pid, p0, p1, p2, p3, factor, t + C2 * h, ytmp, k2)
            for i in range(NSTATE):
                ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
            _rhs(pid, p0, p1, p2, p3, factor, t + C3 * h, ytmp, k3)
            for i in range(NSTATE):
                ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
            _rhs(pid, p0, p1, p2, p3, factor, t + C4 * h, ytmp, k4)
            for i in range(NSTATE):
                ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
            _rhs(pid, p0, p1, p2, p3, factor, t + C5 * h, ytmp, k5)
            for i in range(NSTATE):
                ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i]
                                      + A64 * k4[i] + A65 * k5[i])
            _rhs(pid, p0, p1, p2, p3, factor, t + h, ytmp, k6)
            for i in range(NSTATE):
                ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i]
                                      + B5 * k5[i] + B6 * k6[i])
            _rhs(pid, p0, p1, p2, p3, factor, t + h, ynew, k7)
            nsteps += 1

            for i in range(NSTATE):
                err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i]
                              + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            en = _err_norm(err, y, ynew, rtol, atol)

            if en <= 1.0:
                if i_eval < n_eval and te[i_eval] <= t + h:
                    for i in range(NSTATE):
                        rc2[i] = ynew[i] - y[i]
                        rc3[i] = h * k1[i] - rc2[i]
                        rc4[i] = rc2[i] - h * k7[i] - rc3[i]
                        rc5[i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i]
                                      + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
                    while i_eval < n_eval and te[i_eval] <= t + h:
                        th = (te[i_eval] - t) / h
                        th1 = 1.0 - th
                        for i in range(NSTATE):
                            yout[i_eval, i] = y[i] + th * (
                                rc2[i] + th1 * (rc3[i] + th * (rc4[i] + th1 * rc5[i])))
                        d = fabs((yout[i_eval, 3] * yout[i_eval, 0]
                                  - yout[i_eval, 2] * yout[i_eval, 1]) - 1.0)
                        if d > drift:
                            drift = d
                        i_eval += 1

                t += h
                for i in range(NSTATE):
                    y[i] = ynew[i]
                    k1[i] = k7[i]
                d = fabs(_defect(y))
                if d > drift:
                    drift = d
                fac = 0.9 * en ** -0.2 if en > 1e-30 else 5.0
                if fac > 5.0:
                    fac = 5.0
                elif fac < 0.2:
                    fac = 0.2
                h *= fac
            else:
                fac = 0.9 * en ** -0.2
                if fac < 0.2:
                    fac = 0.2
                h *= fac

    while i_eval < n_eval:
        for i in range(NSTATE):
            yout[i_eval, i] = y[i]
        i_eval += 1

    return yout_arr, drift, nsteps, status
