"""Pure numpy implementation of the batched RK4 stepper."""
import numpy as np


def _coefficients(n0, N, kappa, speed, t, soliton, qform):
    n = n0 - 1 + np.arange(N + 2)
    if soliton:
        w = 1.0 + np.sinh(kappa) ** 2 / np.cosh(kappa * (n - speed * t)) ** 2
    else:
        w = np.ones(N + 2)
    if qform:
        return w[1:-1], -w[1:-1] - w[:-2], w[:-2]
    return w[2:], -2.0 * w[1:-1], w[:-2]


def _force(q, eta2, coef):
    a, b, c = coef
    out = (b - eta2[:, None]) * q
    out[:, :-1] += a[:-1] * q[:, 1:]
    out[:, 1:] += c[1:] * q[:, :-1]
    return out


def rk4_banded(q0, p0, eta2, n0, kappa, speed, t0, dt, nsteps, soliton=True, qform=False):
    """Advance ``nsteps`` RK4 steps of q'' = -eta^2 q + L(t) q (see the compiled twin)."""
    q = np.array(q0, dtype=np.complex128, copy=True)
    p = np.array(p0, dtype=np.complex128, copy=True)
    e2 = np.asarray(eta2, dtype=np.float64)
    if e2.shape[0] != q.shape[0]:
        raise ValueError("eta2 must have one entry per mode")
    N = q.shape[1]
    h = dt
    for step in range(int(nsteps)):
        t = t0 + step * h
        c0 = _coefficients(n0, N, kappa, speed, t, soliton, qform)
        ch = _coefficients(n0, N, kappa, speed, t + 0.5 * h, soliton, qform)
        c1 = _coefficients(n0, N, kappa, speed, t + h, soliton, qform)
        f1 = _force(q, e2, c0)
        p2 = p + 0.5 * h * f1
        f2 = _force(q + 0.5 * h * p, e2, ch)
        p3 = p + 0.5 * h * f2
        f3 = _force(q + 0.5 * h * p2, e2, ch)
        p4 = p + h * f3
        f4 = _force(q + h * p3, e2, c1)
        q = q + h / 6.0 * (p + 2.0 * p2 + 2.0 * p3 + p4)
        p = p + h / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4)
    return q, p
