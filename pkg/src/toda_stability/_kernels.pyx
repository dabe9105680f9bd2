# cython: cdivision=True
"""Compiled RK4 stepper for batches of tridiagonal lattice wave equations."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cosh, sinh

cnp.import_array()


cdef void _coefficients(double[::1] a, double[::1] b, double[::1] c, long n0,
                        double kappa, double speed, double t, bint soliton,
                        bint qform, double[::1] work) noexcept nogil:
    # work holds 1 + V on sites n0 - 1 .. n0 + N
    cdef Py_ssize_t j, N = a.shape[0]
    cdef double s2 = sinh(kappa) * sinh(kappa), ch
    for j in range(N + 2):
        if soliton:
            ch = cosh(kappa * (n0 - 1 + j - speed * t))
            work[j] = 1.0 + s2 / (ch * ch)
        else:
            work[j] = 1.0
    for j in range(N):
        if qform:
            a[j] = work[j + 1]
            b[j] = -work[j + 1] - work[j]
            c[j] = work[j]
        else:
            a[j] = work[j + 2]
            b[j] = -2.0 * work[j + 1]
            c[j] = work[j]


cdef inline void _force(const double* q, double* out, double e2,
                        const double* a, const double* b, const double* c,
                        Py_ssize_t N) noexcept nogil:
    cdef Py_ssize_t j
    if N == 1:
        out[0] = (b[0] - e2) * q[0]
        return
    out[0] = (b[0] - e2) * q[0] + a[0] * q[1]
    for j in range(1, N - 1):
        out[j] = (b[j] - e2) * q[j] + a[j] * q[j + 1] + c[j] * q[j - 1]
    out[N - 1] = (b[N - 1] - e2) * q[N - 1] + c[N - 1] * q[N - 2]


def rk4_banded(q0, p0, eta2, long n0, double kappa, double speed,
               double t0, double dt, long nsteps, bint soliton=True,
               bint qform=False):
    """Advance ``nsteps`` RK4 steps of q'' = -eta^2 q + L(t) q.

    ``q0`` and ``p0`` are complex arrays of shape (modes, sites); row m uses
    ``eta2[m]``.  Returns new arrays (q, p).  The coefficients are real, so real
    and imaginary parts are stepped as separate rows; each row runs all four
    stages in small buffers that stay in cache.
    """
    q0 = np.asarray(q0, dtype=np.complex128)
    p0 = np.asarray(p0, dtype=np.complex128)
    cdef double[::1] e2in = np.ascontiguousarray(eta2, dtype=np.float64)
    if e2in.shape[0] != q0.shape[0]:
        raise ValueError("eta2 must have one entry per mode")
    cdef double[:, ::1] q = np.ascontiguousarray(np.concatenate([q0.real, q0.imag]))
    cdef double[:, ::1] p = np.ascontiguousarray(np.concatenate([p0.real, p0.imag]))
    cdef double[::1] e2 = np.concatenate([e2in, e2in])
    cdef Py_ssize_t M = q.shape[0], N = q.shape[1], m, j, half = q0.shape[0]
    cdef long step
    cdef double h = dt, t, hh = 0.5 * dt, h6 = dt / 6.0
    cdef double[::1] a0 = np.empty(N), b0 = np.empty(N), c0 = np.empty(N)
    cdef double[::1] ah = np.empty(N), bh = np.empty(N), ch = np.empty(N)
    cdef double[::1] a1 = np.empty(N), b1 = np.empty(N), c1 = np.empty(N)
    cdef double[::1] work = np.empty(N + 2)
    cdef double[:, ::1] buf = np.empty((8, max(N, 1)))
    cdef double *tq
    cdef double *f1
    cdef double *f2
    cdef double *f3
    cdef double *f4
    cdef double *p2
    cdef double *p3
    cdef double *p4
    cdef double *qr
    cdef double *pr
    if N == 0 or M == 0:
        return q0.copy(), p0.copy()
    tq, f1, f2, f3 = &buf[0, 0], &buf[1, 0], &buf[2, 0], &buf[3, 0]
    f4, p2, p3, p4 = &buf[4, 0], &buf[5, 0], &buf[6, 0], &buf[7, 0]
    with nogil:
        for step in range(nsteps):
            t = t0 + step * h
            _coefficients(a0, b0, c0, n0, kappa, speed, t, soliton, qform, work)
            _coefficients(ah, bh, ch, n0, kappa, speed, t + hh, soliton, qform, work)
            _coefficients(a1, b1, c1, n0, kappa, speed, t + h, soliton, qform, work)
            for m in range(M):
                qr = &q[m, 0]
                pr = &p[m, 0]
                _force(qr, f1, e2[m], &a0[0], &b0[0], &c0[0], N)
                for j in range(N):
                    tq[j] = qr[j] + hh * pr[j]
                    p2[j] = pr[j] + hh * f1[j]
                _force(tq, f2, e2[m], &ah[0], &bh[0], &ch[0], N)
                for j in range(N):
                    tq[j] = qr[j] + hh * p2[j]
                    p3[j] = pr[j] + hh * f2[j]
                _force(tq, f3, e2[m], &ah[0], &bh[0], &ch[0], N)
                for j in range(N):
                    tq[j] = qr[j] + h * p3[j]
                    p4[j] = pr[j] + h * f3[j]
                _force(tq, f4, e2[m], &a1[0], &b1[0], &c1[0], N)
                for j in range(N):
                    qr[j] = qr[j] + h6 * (pr[j] + 2.0 * p2[j] + 2.0 * p3[j] + p4[j])
                    pr[j] = pr[j] + h6 * (f1[j] + 2.0 * f2[j] + 2.0 * f3[j] + f4[j])
    qa, pa = np.asarray(q), np.asarray(p)
    return qa[:half] + 1j * qa[half:], pa[:half] + 1j * pa[half:]
