"""Time evolution of single transverse modes of the linearized lattice.

Each mode solves ``(d_t^2 + eta^2) q = L(t) q`` on a finite window with zero
extension, where L is one of

* ``"R-soliton"``: Delta (1 + V) q    (difference of potentials)
* ``"Q-soliton"``: (1 - e^{-d}) (1 + V) (e^d - 1) q
* ``"free"``: Delta q                 (V = 0; R and Q forms coincide)

Stepping is classical RK4 in the compiled or numpy kernel.  The free
equation also has an exact Fourier solution used as an oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import dispersion as disp
from . import kernels, soliton
from .lattice import LatticeWindow, weighted_norm

REPRESENTATIONS = ("R-soliton", "Q-soliton", "free")
BLOWUP = 1e150


class IntegratorError(RuntimeError):
    pass


@dataclass(frozen=True)
class ModeState:
    """Value q and time derivative p of one or several modes (last axis = sites)."""

    q: np.ndarray
    p: np.ndarray
    eta: np.ndarray
    t: float
    window: LatticeWindow
    representation: str = "Q-soliton"

    def __post_init__(self):
        if self.representation not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {self.representation!r}")
        if np.shape(self.q) != np.shape(self.p) or np.shape(self.q)[-1] != self.window.size:
            raise ValueError("q and p must match the window size")

    @classmethod
    def make(cls, q, p, eta, t, window, representation="Q-soliton") -> "ModeState":
        q = np.asarray(q, dtype=complex)
        p = np.asarray(p, dtype=complex)
        eta = np.asarray(eta, dtype=float)
        if q.ndim == 2 and eta.ndim == 0:
            eta = np.full(q.shape[0], float(eta))
        return cls(q, p, eta, float(t), window, representation)

    def norm(self, alpha: float | None = None, kappa: float | None = None):
        """(||q|| <eta> + ||p||) in l^2_alpha, times e^{-alpha c t} when kappa is given."""
        a = self.window.alpha if alpha is None else alpha
        bracket = np.sqrt(1 + self.eta ** 2)
        val = bracket * weighted_norm(self.q, self.window, a) + weighted_norm(self.p, self.window, a)
        if kappa is not None:
            val = val * math.exp(-a * soliton.speed(kappa) * self.t)
        return val

    def edge_mass(self, band: int = 10) -> float:
        """Fraction of the weighted mass within ``band`` sites of either edge."""
        w = np.abs(self.q) * self.window.weights
        tot = np.sum(w ** 2)
        if tot == 0:
            return 0.0
        edge = np.sum(w[..., :band] ** 2) + np.sum(w[..., -band:] ** 2)
        return float(math.sqrt(edge / tot))


def evolve(state: ModeState, T: float, dt: float, kappa: float = 1.0,
           record: int | None = None) -> list[ModeState]:
    """RK4 from state.t to state.t + T; returns the states at ``record`` equally
    spaced checkpoints (the final state only when ``record`` is None)."""
    if dt <= 0 or T < 0:
        raise ValueError("need dt > 0 and T >= 0")
    nsteps = int(round(T / dt))
    if abs(nsteps * dt - T) > 1e-9 * max(T, 1):
        raise ValueError(f"T={T} is not a multiple of dt={dt}")
    chunks = 1 if not record else int(record)
    if nsteps % chunks:
        raise ValueError("number of steps must be divisible by the number of records")
    per = nsteps // chunks
    on_soliton = state.representation != "free"
    qform = state.representation == "Q-soliton"
    q = np.atleast_2d(state.q)
    p = np.atleast_2d(state.p)
    eta2 = np.atleast_1d(state.eta) ** 2
    c = soliton.speed(kappa)
    t = state.t
    out = []
    for k in range(chunks):
        q, p = kernels.rk4_banded(q, p, eta2, state.window.n_min, kappa, c, t, dt, per, on_soliton, qform)
        t = state.t + (k + 1) * per * dt
        big = float(np.max(np.abs(q))) if q.size else 0.0
        if not np.isfinite(big) or big > BLOWUP:
            raise IntegratorError(f"solution blew up before t={t:g} (dt={dt} may be unstable)")
        shape = np.shape(state.q)
        out.append(replace(state, q=q.reshape(shape).copy(), p=p.reshape(shape).copy(), t=t))
    return out


def _pad_size(n: int, T: float) -> int:
    m = max(4 * n, n + int(4 * T) + 64)
    return 1 << (m - 1).bit_length()


def evolve_free_exact(state: ModeState, T: float) -> ModeState:
    """Exact free evolution through the weighted discrete Fourier transform.

    In the weighted variable r = e^{alpha n} q the free operator has symbol
    -omega^2 + eta^2 with omega^2 = eta^2 + 2 - 2 cos(xi) cosh(a) + 2 i sin(xi) sinh(a);
    the data are zero padded so wrap-around is negligible up to time T.
    """
    if state.representation != "free":
        raise ValueError("exact evolution is only available for the free equation")
    a = state.window.alpha
    N = state.window.size
    M = _pad_size(N, T)
    w = state.window.weights
    q = np.atleast_2d(state.q) * w
    p = np.atleast_2d(state.p) * w
    qh = np.fft.fft(q, M, axis=-1)
    ph = np.fft.fft(p, M, axis=-1)
    xi = 2 * np.pi * np.fft.fftfreq(M)
    eta = np.atleast_1d(state.eta)[:, None] * np.ones((q.shape[0], 1))
    om = disp.free_omega(xi[None, :], eta, a)
    x = T * om
    small = np.abs(x) < 1e-4
    sinc = np.where(small, T * (1 - x * x / 6 + x ** 4 / 120), np.sin(np.where(small, 1, x)) / np.where(small, 1, om))
    cos = np.cos(x)
    dsin = -om * np.sin(x)  # d/dt cos(t om)
    q_new = np.fft.ifft(cos * qh + sinc * ph, axis=-1)[:, :N] / w
    p_new = np.fft.ifft(dsin * qh + cos * ph, axis=-1)[:, :N] / w
    shape = np.shape(state.q)
    return replace(state, q=q_new.reshape(shape), p=p_new.reshape(shape), t=state.t + T)


@dataclass(frozen=True)
class DecayFit:
    rate: float
    intercept: float
    t_range: tuple[float, float]
    residual: float


def fit_decay(times, values, t_min: float | None = None, t_max: float | None = None) -> DecayFit:
    """Least-squares fit log(value) = intercept - rate * t on [t_min, t_max].

    Defaults to the last three quarters of the record.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.shape != values.shape or times.size < 2:
        raise ValueError("need at least two (time, value) pairs")
    if np.any(values <= 0):
        raise ValueError("values must be positive for a log fit")
    lo = times[0] + 0.25 * (times[-1] - times[0]) if t_min is None else t_min
    hi = times[-1] if t_max is None else t_max
    sel = (times >= lo - 1e-12) & (times <= hi + 1e-12)
    if sel.sum() < 2:
        raise ValueError("fit range contains fewer than two points")
    slope, icpt = np.polyfit(times[sel], np.log(values[sel]), 1)
    res = np.log(values[sel]) - (slope * times[sel] + icpt)
    return DecayFit(float(-slope), float(icpt), (float(lo), float(hi)), float(np.max(np.abs(res))))


def random_local_data(window: LatticeWindow, rng: np.random.Generator, support=(-8, 8),
                      modes: int | None = None):
    """Complex Gaussian (q, p) supported on ``support``, normalized to unit l^2_alpha norm."""
    shape = (window.size,) if modes is None else (modes, window.size)
    q = np.zeros(shape, complex)
    p = np.zeros(shape, complex)
    i0, i1 = window.index(support[0]), window.index(support[1]) + 1
    k = i1 - i0
    sub = shape[:-1] + (k,)
    q[..., i0:i1] = rng.standard_normal(sub) + 1j * rng.standard_normal(sub)
    p[..., i0:i1] = rng.standard_normal(sub) + 1j * rng.standard_normal(sub)
    scale = weighted_norm(q, window) + weighted_norm(p, window)
    scale = np.asarray(scale)[..., None]
    return q / scale, p / scale


def growth_exponent(alpha: float, T: float = 40.0, seed: int = 0, etas=(0.0, 0.5, 1.0)) -> float:
    """Largest fitted growth rate of the free flow in l^2_alpha over random local data."""
    rng = np.random.default_rng(seed)
    win = LatticeWindow(-16, 16, alpha)
    worst = -math.inf
    times = np.linspace(0, T, 41)[1:]
    for eta in etas:
        q, p = random_local_data(win, rng)
        # wide enough for the exact solution to stay inside up to time T
        big = win.extended(int(2 * T) + 20, int(2 * T) + 20)
        pad = win.n_min - big.n_min
        qb = np.zeros(big.size, complex)
        pb = np.zeros(big.size, complex)
        qb[pad:pad + win.size] = q
        pb[pad:pad + win.size] = p
        s0 = ModeState.make(qb, pb, eta, 0.0, big, "free")
        norms = [float(evolve_free_exact(s0, t).norm()) for t in times]
        worst = max(worst, -fit_decay(times, norms).rate)
    return worst


def planar_evolve(R0, P0, y, window: LatticeWindow, kappa: float, times, dt: float,
                  eta_max: float | None = None, representation: str = "R-soliton"):
    """Evolve real planar data (sites x y) by transforming in y and stepping each mode.

    Transverse frequencies above ``eta_max`` are dropped.  Returns a list of
    (t, R, P) with R, P on (sites x y).
    """
    y = np.asarray(y)
    dy = y[1] - y[0]
    M = len(y)
    eta = 2 * np.pi * np.fft.rfftfreq(M, dy)
    keep = np.ones_like(eta, bool) if eta_max is None else eta <= eta_max
    Rh = np.fft.rfft(np.asarray(R0, float), axis=1).T[keep]
    Ph = np.fft.rfft(np.asarray(P0, float), axis=1).T[keep]
    state = ModeState.make(Rh, Ph, eta[keep], 0.0, window, representation)
    out = []
    t_prev = 0.0
    full_R = np.zeros((eta.size, window.size), complex)
    full_P = np.zeros_like(full_R)
    for t in times:
        if t < t_prev:
            raise ValueError("times must be increasing")
        if t > t_prev:
            state = evolve(state, t - t_prev, dt, kappa)[-1]
        t_prev = t
        full_R[keep] = state.q
        full_P[keep] = state.p
        out.append((float(t), np.fft.irfft(full_R.T, M, axis=1), np.fft.irfft(full_P.T, M, axis=1)))
    return out
