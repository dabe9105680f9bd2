"""Long-time transverse profile of perturbations of the line soliton.

For large t the soliton-side solution behaves like ``A(t, y) (d_t R, d_t^2 R)``
with amplitude ``A = c t (H_t * W_t * f)``, where H_t is the heat kernel of
variance 2 lambda2 t, W_t the unit-mass box on [-lambda1 t, lambda1 t], f the
pairing of the initial data with the zero-frequency dual secular mode, and
``c = lambda1 / (4 sinh k)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dispersion as disp
from . import soliton
from .lattice import LatticeWindow


def y_grid(M: int, dy: float) -> np.ndarray:
    """Uniform periodic grid y_j = (j - M/2) dy, with y = 0 at index M/2."""
    if M < 2 or M % 2:
        raise ValueError("grid size must be even and >= 2")
    return (np.arange(M) - M // 2) * dy


def grid_for(T: float, kappa: float, support: float = 8.0, dy: float = 0.1) -> np.ndarray:
    """Grid covering the transport cone, diffusive smearing and the data support."""
    ext = disp.lambda1(kappa) * T + 8 * math.sqrt(disp.lambda2(kappa) * T) + support
    M = 2 * math.ceil(ext / dy)
    return y_grid(M, dy)


def heat_kernel(y, t: float, lambda2: float) -> np.ndarray:
    if t <= 0:
        raise ValueError("heat kernel needs t > 0")
    return np.exp(-np.asarray(y) ** 2 / (4 * lambda2 * t)) / math.sqrt(4 * math.pi * lambda2 * t)


def window_kernel(y, t: float, lambda1: float) -> np.ndarray:
    """Unit-mass box on [-lambda1 t, lambda1 t], cell averaged so the grid sum is exact."""
    if t <= 0:
        raise ValueError("window kernel needs t > 0")
    y = np.asarray(y, dtype=float)
    dy = y[1] - y[0]
    L = lambda1 * t
    overlap = np.clip(np.minimum(y + dy / 2, L) - np.maximum(y - dy / 2, -L), 0, None)
    return overlap / (2 * L * dy)


def mass(k, y) -> float:
    return float(np.sum(k) * (y[1] - y[0]))


def convolve(a, b, y) -> np.ndarray:
    """(a * b)(y) on the grid by direct quadrature (zero outside the grid)."""
    M = len(y)
    full = np.convolve(a, b) * (y[1] - y[0])
    return full[M // 2: M // 2 + M]


def convolve_fft(a, b, y) -> np.ndarray:
    """Same convolution via the discrete transform (periodic; cross-check only)."""
    dy = y[1] - y[0]
    kb = np.fft.ifftshift(b)
    return np.real(np.fft.ifft(np.fft.fft(a) * np.fft.fft(kb))) * dy


@dataclass(frozen=True)
class ProfileData:
    y: np.ndarray
    f: np.ndarray
    f_alt: np.ndarray
    lambda1: float
    lambda2: float
    kappa: float

    def amplitude(self, t: float, method: str = "direct") -> np.ndarray:
        """A(t, y) = lambda1 t / (4 sinh k) (H_t * W_t * f)(y)."""
        H = heat_kernel(self.y, t, self.lambda2)
        Wk = window_kernel(self.y, t, self.lambda1)
        if method == "direct":
            hw = convolve(H, convolve(Wk, self.f, self.y), self.y)
        elif method == "reordered":
            hw = convolve(convolve(H, Wk, self.y), self.f, self.y)
        elif method == "fft":
            hw = convolve_fft(convolve_fft(self.f, Wk, self.y), H, self.y)
        else:
            raise ValueError(method)
        return self.lambda1 * t / (4 * math.sinh(self.kappa)) * hw


def kernel_checks(y, times, kappa: float) -> dict[str, float]:
    """Mass defects of H_t, W_t and the semigroup defect of H on the grid."""
    l1, l2 = disp.lambda1(kappa), disp.lambda2(kappa)
    out = {"H mass": 0.0, "W mass": 0.0, "semigroup": 0.0}
    for t in times:
        out["H mass"] = max(out["H mass"], abs(mass(heat_kernel(y, t, l2), y) - 1))
        out["W mass"] = max(out["W mass"], abs(mass(window_kernel(y, t, l1), y) - 1))
    ts = list(times)
    for t1, t2 in zip(ts, ts[1:] + ts[:1]):
        lhs = convolve(heat_kernel(y, t1, l2), heat_kernel(y, t2, l2), y)
        out["semigroup"] = max(out["semigroup"], float(np.max(np.abs(lhs - heat_kernel(y, t1 + t2, l2)))))
    return out


def extract_amplitude(R0, P0, window: LatticeWindow, kappa: float, y) -> ProfileData:
    """Pair R-form initial data (sites x y) with the zero-frequency dual secular modes.

    f  : pairing with the d_t-direction dual mode, whose tilde form is 1 + tanh(k z)
    f1 : pairing with the other dual mode, tilde form -(1 + tanh)(z / sinh k)
    """
    S = math.sinh(kappa)
    z = soliton.moving_coordinate(window.sites, 0.0, kappa)
    T = np.tanh(kappa * z)
    sech2 = 1 - T * T
    g2, dg2 = 1 + T, -S * sech2
    # d_t of -(1 + T)(-lambda1 t + z/S) at t = 0
    g1 = -(1 + T) * z / S
    dg1 = -(-S * sech2) * z / S + (1 + T) * (disp.lambda1(kappa) + soliton.speed(kappa) / S)
    R0 = np.asarray(R0)
    P0 = np.asarray(P0)

    def pair(g, dg):
        return -(np.tensordot(dg, R0, axes=(0, 0)) - np.tensordot(g, P0, axes=(0, 0)))

    return ProfileData(np.asarray(y), np.real(pair(g2, dg2)), np.real(pair(g1, dg1)),
                       disp.lambda1(kappa), disp.lambda2(kappa), kappa)


def profile_field(data: ProfileData, t: float, window: LatticeWindow, method: str = "direct"):
    """(A d_t R, A d_t^2 R) on (sites, y) at time t."""
    if t <= 0:
        raise ValueError("profile needs t > 0")
    A = data.amplitude(t, method)
    bg = soliton.background(window.sites, t, data.kappa)
    return bg.dtR[:, None] * A[None, :], bg.dt2R[:, None] * A[None, :]


def planar_norm(R, P, window: LatticeWindow, y, alpha: float | None = None) -> float:
    """l^2_alpha H^1 x l^2_alpha L^2 norm of a planar pair (sites x y)."""
    a = window.alpha if alpha is None else alpha
    dy = y[1] - y[0]
    M = len(y)
    w = np.exp(a * window.sites)[:, None]
    eta = 2 * np.pi * np.fft.fftfreq(M, dy)
    Rh = np.fft.fft(R * w, axis=1)
    h1 = math.sqrt(float(np.sum((1 + eta ** 2) * np.abs(Rh) ** 2)) * dy / M)
    l2 = math.sqrt(float(np.sum(np.abs(P * w) ** 2)) * dy)
    return h1 + l2


def compare_profile(states, data: ProfileData, window: LatticeWindow, initial_norm: float,
                    alpha: float | None = None) -> list[tuple[float, float]]:
    """[(t, e^{-alpha c t} ||state - profile|| / initial_norm)] for (t, R, P) triples."""
    a = window.alpha if alpha is None else alpha
    c = soliton.speed(data.kappa)
    out = []
    for t, R, P in states:
        fR, fP = profile_field(data, t, window)
        err = planar_norm(R - fR, P - fP, window, data.y, a) * math.exp(-a * c * t)
        out.append((float(t), err / initial_norm if initial_norm > 0 else err))
    return out
