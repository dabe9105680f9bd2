"""Complex dispersion data of the soliton-linearized lattice and of the free lattice.

For a transverse wave number ``eta`` and soliton parameter ``kappa``::

    w      = cosh(kappa) + i*eta
    mu     = sqrt(w**2 - 1)            (principal branch)
    beta_pm = -w +/- mu                 (beta_plus * beta_minus = 1)
    gamma  = log(-beta_minus)
    delta  = (sinh(kappa)/kappa) * gamma - mu

``w + mu`` always has positive real part and ``w**2 - 1`` leaves the real
axis only at ``eta = 0`` where it is positive, so the principal branches
are continuous in ``eta``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _check_kappa(kappa: float) -> None:
    if not np.isfinite(kappa) or kappa <= 0:
        raise ValueError(f"kappa must be a positive finite number, got {kappa!r}")


def _check_alpha(kappa: float, alpha: float) -> None:
    _check_kappa(kappa)
    if not (0 < alpha < 2 * kappa):
        raise ValueError(f"alpha must lie in (0, 2*kappa) = (0, {2 * kappa}), got {alpha!r}")


@dataclass(frozen=True)
class DispersionPoint:
    """Dispersion data at one (or an array of) real ``eta``."""

    eta: np.ndarray
    kappa: float
    w: np.ndarray
    mu: np.ndarray
    beta_plus: np.ndarray
    beta_minus: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray

    @property
    def speed(self) -> float:
        return np.sinh(self.kappa) / self.kappa


def dispersion(eta, kappa: float) -> DispersionPoint:
    """Evaluate w, mu, beta_pm, gamma and delta at real ``eta`` (scalar or array)."""
    _check_kappa(kappa)
    eta_arr = np.asarray(eta, dtype=float)
    if not np.all(np.isfinite(eta_arr)):
        raise ValueError("eta must be finite")
    w = np.cosh(kappa) + 1j * eta_arr
    mu = np.sqrt(w * w - 1.0)
    bp = -w + mu
    bm = -w - mu
    gamma = np.log(-bm)
    delta = np.sinh(kappa) / kappa * gamma - mu
    return DispersionPoint(eta_arr, kappa, w, mu, bp, bm, gamma, delta)


def mu(eta, kappa: float):
    return dispersion(eta, kappa).mu


def gamma(eta, kappa: float):
    return dispersion(eta, kappa).gamma


def delta(eta, kappa: float):
    return dispersion(eta, kappa).delta


def delta_derivatives(eta, kappa: float):
    """Closed-form (d delta/d eta, d^2 delta/d eta^2)."""
    d = dispersion(eta, kappa)
    c = np.sinh(kappa) / kappa
    first = 1j * (c - d.w) / d.mu
    second = (c * d.w - 1.0) / d.mu ** 3
    return first, second


def lambda1(kappa: float) -> float:
    """Transverse drift coefficient: -(d/d eta) Im delta at eta = 0."""
    _check_kappa(kappa)
    return 1.0 / np.tanh(kappa) - 1.0 / kappa


def lambda2(kappa: float) -> float:
    """Transverse diffusion coefficient: half of (d/d eta)^2 Re delta at eta = 0."""
    _check_kappa(kappa)
    return (np.sinh(2 * kappa) / (2 * kappa) - 1.0) / (2 * np.sinh(kappa) ** 3)


def eta_star(kappa: float, alpha: float) -> float:
    """Positive root of Re gamma(eta) = kappa + alpha."""
    _check_alpha(kappa, alpha)
    return float(np.tanh(kappa + alpha) * np.sqrt(np.sinh(alpha) * np.sinh(2 * kappa + alpha)))


def eta_star_bisect(kappa: float, alpha: float, tol: float = 1e-14) -> float:
    """Locate the same root by bisection on the monotone map eta -> Re gamma."""
    _check_alpha(kappa, alpha)

    def f(e):
        return float(dispersion(e, kappa).gamma.real) - (kappa + alpha)

    lo, hi = 0.0, 1.0
    while f(hi) < 0:
        hi *= 2.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def free_omega(xi, eta, alpha: float):
    """Frequency of the weighted free lattice, with argument in (-pi/2, pi/2].

    omega**2 = eta**2 + 4 sin**2((xi + i alpha)/2).
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    rad = eta ** 2 + 2.0 - 2.0 * np.cos(xi) * np.cosh(alpha) + 2j * np.sin(xi) * np.sinh(alpha)
    # a negative real radicand must map to +i|.|, never to -i|.|
    rad = np.where(rad.imag == 0, rad.real + 0j, rad)
    return np.sqrt(rad)


def growth_bound(alpha: float) -> float:
    """Largest Im omega over the free dispersion surface."""
    return 2.0 * np.sinh(alpha / 2.0)


@dataclass
class ScanResult:
    eta: np.ndarray
    points: DispersionPoint
    product_error: float
    conjugate_error: float
    continuity_jump: float


def dispersion_scan(kappa: float, eta_max: float = 5.0, n: int = 4001) -> ScanResult:
    """Tabulate dispersion data on a symmetric grid with consistency checks.

    ``product_error`` is max |beta_plus*beta_minus - 1| and ``conjugate_error``
    is max |f(-eta) - conj f(eta)| over mu, gamma, delta.  ``continuity_jump``
    is the largest step of gamma between neighbours divided by the grid spacing
    bound, so values of order one mean no branch jump.
    """
    eta = np.linspace(-eta_max, eta_max, n)
    d = dispersion(eta, kappa)
    prod = float(np.max(np.abs(d.beta_plus * d.beta_minus - 1.0)))
    conj = 0.0
    for f in (d.mu, d.gamma, d.delta):
        conj = max(conj, float(np.max(np.abs(f[::-1] - np.conj(f)))))
    h = eta[1] - eta[0]
    # |d gamma / d eta| = 1/|mu| on the real line
    bound = h / np.min(np.abs(d.mu))
    jump = float(np.max(np.abs(np.diff(d.gamma))) / bound)
    return ScanResult(eta, d, prod, conj, jump)


@dataclass
class DerivativeCheck:
    name: str
    estimate: float
    exact: float
    rel_error: float
    order: float


def _fd_first(f, h):
    return (f(h) - f(-h)) / (2 * h)


def _fd_second(f, h):
    return (f(h) - 2 * f(0.0) + f(-h)) / (h * h)


def check_small_eta(kappa: float, h: float = 1e-2) -> list[DerivativeCheck]:
    """Finite-difference checks of Im delta'(0) = -lambda1 and Re delta''(0) = 2 lambda2.

    Central differences at steps h, h/2, h/4; the order is estimated from
    successive differences and the error is reported at the finest step.
    """
    def im_delta(e):
        return float(dispersion(e, kappa).delta.imag)

    def re_delta(e):
        return float(dispersion(e, kappa).delta.real)

    out = []
    for name, rule, f, exact in (
        ("Im delta'(0)", _fd_first, im_delta, -lambda1(kappa)),
        ("Re delta''(0)", _fd_second, re_delta, 2 * lambda2(kappa)),
    ):
        d1, d2, d3 = (rule(f, h / k) for k in (1, 2, 4))
        order = float(np.log2(abs(d1 - d2) / abs(d2 - d3)))
        out.append(DerivativeCheck(name, d3, exact, abs(d3 - exact) / abs(exact), order))
    return out
