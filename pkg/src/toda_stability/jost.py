"""Jost functions of the soliton Lax pair and their finite-difference checks.

Variables are the light-cone pair (s, x) with t = x + s and y = x - s.
The Lax operators act on sequences in n::

    L1 = d_s + (1 + V) e^{-d}
    L2 = d_x - e^{d} - e^{d} (d_x q) e^{-d},    q_n = log(tau_n / tau_{n-1})

and the vacuum pair is L1 = d_s + e^{-d}, L2 = d_x - e^{d}.  All derivatives
in s and x below are taken by central differences; nothing is differentiated
symbolically except the coefficient d_x q.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import soliton

POLE_TOL = 1e-8


class PoleError(ValueError):
    """Raised when a spectral parameter sits on a pole of the dual Jost function."""


def pole_a(kappa: float) -> float:
    return -np.exp(kappa)


def _n(n):
    return np.asarray(n, dtype=np.int64)


def phi0(beta, n, s, x):
    """Vacuum Jost function beta^n exp(beta x - s/beta)."""
    beta = complex(beta)
    return np.exp(_n(n) * np.log(beta) + beta * x - s / beta)


def phi0_star(beta, n, s, x):
    """Dual vacuum Jost function beta^{-n} exp(-beta x + s/beta)."""
    beta = complex(beta)
    return np.exp(-_n(n) * np.log(beta) - beta * x + s / beta)


def _t(s, x):
    return x + s


def _beta_plus_tanh(beta, sign, kz, kappa):
    """beta + cosh k + sign * sinh k * tanh(kz) without cancellation near beta = -e^{+-k}.

    Uses 1 -+ tanh(x) = e^{-+x} sech(x) and cosh k +- sinh k = e^{+-k}.
    """
    S = np.sinh(kappa)
    x = sign * np.asarray(kz, dtype=float)
    one_minus = np.exp(-x - soliton.logcosh(x))  # 1 - tanh x
    one_plus = np.exp(x - soliton.logcosh(x))  # 1 + tanh x
    return np.where(x >= 0, (beta + np.exp(kappa)) - S * one_minus,
                    (beta + np.exp(-kappa)) + S * one_plus)


def phi(beta, n, s, x, kappa):
    """Soliton Jost function phi0(beta) * (beta - tau_{n+1}/tau_n).

    tau_{n+1}/tau_n = -cosh k - sinh k tanh(k z_n).
    """
    n = _n(n)
    kz = kappa * soliton.moving_coordinate(n, _t(s, x), kappa)
    return phi0(beta, n, s, x) * _beta_plus_tanh(complex(beta), 1.0, kz, kappa)


def _check_pole(beta, kappa):
    a = pole_a(kappa)
    if min(abs(beta - a), abs(beta - 1 / a)) < POLE_TOL:
        raise PoleError(f"beta={beta!r} is within {POLE_TOL} of a pole at {a} or {1 / a}")


def phi_star(beta, n, s, x, kappa):
    """Dual soliton Jost function.

    beta^{-n} exp(-beta x + s/beta) (beta - tau_n/tau_{n+1}) / ((beta - a)(beta - 1/a))
    with a = -e^kappa.
    """
    beta = complex(beta)
    _check_pole(beta, kappa)
    n = _n(n)
    a = pole_a(kappa)
    # tau_n/tau_{n+1} = -cosh k + sinh k tanh(k z_{n+1})
    kz = kappa * soliton.moving_coordinate(n + 1, _t(s, x), kappa)
    return phi0_star(beta, n, s, x) * _beta_plus_tanh(beta, -1.0, kz, kappa) / ((beta - a) * (beta - 1 / a))


def phi_star_resolvent(beta, n, s, x, kappa):
    """Same dual function through beta^{-n} e^{..} (beta - d_x)^{-1} tau_{n+1} / tau_{n+1}.

    tau_n is a sum of two exponentials in x, so the resolvent acts termwise.
    """
    beta = complex(beta)
    _check_pole(beta, kappa)
    n = _n(n)
    a = pole_a(kappa)
    m = n + 1
    e1 = np.exp(m * np.log(complex(a)) + a * x - s / a)
    e2 = np.exp(-m * np.log(complex(a)) + x / a - a * s)
    res = e1 / (beta - a) + e2 / (beta - 1 / a)
    return phi0_star(beta, n, s, x) * res / (e1 + e2)


def phi_at_a_closed(n, s, x, kappa):
    """(-1)^{n+1} e^{-y cosh k} sinh k sech(k z_n)."""
    n = _n(n)
    t, y = x + s, x - s
    sign = np.where(n % 2 == 0, -1.0, 1.0)
    z = soliton.moving_coordinate(n, t, kappa)
    return sign * np.exp(-y * np.cosh(kappa)) * np.sinh(kappa) / np.cosh(kappa * z)


def residues(n, s, x, kappa):
    """Closed-form residues of phi_star at a and 1/a, scaled as (1/a) Res_a and a Res_{1/a}."""
    n = _n(n)
    a = pole_a(kappa)
    t = x + s
    ra = soliton.tau_ratio(n, n + 1, t, kappa)
    res_a = phi0_star(a, n, s, x) * (a - ra) / (a - 1 / a)
    res_b = phi0_star(1 / a, n, s, x) * (1 / a - ra) / (1 / a - a)
    return res_a / a, a * res_b


def residue_contour(n, s, x, kappa, center, radius=1e-2, points=64):
    """Residue of phi_star at ``center`` by the trapezoid rule on a small circle."""
    th = 2 * np.pi * np.arange(points) / points
    z = center + radius * np.exp(1j * th)
    vals = np.array([phi_star(b, n, s, x, kappa) for b in z])
    return np.mean(vals * (z - center)[:, None] if vals.ndim > 1 else vals * (z - center), axis=0)


def one_over_shifted_tau(n, s, x, kappa):
    return 1.0 / soliton.tau_sx(_n(n) + 1, s, x, kappa)


def _V(n, s, x, kappa):
    return soliton.potential(n, x + s, kappa)


def _dxq(n, s, x, kappa):
    """d_x log(tau_{n+1}/tau_n)."""
    S = np.sinh(kappa)
    z = soliton.moving_coordinate(n, x + s, kappa)
    return -S * (np.tanh(kappa * (z + 1)) - np.tanh(kappa * z))


def _ds(f, h, s, x):
    return (f(s + h, x) - f(s - h, x)) / (2 * h)


def _dx(f, h, s, x):
    return (f(s, x + h) - f(s, x - h)) / (2 * h)


def _rel(res, *terms):
    scale = sum(np.abs(t) for t in terms)
    return float(np.max(np.abs(res) / np.where(scale > 0, scale, 1.0)))


def lax_residuals(beta, n, s, x, kappa, h=1e-3) -> dict[str, float]:
    """Relative residuals of both Lax equations for phi and of their duals for phi_star."""
    n = _n(n)
    beta = complex(beta)
    F = lambda m: (lambda ss, xx: phi(beta, m, ss, xx, kappa))
    G = lambda m: (lambda ss, xx: phi_star(beta, m, ss, xx, kappa))
    V0 = _V(n, s, x, kappa)
    V1 = _V(n + 1, s, x, kappa)
    dq = _dxq(n, s, x, kappa)
    p, pm, pp = phi(beta, n, s, x, kappa), phi(beta, n - 1, s, x, kappa), phi(beta, n + 1, s, x, kappa)
    q, qm, qp = (phi_star(beta, n + k, s, x, kappa) for k in (0, -1, 1))
    ds_p, dx_p = _ds(F(n), h, s, x), _dx(F(n), h, s, x)
    ds_q, dx_q = _ds(G(n), h, s, x), _dx(G(n), h, s, x)
    return {
        "L1 phi": _rel(ds_p + (1 + V0) * pm, ds_p, (1 + V0) * pm),
        "L2 phi": _rel(dx_p - pp - dq * p, dx_p, pp, dq * p),
        "L1* phi_star": _rel(ds_q - (1 + V1) * qp, ds_q, (1 + V1) * qp),
        "L2* phi_star": _rel(dx_q + qm + dq * q, dx_q, qm, dq * q),
    }


def vacuum_lax_residuals(beta, n, s, x, h=1e-3) -> dict[str, float]:
    n = _n(n)
    beta = complex(beta)
    F = lambda ss, xx: phi0(beta, n, ss, xx)
    G = lambda ss, xx: phi0_star(beta, n, ss, xx)
    ds_p, dx_p = _ds(F, h, s, x), _dx(F, h, s, x)
    ds_q, dx_q = _ds(G, h, s, x), _dx(G, h, s, x)
    pm, pp = phi0(beta, n - 1, s, x), phi0(beta, n + 1, s, x)
    qm, qp = phi0_star(beta, n - 1, s, x), phi0_star(beta, n + 1, s, x)
    return {
        "L1 phi0": _rel(ds_p + pm, ds_p, pm),
        "L2 phi0": _rel(dx_p - pp, dx_p, pp),
        "L1* phi0_star": _rel(ds_q - qp, ds_q, qp),
        "L2* phi0_star": _rel(dx_q + qm, dx_q, qm),
    }


def tau_lax_residuals(n, s, x, kappa, h=1e-3) -> dict[str, float]:
    """The sequence 1/tau_{n+1} (the pole residue of phi_star) solves the dual pair."""
    n = _n(n)
    f = lambda m: (lambda ss, xx: one_over_shifted_tau(m, ss, xx, kappa))
    V1 = _V(n + 1, s, x, kappa)
    dq = _dxq(n, s, x, kappa)
    g, gm, gp = (one_over_shifted_tau(n + k, s, x, kappa) for k in (0, -1, 1))
    ds_g, dx_g = _ds(f(n), h, s, x), _dx(f(n), h, s, x)
    return {
        "L1* 1/tau": _rel(ds_g - (1 + V1) * gp, ds_g, (1 + V1) * gp),
        "L2* 1/tau": _rel(dx_g + gm + dq * g, dx_g, gm, dq * g),
    }


def product_residual(beta, n, s, x, kappa, h=1e-3) -> float:
    """d_x d_s (phi phi_star) against (e^d - 1)(1 + V)(1 - e^{-d}) (phi phi_star)."""
    n = _n(n)
    beta = complex(beta)

    def P(ss, xx, m=n):
        return phi(beta, m, ss, xx, kappa) * phi_star(beta, m, ss, xx, kappa)

    mixed = (P(s + h, x + h) - P(s + h, x - h) - P(s - h, x + h) + P(s - h, x - h)) / (4 * h * h)
    Pm, P0, Pp = P(s, x, n - 1), P(s, x, n), P(s, x, n + 1)
    V0 = _V(n, s, x, kappa)
    V1 = _V(n + 1, s, x, kappa)
    right = (1 + V1) * (Pp - P0) - (1 + V0) * (P0 - Pm)
    return _rel(mixed - right, mixed, (1 + V1) * (Pp - P0), (1 + V0) * (P0 - Pm))


@dataclass
class LaxCheck:
    """Residual table for a set of spectral points, at step h and h/2."""

    betas: list
    h: float
    residuals: dict[str, float] = field(default_factory=dict)
    residuals_half: dict[str, float] = field(default_factory=dict)

    @property
    def worst(self) -> float:
        return max(self.residuals.values())

    @property
    def orders(self) -> dict[str, float]:
        out = {}
        for k, r in self.residuals.items():
            r2 = self.residuals_half[k]
            out[k] = float(np.log2(r / r2)) if r2 > 0 and r > 0 else float("inf")
        return out


def test_points(kappa: float, etas=(0.1, 0.2, 0.5), count: int = 12) -> list[complex]:
    """Spectral points on |beta| = e^{kappa/2} plus beta_pm(eta) for the given eta."""
    from .dispersion import dispersion

    th = 2 * np.pi * (np.arange(count) + 0.5) / count
    pts = list(np.exp(kappa / 2) * np.exp(1j * th))
    for e in etas:
        d = dispersion(e, kappa)
        pts += [complex(d.beta_plus), complex(d.beta_minus)]
    return pts


def run_lax_check(kappa: float, betas, sites=range(-4, 5), samples=((0.1, 0.2), (-0.3, 0.4), (0.5, -0.2)),
                  h: float = 1e-3) -> LaxCheck:
    """Collect the worst residual per equation over spectral points, sites and (s, x) samples."""
    n = np.asarray(list(sites))
    chk = LaxCheck(list(betas), h)
    for step, store in ((h, chk.residuals), (h / 2, chk.residuals_half)):
        for b in betas:
            for s, x in samples:
                parts = dict(lax_residuals(b, n, s, x, kappa, step))
                parts.update(vacuum_lax_residuals(b, n, s, x, step))
                parts["product"] = product_residual(b, n, s, x, kappa, step)
                for k, r in parts.items():
                    store[k] = max(store.get(k, 0.0), r)
        for s, x in samples:
            for k, r in tau_lax_residuals(n, s, x, kappa, step).items():
                store[k] = max(store.get(k, 0.0), r)
    return chk


def shift_identities(beta, n, s, x, kappa) -> dict[str, float]:
    """Relative residuals of the algebraic relations between phi, phi0 and tau."""
    n = _n(n)
    beta = complex(beta)
    a = pole_a(kappa)
    t = x + s
    bg = soliton.background(n, t, kappa)
    bgp = soliton.background(n + 1, t, kappa)
    u, v, up, vp = bg.u, bg.v, bgp.u, bgp.v
    pa = lambda m: phi(a, m, s, x, kappa)
    out = {}
    out["phi(a) = u e^-d phi(a)"] = _rel(pa(n) - u * pa(n - 1), pa(n), u * pa(n - 1))
    out["phi(a) = e^d (v phi(a))"] = _rel(pa(n) - vp * pa(n + 1), pa(n), vp * pa(n + 1))
    out["phi(a) closed form"] = _rel(pa(n) - phi_at_a_closed(n, s, x, kappa), pa(n))
    p0 = lambda m: phi0(beta, m, s, x)
    out["phi0 - v e^-d phi0 = e^-d phi"] = _rel(
        p0(n) - v * p0(n - 1) - phi(beta, n - 1, s, x, kappa), p0(n), v * p0(n - 1))
    tn, tp = soliton.tau_sx(n, s, x, kappa), soliton.tau_sx(n + 1, s, x, kappa)
    out["(e^d - 1)(phi0/tau) = phi/e^d tau"] = _rel(
        p0(n + 1) / tp - p0(n) / tn - phi(beta, n, s, x, kappa) / tp, p0(n + 1) / tp, p0(n) / tn)
    q = lambda m: phi_star(beta, m, s, x, kappa)
    q0 = lambda m: phi0_star(beta, m, s, x)
    out["e^-d phi* - (e^d v) phi* = phi0*"] = _rel(q(n - 1) - vp * q(n) - q0(n), q(n - 1), vp * q(n))
    pref = -1.0 / ((beta - a) * (beta - 1 / a))
    lhs = pa(n) * q(n)
    rhs = pref * (pa(n + 1) * q0(n) - pa(n) * q0(n - 1))
    out["phi(a) phi* = difference form"] = _rel(lhs - rhs, lhs, rhs)
    out["phi* from shifted phi0*"] = dual_shift_residual(beta, n, s, x, kappa)
    out["phi* resolvent form"] = _rel(q(n) - phi_star_resolvent(beta, n, s, x, kappa), q(n))
    return out


def dual_shift_residual(beta, n, s, x, kappa) -> float:
    """phi* (beta - a)(beta - 1/a) = e^{-d} phi0* - (e^d u) phi0*."""
    n = _n(n)
    beta = complex(beta)
    a = pole_a(kappa)
    up = soliton.background(n + 1, x + s, kappa).u
    lhs = phi_star(beta, n, s, x, kappa) * (beta - a) * (beta - 1 / a)
    rhs = phi0_star(beta, n - 1, s, x) - up * phi0_star(beta, n, s, x)
    return _rel(lhs - rhs, lhs, rhs)
