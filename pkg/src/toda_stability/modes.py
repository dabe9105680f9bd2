"""Secular modes of the soliton-linearized equation and the Gram projection.

Every mode is stored at y = 0, i.e. with the common factor e^{i y eta} dropped.
With E(s) = exp(-t delta(s) - gamma(s) z) sech(kappa z) and
E*(s) = exp(t delta(s) + gamma(s) z) sech(kappa z)::

    tg+  = E(-eta)/2              tg+* = E*(-eta)/2
    tg-  = -sinh k/(2 i eta) E(eta)   tg-* = -sinh k/(2 i eta) E*(eta)
    g    = (1 - e^{-d}) tg

All four g solve (d_t^2 + eta^2) Q = (1 - e^{-d})(1 + V)(e^d - 1) Q.  The real
combinations are

    tg1 = Re E(eta)      tg2 = -Im E(eta)/eta
    tg1* = -Im E*(eta)/eta    tg2* = Re E*(eta)

and the conserved pairing is W((q, p), g*) = <q, d_t g*> - <p, g*>.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dispersion as disp
from . import jost, soliton
from .lattice import LatticeWindow, backward_diff, pairing, wpair

GRAM_DET_TOL = 1e-8
ETA_ZERO = 1e-12


class DegenerateGramError(np.linalg.LinAlgError):
    pass


def _exponentials(eta, t, kappa, n):
    """E(s), d_t E(s), E*(s), d_t E*(s) at s = eta and s = -eta."""
    z = soliton.moving_coordinate(n, t, kappa)
    lc = soliton.logcosh(kappa * z)
    ST = np.sinh(kappa) * np.tanh(kappa * z)
    out = {}
    for key, s in (("p", eta), ("m", -eta)):
        d = disp.dispersion(s, kappa)
        E = np.exp(-t * d.delta - d.gamma * z - lc)
        Es = np.exp(t * d.delta + d.gamma * z - lc)
        out["E" + key] = E
        out["dE" + key] = E * (d.mu + ST)
        out["Es" + key] = Es
        out["dEs" + key] = Es * (-d.mu + ST)
    return out


def _real_combinations(eta, t, kappa, n):
    """tg1, tg2, tg1*, tg2* and their time derivatives."""
    if abs(eta) < ETA_ZERO:
        z = soliton.moving_coordinate(n, t, kappa)
        S = np.sinh(kappa)
        T = np.tanh(kappa * z)
        E = 1.0 - T  # e^{-k z} sech(k z)
        Es = 1.0 + T  # e^{k z} sech(k z)
        dE = S * (1 - T * T)
        dEs = -S * (1 - T * T)
        lin = -disp.lambda1(kappa) * t + z / S
        dlin = -1.0 / np.tanh(kappa)
        return {
            "tg1": E, "dtg1": dE,
            "tg2": E * lin, "dtg2": dE * lin + E * dlin,
            "tg1*": -Es * lin, "dtg1*": -(dEs * lin + Es * dlin),
            "tg2*": Es, "dtg2*": dEs,
        }
    x = _exponentials(eta, t, kappa, n)
    return {
        "tg1": x["Ep"].real, "dtg1": x["dEp"].real,
        "tg2": -x["Ep"].imag / eta, "dtg2": -x["dEp"].imag / eta,
        "tg1*": -x["Esp"].imag / eta, "dtg1*": -x["dEsp"].imag / eta,
        "tg2*": x["Esp"].real, "dtg2*": x["dEsp"].real,
    }


@dataclass
class ModeBundle:
    """Secular modes on a window at one (t, eta).

    ``tilde`` and ``modes`` map names such as ``"+"``, ``"-*"``, ``"1"``, ``"2*"``
    to arrays on the window; ``dt`` holds the time derivatives of the g's and
    ``dt_tilde`` those of the tilde modes.  The complex +/- family is absent
    at eta = 0.
    """

    eta: float
    t: float
    kappa: float
    window: LatticeWindow
    tilde: dict = field(default_factory=dict)
    dt_tilde: dict = field(default_factory=dict)
    modes: dict = field(default_factory=dict)
    dt: dict = field(default_factory=dict)

    def g(self, name):
        return self.modes[name]

    def bold(self, name):
        """(g, d_t g) for a mode, (d_t g*, -g*) for a dual mode."""
        if name.endswith("*"):
            return self.dt[name], -self.modes[name]
        return self.modes[name], self.dt[name]


def mode_bundle(eta: float, t: float, kappa: float, window: LatticeWindow) -> ModeBundle:
    """Build all secular modes at (t, eta) on ``window``."""
    n = window.extended(left=1).sites
    b = ModeBundle(float(eta), float(t), kappa, window)

    def add(name, tg, dtg):
        b.tilde[name] = tg[1:]
        b.dt_tilde[name] = dtg[1:]
        b.modes[name] = backward_diff(tg)[1:]
        b.dt[name] = backward_diff(dtg)[1:]

    if abs(eta) >= ETA_ZERO:
        x = _exponentials(eta, t, kappa, n)
        cm = -np.sinh(kappa) / (2j * eta)
        add("+", x["Em"] / 2, x["dEm"] / 2)
        add("+*", x["Esm"] / 2, x["dEsm"] / 2)
        add("-", cm * x["Ep"], cm * x["dEp"])
        add("-*", cm * x["Esp"], cm * x["dEsp"])
    r = _real_combinations(eta, t, kappa, n)
    for j in ("1", "2", "1*", "2*"):
        add(j, r["tg" + j], r["dtg" + j])
    return b


def W(b: ModeBundle, left: str, right: str) -> complex:
    """<g_left, d_t g_right> - <d_t g_left, g_right>."""
    return complex(pairing(b.modes[left], b.dt[right]) - pairing(b.dt[left], b.modes[right]))


def gram(b: ModeBundle) -> np.ndarray:
    """A = [[<g1, g1*>, <g2, g1*>], [<g1, g2*>, <g2, g2*>]] with <.,.> the W pairing."""
    return np.array([[W(b, "1", "1*"), W(b, "2", "1*")],
                     [W(b, "1", "2*"), W(b, "2", "2*")]])


def gram_closed(eta: float, kappa: float) -> np.ndarray:
    """Closed-form Gram matrix from the +/- pairings (-2 mu(-+eta))."""
    d = disp.dispersion(eta, kappa)
    csch = 1.0 / np.sinh(kappa)
    mu = complex(d.mu)
    if abs(eta) < ETA_ZERO:
        off = 4 * np.cosh(kappa) / np.sinh(kappa) ** 2  # limit of 4 Im mu / (eta sinh k)
        return np.array([[-4.0, off], [0.0, -4.0]])
    return np.array([[-4 * csch * mu.real, 4 * mu.imag / (eta * np.sinh(kappa))],
                     [-4 * csch * eta * mu.imag, -4 * csch * mu.real]])


def orthogonality(b: ModeBundle) -> dict[str, complex]:
    """Defects of the +/- orthogonality relations (all should vanish)."""
    d = disp.dispersion(b.eta, b.kappa)
    mu_p = complex(d.mu)
    mu_m = mu_p.conjugate()
    out = {
        "W(g+, g+*)": W(b, "+", "+*"),
        "W(g-, g-*)": W(b, "-", "-*"),
        "W(g+, g-*) + 2 mu(-eta)": W(b, "+", "-*") + 2 * mu_m,
        "W(g-, g+*) + 2 mu(eta)": W(b, "-", "+*") + 2 * mu_p,
    }
    return out


def orthogonality_tilde_form(b: ModeBundle) -> dict[str, complex]:
    """<tg, d_t g*> - <d_t tg, g*> for the same-sign pairs, read literally."""
    out = {}
    for s in ("+", "-"):
        out[s] = complex(pairing(b.tilde[s], b.dt[s + "*"]) - pairing(b.dt_tilde[s], b.modes[s + "*"]))
    return out


def g_tg_residual(b: ModeBundle) -> float:
    """g = (1 - e^{-d}) tg on the window interior (independent recomputation)."""
    err = 0.0
    for name, g in b.modes.items():
        tg = b.tilde[name]
        r = g[1:] - (tg[1:] - tg[:-1])
        err = max(err, float(np.max(np.abs(r)) / max(np.max(np.abs(g)), 1e-300)))
    return err


def product_forms(eta: float, t: float, kappa: float, window: LatticeWindow) -> dict[str, np.ndarray]:
    """The tilde modes and g+, g- rebuilt from Jost functions at y = 0 (s = x = t/2)."""
    n = window.sites
    s = x = t / 2
    d_p = disp.dispersion(eta, kappa)
    d_m = disp.dispersion(-eta, kappa)
    a = jost.pole_a(kappa)
    tau = soliton.tau_sx(n, s, x, kappa)
    pa = jost.phi(a, n, s, x, kappa)
    out = {
        "+": jost.phi0(complex(d_m.beta_plus), n, s, x) / tau,
        "+*": jost.phi0(complex(d_m.beta_minus), n, s, x) / tau,
        "-": pa * jost.phi0_star(complex(d_p.beta_minus), n, s, x) / (2j * eta),
        "-*": pa * jost.phi0_star(complex(d_p.beta_plus), n, s, x) / (2j * eta),
    }
    # g+ = e^{-d} phi(beta_+(-eta)) / tau  and  g- = e^{-d} (phi(a) phi*(beta_-(eta)))
    out["g+"] = jost.phi(complex(d_m.beta_plus), n - 1, s, x, kappa) / tau
    out["g-"] = jost.phi(a, n - 1, s, x, kappa) * jost.phi_star(complex(d_p.beta_minus), n - 1, s, x, kappa)
    return out


def mode_equation_residual(eta, t, kappa, window, name, h=1e-3) -> float:
    """(d_t^2 + eta^2) g - (1 - e^{-d})(1 + V)(e^d - 1) g, d_t^2 by central differences of d_t g."""
    wide = window.extended(1, 1)
    bp = mode_bundle(eta, t + h, kappa, wide)
    bm = mode_bundle(eta, t - h, kappa, wide)
    b0 = mode_bundle(eta, t, kappa, wide)
    g = b0.modes[name]
    d2 = (bp.dt[name] - bm.dt[name]) / (2 * h)
    V = soliton.potential(wide.sites, t, kappa)
    fwd = (1 + V[:-1]) * (g[1:] - g[:-1])  # (1+V)(e^d - 1)g on sites 0..end-1
    L = fwd[1:] - fwd[:-1]  # (1 - e^{-d}) applied, sites 1..end-1
    r = d2[1:-1] + eta ** 2 * g[1:-1] - L
    scale = np.abs(d2[1:-1]) + eta ** 2 * np.abs(g[1:-1]) + np.abs(L)
    return float(np.max(np.abs(r) / np.maximum(scale, 1e-300)))


def secular_pairings(q, p, b: ModeBundle, which=("1*", "2*"), rform: bool = False) -> np.ndarray:
    """W((q, p), g*) for the requested dual modes.

    For a state in R-form (R = (e^d - 1) Q) the value is computed from the
    tilde dual mode, W_Q = -(<R, d_t tg*> - <d_t R, tg*>).
    """
    out = []
    for name in which:
        if rform:
            out.append(-(pairing(q, b.dt_tilde[name]) - pairing(p, b.tilde[name])))
        else:
            out.append(wpair(q, p, b.modes[name], b.dt[name]))
    return np.array(out, dtype=complex)


def project_secular(q, p, b: ModeBundle, gram_matrix: np.ndarray | None = None):
    """Remove the g1, g2 components so that the pairings with g1*, g2* vanish.

    Returns (q, p, coefficients).  Raises DegenerateGramError when |det A| is
    below GRAM_DET_TOL.
    """
    A = gram(b) if gram_matrix is None else gram_matrix
    if abs(np.linalg.det(A)) < GRAM_DET_TOL:
        raise DegenerateGramError(f"Gram determinant {np.linalg.det(A):.3e} too small at eta={b.eta}")
    c = np.linalg.solve(A, secular_pairings(q, p, b))
    q = q - c[0] * b.modes["1"] - c[1] * b.modes["2"]
    p = p - c[0] * b.dt["1"] - c[1] * b.dt["2"]
    return q, p, c


def profile_amplitudes(kappa: float, window: LatticeWindow) -> dict[str, float]:
    """Compare g1*(0,0), g2*(0,0) with -csch k (1 + d_k Q) and -csch k d_t Q."""
    b = mode_bundle(0.0, 0.0, kappa, window)
    n = window.sites
    bg = soliton.background(n, 0.0, kappa)
    z = n.astype(float)
    dkQ = z * np.tanh(kappa * z) - (z - 1) * np.tanh(kappa * (z - 1))
    csch = 1 / np.sinh(kappa)
    return {
        "g1*": float(np.max(np.abs(b.modes["1*"] + csch * (1 + dkQ)))),
        "g2*": float(np.max(np.abs(b.modes["2*"] + csch * bg.dtQ))),
    }
