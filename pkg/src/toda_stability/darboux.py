"""Darboux operators between the free and the soliton-linearized lattice.

At a fixed transverse wave number the first-order Darboux system reads::

    C(eta) Q1 = (A'(-i eta) - B'(i eta)) Q1' + (1 - e^{-d}) Q2'
    (e^d B(i eta) - A(-i eta)) Q1 + (e^d - 1) Q2 = C'(eta) Q1'

with u, v the Miura fields of the soliton and

    A(-i eta)  = -i eta - (1 - e^{-d}) u e^d      A'(-i eta) = -i eta - (1 - e^{-d}) u
    B(i eta)   =  i eta - (1 - e^{-d}) v          B'(i eta)  =  i eta e^{-d} - (1 - e^{-d}) v
    C = A - B,   C' = e^d B' - A'.

Operators are dense matrices on a window with zero extension; ``Q1, Q2`` are
free-lattice data and ``Q1', Q2'`` soliton data (value and time derivative).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dispersion as disp
from . import soliton
from .lattice import LatticeWindow, inv_backward_diff, inv_forward_diff, pairing, weighted_norm, wpair
from .modes import W, mode_bundle

ORTH_TOL = 1e-8
EDGE_BAND = 10


class OrthogonalityError(ValueError):
    def __init__(self, defect: float, msg: str = ""):
        super().__init__(msg or f"orthogonality defect {defect:.3e} above tolerance")
        self.defect = defect


def shift_matrix(N: int, k: int) -> np.ndarray:
    """Matrix of e^{k d} on N sites with zero extension."""
    return np.eye(N, k=k)


def apply_shift(kind: str, f, alpha: float = 0.0):
    """Apply e^d, e^{-d}, (e^d - 1)^{-1} or (1 - e^{-d})^{-1} with zero extension."""
    f = np.asarray(f)
    if kind == "shift+":
        return np.concatenate([f[..., 1:], np.zeros_like(f[..., :1])], axis=-1)
    if kind == "shift-":
        return np.concatenate([np.zeros_like(f[..., :1]), f[..., :-1]], axis=-1)
    if kind in ("inv+", "inv-"):
        if alpha <= 0:
            raise ValueError("inverse shift operators need alpha > 0 (bounded on l^2_alpha only)")
        return inv_forward_diff(f) if kind == "inv+" else inv_backward_diff(f)
    raise ValueError(f"unknown shift kind {kind!r}")


@dataclass
class DarbouxOps:
    """The six operators of the Darboux system at one (t, eta) on a window."""

    t: float
    eta: float
    kappa: float
    window: LatticeWindow
    A: np.ndarray
    B: np.ndarray
    Ap: np.ndarray
    Bp: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def C(self):
        return self.A - self.B

    @property
    def Cp(self):
        N = self.window.size
        return shift_matrix(N, 1) @ self.Bp - self.Ap

    @property
    def row2_left(self):
        """e^d B(i eta) - A(-i eta)."""
        return shift_matrix(self.window.size, 1) @ self.B - self.A

    @property
    def ApBp(self):
        return self.Ap - self.Bp


def build_ops(t: float, eta: float, kappa: float, window: LatticeWindow) -> DarbouxOps:
    N = window.size
    bg = soliton.background(window.sites, t, kappa)
    I = np.eye(N)
    Sp, Sm = shift_matrix(N, 1), shift_matrix(N, -1)
    U, Vd = np.diag(bg.u), np.diag(bg.v)
    Dm = I - Sm
    A = -1j * eta * I - Dm @ U @ Sp
    Ap = -1j * eta * I - Dm @ U
    B = 1j * eta * I - Dm @ Vd
    Bp = 1j * eta * Sm - Dm @ Vd
    return DarbouxOps(t, eta, kappa, window, A, B, Ap, Bp, bg.u, bg.v)


def signed_tau(window: LatticeWindow, t: float, kappa: float, offset: int = 0):
    """tau'_{n+offset} at y = 0 on the window (log-safe for moderate windows)."""
    return soliton.tau(window.sites + offset, t, kappa)


def D_matrix(eta: float, kappa: float, N: int) -> np.ndarray:
    """D(eta) = e^d + e^{-d} + 2 i eta + 2 cosh k."""
    return shift_matrix(N, 1) + shift_matrix(N, -1) + (2j * eta + 2 * np.cosh(kappa)) * np.eye(N)


def factorization_residuals(ops: DarbouxOps, rng=None, count: int = 50) -> dict[str, float]:
    """Check C and C' against their tau-conjugated D(+-eta) forms on random vectors.

    C' (1 - e^{-d}) = -(1 - e^{-d}) tau^{-1} D(-eta) tau is compared so that no
    inverse is needed.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    N = ops.window.size
    tau = np.diag(signed_tau(ops.window, ops.t, ops.kappa))
    tinv = np.diag(1 / np.diag(tau))
    Sp, Sm, I = shift_matrix(N, 1), shift_matrix(N, -1), np.eye(N)
    rhs_C = -Sm @ tau @ D_matrix(ops.eta, ops.kappa, N) @ tinv @ Sp
    lhs_Cp = ops.Cp @ (I - Sm)
    rhs_Cp = -(I - Sm) @ tinv @ D_matrix(-ops.eta, ops.kappa, N) @ tau
    # e^d C e^{-d} = -2 i eta + u + (e^d v) - e^d u - v e^{-d}
    U, Vd = np.diag(ops.u), np.diag(ops.v)
    rhs_conj = -2j * ops.eta * I + U + Sp @ Vd @ Sm - Sp @ U - Vd @ Sm
    inner = slice(EDGE_BAND, N - EDGE_BAND)
    out = {"C": 0.0, "C'": 0.0, "e^d C e^-d": 0.0}
    for _ in range(count):
        x = np.zeros(N, complex)
        x[inner] = rng.standard_normal(N - 2 * EDGE_BAND) + 1j * rng.standard_normal(N - 2 * EDGE_BAND)
        for key, L, R in (("C", ops.C, rhs_C), ("C'", lhs_Cp, rhs_Cp),
                          ("e^d C e^-d", Sp @ ops.C @ Sm, rhs_conj)):
            a, b = (L @ x)[inner], (R @ x)[inner]
            out[key] = max(out[key], float(np.linalg.norm(a - b) / np.linalg.norm(a)))
    return out


def adjoint_identities(ops: DarbouxOps) -> dict[str, float]:
    """Matrix-adjoint forms of the zero-order parts of A, A', B, B'.

    With the slot terms removed, A* = e^{-d} u (e^d - 1), A'* = u (e^d - 1),
    B* = v (e^d - 1), B'* = v (e^d - 1) (plus the conjugated slot terms).
    """
    N = ops.window.size
    Sp, Sm, I = shift_matrix(N, 1), shift_matrix(N, -1), np.eye(N)
    U, Vd = np.diag(ops.u), np.diag(ops.v)
    e = ops.eta
    inner = slice(1, N - 1)
    pairs = {
        "A*": (ops.A.conj().T, 1j * e * I + Sm @ U @ (Sp - I)),
        "A'*": (ops.Ap.conj().T, 1j * e * I + U @ (Sp - I)),
        "B*": (ops.B.conj().T, -1j * e * I + Vd @ (Sp - I)),
        "B'*": (ops.Bp.conj().T, -1j * e * Sp + Vd @ (Sp - I)),
    }
    return {k: float(np.max(np.abs((L - R)[inner, inner]))) for k, (L, R) in pairs.items()}


@dataclass(frozen=True)
class GreenKernel:
    eta: float
    kappa: float
    beta_plus: complex
    beta_minus: complex
    mu: complex

    def __call__(self, n):
        n = np.asarray(n)
        return np.exp(-np.abs(n) * np.log(self.beta_minus)) / (2 * self.mu)

    def fundamental(self, n):
        """Same kernel written as beta_+^n/(beta_+ - beta_-) (n >= 0), beta_-^n/(..) (n < 0)."""
        n = np.asarray(n)
        den = self.beta_plus - self.beta_minus
        lp = n * np.log(self.beta_plus)
        lm = n * np.log(self.beta_minus)
        return np.where(n >= 0, np.exp(np.where(n >= 0, lp, 0)), np.exp(np.where(n < 0, lm, 0))) / den

    def l1_norm_closed(self) -> float:
        bp, bm = abs(self.beta_plus), abs(self.beta_minus)
        return float((1 / (1 - bp) + 1 / (bm - 1)) / abs(self.beta_plus - self.beta_minus))


def green_kernel(eta: float, kappa: float) -> GreenKernel:
    d = disp.dispersion(eta, kappa)
    if abs(complex(d.mu)) < 1e-10:
        raise ValueError("mu(eta) is too close to the branch point")
    return GreenKernel(float(eta), kappa, complex(d.beta_plus), complex(d.beta_minus), complex(d.mu))


def solve_D(eta: float, kappa: float, f, window: LatticeWindow, t: float = 0.0, conjugate: bool = False):
    """Solve D(eta) u = f by convolution with the Green kernel.

    With ``conjugate`` solve tau D tau^{-1} u = f, i.e. u = tau k * (f / tau).
    """
    k = green_kernel(eta, kappa)
    n = window.sites
    K = k(n[:, None] - n[None, :])
    f = np.asarray(f, dtype=complex)
    if not conjugate:
        return K @ f
    sign, lt = soliton.log_tau(n, t, kappa)
    R = (sign[:, None] * sign[None, :]) * np.exp(lt[:, None] - lt[None, :])
    return (K * R) @ f


def _dual_plus(window, t, eta, kappa):
    """e^{-d} tg+*(eta) on the window."""
    b = mode_bundle(eta, t, kappa, window.extended(left=1))
    return b.tilde["+*"][:-1]


def orth1_defect(f, eta, t, kappa, window) -> float:
    """Relative size of <f, e^{-d} tg+*> (l^2_alpha / l^2_{-alpha} normalized)."""
    h = _dual_plus(window, t, eta, kappa)
    num = abs(complex(pairing(f, h)))
    den = weighted_norm(f, window) * weighted_norm(h, window, -window.alpha)
    return float(num / den) if den > 0 else 0.0


def green_matrix_C(eta: float, t: float, kappa: float, window: LatticeWindow) -> np.ndarray:
    """Matrix G with C(eta)^{-1} f = G f for f obeying the orthogonality condition.

    Left of the soliton (z_{n-1} < 0) G[n, m] = -k_{n-m} tau_{n-1}/tau_{m-1}; right of
    it the sum over m < n is traded, using the orthogonality, for a sum over
    m >= n so that the solution stays in l^2_alpha.
    """
    k = green_kernel(eta, kappa)
    n = window.sites
    d = n[:, None] - n[None, :]
    sgn, lt = soliton.log_tau(n - 1, t, kappa)
    lr = lt[:, None] - lt[None, :]
    sr = sgn[:, None] * sgn[None, :]
    logbm = np.log(k.beta_minus)
    lmu = np.log(2 * k.mu)
    left = -sr * np.exp(-np.abs(d) * logbm + lr - lmu)
    # right branch: -(beta_-^{d} - beta_-^{-d}) / (2 mu) * ratio, for m >= n (d <= 0)
    dd = np.where(d <= 0, d, 0)
    right = -sr * (np.exp(dd * logbm + lr - lmu) - np.exp(-dd * logbm + lr - lmu))
    right = np.where(d <= 0, right, 0)
    z_prev = soliton.moving_coordinate(n - 1, t, kappa)
    return np.where((z_prev >= 0)[:, None], right, left)


def solve_C(f, eta: float, t: float, kappa: float, window: LatticeWindow, tol: float = ORTH_TOL):
    """l^2_alpha solution of C(eta) u = f; needs <f, e^{-d} tg+*> = 0."""
    f = np.asarray(f, dtype=complex)
    defect = orth1_defect(f, eta, t, kappa, window)
    if defect > tol:
        raise OrthogonalityError(defect)
    return green_matrix_C(eta, t, kappa, window) @ f


def solve_Cprime(f, eta: float, t: float, kappa: float, window: LatticeWindow, pin: int = 0):
    """Solution of C'(eta) u = f with u_pin = 0, for |eta| < eta*.

    The square truncated system fixes the right-edge growth; the free
    multiple of the kernel vector g+ is then chosen so that u vanishes at
    ``pin``.
    """
    ops = build_ops(t, eta, kappa, window)
    u = np.linalg.solve(ops.Cp, np.asarray(f, dtype=complex))
    g = mode_bundle(eta, t, kappa, window).modes["+"]
    i = window.index(pin)
    return u - (u[i] / g[i]) * g


def _interior_rel(res, scale, window, band=EDGE_BAND):
    w = window.weights
    sl = window.interior(band)
    num = np.linalg.norm((res * w)[sl])
    den = np.linalg.norm((scale * w)[sl])
    return float(num / den) if den > 0 else float(num)


def darboux_residuals(Q1, Q2, Qp1, Qp2, ops: DarbouxOps, band: int = EDGE_BAND) -> tuple[float, float]:
    """Weighted relative residuals of both rows on the window interior."""
    r1 = ops.C @ Q1 - ops.ApBp @ Qp1 - (Qp2 - np.concatenate([[0], Qp2[:-1]]))
    r2 = ops.row2_left @ Q1 + (np.concatenate([Q2[1:], [0]]) - Q2) - ops.Cp @ Qp1
    scale = np.abs(Qp1) + np.abs(Qp2) + np.abs(Q1) + np.abs(Q2)
    return _interior_rel(r1, scale, ops.window, band), _interior_rel(r2, scale, ops.window, band)


def darboux_forward(Qp1, Qp2, eta: float, t: float, kappa: float, window: LatticeWindow,
                    tol: float = ORTH_TOL):
    """Free data (Q1, Q2) matching soliton data (Q1', Q2'); needs the + orthogonality."""
    ops = build_ops(t, eta, kappa, window)
    Qp1 = np.asarray(Qp1, dtype=complex)
    Qp2 = np.asarray(Qp2, dtype=complex)
    f = ops.ApBp @ Qp1 + (Qp2 - np.concatenate([[0], Qp2[:-1]]))
    Q1 = solve_C(f, eta, t, kappa, window, tol)
    Q2 = inv_forward_diff(ops.Cp @ Qp1 - ops.row2_left @ Q1)
    return Q1, Q2


def darboux_inverse(Q1, Q2, eta: float, t: float, kappa: float, window: LatticeWindow, pin: int = 0):
    """Soliton data (Q1', Q2') for free data (Q1, Q2), normalized against (d_t g-*, -g-*)."""
    ops = build_ops(t, eta, kappa, window)
    Q1 = np.asarray(Q1, dtype=complex)
    Q2 = np.asarray(Q2, dtype=complex)
    rhs = ops.row2_left @ Q1 + (np.concatenate([Q2[1:], [0]]) - Q2)
    Qp1 = solve_Cprime(rhs, eta, t, kappa, window, pin)
    Qp2 = inv_backward_diff(ops.C @ Q1 - ops.ApBp @ Qp1)
    b = mode_bundle(eta, t, kappa, window)
    den = W(b, "+", "-*")
    if abs(den) < 1e-12:
        raise ValueError("degenerate pairing between g+ and g-*")
    c = -wpair(Qp1, Qp2, b.modes["-*"], b.dt["-*"]) / den
    return Qp1 + c * b.modes["+"], Qp2 + c * b.dt["+"]


def weighted_section(M_full: np.ndarray, window: LatticeWindow, alpha: float) -> np.ndarray:
    """Weight-conjugated section e^{alpha n} M e^{-alpha n}: inputs on ``window``,
    outputs on the window widened by one site (so no output is truncated).

    ``M_full`` must be the operator built on ``window.extended(1, 1)``.
    """
    wide = window.extended(1, 1)
    w_out = np.exp(alpha * wide.sites)
    w_in = np.exp(-alpha * window.sites)
    return (w_out[:, None] * M_full[:, 1:-1]) * w_in[None, :]


def singular_values(op: str, eta: float, t: float, kappa: float, window: LatticeWindow,
                    alpha: float | None = None) -> np.ndarray:
    """Singular values of C, C' (or the adjoint C*, on l^2_{-alpha}) on a weighted section."""
    a = window.alpha if alpha is None else alpha
    ops = build_ops(t, eta, kappa, window.extended(1, 1))
    if op == "C":
        M, w = ops.C, a
    elif op == "C'":
        M, w = ops.Cp, a
    elif op == "C*":
        M, w = ops.C.conj().T, -a
    elif op == "C'*":
        M, w = ops.Cp.conj().T, -a
    else:
        raise ValueError(op)
    return np.linalg.svd(weighted_section(M, window, w), compute_uv=False)


def kernel_dimension(op, eta, t, kappa, window, rtol: float = 1e-6, alpha=None) -> int:
    s = singular_values(op, eta, t, kappa, window, alpha)
    return int(np.sum(s < rtol * s[0]))


def inverse_norm(op, eta, t, kappa, window, alpha=None) -> float:
    """1 / (smallest singular value) of the weighted section: ||op^{-1}|| on l^2_alpha."""
    s = singular_values(op, eta, t, kappa, window, alpha)
    return float(1 / s[-1])


def kernel_residuals(eta: float, t: float, kappa: float, window: LatticeWindow, band=EDGE_BAND):
    """||C' g+|| / ||g+|| and ||C* e^{-d} tg+*|| / ||e^{-d} tg+*|| on the interior."""
    ops = build_ops(t, eta, kappa, window)
    b = mode_bundle(eta, t, kappa, window)
    h = _dual_plus(window, t, eta, kappa)
    sl = window.interior(band)
    g = b.modes["+"]
    r1 = (ops.Cp @ g)[sl]
    r2 = (ops.C.conj().T @ h)[sl]
    return (float(np.linalg.norm(r1) / np.linalg.norm(g[sl])),
            float(np.linalg.norm(r2) / np.linalg.norm(h[sl])))


def _rel_pointwise(res, terms, band, N):
    sl = slice(band, N - band)
    scale = sum(np.abs(x) for x in terms)
    return float(np.max(np.abs(res[sl]) / np.maximum(scale[sl], 1e-300)))


def mode_operator_identities(eta: float, t: float, kappa: float, window: LatticeWindow,
                        band: int = EDGE_BAND) -> dict[str, float]:
    """Relative residuals of the six mode/operator identities at (t, eta)."""
    from . import jost

    if eta == 0:
        raise ValueError("identities need eta != 0")
    ops = build_ops(t, eta, kappa, window)
    b = mode_bundle(eta, t, kappa, window.extended(left=2, right=1))
    N = window.size
    cut = slice(2, 2 + N)
    g = {k: v[cut] for k, v in b.modes.items()}
    dg = {k: v[cut] for k, v in b.dt.items()}
    tg = {k: v[cut] for k, v in b.tilde.items()}
    tg_m1 = {k: v[1:1 + N] for k, v in b.tilde.items()}  # e^{-d} tg
    tg_m2 = {k: v[0:N] for k, v in b.tilde.items()}  # e^{-2d} tg
    tg_p1 = {k: v[3:3 + N] for k, v in b.tilde.items()}  # e^{d} tg
    M = ops.ApBp
    MH = M.conj().T
    absM, absMH = np.abs(M), np.abs(MH)
    out = {}
    dgp_prev = np.concatenate([[b.dt["+"][1]], dg["+"][:-1]])
    lhs = M @ g["+"] + dg["+"] - dgp_prev
    out["(A'-B') g+ + (1-e^-d) d_t g+ = 0"] = _rel_pointwise(
        lhs, [absM @ np.abs(g["+"]), np.abs(dg["+"]), np.abs(dgp_prev)], band, N)
    rhs = MH @ tg_m1["+*"]
    out["d_t g+* = (A'-B')* e^-d tg+*"] = _rel_pointwise(
        dg["+*"] - rhs, [np.abs(dg["+*"]), absMH @ np.abs(tg_m1["+*"])], band, N)
    dgm_prev = np.concatenate([[b.dt["-"][1]], dg["-"][:-1]])
    lhs = M @ g["-"] + dg["-"] - dgm_prev
    rhs = -2j * eta * (tg["-"] - tg_m2["-"])
    out["(A'-B') g- + (1-e^-d) d_t g- = -2i eta (1-e^-2d) tg-"] = _rel_pointwise(
        lhs - rhs, [absM @ np.abs(g["-"]), np.abs(dg["-"]), np.abs(dgm_prev), np.abs(rhs)], band, N)
    rhs = MH @ tg_m1["-*"] - 2j * eta * (tg["-*"] + tg_m1["-*"])
    out["d_t g-* = (A'-B')* e^-d tg-* - 2i eta (1+e^-d) tg-*"] = _rel_pointwise(
        dg["-*"] - rhs, [np.abs(dg["-*"]), absMH @ np.abs(tg_m1["-*"]),
                         2 * abs(eta) * (np.abs(tg["-*"]) + np.abs(tg_m1["-*"]))], band, N)
    # e^d C e^{-d} acting on phi0(a) phi0*(beta_-+(eta)) at y = 0
    n = window.sites
    s = x = t / 2
    a = jost.pole_a(kappa)
    d = disp.dispersion(eta, kappa)
    Sp, Sm = shift_matrix(N, 1), shift_matrix(N, -1)
    E = Sp @ ops.C @ Sm
    for label, beta, name in (("beta_-", complex(d.beta_minus), "-"), ("beta_+", complex(d.beta_plus), "-*")):
        prod = jost.phi0(a, n, s, x) * jost.phi0_star(beta, n, s, x)
        lhs = E @ prod
        rhs = -2j * eta * (tg_p1[name] - tg_m1[name])
        out["e^d C e^-d phi0(a) phi0*(" + label + ") = -2i eta (e^d - e^-d) tg"] = _rel_pointwise(
            lhs - rhs, [np.abs(E) @ np.abs(prod), np.abs(rhs)], band, N)
    return out


def inverse_norm_exponent(kappa: float, alpha: float, eta2_factor: float = 5.0,
                          window: LatticeWindow | None = None, count: int = 8) -> float:
    """Slope of log ||C(eta)^{-1}|| against log <eta> on [eta2, 4 eta2], eta2 = factor * eta*."""
    win = LatticeWindow(-60, 60, alpha) if window is None else window.with_alpha(alpha)
    e2 = eta2_factor * disp.eta_star(kappa, alpha)
    etas = np.geomspace(e2, 4 * e2, count)
    norms = [inverse_norm("C", e, 0.0, kappa, win) for e in etas]
    return float(np.polyfit(np.log(np.sqrt(1 + etas ** 2)), np.log(norms), 1)[0])


def secular_free_data(eta: float, t: float, kappa: float, window: LatticeWindow,
                      rng: np.random.Generator, support=(-8, 8)):
    """Random local soliton data with the g+* pairing removed by a multiple of g-."""
    from .evolution import random_local_data

    q, p = random_local_data(window, rng, support)
    b = mode_bundle(eta, t, kappa, window)
    c = wpair(q, p, b.modes["+*"], b.dt["+*"]) / W(b, "-", "+*")
    return q - c * b.modes["-"], p - c * b.dt["-"]


def correspondence_drift(Qp1, Qp2, Q1, Q2, eta: float, kappa: float, window: LatticeWindow,
                         T: float = 10.0, dt: float = 0.02, t0: float = 0.0, record: int = 10,
                         band: int = EDGE_BAND) -> float:
    """Evolve (Q1', Q2') on the soliton and (Q1, Q2) on the free lattice and return the
    largest residual of the Darboux system over the checkpoints (t0 included)."""
    from .evolution import ModeState, evolve

    sp = ModeState.make(Qp1, Qp2, eta, t0, window, "Q-soliton")
    sf = ModeState.make(Q1, Q2, eta, t0, window, "free")
    worst = max(darboux_residuals(Q1, Q2, Qp1, Qp2, build_ops(t0, eta, kappa, window), band))
    for a, b in zip(evolve(sp, T, dt, kappa, record), evolve(sf, T, dt, kappa, record)):
        ops = build_ops(a.t, eta, kappa, window)
        worst = max(worst, *darboux_residuals(b.q, b.p, a.q, a.p, ops, band))
    return float(worst)


def miura_kernel_residuals(beta: complex, kappa: float, s: float = 0.1, x: float = 0.2,
                           sites=range(-6, 7), h: float = 2.5e-3) -> tuple[float, float]:
    """Relative residuals of A'(d_s) psi = 0 and B'(d_x) psi = 0 for psi = e^{-d} phi(beta) / tau'.

    Derivatives use Richardson-extrapolated central differences (fourth order).
    """
    from . import jost

    n = np.asarray(list(sites))

    def psi(ss, xx, m=n):
        return jost.phi(beta, m - 1, ss, xx, kappa) / soliton.tau_sx(m, ss, xx, kappa)

    def rich(f):
        d = lambda e: (f(e) - f(-e)) / (2 * e)  # noqa: E731
        return (4 * d(h / 2) - d(h)) / 3

    t = x + s
    here, prev = soliton.background(n, t, kappa), soliton.background(n - 1, t, kappa)
    p, pm = psi(s, x), psi(s, x, n - 1)
    rA = rich(lambda e: psi(s + e, x)) - (here.u * p - prev.u * pm)
    rB = rich(lambda e: psi(s, x + e, n - 1)) - (here.v * p - prev.v * pm)
    scale = float(np.max(np.abs(p)))
    return float(np.max(np.abs(rA)) / scale), float(np.max(np.abs(rB)) / scale)
