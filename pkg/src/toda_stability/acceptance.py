"""The fourteen acceptance checks as plain functions returning ``Check`` records."""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import darboux as dx
from . import dispersion as disp
from . import evolution as ev
from . import jost
from . import modes
from . import profile as pf
from .lattice import LatticeWindow, weighted_norm

KAPPA = 1.0
ALPHA = 0.5


@dataclass
class Check:
    number: int
    name: str
    passed: bool
    value: float
    tolerance: float
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def line(self) -> str:
        return (f"[{self.status.upper():4s}] {self.number:2d} {self.name}: "
                f"value={self.value:.3e} tol={self.tolerance:.1e} ({self.seconds:.1f}s)")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        return d


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        chk = fn(*args, **kwargs)
        chk.seconds = time.perf_counter() - t0
        return chk

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def dispersion_identities() -> Check:
    worst = 0.0
    details = {}
    for k in (0.5, 1.0, 2.0):
        s = disp.dispersion_scan(k, eta_max=5.0, n=4001)
        details[f"product kappa={k}"] = s.product_error
        details[f"conjugate kappa={k}"] = s.conjugate_error
        worst = max(worst, s.product_error, s.conjugate_error)
    pole = 0.0
    for k, a in ((0.5, 0.3), (1.0, 0.5), (2.0, 1.5)):
        e = disp.eta_star(k, a)
        err = abs(abs(complex(disp.dispersion(e, k).beta_minus)) - math.exp(a + k)) / math.exp(a + k)
        details[f"|beta_-(eta*)| kappa={k} alpha={a}"] = err
        pole = max(pole, err)
    ok = worst < 1e-12 and pole < 1e-10
    return Check(1, "dispersion identities", ok, max(worst, pole), 1e-12, details)


@_timed
def small_eta_constants() -> Check:
    res = disp.check_small_eta(KAPPA)
    details = {r.name: {"rel_error": r.rel_error, "order": r.order} for r in res}
    err = max(r.rel_error for r in res)
    order = min(r.order for r in res)
    details["lambda1"] = disp.lambda1(KAPPA)
    details["lambda2"] = disp.lambda2(KAPPA)
    return Check(2, "lambda1, lambda2 from delta derivatives", err < 1e-5 and order >= 1.9, err, 1e-5, details)


@_timed
def free_frequency_bound() -> Check:
    worst = 0.0
    details = {}
    xi = np.linspace(0.0, np.pi, 201)
    for a in (0.3, 0.5, 1.0):
        bound = disp.growth_bound(a)
        eta = np.linspace(-3 * bound - 2, 3 * bound + 2, 201)
        om = disp.free_omega(xi[:, None], eta[None, :], a).imag
        at0 = disp.free_omega(xi, 0.0, a).imag[:, None]
        # at xi = 0, pi the radicand can be negative real and both signs map to +i|omega|
        inner = xi[1:-1, None]
        odd = float(np.max(np.abs(disp.free_omega(-inner, eta[None, :], a).imag + om[1:-1])))
        viol = max(float(np.max(-om)), float(np.max(om - at0)), float(np.max(at0 - bound)), odd, 0.0)
        zero = max(abs(complex(disp.free_omega(0.0, s * bound, a))) for s in (1, -1))
        details[f"alpha={a}"] = {"violation": viol, "odd symmetry": odd, "omega at zero": zero,
                                 "max Im": float(om.max())}
        worst = max(worst, viol, zero)
    return Check(3, "free frequency imaginary part bound", worst < 1e-12, worst, 1e-12, details)


@_timed
def jost_residuals() -> Check:
    chk = jost.run_lax_check(KAPPA, jost.test_points(KAPPA, (0.1, 0.2, 0.5), 12), h=1e-3)
    orders = chk.orders
    low = min(orders.values())
    details = {"residuals": chk.residuals, "orders": orders}
    ok = chk.worst < 1e-5 and abs(low - 2) < 0.2 and max(orders.values()) < 2.2
    return Check(4, "Jost and Lax residuals", ok, chk.worst, 1e-5, details)


@_timed
def mode_identities() -> Check:
    win = LatticeWindow(-80, 60, ALPHA)
    tg = 0.0
    orth = 0.0
    details = {}
    for eta in (0.05, 0.1, 0.2):
        b = modes.mode_bundle(eta, 0.0, KAPPA, win)
        tg = max(tg, modes.g_tg_residual(b))
        o = modes.orthogonality(b)
        orth = max(orth, max(abs(v) for v in o.values()))
        # tail estimate: pairing summand magnitude at the window edges
        summand = np.abs(b.modes["+"] * np.conj(b.dt["-*"])) + np.abs(b.dt["+"] * np.conj(b.modes["-*"]))
        details[f"eta={eta}"] = {"g-tg": modes.g_tg_residual(b),
                                 "pairings": {k: abs(v) for k, v in o.items()},
                                 "edge summand": float(max(summand[0], summand[-1]))}
    ok = tg < 1e-11 and orth < 1e-8
    return Check(5, "mode identities and orthogonality", ok, max(tg, orth), 1e-8, details)


def quadratic_fit(etas, values):
    """Least-squares v = c eta^2; returns (c, worst |v - c eta^2| / (|c| eta^2))."""
    e2 = np.asarray(etas) ** 2
    v = np.asarray(values, dtype=float)
    c = float(np.dot(e2, v) / np.dot(e2, e2))
    rel = float(np.max(np.abs(v - c * e2) / (abs(c) * e2)))
    return c, rel


@_timed
def gram_expansion() -> Check:
    win = LatticeWindow(-80, 60, ALPHA)
    etas = (0.01, 0.02, 0.04)
    a11, a21 = [], []
    for eta in etas:
        G = modes.gram(modes.mode_bundle(eta, 0.0, KAPPA, win))
        a11.append((G[0, 0] + 4).real)
        a21.append(G[1, 0].real)
    c1, r1 = quadratic_fit(etas, a11)
    c2, r2 = quadratic_fit(etas, a21)
    details = {"A11+4 coefficient": c1, "A11+4 misfit": r1, "A21 coefficient": c2, "A21 misfit": r2}
    return Check(6, "Gram matrix small-eta expansion", max(r1, r2) < 0.1, max(r1, r2), 0.1, details)


@_timed
def darboux_kernels() -> Check:
    win = LatticeWindow(-40, 40, ALPHA)
    t = 0.0
    details = {}
    res = 0.0
    counts_ok = True
    for eta in (0.2, 0.5):
        r = dx.kernel_residuals(eta, t, KAPPA, win)
        res = max(res, *r)
        details[f"residuals eta={eta}"] = r
    for eta, want in ((0.2, (0, 1)), (0.5, (0, 1)), (2.5, (0, 0)), (3.0, (0, 0))):
        got = (dx.kernel_dimension("C", eta, t, KAPPA, win), dx.kernel_dimension("C'", eta, t, KAPPA, win))
        details[f"kernel dims (C, C') eta={eta}"] = got
        counts_ok &= got == want
    return Check(7, "Darboux kernel structure", res < 1e-9 and counts_ok, res, 1e-9, details)


@_timed
def mode_operator_identities() -> Check:
    small = dx.mode_operator_identities(0.2, 0.0, KAPPA, LatticeWindow(-40, 40, ALPHA))
    big = dx.mode_operator_identities(0.2, 0.0, KAPPA, LatticeWindow(-80, 80, ALPHA))
    worst = max(small.values())
    shrink = all(big[k] <= small[k] + 1e-12 for k in small)
    details = {"window 81": small, "window 161": big}
    return Check(8, "mode/operator identities", worst < 1e-8 and shrink, worst, 1e-8, details)


@_timed
def free_oracle(seeds: int = 10) -> Check:
    win = LatticeWindow(-60, 60, ALPHA)
    worst = 0.0
    for seed in range(seeds):
        rng = np.random.default_rng(seed)
        q, p = ev.random_local_data(win, rng)
        eta = float(rng.uniform(0, 1))
        s = ev.ModeState.make(q, p, eta, 0.0, win, "free")
        a = ev.evolve(s, 10.0, 1e-2)[-1]
        b = ev.evolve_free_exact(s, 10.0)
        num = weighted_norm(a.q - b.q, win) + weighted_norm(a.p - b.p, win)
        worst = max(worst, float(num / (weighted_norm(b.q, win) + weighted_norm(b.p, win))))
    return Check(9, "free evolution vs exact Fourier solution", worst < 1e-6, worst, 1e-6, {"seeds": seeds})


@_timed
def free_growth() -> Check:
    details = {}
    margin = -math.inf
    for a in (0.3, 0.5, 1.0):
        g = ev.growth_exponent(a)
        details[f"alpha={a}"] = {"measured": g, "bound": disp.growth_bound(a)}
        margin = max(margin, g - disp.growth_bound(a))
    return Check(10, "free growth exponent bound", margin <= 0.02, margin, 0.02, details)


def secular_norms(eta, T=40.0, dt=0.02, window=None, records=40):
    """Evolve g+ on the soliton and return times and e^{-alpha c t} ||tg+||_alpha."""
    from .lattice import inv_backward_diff
    from . import soliton

    win = window or LatticeWindow.for_run(KAPPA, T, ALPHA, N=60)
    b = modes.mode_bundle(eta, 0.0, KAPPA, win)
    s = ev.ModeState.make(b.modes["+"], b.dt["+"], eta, 0.0, win, "Q-soliton")
    c = soliton.speed(KAPPA)
    sts = [s] + ev.evolve(s, T, dt, KAPPA, record=records)
    ts = np.array([x.t for x in sts])
    norms = np.array([weighted_norm(inv_backward_diff(x.q), win) * math.exp(-ALPHA * c * x.t) for x in sts])
    return ts, norms


@_timed
def secular_decay() -> Check:
    details = {}
    worst = 0.0
    for eta in (0.1, 0.3):
        ts, norms = secular_norms(eta)
        fit = ev.fit_decay(ts, norms, 5.0, 40.0)
        dR = float(disp.delta(eta, KAPPA).real)
        rel = abs(fit.rate / dR - 1)
        details[f"eta={eta}"] = {"fitted": fit.rate, "Re delta": dR, "rel": rel}
        worst = max(worst, rel)
    return Check(11, "secular mode decay rate", worst < 0.05, worst, 0.05, details)


@_timed
def projected_decay(seeds: int = 5, T: float = 40.0, dt: float = 0.01) -> Check:
    win = LatticeWindow.for_run(KAPPA, T, ALPHA, N=60)
    details = {}
    b_min = math.inf
    pair_max = 0.0
    for eta in (0.05, 0.2, 0.4, 0.8):
        rates = []
        for seed in range(seeds):
            rng = np.random.default_rng(seed)
            q, p = ev.random_local_data(win, rng)
            q, p, _ = modes.project_secular(q, p, modes.mode_bundle(eta, 0.0, KAPPA, win))
            s = ev.ModeState.make(q, p, eta, 0.0, win)
            sts = [s] + ev.evolve(s, T, dt, KAPPA, record=40)
            fit = ev.fit_decay([x.t for x in sts], [float(x.norm(kappa=KAPPA)) for x in sts])
            for x in sts[::4]:
                pw = modes.secular_pairings(x.q, x.p, modes.mode_bundle(eta, x.t, KAPPA, win))
                pair_max = max(pair_max, float(np.max(np.abs(pw))))
            rates.append(fit.rate)
        details[f"eta={eta}"] = rates
        b_min = min(b_min, min(rates))
    details["max secular pairing"] = pair_max
    ok = b_min > 0.01 and pair_max < 1e-6
    return Check(12, "decay of secular-free data", ok, b_min, 0.01, details)


def correspondence_series(eta=0.2, seed=0, dts=(0.05, 0.025, 0.0125), T=10.0):
    win = LatticeWindow(-60, 52, ALPHA)
    rng = np.random.default_rng(seed)
    q, p = dx.secular_free_data(eta, 0.0, KAPPA, win, rng)
    Q1, Q2 = dx.darboux_forward(q, p, eta, 0.0, KAPPA, win)
    return [dx.correspondence_drift(q, p, Q1, Q2, eta, KAPPA, win, T, dt) for dt in dts]


@_timed
def correspondence(seeds: int = 3) -> Check:
    details = {}
    worst = 0.0
    orders = []
    for seed in range(seeds):
        d = correspondence_series(seed=seed)
        o = [math.log2(d[i] / d[i + 1]) for i in range(len(d) - 1)]
        details[f"seed={seed}"] = {"drift": d, "orders": o}
        worst = max(worst, max(d))
        orders += o
    ok = worst < 1e-5 and all(3.5 <= o <= 4.5 for o in orders)
    details["dt"] = [0.05, 0.025, 0.0125]
    return Check(13, "Darboux correspondence under evolution", ok, worst, 1e-5, details)


def planar_initial_data(win, y, seed, support=8, width=2.0):
    rng = np.random.default_rng(seed)
    loc = np.abs(win.sites) <= support
    R0 = np.zeros((win.size, len(y)))
    P0 = np.zeros_like(R0)
    for arr in (R0, P0):
        c = rng.uniform(-3, 3)
        arr[loc] = rng.standard_normal((int(loc.sum()), 1)) * np.exp(-(y - c) ** 2 / (2 * width ** 2))
    return R0, P0


def profile_errors(seed, times=(20.0, 40.0, 80.0), dt=0.01, eta_max=3.4):
    T = max(times)
    win = LatticeWindow.for_run(KAPPA, T, ALPHA, N=40)
    y = pf.grid_for(T, KAPPA)
    R0, P0 = planar_initial_data(win, y, seed)
    data = pf.extract_amplitude(R0, P0, win, KAPPA, y)
    states = ev.planar_evolve(R0, P0, y, win, KAPPA, times, dt, eta_max=eta_max)
    return pf.compare_profile(states, data, win, pf.planar_norm(R0, P0, win, y))


@_timed
def profile_comparison(seeds: int = 5) -> Check:
    times = (20.0, 40.0, 80.0)
    y = pf.grid_for(max(times), KAPPA)
    kc = pf.kernel_checks(y, times, KAPPA)
    details = {"kernels": kc}
    ok = max(kc.values()) < 1e-8
    worst_ratio = 0.0
    for seed in range(seeds):
        errs = [e for _, e in profile_errors(seed, times)]
        details[f"seed={seed}"] = errs
        worst_ratio = max(worst_ratio, max(errs[i + 1] / errs[i] for i in range(len(errs) - 1)))
        ok &= all(errs[i + 1] < errs[i] for i in range(len(errs) - 1))
    details["largest successive ratio"] = worst_ratio
    return Check(14, "asymptotic profile comparison", ok, worst_ratio, 1.0, details)


ALL = (dispersion_identities, small_eta_constants, free_frequency_bound, jost_residuals,
       mode_identities, gram_expansion, darboux_kernels, mode_operator_identities, free_oracle,
       free_growth, secular_decay, projected_decay, correspondence, profile_comparison)


def run_all(select=None) -> list[Check]:
    out = []
    for fn in ALL:
        if select and fn.__name__ not in select:
            continue
        out.append(fn())
    return out
