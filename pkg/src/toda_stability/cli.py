"""Command-line front end: ``toda <subcommand> [options]``.

Every subcommand writes a JSON report (``--out``) and, where it produces a
series, a CSV table (``--csv``).  Exit codes: 0 all checks passed, 1 a check
failed, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import __version__
from . import acceptance, darboux, dispersion, evolution, jost, kernels, modes, profile, soliton
from .lattice import LatticeWindow

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    kappa: float = 1.0
    alpha: float = 0.5
    eta: float = 0.2
    window: str = "-40:40"
    dt: float = 0.01
    T: float = 10.0
    seed: int = 0
    out: str = ""
    csv: str = ""

    def validate(self) -> None:
        errors = []
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            errors.append("kappa: must be positive")
        if not (0 < self.alpha < 2 * self.kappa):
            errors.append("alpha: must lie in (0, 2 kappa)")
        if not math.isfinite(self.eta):
            errors.append("eta: must be finite")
        if not self.dt > 0:
            errors.append("dt: must be positive")
        if not self.T >= 0:
            errors.append("T: must be non-negative")
        try:
            LatticeWindow.parse(self.window)
        except ValueError as exc:
            errors.append(f"window: {exc}")
        if errors:
            raise ConfigError("; ".join(errors))

    @property
    def lattice(self) -> LatticeWindow:
        return LatticeWindow.parse(self.window, self.alpha)


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    names = {f.name for f in fields(RunConfig)}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in names:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = val
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    values = read_config(args.config) if args.config else {}
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    cfg = RunConfig()
    for f in fields(RunConfig):
        if f.name in values:
            try:
                setattr(cfg, f.name, type(getattr(cfg, f.name))(values[f.name]))
            except ValueError as exc:
                raise ConfigError(f"{f.name}: cannot parse {values[f.name]!r}") from exc
    cfg.validate()
    return cfg


def _fmt(x) -> str:
    return format(float(x), ".17e")


def write_csv(path: str, columns: dict) -> None:
    """Columns of equal length; complex columns become name_re, name_im."""
    names, data = [], []
    for name, col in columns.items():
        col = np.asarray(col)
        if np.iscomplexobj(col):
            names += [f"{name}_re", f"{name}_im"]
            data += [col.real, col.imag]
        else:
            names.append(name)
            data.append(col)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for row in zip(*data):
            w.writerow([_fmt(v) for v in row])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def check(name, value, tol, passed=None, **details):
    ok = bool(value < tol) if passed is None else bool(passed)
    return {"name": name, "status": "pass" if ok else "fail", "value": value, "tolerance": tol, **details}


# subcommands: each returns (checks, columns or None)

def cmd_dispersion_scan(cfg: RunConfig):
    s = dispersion.dispersion_scan(cfg.kappa)
    e = dispersion.eta_star(cfg.kappa, cfg.alpha)
    pole = abs(abs(complex(dispersion.dispersion(e, cfg.kappa).beta_minus)) - math.exp(cfg.alpha + cfg.kappa))
    checks = [
        check("beta_+ beta_- = 1", s.product_error, 1e-12),
        check("conjugate symmetry", s.conjugate_error, 1e-12),
        check("no branch jump", s.continuity_jump, 1.5),
        check("|beta_-(eta*)| = e^(alpha+kappa)", pole / math.exp(cfg.alpha + cfg.kappa), 1e-10, eta_star=e),
    ]
    d = s.points
    cols = {"eta": s.eta, "mu": d.mu, "beta_plus": d.beta_plus, "beta_minus": d.beta_minus,
            "gamma": d.gamma, "delta": d.delta}
    return checks, cols


def cmd_background(cfg: RunConfig):
    win = cfg.lattice
    bg = soliton.background(win.sites, cfg.T, cfg.kappa)
    nxt = soliton.background(win.sites + 1, cfg.T, cfg.kappa)
    checks = [
        check("u v_{n+1} = 1 + V", float(np.max(np.abs(bg.u * nxt.v - 1 - bg.V))), 1e-12),
        check("translation invariance", soliton.translation_residual(cfg.kappa), 1e-12),
    ]
    cols = {"n": win.sites, "z": bg.z, "V": bg.V, "R": bg.R, "Q": bg.Q, "dtQ": bg.dtQ,
            "dtR": bg.dtR, "u": bg.u, "v": bg.v}
    return checks, cols


def cmd_jost_check(cfg: RunConfig):
    etas = tuple(sorted({0.1, 0.2, 0.5, abs(cfg.eta)} - {0.0}))
    chk = jost.run_lax_check(cfg.kappa, jost.test_points(cfg.kappa, etas))
    checks = [check(f"residual {k}", v, 1e-5, order=chk.orders[k]) for k, v in chk.residuals.items()]
    return checks, None


def cmd_modes_check(cfg: RunConfig):
    win = cfg.lattice
    b = modes.mode_bundle(cfg.eta, 0.0, cfg.kappa, win)
    G = modes.gram(b)
    checks = [check("g = (1 - e^-d) tg", modes.g_tg_residual(b), 1e-11),
              check("Gram vs closed form", float(np.max(np.abs(G - modes.gram_closed(cfg.eta, cfg.kappa)))), 1e-8)]
    for k, v in modes.orthogonality(b).items():
        checks.append(check(k, abs(v), 1e-8))
    return checks, None


def cmd_darboux_check(cfg: RunConfig):
    win = cfg.lattice
    eta, k = cfg.eta, cfg.kappa
    es = dispersion.eta_star(k, cfg.alpha)
    checks = []
    below = abs(eta) < es
    if below:
        r1, r2 = darboux.kernel_residuals(eta, 0.0, k, win)
        checks += [check("C' g+ = 0", r1, 1e-9), check("C* e^-d tg+* = 0", r2, 1e-9)]
    want = (0, 1) if below else (0, 0)
    got = (darboux.kernel_dimension("C", eta, 0.0, k, win), darboux.kernel_dimension("C'", eta, 0.0, k, win))
    checks.append(check("kernel dimensions (C, C')", float(got != want), 0.5, expected=want, found=got))
    ops = darboux.build_ops(0.0, eta, k, win)
    for name, v in darboux.factorization_residuals(ops).items():
        checks.append(check(f"factorization {name}", v, 1e-10))
    if eta != 0:
        for name, v in darboux.mode_operator_identities(eta, 0.0, k, win).items():
            checks.append(check(name, v, 1e-8))
    if below:
        rng = np.random.default_rng(cfg.seed)
        q, p = darboux.secular_free_data(eta, 0.0, k, win, rng)
        Q1, Q2 = darboux.darboux_forward(q, p, eta, 0.0, k, win)
        checks.append(check("forward map rows", max(darboux.darboux_residuals(Q1, Q2, q, p, ops)), 1e-8))
    return checks, None


def _random_state(cfg: RunConfig, project: bool):
    win = LatticeWindow.for_run(cfg.kappa, cfg.T, cfg.alpha, N=60)
    rng = np.random.default_rng(cfg.seed)
    q, p = evolution.random_local_data(win, rng)
    if project:
        q, p, _ = modes.project_secular(q, p, modes.mode_bundle(cfg.eta, 0.0, cfg.kappa, win))
    return evolution.ModeState.make(q, p, cfg.eta, 0.0, win)


def _records(cfg: RunConfig) -> int:
    steps = int(round(cfg.T / cfg.dt))
    for r in (40, 20, 10, 8, 5, 4, 2):
        if steps % r == 0:
            return r
    return 1


def cmd_evolve(cfg: RunConfig):
    s = _random_state(cfg, project=True)
    sts = [s] + evolution.evolve(s, cfg.T, cfg.dt, cfg.kappa, record=_records(cfg))
    pairs = [float(np.max(np.abs(modes.secular_pairings(x.q, x.p, modes.mode_bundle(cfg.eta, x.t, cfg.kappa, x.window)))))
             for x in sts]
    cols = {"t": [x.t for x in sts], "norm": [float(x.norm(kappa=cfg.kappa)) for x in sts], "secular": pairs}
    edge = max(x.edge_mass() for x in sts)
    return [check("secular pairings conserved", max(pairs), 1e-6, edge_mass=edge)], cols


def cmd_decay_fit(cfg: RunConfig):
    checks, cols = cmd_evolve(cfg)
    fit = evolution.fit_decay(cols["t"], cols["norm"])
    checks.append(check("decay rate b > 0.01", fit.rate, 0.01, passed=fit.rate > 0.01,
                        fit_range=fit.t_range, fit_residual=fit.residual))
    return checks, cols


def cmd_profile_compare(cfg: RunConfig):
    T = cfg.T if cfg.T > 0 else 80.0
    times = (T / 4, T / 2, T)
    errs = acceptance.profile_errors(cfg.seed, times, cfg.dt)
    vals = [e for _, e in errs]
    dec = all(vals[i + 1] < vals[i] for i in range(len(vals) - 1))
    y = profile.grid_for(T, cfg.kappa)
    kc = profile.kernel_checks(y, times, cfg.kappa)
    checks = [check("error decreasing", float(not dec), 0.5, errors=vals)]
    checks += [check(k, v, 1e-8) for k, v in kc.items()]
    return checks, {"t": [t for t, _ in errs], "error": vals}


def cmd_suite(cfg: RunConfig):
    res = acceptance.run_all()
    checks = [{"name": f"{c.number:02d} {c.name}", "status": c.status, "value": c.value,
               "tolerance": c.tolerance, "details": c.details, "seconds": c.seconds} for c in res]
    return checks, None


COMMANDS = {
    "dispersion-scan": cmd_dispersion_scan,
    "background": cmd_background,
    "jost-check": cmd_jost_check,
    "modes-check": cmd_modes_check,
    "darboux-check": cmd_darboux_check,
    "evolve": cmd_evolve,
    "decay-fit": cmd_decay_fit,
    "profile-compare": cmd_profile_compare,
    "suite": cmd_suite,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kappa", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--eta", type=float)
    common.add_argument("--window", help="site range a:b")
    common.add_argument("--dt", type=float)
    common.add_argument("--T", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="JSON report path")
    common.add_argument("--csv", help="CSV series path")
    common.add_argument("--config", help="key = value config file")
    p = argparse.ArgumentParser(prog="toda", description="Numerical checks for perturbations of a lattice line soliton.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = build_config(args)
    except (ConfigError, OSError) as exc:
        print(f"toda: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    started = time.time()
    try:
        checks, cols = COMMANDS[args.command](cfg)
    except ValueError as exc:
        print(f"toda: {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": args.command,
        "version": __version__,
        "backend": kernels.BACKEND,
        "config": asdict(cfg),
        "started": started,
        "seconds": time.time() - started,
        "checks": checks,
    }
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(_jsonable(report), fh, indent=2, sort_keys=True)
    if cfg.csv and cols is not None:
        write_csv(cfg.csv, cols)
    failed = [c for c in checks if c["status"] != "pass"]
    for c in checks:
        print(f"{c['status'].upper():4s}  {c['name']}  value={float(c['value']):.3e}  tol={float(c['tolerance']):.1e}")
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
