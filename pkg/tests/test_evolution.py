import numpy as np
import pytest

from toda_stability import dispersion as d
from toda_stability import evolution as ev
from toda_stability import modes
from toda_stability.lattice import LatticeWindow


def test_free_rk4_matches_exact(rng):
    win = LatticeWindow(-60, 60, 0.5)
    q, p = ev.random_local_data(win, rng, modes=2)
    s0 = ev.ModeState.make(q, p, [0.0, 0.7], 0.0, win, "free")
    ex = ev.evolve_free_exact(s0, 10.0)

    def err(dt):
        num = ev.evolve(s0, 10.0, dt)[-1]
        return np.max(ev.ModeState.make(num.q - ex.q, num.p - ex.p, [0.0, 0.7], 10.0, win, "free").norm())

    e1, e2 = err(0.02), err(0.01)
    assert e2 < 1e-6
    assert 12 < e1 / e2 < 20


def test_exact_free_identity_at_zero_time(rng):
    win = LatticeWindow(-20, 20, 0.5)
    q, p = ev.random_local_data(win, rng)
    s = ev.evolve_free_exact(ev.ModeState.make(q, p, 0.3, 0.0, win, "free"), 0.0)
    assert np.allclose(s.q, q, atol=1e-13) and np.allclose(s.p, p, atol=1e-13)


def test_free_growth_bounded():
    for a in (0.25, 0.5):
        assert ev.growth_exponent(a, T=20.0) <= d.growth_bound(a) + 0.05


def test_secular_pairings_conserved(rng):
    win = LatticeWindow(-60, 40, 0.5)
    eta = 0.2
    q, p = ev.random_local_data(win, rng)
    b = modes.mode_bundle(eta, 0.0, 1.0, win)
    q, p, _ = modes.project_secular(q, p, b)
    s = ev.evolve(ev.ModeState.make(q, p, eta, 0.0, win), 5.0, 0.01)[-1]
    b5 = modes.mode_bundle(eta, 5.0, 1.0, win)
    assert np.max(np.abs(modes.secular_pairings(s.q, s.p, b5))) < 1e-7


def test_fit_decay_recovers_rate():
    t = np.linspace(0, 10, 21)
    f = ev.fit_decay(t, 3 * np.exp(-0.4 * t))
    assert f.rate == pytest.approx(0.4, abs=1e-12)
    assert f.intercept == pytest.approx(np.log(3), abs=1e-12)
    with pytest.raises(ValueError):
        ev.fit_decay(t, -np.ones_like(t))
    with pytest.raises(ValueError):
        ev.fit_decay(t[:1], t[:1] + 1)


def test_unstable_step_raises(rng):
    win = LatticeWindow(-20, 20, 0.5)
    q, p = ev.random_local_data(win, rng)
    s = ev.ModeState.make(q, p, 0.0, 0.0, win, "free")
    with pytest.raises(ev.IntegratorError):
        ev.evolve(s, 500.0, 2.5)


def test_argument_errors(rng):
    win = LatticeWindow(-5, 5, 0.5)
    z = np.zeros(win.size)
    with pytest.raises(ValueError):
        ev.ModeState.make(z, z, 0.0, 0.0, win, "bogus")
    with pytest.raises(ValueError):
        ev.ModeState.make(z, z[:-1], 0.0, 0.0, win)
    s = ev.ModeState.make(z, z, 0.0, 0.0, win)
    with pytest.raises(ValueError):
        ev.evolve(s, 1.0, -0.1)
    with pytest.raises(ValueError):
        ev.evolve(s, 1.05, 0.1)
    with pytest.raises(ValueError):
        ev.evolve_free_exact(s, 1.0)


def test_record_checkpoints():
    win = LatticeWindow(-5, 5, 0.5)
    z = np.zeros(win.size)
    out = ev.evolve(ev.ModeState.make(z, z, 0.0, 0.0, win), 1.0, 0.1, record=5)
    assert [round(s.t, 12) for s in out] == [0.2, 0.4, 0.6, 0.8, 1.0]


def test_planar_zero_data():
    win = LatticeWindow(-5, 5, 0.5)
    y = (np.arange(16) - 8) * 0.5
    z = np.zeros((win.size, 16))
    out = ev.planar_evolve(z, z, y, win, 1.0, [0.5, 1.0], 0.1)
    assert len(out) == 2 and np.all(out[-1][1] == 0)
