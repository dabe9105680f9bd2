import numpy as np
import pytest

from toda_stability import darboux as dx
from toda_stability import jost
from toda_stability.lattice import LatticeWindow

K = 1.0


def test_apply_shift():
    f = np.zeros(7)
    f[3] = 1
    assert dx.apply_shift("shift+", f)[2] == 1
    assert dx.apply_shift("shift-", f)[4] == 1
    g = dx.apply_shift("inv+", f, alpha=0.5)
    assert np.allclose(dx.apply_shift("shift+", g) - g, f)
    with pytest.raises(ValueError):
        dx.apply_shift("inv+", f, alpha=0.0)


def test_green_kernel():
    for eta in (0.0, 0.3, 2.0):
        k = dx.green_kernel(eta, K)
        n = np.arange(-300, 301)
        assert np.sum(np.abs(k(n))) == pytest.approx(k.l1_norm_closed(), rel=1e-12)
        assert np.allclose(k(n), k.fundamental(n), atol=1e-15)


def test_solve_D_spike_and_residual(window, rng):
    f = np.zeros(window.size, complex)
    f[window.index(0)] = 1
    u = dx.solve_D(0.3, K, f, window)
    assert np.allclose(u, dx.green_kernel(0.3, K)(window.sites))
    f[35:45] = rng.standard_normal(10)
    for conj in (False, True):
        u = dx.solve_D(0.3, K, f, window, t=0.2, conjugate=conj)
        M = dx.D_matrix(0.3, K, window.size)
        if conj:
            tau = dx.signed_tau(window, 0.2, K)
            M = np.diag(tau) @ M @ np.diag(1 / tau)
        r = (M @ u - f)[5:-5]
        assert np.linalg.norm(r) < 1e-10 * np.linalg.norm(f)


def test_kernel_vectors(window):
    r1, r2 = dx.kernel_residuals(0.2, 0.0, K, window)
    assert r1 < 1e-9 and r2 < 1e-9


def test_kernel_dimensions(window):
    assert dx.kernel_dimension("C'", 0.2, 0.0, K, window) == 1
    assert dx.kernel_dimension("C", 0.2, 0.0, K, window) == 0
    assert dx.kernel_dimension("C'", 3.0, 0.0, K, window) == 0
    assert dx.kernel_dimension("C*", 0.2, 0.0, K, window) == 1


def test_factorizations(window):
    for name, r in dx.factorization_residuals(dx.build_ops(0.3, 0.2, K, window)).items():
        assert r < 1e-10, name


def test_adjoints(window):
    for name, r in dx.adjoint_identities(dx.build_ops(0.3, 0.2, K, window)).items():
        assert r < 1e-12, name


def test_identities_at_eta_02(window):
    for name, r in dx.mode_operator_identities(0.2, 0.0, K, window).items():
        assert r < 1e-8, name
    with pytest.raises(ValueError):
        dx.mode_operator_identities(0.0, 0.0, K, window)


def test_miura_kernels():
    for beta in jost.test_points(K, (0.2,), 4):
        a, b = dx.miura_kernel_residuals(beta, K)
        assert a < 1e-9 and b < 1e-9


def test_solve_C_roundtrip(window, rng):
    u0 = np.zeros(window.size, complex)
    u0[35:45] = rng.standard_normal(10)
    ops = dx.build_ops(0.0, 0.2, K, window)
    f = ops.C @ u0
    u = dx.solve_C(f, 0.2, 0.0, K, window)
    assert np.linalg.norm((ops.C @ u - f)[10:-10]) < 1e-9 * np.linalg.norm(f)
    assert np.allclose(dx.solve_C(np.zeros(window.size), 0.2, 0.0, K, window), 0)


def test_solve_C_rejects_nonorthogonal(window):
    f = np.zeros(window.size, complex)
    f[40] = 1
    with pytest.raises(dx.OrthogonalityError) as exc:
        dx.solve_C(f, 0.2, 0.0, K, window)
    assert exc.value.defect > 1e-8


def test_forward_inverse_roundtrip(rng):
    win = LatticeWindow(-50, 40, 0.5)
    eta = 0.1
    q, p = dx.secular_free_data(eta, 0.0, K, win, rng)
    Q1, Q2 = dx.darboux_forward(q, p, eta, 0.0, K, win)
    ops = dx.build_ops(0.0, eta, K, win)
    assert max(dx.darboux_residuals(Q1, Q2, q, p, ops)) < 1e-8
    q2, p2 = dx.darboux_inverse(Q1, Q2, eta, 0.0, K, win)
    assert max(dx.darboux_residuals(Q1, Q2, q2, p2, ops)) < 1e-8
    from toda_stability.modes import mode_bundle
    from toda_stability.lattice import wpair
    b = mode_bundle(eta, 0.0, K, win)
    assert abs(wpair(q2, p2, b.modes["-*"], b.dt["-*"])) < 1e-9
    # difference lies along (g+, d_t g+)
    sl = win.interior(10)
    g = b.modes["+"][sl]
    dq = (q2 - q)[sl]
    c = np.vdot(g, dq) / np.vdot(g, g)
    assert np.linalg.norm(dq - c * g) < 1e-7 * np.linalg.norm(q[sl])
    assert np.linalg.norm((p2 - p)[sl] - c * b.dt["+"][sl]) < 1e-7 * np.linalg.norm(p[sl])


def test_zero_maps_to_zero(window):
    z = np.zeros(window.size, complex)
    Q1, Q2 = dx.darboux_forward(z, z, 0.1, 0.0, K, window)
    assert np.allclose(Q1, 0) and np.allclose(Q2, 0)
    q, p = dx.darboux_inverse(z, z, 0.1, 0.0, K, window)
    assert np.allclose(q, 0) and np.allclose(p, 0)


def test_correspondence_drift_and_spike(rng):
    win = LatticeWindow(-60, 52, 0.5)
    q, p = dx.secular_free_data(0.2, 0.0, K, win, rng)
    Q1, Q2 = dx.darboux_forward(q, p, 0.2, 0.0, K, win)
    d1 = dx.correspondence_drift(q, p, Q1, Q2, 0.2, K, win, 10.0, 0.05)
    d2 = dx.correspondence_drift(q, p, Q1, Q2, 0.2, K, win, 10.0, 0.025)
    assert d1 < 1e-5 and d2 < d1 / 10
    bad = Q1.copy()
    bad[win.index(0)] += 1
    assert dx.correspondence_drift(q, p, bad, Q2, 0.2, K, win, 10.0, 0.05) > 0.1


def test_inverse_norm_shape():
    e = dx.inverse_norm_exponent(K, 0.5)
    assert abs(e + 1) < 0.2
