import math

import numpy as np
import pytest

from toda_stability import dispersion as d
from toda_stability import profile as pf
from toda_stability.lattice import LatticeWindow

K = 1.0


def test_kernel_masses_and_semigroup():
    y = pf.grid_for(40.0, K)
    r = pf.kernel_checks(y, (5.0, 10.0, 20.0), K)
    assert r["H mass"] < 1e-10 and r["W mass"] < 1e-12 and r["semigroup"] < 1e-8


def test_bad_arguments():
    with pytest.raises(ValueError):
        pf.y_grid(7, 0.1)
    with pytest.raises(ValueError):
        pf.heat_kernel(np.zeros(2), 0.0, 1.0)
    with pytest.raises(ValueError):
        pf.window_kernel(np.zeros(2), -1.0, 1.0)


def _data(f, y):
    return pf.ProfileData(y, f, f, d.lambda1(K), d.lambda2(K), K)


def test_convolution_methods_agree():
    y = pf.grid_for(30.0, K)
    f = np.exp(-y ** 2)
    data = _data(f, y)
    a = data.amplitude(20.0)
    assert np.max(np.abs(a - data.amplitude(20.0, "reordered"))) < 1e-8
    assert np.max(np.abs(a - data.amplitude(20.0, "fft"))) < 1e-8
    with pytest.raises(ValueError):
        data.amplitude(1.0, "nope")


def test_point_mass_plateau():
    # f = delta: A(t, 0) -> lambda1 t / (4 sinh k) / (2 lambda1 t) = 1 / (8 sinh k)
    y = pf.grid_for(200.0, K)
    f = np.zeros_like(y)
    f[len(y) // 2] = 1 / (y[1] - y[0])
    A = _data(f, y).amplitude(200.0)
    assert A[len(y) // 2] == pytest.approx(1 / (8 * math.sinh(K)), rel=1e-3)


def test_zero_data_zero_profile():
    y = pf.y_grid(64, 0.5)
    assert np.all(_data(np.zeros(64), y).amplitude(3.0) == 0)


def test_extract_amplitude_pairing():
    win = LatticeWindow(-30, 30, 0.5)
    y = pf.y_grid(8, 1.0)
    R0 = np.zeros((win.size, 8))
    P0 = np.zeros((win.size, 8))
    i = win.index(0)
    P0[i, 3] = 1.0
    data = pf.extract_amplitude(R0, P0, win, K, y)
    # pairing -(dg . R - g . P) with g = 1 + tanh(k z) at z(0, 0) = 0
    assert data.f[3] == pytest.approx(1.0, abs=1e-14)
    assert np.count_nonzero(data.f) == 1


def test_planar_norm_of_zero():
    win = LatticeWindow(-5, 5, 0.5)
    y = pf.y_grid(16, 0.5)
    z = np.zeros((win.size, 16))
    assert pf.planar_norm(z, z, win, y) == 0
