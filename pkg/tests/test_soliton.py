import math

import numpy as np
import pytest

from toda_stability import soliton as s


def test_background_identities():
    n = np.arange(-20, 21)
    b = s.background(n, 0.37, 1.0)
    nb = s.background(n + 1, 0.37, 1.0)
    assert np.max(np.abs(b.u * b.v - 1)) < 1e-14
    assert np.max(np.abs(b.u * nb.v - 1 - b.V)) < 1e-13
    assert np.max(np.abs(b.R - (nb.Q - b.Q))) < 1e-13
    assert np.max(np.abs(b.R - np.log1p(b.V))) < 1e-14


def test_time_derivatives_against_chain_rule():
    n = np.arange(-10, 11)
    b = s.background(n, 0.2, 1.3)
    d1, d2 = s.dtR_direct(n, 0.2, 1.3)
    assert np.max(np.abs(b.dtR - d1)) < 1e-12
    assert np.max(np.abs(b.dt2R - d2)) < 1e-12


def test_dtQ_by_differences():
    n = np.arange(-10, 11)
    h = 1e-5
    fd = (s.background(n, 0.3 + h, 1.0).Q - s.background(n, 0.3 - h, 1.0).Q) / (2 * h)
    assert np.max(np.abs(fd - s.background(n, 0.3, 1.0).dtQ)) < 1e-9


def test_tau_relation():
    n = np.arange(-8, 9)
    t = 0.4
    tau = lambda m: s.tau(m, t, 1.0, y=0.3)  # noqa: E731
    V = s.potential(n, t, 1.0)
    assert np.max(np.abs(tau(n + 1) * tau(n - 1) / tau(n) ** 2 - 1 - V)) < 1e-12
    b = s.background(n, t, 1.0)
    assert np.max(np.abs(b.u - s.tau_ratio(n - 1, n, t, 1.0))) < 1e-13


def test_translation():
    assert s.translation_residual(1.0) < 1e-13
    assert s.speed(1.0) == pytest.approx(math.sinh(1.0))


def test_large_arguments_do_not_overflow():
    b = s.background(np.array([-1e4, 1e4]), 0.0, 2.0)
    assert np.all(np.isfinite(b.Q)) and np.all(np.isfinite(b.V))


def test_bad_kappa():
    with pytest.raises(ValueError):
        s.background(np.arange(3), 0.0, 0.0)
