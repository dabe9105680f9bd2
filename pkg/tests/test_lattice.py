import numpy as np
import pytest

from toda_stability.lattice import (LatticeWindow, backward_diff, forward_diff, inv_backward_diff,
                                    inv_forward_diff, shift, weighted_norm)


def test_parse_and_errors():
    w = LatticeWindow.parse("-3:4", 0.5)
    assert w.size == 8 and w.index(0) == 3
    with pytest.raises(ValueError):
        LatticeWindow.parse("4:-3")
    with pytest.raises(ValueError):
        LatticeWindow.parse("abc")
    with pytest.raises(IndexError):
        w.index(10)


def test_shift_convention():
    f = np.zeros(5)
    f[2] = 1.0
    assert shift(f, 1)[1] == 1.0  # (e^d f)_n = f_{n+1}
    assert shift(f, -1)[3] == 1.0


def test_inverse_differences(rng):
    f = np.zeros(40)
    f[10:20] = rng.standard_normal(10)
    assert np.allclose(forward_diff(inv_forward_diff(f))[:-1], f[:-1])
    assert np.allclose(backward_diff(inv_backward_diff(f))[1:-1], f[1:-1])


def test_inverse_bound(rng):
    w = LatticeWindow(-30, 30, 0.5)
    for _ in range(20):
        f = np.zeros(w.size)
        f[20:40] = rng.standard_normal(20)
        bound = weighted_norm(f, w) / (1 - np.exp(-0.5))
        assert weighted_norm(inv_forward_diff(f), w) <= bound * (1 + 1e-12)


def test_tail_estimate():
    w = LatticeWindow(-20, 20, 0.3)
    f = np.exp(-np.abs(w.sites))
    norm, tail = weighted_norm(f, w, with_tail=True)
    assert norm > 0 and tail < 1e-5
