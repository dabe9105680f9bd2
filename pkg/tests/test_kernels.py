import os
import subprocess
import sys

import numpy as np
import pytest

from toda_stability import _fallback, kernels


def _args(rng, qform):
    q = rng.standard_normal((3, 40)) + 1j * rng.standard_normal((3, 40))
    p = rng.standard_normal((3, 40)) + 1j * rng.standard_normal((3, 40))
    return q, p, np.array([0.0, 0.3, 1.1]), -20, 1.0, 1.2, 0.3, 0.01, 50, True, qform


@pytest.mark.parametrize("qform", [False, True])
def test_backends_agree(rng, qform):
    try:
        from toda_stability import _kernels
    except ImportError:
        pytest.skip("compiled kernel not built")
    a = _fallback.rk4_banded(*_args(np.random.default_rng(1), qform))
    b = _kernels.rk4_banded(*_args(np.random.default_rng(1), qform))
    assert np.max(np.abs(a[0] - b[0])) < 1e-12 and np.max(np.abs(a[1] - b[1])) < 1e-12


def test_eta_shape_mismatch():
    with pytest.raises(ValueError):
        kernels.rk4_banded(np.zeros((2, 4)), np.zeros((2, 4)), [1.0], 0, 1.0, 1.0, 0.0, 0.1, 1)


def test_pure_python_switch():
    env = dict(os.environ, TODA_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from toda_stability import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
