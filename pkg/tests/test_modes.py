import math

import numpy as np
import pytest

from toda_stability import dispersion as d
from toda_stability import modes
from toda_stability.lattice import LatticeWindow

WIN = LatticeWindow(-80, 60, 0.5)


@pytest.mark.parametrize("eta", [0.05, 0.1, 0.2])
def test_orthogonality(eta):
    b = modes.mode_bundle(eta, 0.3, 1.0, WIN)
    for k, v in modes.orthogonality(b).items():
        assert abs(v) < 1e-8, k
    assert modes.g_tg_residual(b) < 1e-11


@pytest.mark.parametrize("eta", [0.0, 0.1, 0.4])
def test_gram_closed_form(eta):
    G = modes.gram(modes.mode_bundle(eta, 0.0, 1.0, WIN))
    assert np.max(np.abs(G - modes.gram_closed(eta, 1.0))) < 1e-8


def test_gram_at_zero():
    G = modes.gram_closed(0.0, 1.0)
    assert G[0, 0] == -4 and G[1, 1] == -4 and G[1, 0] == 0
    assert G[0, 1] == pytest.approx(4 * math.cosh(1) / math.sinh(1) ** 2)


def test_product_forms_match():
    eta = 0.2
    win = LatticeWindow(-20, 20, 0.5)
    b = modes.mode_bundle(eta, 0.4, 1.0, win)
    pf = modes.product_forms(eta, 0.4, 1.0, win)
    for k in ("+", "+*", "-", "-*"):
        assert np.max(np.abs(pf[k] - b.tilde[k])) < 1e-12 * np.max(np.abs(b.tilde[k])), k
    assert np.max(np.abs(pf["g+"] - b.modes["+"])) < 1e-12 * np.max(np.abs(b.modes["+"]))


@pytest.mark.parametrize("name", ["+", "-", "1", "2*"])
def test_modes_solve_linearized_equation(name):
    r = modes.mode_equation_residual(0.3, 0.2, 1.0, LatticeWindow(-15, 15, 0.5), name)
    assert r < 1e-5


def test_zero_frequency_duals():
    r = modes.profile_amplitudes(1.0, LatticeWindow(-20, 20, 0.5))
    assert max(r.values()) < 1e-13


def test_projection_kills_pairings(rng):
    b = modes.mode_bundle(0.2, 0.0, 1.0, WIN)
    q = np.zeros(WIN.size, complex)
    p = np.zeros(WIN.size, complex)
    q[75:95] = rng.standard_normal(20)
    p[75:95] = rng.standard_normal(20)
    q2, p2, c = modes.project_secular(q, p, b)
    assert np.max(np.abs(modes.secular_pairings(q2, p2, b))) < 1e-12
    assert np.max(np.abs(c)) > 0


def test_rform_pairing_agrees(rng):
    from toda_stability.lattice import forward_diff
    b = modes.mode_bundle(0.2, 0.0, 1.0, WIN)
    q = np.zeros(WIN.size, complex)
    p = np.zeros(WIN.size, complex)
    q[75:95] = rng.standard_normal(20)
    p[75:95] = rng.standard_normal(20)
    a = modes.secular_pairings(q, p, b)
    r = modes.secular_pairings(forward_diff(q), forward_diff(p), b, rform=True)
    assert np.max(np.abs(a - r)) < 1e-12


def test_degenerate_gram():
    b = modes.mode_bundle(0.1, 0.0, 1.0, WIN)
    z = np.zeros(WIN.size)
    with pytest.raises(modes.DegenerateGramError):
        modes.project_secular(z, z, b, gram_matrix=np.zeros((2, 2)))


def test_delta_positive_real_part():
    eta = 0.3
    assert complex(d.delta(eta, 1.0)).real > 0
