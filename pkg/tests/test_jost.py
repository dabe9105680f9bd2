import numpy as np
import pytest

from toda_stability import dispersion as d
from toda_stability import jost

N = np.arange(-5, 6)


def test_lax_residuals_second_order():
    chk = jost.run_lax_check(1.0, jost.test_points(1.0, (0.2,), 6), sites=range(-3, 4),
                             samples=((0.1, 0.2),))
    assert chk.worst < 1e-5
    for k, o in chk.orders.items():
        assert 1.8 < o < 2.2, k


def test_algebraic_identities():
    for beta in (0.5 + 0.7j, -1.3 + 0.2j, complex(d.dispersion(0.2, 1.0).beta_minus)):
        for name, r in jost.shift_identities(beta, N, 0.1, -0.2, 1.0).items():
            assert r < 1e-12, name


def test_residues_closed_form_vs_contour():
    a = jost.pole_a(1.0)
    ra, rb = jost.residues(N, 0.1, 0.2, 1.0)
    ca = jost.residue_contour(N, 0.1, 0.2, 1.0, a)
    cb = jost.residue_contour(N, 0.1, 0.2, 1.0, 1 / a)
    assert np.max(np.abs(ca - a * ra)) < 1e-10 * np.max(np.abs(ca))
    assert np.max(np.abs(cb - rb / a)) < 1e-10 * np.max(np.abs(cb))


def test_pole_rejected():
    with pytest.raises(jost.PoleError):
        jost.phi_star(jost.pole_a(1.0), N, 0.0, 0.0, 1.0)


def test_vacuum_lax():
    r = jost.vacuum_lax_residuals(0.4 + 0.9j, N, 0.2, 0.1)
    assert max(r.values()) < 1e-5
