import math

import numpy as np
import pytest

from toda_stability import dispersion as d


def test_frozen_constants():
    # coth 1 - 1 and (sinh 2 / 2 - 1) / (2 sinh^3 1)
    assert d.lambda1(1.0) == pytest.approx(0.31303528549933146, rel=1e-14)
    assert d.lambda2(1.0) == pytest.approx(0.25058416708498354, rel=1e-14)
    assert d.lambda1(1.0) == pytest.approx(1 / math.tanh(1) - 1, rel=1e-14)


def test_eta_star_closed_form_matches_bisection():
    for k, a in ((0.5, 0.3), (1.0, 0.5), (2.0, 1.5)):
        assert d.eta_star(k, a) == pytest.approx(d.eta_star_bisect(k, a), abs=1e-12)
    assert d.eta_star(1.0, 0.5) == pytest.approx(1.6071755787602269, rel=1e-12)


@pytest.mark.parametrize("eta,expected", [(0.2, 0.018290541469280885), (0.5, 0.09734845120983682),
                                          (0.8, 0.20381856046669466), (1.0, 0.27876497091177543)])
def test_gamma_excess(eta, expected):
    assert complex(d.gamma(eta, 1.0)).real - 1.0 == pytest.approx(expected, rel=1e-12)


def test_roots_and_logs():
    p = d.dispersion(0.3, 1.0)
    assert abs(p.beta_plus * p.beta_minus - 1) < 1e-14
    assert abs(p.beta_plus ** 2 + 2 * p.w * p.beta_plus + 1) < 1e-14
    assert abs(np.exp(p.gamma) + p.beta_minus) < 1e-13
    assert abs(p.delta - (math.sinh(1) * p.gamma - p.mu)) < 1e-14


def test_eta_zero_values():
    p = d.dispersion(0.0, 1.0)
    assert complex(p.mu) == pytest.approx(math.sinh(1.0))
    assert complex(p.gamma) == pytest.approx(1.0)
    assert complex(p.delta) == pytest.approx(0.0, abs=1e-15)


def test_scan_is_consistent():
    s = d.dispersion_scan(1.0, 5.0, 401)
    assert s.product_error < 1e-12
    assert s.conjugate_error < 1e-12
    assert s.continuity_jump < 1.5


def test_small_eta_derivatives():
    for r in d.check_small_eta(1.0):
        assert r.rel_error < 1e-5
        assert r.order > 1.9


def test_free_omega_zero_and_bound():
    a = 0.5
    b = d.growth_bound(a)
    assert abs(d.free_omega(0.0, b, a)) < 1e-12
    xi = np.linspace(0, np.pi, 51)
    om = d.free_omega(xi, 0.0, a)
    assert np.all(om.imag >= 0) and np.all(om.imag <= b + 1e-12)


def test_validation():
    with pytest.raises(ValueError):
        d.dispersion(0.1, -1.0)
    with pytest.raises(ValueError):
        d.eta_star(1.0, 3.0)
