"""PIT coordinate, distribution function, quantiles and the mode."""

import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from gatdist import gat
from conftest import gat_cdf_quad


def test_pit_at_mu():
    p = gat.GatParams(2.0, 1.5, 3.0)
    assert float(gat.pit(p, 2.0)) == pytest.approx(0.5, abs=1e-15)
    p2 = gat.GatParams(2.0, 1.5, 3.0, c=1.7, r=0.8, alpha=1.2)
    con = gat.shape_constants(p2)
    expect = 1.0 / (1.0 + p2.c ** (-1.0 / con.delta))
    assert float(gat.pit(p2, 2.0)) == pytest.approx(expect, rel=1e-14)


def test_pit_monotone_to_one():
    p = gat.GatParams(0.0, 1.0, 2.0, 1.3, 0.7, 0.9)
    xs = np.linspace(-50, 50, 301)
    q = gat.pit(p, xs)
    assert np.all(np.diff(q) > 0.0)
    assert float(gat.pit(p, 1e300)) == pytest.approx(1.0, abs=1e-12)
    assert float(gat.pit(p, -1e300)) == pytest.approx(0.0, abs=1e-12)


def test_cdf_symmetric_median_and_cauchy():
    p = gat.GatParams(0.7, 2.0, 4.0)
    assert float(gat.cdf(p, 0.7)) == pytest.approx(0.5, abs=1e-13)
    cau = gat.from_t(1.0)
    assert float(gat.cdf(cau, 1.0)) == pytest.approx(0.75, abs=1e-13)


def test_cdf_matches_quadrature_asymmetric():
    p = gat.GatParams(0, 1, 2.5, 1.3, 0.8, 0.7)
    for x in (-3.0, -0.5, 0.0, 2.0, 10.0):
        assert float(gat.cdf(p, x)) == pytest.approx(gat_cdf_quad(p, x),
                                                     abs=1e-9)


def test_cdf_derivative_matches_pdf():
    p = gat.GatParams(0, 1, 2.5, 1.3, 0.8, 0.7)
    h = 1e-6
    for x in (-2.0, -0.3, 0.4, 1.7):
        fd = (float(gat.cdf(p, x + h)) - float(gat.cdf(p, x - h))) / (2 * h)
        assert fd == pytest.approx(float(gat.pdf(p, x)), rel=1e-6)


def test_quantile_symmetric_median():
    p = gat.GatParams(3.0, 2.0, 5.0)
    assert gat.quantile(p, 0.5) == pytest.approx(3.0, abs=1e-10)


def test_quantile_cauchy_closed_form():
    p = gat.from_t(1.0)
    for u in (0.05, 0.25, 0.5, 0.9, 0.999):
        assert gat.quantile(p, u) == pytest.approx(
            math.tan(math.pi * (u - 0.5)), rel=1e-9, abs=1e-9)


def test_quantile_tolerance_contract():
    p = gat.GatParams(0, 1, 0.8, 2.2, 0.4, 0.3)
    for u in (1e-6, 0.01, 0.37, 0.93, 1 - 1e-6):
        x = gat.quantile(p, u)
        assert abs(float(gat.cdf(p, x)) - u) <= 1e-10


def test_quantile_roundtrip_grid():
    p = gat.GatParams(0.4, 1.3, 2.5, 1.3, 0.8, 0.7)
    for k in range(6):
        for sign in (-1, 1):
            x = p.mu + sign * k * p.phi
            u = float(gat.cdf(p, x))
            back = gat.quantile(p, u)
            assert back == pytest.approx(x, rel=1e-8, abs=1e-8 * p.phi)


def test_quantile_roundtrip_sweep(param_sweep):
    for p in param_sweep[::5]:
        for k in (0, 1, 3, 5):
            for sign in (-1, 1):
                x = p.mu + sign * k * p.phi
                u = float(gat.cdf(p, x))
                if not 1e-14 < u < 1.0 - 1e-14:
                    continue
                back = gat.quantile(p, u)
                assert back == pytest.approx(x, rel=1e-8, abs=1e-8), (p, x)


def test_quantile_domain():
    p = gat.GatParams(0, 1, 2.0)
    for bad in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ValueError):
            gat.quantile(p, bad)


def test_mode_symmetric_is_mu():
    p = gat.GatParams(1.25, 0.7, 4.0)
    assert gat.mode(p) == pytest.approx(1.25, abs=1e-9)


def test_mode_seed_formula_and_convergence():
    # r = 1 collapses the seed to mu + (phi/2)(1/c - c)
    p = gat.GatParams(0.0, 1.0, 5.0, 2.0, 1.0, 1.0)
    e = 2.0 / (p.alpha * (p.r + 1.0 / p.r))
    seed = p.mu + 0.5 * p.phi * (p.r ** (-e) / p.c - p.c * p.r ** e)
    assert seed == pytest.approx(-0.75, abs=1e-14)
    m = gat.mode(p)
    assert abs(m - seed) < 0.5 * p.phi
    # derivative tolerance contract
    h = 1e-6
    d = (float(gat.log_pdf(p, m + h)) - float(gat.log_pdf(p, m - h))) / (2 * h)
    assert abs(d) < 1e-6


@pytest.mark.parametrize("p", [
    gat.GatParams(0, 1, 3.0, 1.2, 0.7, 0.9),
    gat.GatParams(2.0, 0.5, 1.5, 0.6, 1.8, 0.4),
    gat.GatParams(0, 1, 20.0, 3.0, 1.0, 2.5),
])
def test_mode_matches_golden_section(p):
    m = gat.mode(p)
    res = minimize_scalar(lambda x: -float(gat.log_pdf(p, x)),
                          bracket=(p.mu - 5 * p.phi, m, p.mu + 5 * p.phi),
                          method="golden", options={"xtol": 1e-12})
    assert m == pytest.approx(res.x, abs=1e-6 * max(1.0, abs(res.x)))


def test_mode_is_local_max(param_sweep):
    # the convergence contract bounds |d ln f / dx| by 1e-9 / phi, so a
    # neighbour at distance eps may sit above by as much as eps * 1e-9 / phi
    for p in param_sweep[::10]:
        m = gat.mode(p)
        lm = float(gat.log_pdf(p, m))
        for eps in (1e-3, 1e-2):
            slack = 2e-9 * eps / p.phi + 1e-12
            assert lm >= float(gat.log_pdf(p, m + eps)) - slack
            assert lm >= float(gat.log_pdf(p, m - eps)) - slack
