"""Random streams and gamma/beta variate generation."""

import numpy as np
import pytest
from scipy import stats

from gatdist.specfun import reg_inc_beta
from gatdist.streams import RandomStream, sample_beta, sample_gamma


def test_equal_seeds_bitwise_equal():
    a = RandomStream(123)
    b = RandomStream(123)
    assert np.array_equal(a.uniform(1000), b.uniform(1000))
    assert np.array_equal(a.normal(1000), b.normal(1000))
    assert np.array_equal(sample_gamma(2.5, a, 1000), sample_gamma(2.5, b, 1000))
    assert np.array_equal(sample_beta(2.0, 3.0, a, 1000),
                          sample_beta(2.0, 3.0, b, 1000))


def test_substreams_differ_and_are_reproducible():
    root = RandomStream(9)
    s0 = root.substream(0).uniform(100)
    s1 = root.substream(1).uniform(100)
    assert not np.array_equal(s0, s1)
    assert np.array_equal(s0, RandomStream(9).substream(0).uniform(100))
    # substream draws are unaffected by how much the parent has consumed
    root.uniform(1000)
    assert np.array_equal(s0, root.substream(0).uniform(100))


def test_substream_correlation_negligible():
    root = RandomStream(77)
    x = root.substream(0).uniform(20_000)
    y = root.substream(1).uniform(20_000)
    assert abs(np.corrcoef(x, y)[0, 1]) < 0.02


def test_gamma_moments_shape_4():
    x = sample_gamma(4.0, RandomStream(42), 100_000)
    assert x.mean() == pytest.approx(4.0, abs=0.05)
    assert x.var() == pytest.approx(4.0, abs=0.15)


def test_gamma_small_shape_ks():
    x = sample_gamma(0.3, RandomStream(4), 50_000)
    assert np.all(x > 0.0)
    p = stats.kstest(x, "gamma", args=(0.3,)).pvalue
    assert p > 0.01


def test_gamma_domain():
    with pytest.raises(ValueError):
        sample_gamma(0.0, RandomStream(1))
    with pytest.raises(ValueError):
        sample_gamma(-2.0, RandomStream(1))


def test_beta_mean():
    q = sample_beta(2.0, 3.0, RandomStream(8), 100_000)
    assert q.mean() == pytest.approx(0.4, abs=0.005)
    assert np.all((q > 0.0) & (q < 1.0))


def test_beta_uniform_case_ks():
    q = sample_beta(1.0, 1.0, RandomStream(15), 50_000)
    assert stats.kstest(q, "uniform").pvalue > 0.01


def test_beta_skewed_case_vs_reg_inc_beta():
    q = sample_beta(0.5, 4.0, RandomStream(16), 50_000)
    p = stats.kstest(q, lambda t: reg_inc_beta(0.5, 4.0, t)).pvalue
    assert p > 0.01


def test_beta_domain():
    with pytest.raises(ValueError):
        sample_beta(0.0, 1.0, RandomStream(1))


def test_scalar_draws():
    g = sample_gamma(1.5, RandomStream(2))
    assert isinstance(g, float) and g > 0.0
    b = sample_beta(2.0, 2.0, RandomStream(2))
    assert isinstance(b, float) and 0.0 < b < 1.0
