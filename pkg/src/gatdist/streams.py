"""Seedable random streams and the gamma/beta variate primitives.

A :class:`RandomStream` wraps numpy's PCG64 generator seeded through a
``SeedSequence``.  The generator algorithm is fixed: within one build,
identical seeds give bitwise-identical draw sequences.  Substreams are
derived from (seed, index path) pairs via ``SeedSequence`` spawn keys,
which makes them independent by construction.  A stream is single-owner:
never share one across concurrent tasks, derive substreams instead.
"""

import numpy as np

__all__ = ["RandomStream", "sample_gamma", "sample_beta"]


class RandomStream:
    """Deterministic random source backed by PCG64.

    Parameters
    ----------
    seed : int
        64-bit unsigned seed.  ``None`` draws fresh OS entropy.
    """

    def __init__(self, seed=None, _path=()):
        if seed is None:
            seed = int(np.random.SeedSequence().entropy) & (2**64 - 1)
        self.seed = int(seed)
        self._path = tuple(int(i) for i in _path)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self._path)
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def substream(self, index):
        """Independent stream derived from (seed, ...path, index)."""
        return RandomStream(self.seed, self._path + (int(index),))

    def uniform(self, size=None):
        return self.generator.random(size)

    def normal(self, size=None):
        return self.generator.standard_normal(size)

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, path={self._path})"


def sample_gamma(shape, stream, size=None):
    """Unit-scale gamma variates by the Marsaglia-Tsang squeeze method.

    Shapes below one use the boost ``G(shape+1) * u**(1/shape)``.
    Returns a float when ``size`` is None, else an ndarray.
    """
    shape = float(shape)
    if not shape > 0.0:
        raise ValueError(f"sample_gamma requires shape > 0, got {shape!r}")
    scalar = size is None
    n = 1 if scalar else int(size)

    boost = shape < 1.0
    s = shape + 1.0 if boost else shape
    d = s - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)

    out = np.empty(n)
    filled = 0
    while filled < n:
        m = max(n - filled, 8)
        x = stream.normal(m)
        v = (1.0 + c * x) ** 3
        u = stream.uniform(m)
        ok = v > 0.0
        x2 = x * x
        logv = np.log(np.where(ok, v, 1.0))
        accept = ok & ((u < 1.0 - 0.0331 * x2 * x2)
                       | (np.log(u) < 0.5 * x2 + d * (1.0 - v + logv)))
        good = d * v[accept]
        take = min(good.size, n - filled)
        out[filled:filled + take] = good[:take]
        filled += take

    if boost:
        out *= stream.uniform(n) ** (1.0 / shape)
    return float(out[0]) if scalar else out


def sample_beta(a, b, stream, size=None):
    """Beta(a, b) variates as G1/(G1+G2) from two gamma draws."""
    if not (float(a) > 0.0 and float(b) > 0.0):
        raise ValueError(f"sample_beta requires a, b > 0, got a={a!r}, b={b!r}")
    scalar = size is None
    n = 1 if scalar else int(size)
    g1 = np.atleast_1d(sample_gamma(a, stream, n))
    g2 = np.atleast_1d(sample_gamma(b, stream, n))
    # underflow of both draws to zero is ruled out for any sane shape, but
    # a lone zero lane would give a degenerate 0/1; redraw such lanes
    bad = (g1 + g2) == 0.0
    while np.any(bad):
        g1[bad] = sample_gamma(a, stream, int(bad.sum()))
        g2[bad] = sample_gamma(b, stream, int(bad.sum()))
        bad = (g1 + g2) == 0.0
    q = g1 / (g1 + g2)
    return float(q[0]) if scalar else q
