"""The split-t (AST) distribution used as a comparison baseline.

Two t-distribution halves glued at mu: scale c*phi with nu/r degrees of
freedom on the left, scale phi/c with nu*r on the right, sharing a single
normalising constant A so the density is continuous (with zero slope) at
the join.  With I(d) = sqrt(d) B(1/2, d/2) / 2 the half-line integral of an
unnormalised t kernel, A solves

    A [ c phi I(nu/r) + (phi/c) I(nu r) ] = 1.

The second derivative of the log density is discontinuous at mu whenever
c != 1 or r != 1, which is what the smooth alternative is designed to avoid.
"""

import math
from dataclasses import dataclass

import numpy as np

from .specfun import log_beta, reg_inc_beta
from .streams import sample_gamma

__all__ = ["AstParams", "ast_log_pdf", "ast_pdf", "ast_cdf", "ast_sample"]

_BIG_Z = 1e150


def _log_half_kernel_integral(d):
    # ln I(d), I(d) = sqrt(d) B(1/2, d/2) / 2
    return 0.5 * math.log(d) + log_beta(0.5, 0.5 * d) - math.log(2.0)


@dataclass(frozen=True)
class AstParams:
    """Split-t parameters (mu, phi, nu, c, r) plus the derived normaliser.

    norm is the shared constant A; left_mass is the total probability below
    the join point mu.
    """

    mu: float
    phi: float
    nu: float
    c: float = 1.0
    r: float = 1.0

    def __post_init__(self):
        for name in ("mu", "phi", "nu", "c", "r"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise ValueError(f"AstParams.{name} must be finite, got {v!r}")
        for name in ("phi", "nu", "c", "r"):
            if getattr(self, name) <= 0.0:
                raise ValueError(
                    f"AstParams.{name} must be > 0, got {getattr(self, name)!r}")
        log_iL = _log_half_kernel_integral(self.nu / self.r)
        log_iR = _log_half_kernel_integral(self.nu * self.r)
        log_sL = math.log(self.c) + math.log(self.phi)
        log_sR = math.log(self.phi) - math.log(self.c)
        log_norm = -np.logaddexp(log_sL + log_iL, log_sR + log_iR)
        object.__setattr__(self, "log_norm", float(log_norm))
        object.__setattr__(self, "norm", math.exp(float(log_norm)))
        object.__setattr__(self, "left_mass",
                           math.exp(float(log_norm) + log_sL + log_iL))

    @property
    def scale_left(self):
        return self.c * self.phi

    @property
    def scale_right(self):
        return self.phi / self.c

    @property
    def dof_left(self):
        return self.nu / self.r

    @property
    def dof_right(self):
        return self.nu * self.r


def _log_kernel(z, d):
    # ln (1 + z^2/d)^(-(d+1)/2), safe for huge |z|
    az = np.abs(z)
    big = az > _BIG_Z
    z_safe = np.where(big, 1.0, z)
    lk = -0.5 * (d + 1.0) * np.log1p(z_safe * z_safe / d)
    lk_big = -0.5 * (d + 1.0) * (2.0 * np.log(np.where(big, az, 1.0)) - np.log(d))
    return np.where(big, lk_big, lk)


def ast_log_pdf(p, x):
    """Piecewise log density with the shared constant ln A on both branches."""
    x = np.asarray(x, dtype=float)
    z_left = (x - p.mu) / p.scale_left
    z_right = (x - p.mu) / p.scale_right
    return p.log_norm + np.where(x < p.mu,
                                 _log_kernel(z_left, p.dof_left),
                                 _log_kernel(z_right, p.dof_right))


def ast_pdf(p, x):
    return np.exp(ast_log_pdf(p, x))


def _t_tail(z2_over, d):
    # B_R(d/2, 1/2; d/(d+z^2)) = 2 * upper-tail prob of a standard t at |z|
    return reg_inc_beta(0.5 * d, 0.5, z2_over)


def ast_cdf(p, x):
    """Distribution function; each branch is a rescaled t CDF via reg_inc_beta."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty(x.shape)
    left = x <= p.mu
    if np.any(left):
        z = (x[left] - p.mu) / p.scale_left
        d = p.dof_left
        # d/(d + z^2) without inf/inf for huge |z|
        frac = np.where(np.abs(z) > _BIG_Z, 0.0,
                        d / (d + np.minimum(z, _BIG_Z) ** 2))
        out[left] = p.left_mass * _t_tail(frac, d)
    if np.any(~left):
        z = (x[~left] - p.mu) / p.scale_right
        d = p.dof_right
        zc = np.minimum(z, _BIG_Z)
        frac = np.where(z > _BIG_Z, 1.0, zc * zc / (d + zc * zc))
        out[~left] = p.left_mass + (1.0 - p.left_mass) * reg_inc_beta(
            0.5, 0.5 * d, frac)
    return float(out[0]) if scalar else out


def ast_sample(p, n, stream):
    """Mixture sampler: pick a side by its mass, then a one-sided t variate."""
    n = int(n)
    if n < 1:
        raise ValueError(f"ast_sample requires n >= 1, got {n!r}")
    take_left = stream.uniform(n) < p.left_mass
    out = np.empty(n)
    for mask, d, scale, sign in ((take_left, p.dof_left, p.scale_left, -1.0),
                                 (~take_left, p.dof_right, p.scale_right, 1.0)):
        m = int(mask.sum())
        if m == 0:
            continue
        z = stream.normal(m)
        chi2 = 2.0 * np.atleast_1d(sample_gamma(0.5 * d, stream, m))
        t = z * np.sqrt(d / chi2)
        out[mask] = p.mu + sign * scale * np.abs(t)
    return out
