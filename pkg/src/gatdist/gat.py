"""The GAT distribution: a six-parameter asymmetric generalisation of the t.

A variate X follows the GAT law when y = ln(c) + asinh((x - mu)/phi) follows
a rescaled type IV generalised logistic (log-F) distribution,

    f(y) = [alpha (1 + r^2) / r] * {exp(alpha r y) + exp(-(alpha/r) y)}^(-nu/alpha)
           / B(a, b),

with beta shapes a = nu / (alpha (1 + r^2)) and b = a r^2.  The density of X
picks up the Jacobian (1 + u^2)^(-1/2), u = (x - mu)/phi.  Tails decay as
x^(-(nu r + 1)) on the right and |x|^(-(nu/r + 1)) on the left; c moves
probability mass between the tails; alpha < 1 makes power-law behaviour set
in earlier (fatter shoulders than any t).  With c = r = alpha = 1 the law is
a rescaled Student t with nu degrees of freedom, and in the limit
alpha -> 0, nu -> inf with eta = nu * alpha held fixed it is Johnson's S_U.

Everything is computed in log space; the probability-integral transform
q(x) = logistic(y / delta), delta = r / (alpha (1 + r^2)), is Beta(a, b)
distributed, which gives the distribution function, the sampler and all
moment formulas in closed form through (incomplete) beta functions.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .specfun import log_beta, reg_inc_beta
from .streams import sample_gamma

__all__ = [
    "GatParams", "ShapeConstants", "MomentReport", "RiskReport",
    "shape_constants", "log_pdf", "pdf", "pit", "cdf", "quantile", "mode",
    "central_moment", "mean", "mad", "sample", "var_at", "expected_shortfall",
    "risk_report", "from_t", "su_proxy",
]

# |u| beyond which sqrt(1 + u^2) is replaced by |u| (u*u would overflow)
_BIG_U = 1e150


@dataclass(frozen=True)
class GatParams:
    """Parameter set (mu, phi, nu, c, r, alpha); all but mu strictly positive.

    mu    location (data units)
    phi   scale (data units)
    nu    tail-power parameter
    c     scale asymmetry (ratio of tail masses)
    r     tail-power asymmetry (ratio of tail exponents)
    alpha tail-onset parameter (1 recovers the t family when c = r = 1)
    """

    mu: float
    phi: float
    nu: float
    c: float = 1.0
    r: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        for name in ("mu", "phi", "nu", "c", "r", "alpha"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise ValueError(f"GatParams.{name} must be finite, got {v!r}")
        for name in ("phi", "nu", "c", "r", "alpha"):
            if getattr(self, name) <= 0.0:
                raise ValueError(
                    f"GatParams.{name} must be > 0, got {getattr(self, name)!r}")


class ShapeConstants(NamedTuple):
    """Derived beta shapes a, b and the tail exponent step delta."""

    a: float
    b: float
    delta: float


@dataclass(frozen=True)
class MomentReport:
    """Central moment of a given order, with its existence flag.

    central_value is E(X - mu)^n, about_mean is E(X - E X)^n; both are None
    when nu <= n * max(r, 1/r), where the defining integral diverges.
    """

    order: int
    exists: bool
    central_value: Optional[float] = None
    about_mean: Optional[float] = None


@dataclass(frozen=True)
class RiskReport:
    """Value-at-Risk and expected shortfall at tail probability gamma.

    es is None when the left tail is too heavy for a conditional mean
    (nu <= r).  var satisfies F(-var) = gamma.
    """

    gamma: float
    var: float
    es: Optional[float] = None


def shape_constants(p):
    """Beta shapes (a, b) and delta for a GAT parameter set."""
    a = p.nu / (p.alpha * (1.0 + p.r * p.r))
    return ShapeConstants(a=a, b=a * p.r * p.r,
                          delta=p.r / (p.alpha * (1.0 + p.r * p.r)))


def _log_w(u):
    # ln sqrt(1 + u^2), safe for |u| up to 1e300
    au = np.abs(u)
    big = au > _BIG_U
    u_safe = np.where(big, 1.0, u)
    return np.where(big, np.log(np.where(big, au, 1.0)),
                    0.5 * np.log1p(u_safe * u_safe))


def _log_pdf_core(x, mu, phi, nu, c, r, alpha):
    """Vectorised log density; mu/phi may be arrays (regression use)."""
    u = (x - mu) / phi
    y = np.log(c) + np.arcsinh(u)
    lse = np.logaddexp(alpha * r * y, -(alpha / r) * y)
    a = nu / (alpha * (1.0 + r * r))
    return (np.log(alpha) + np.log1p(r * r) - np.log(r) - np.log(phi)
            - log_beta(a, a * r * r) - (nu / alpha) * lse - _log_w(u))


def log_pdf(p, x):
    """ln f(x); finite for any finite x, fully log-space (no overflow)."""
    return _log_pdf_core(np.asarray(x, dtype=float),
                         p.mu, p.phi, p.nu, p.c, p.r, p.alpha)


def pdf(p, x):
    return np.exp(log_pdf(p, x))


def _log_odds(p, x):
    # t = y / delta, the log-odds of the PIT coordinate
    u = (np.asarray(x, dtype=float) - p.mu) / p.phi
    y = np.log(p.c) + np.arcsinh(u)
    return y * (p.alpha * (1.0 + p.r * p.r) / p.r)


def pit(p, x):
    """Probability-integral-transform coordinate q(x) = logistic(y/delta).

    q(X) is Beta(a, b) distributed; computed from the log-odds y/delta so
    extreme x cannot overflow.
    """
    t = _log_odds(p, x)
    pos = t >= 0.0
    et = np.exp(-np.abs(t))
    return np.where(pos, 1.0 / (1.0 + et), et / (1.0 + et))


def cdf(p, x):
    """Distribution function F(x) = B_R(a, b; q(x)).

    Evaluated through whichever of q, 1-q is below one half (using
    B_R(a, b; q) = 1 - B_R(b, a; 1-q)), because for beta shapes below one
    the distribution function approaches its limits like a power of the
    small PIT side, which a saturated double q cannot resolve.
    """
    con = shape_constants(p)
    t = np.asarray(_log_odds(p, x), dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    et = np.exp(-np.abs(t))
    small = et / (1.0 + et)  # = min(q, 1-q), accurate near 0
    out = np.empty(t.shape)
    lo = t <= 0.0
    if np.any(lo):
        out[lo] = reg_inc_beta(con.a, con.b, small[lo])
    if np.any(~lo):
        out[~lo] = 1.0 - reg_inc_beta(con.b, con.a, small[~lo])
    return float(out[0]) if scalar else out


def _pdf_cdf_scalar(p, x):
    return float(np.exp(log_pdf(p, x))), float(cdf(p, x))


def quantile(p, u):
    """Inverse distribution function, |F(x) - u| <= 1e-10.

    Newton-Raphson in x seeded at mu, safeguarded by a maintained bracket
    with bisection fallback whenever a Newton step leaves it.
    """
    u = float(u)
    if not 0.0 < u < 1.0:
        raise ValueError(f"quantile requires 0 < u < 1, got {u!r}")

    def F_at(t):
        return float(cdf(p, t))

    x = p.mu
    f, F = _pdf_cdf_scalar(p, x)
    # geometric bracket expansion away from mu
    if F >= u:
        hi = x
        step = p.phi
        lo = x - step
        while F_at(lo) >= u:
            step *= 2.0
            lo = x - step
            if not math.isfinite(lo):
                raise RuntimeError("quantile bracket expansion failed")
    else:
        lo = x
        step = p.phi
        hi = x + step
        while F_at(hi) < u:
            step *= 2.0
            hi = x + step
            if not math.isfinite(hi):
                raise RuntimeError("quantile bracket expansion failed")

    polish = 0
    for _ in range(100):
        if abs(F - u) <= 1e-10:
            polish += 1
            if polish >= 3:
                break
        if F > u:
            hi = min(hi, x)
        else:
            lo = max(lo, x)
        x_new = x - (F - u) / f if f > 0.0 else math.nan
        if not (lo < x_new < hi) or not math.isfinite(x_new):
            x_new = 0.5 * (lo + hi)
        if x_new == x or hi - lo <= 1e-15 * max(1.0, abs(lo), abs(hi)):
            break
        x = x_new
        f, F = _pdf_cdf_scalar(p, x)
    return x


def _mode_residual(p, x):
    # H(x) = s(x) w + u vanishes at the mode; returns (H, H', w)
    con = shape_constants(p)
    u = (x - p.mu) / p.phi
    w = math.sqrt(1.0 + u * u)
    q = float(pit(p, x))
    rr = p.r + 1.0 / p.r
    s = p.nu * (rr * q - 1.0 / p.r)
    h = s * w + u
    hp = (p.nu * rr * q * (1.0 - q) / con.delta + s * u / w + 1.0) / p.phi
    return h, hp, w


def mode(p):
    """Maximiser of the density, damped Newton on d(ln f)/dx.

    Seeded at x0 = mu + (phi/2) { r^(-2/(alpha(r+1/r)))/c - c r^(2/(alpha(r+1/r))) },
    the image of the mode of the underlying log-F variate.  Converged when
    |d ln f / dx| <= 1e-9 / phi.
    """
    e = 2.0 / (p.alpha * (p.r + 1.0 / p.r))
    x = p.mu + 0.5 * p.phi * (p.r ** (-e) / p.c - p.c * p.r ** e)
    lo, hi = None, None  # sign-change bracket, once found
    for _ in range(200):
        h, hp, w = _mode_residual(p, x)
        # |d ln f/dx| = |h| / (phi w^2)
        if abs(h) <= 1e-9 * w * w:
            return x
        if h > 0.0:
            hi = x if hi is None else min(hi, x)
        else:
            lo = x if lo is None else max(lo, x)
        if hp > 0.0:
            step = -h / hp
            cap = 4.0 * p.phi * (1.0 + abs(x - p.mu) / p.phi)
            if abs(step) > cap:
                step = math.copysign(cap, step)
            x_new = x + step
        else:
            x_new = math.nan
        if not math.isfinite(x_new) or (
                lo is not None and hi is not None and not lo < x_new < hi):
            if lo is not None and hi is not None:
                x_new = 0.5 * (lo + hi)
            else:
                x_new = x - math.copysign(p.phi, h)
        x = x_new
    raise RuntimeError("mode search did not converge in 200 damped steps")


def _beta_ratio(con, k):
    # B(a + k delta, b - k delta) / B(a, b) via exponentiated log difference
    return math.exp(log_beta(con.a + k * con.delta, con.b - k * con.delta)
                    - log_beta(con.a, con.b))


def _moment_exists(p, n):
    return p.nu > n * max(p.r, 1.0 / p.r)


def _central_moments_at_mu(p, n):
    """E(X - mu)^j for j = 0..n; requires existence at order n."""
    con = shape_constants(p)
    out = [1.0]
    for j in range(1, n + 1):
        acc = 0.0
        for m in range(j + 1):
            k = j - 2 * m
            acc += ((-1.0) ** m * math.comb(j, m) * p.c ** (-k)
                    * _beta_ratio(con, k))
        out.append((0.5 * p.phi) ** j * acc)
    return out


def central_moment(p, n):
    """n-th central moments E(X-mu)^n and E(X-EX)^n, or non-existence."""
    n = int(n)
    if n < 1:
        raise ValueError(f"moment order must be >= 1, got {n!r}")
    if not _moment_exists(p, n):
        return MomentReport(order=n, exists=False)
    mom = _central_moments_at_mu(p, n)
    delta1 = mom[1]
    about_mean = sum(math.comb(n, j) * mom[j] * (-delta1) ** (n - j)
                     for j in range(n + 1))
    return MomentReport(order=n, exists=True, central_value=mom[n],
                        about_mean=about_mean)


def mean(p):
    """First-moment report; the mean itself is mu + central_value."""
    return central_moment(p, 1)


def _mean_value(p):
    rep = mean(p)
    return p.mu + rep.central_value if rep.exists else None


def mad(p):
    """Mean absolute deviation E|X - E(X)|, or None when no mean exists.

    Uses the truncated-first-moment identity
        E|X - m| = 2 m F(m) - 2 [ mu F(m)
                   + (phi/2)(c^-1 B_I(a+d, b-d; q(m)) - c B_I(a-d, b+d; q(m)))/B(a, b) ],
    m = E(X); the incomplete-beta ratios are assembled from regularised
    values and exponentiated log-beta differences for stability.
    """
    m = _mean_value(p)
    if m is None:
        return None
    con = shape_constants(p)
    qm = float(pit(p, m))
    Fm = reg_inc_beta(con.a, con.b, qm)
    t_plus = (reg_inc_beta(con.a + con.delta, con.b - con.delta, qm)
              * _beta_ratio(con, 1))
    t_minus = (reg_inc_beta(con.a - con.delta, con.b + con.delta, qm)
               * _beta_ratio(con, -1))
    trunc = p.mu * Fm + 0.5 * p.phi * (t_plus / p.c - p.c * t_minus)
    return 2.0 * m * Fm - 2.0 * trunc


def sample(p, n, stream):
    """n independent draws: q ~ Beta(a, b) mapped through the sinh transform.

    Uses ln(q/(1-q)) = ln G1 - ln G2 from the two gamma draws, so extreme
    beta variates cannot overflow.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"sample requires n >= 1, got {n!r}")
    con = shape_constants(p)
    g1 = np.atleast_1d(sample_gamma(con.a, stream, n))
    g2 = np.atleast_1d(sample_gamma(con.b, stream, n))
    log_odds = np.log(g1) - np.log(g2)
    return p.mu + p.phi * np.sinh(con.delta * log_odds - np.log(p.c))


def var_at(p, gamma):
    """Value-at-Risk: the loss level with F(-VaR) = gamma."""
    gamma = float(gamma)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"var_at requires 0 < gamma < 1, got {gamma!r}")
    return -quantile(p, gamma)


def expected_shortfall(p, gamma):
    """E(loss | loss >= VaR) at tail probability gamma; None when nu <= r.

    ES = -mu - phi [ c^-1 B_I(a+d, b-d; q) - c B_I(a-d, b+d; q) ]
              / (2 B_I(a, b; q)),    q = q(-VaR),
    which requires the left tail power nu/r to exceed one.
    """
    gamma = float(gamma)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"expected_shortfall requires 0 < gamma < 1, got {gamma!r}")
    if p.nu <= p.r:
        return None
    con = shape_constants(p)
    threshold = -var_at(p, gamma)
    q = float(pit(p, threshold))
    F = reg_inc_beta(con.a, con.b, q)
    t_plus = (reg_inc_beta(con.a + con.delta, con.b - con.delta, q)
              * _beta_ratio(con, 1))
    t_minus = (reg_inc_beta(con.a - con.delta, con.b + con.delta, q)
               * _beta_ratio(con, -1))
    return -p.mu - 0.5 * p.phi * (t_plus / p.c - p.c * t_minus) / F


def risk_report(p, gamma):
    """VaR and (when it exists) expected shortfall at level gamma."""
    return RiskReport(gamma=float(gamma), var=var_at(p, gamma),
                      es=expected_shortfall(p, gamma))


def from_t(nu):
    """Parameters reproducing the standard t distribution with nu d.o.f."""
    nu = float(nu)
    if nu <= 0.0:
        raise ValueError(f"from_t requires nu > 0, got {nu!r}")
    return GatParams(mu=0.0, phi=math.sqrt(nu), nu=nu, c=1.0, r=1.0, alpha=1.0)


def su_proxy(eta, mu=0.0, phi=1.0, c=1.0):
    """Finite stand-in for the Johnson S_U limit with eta = nu * alpha fixed.

    The limit is alpha -> 0, nu -> inf; following the usual practice the
    proxy pins nu = 200 and sets alpha = eta / 200, r = 1.  At nu = 200 the
    proxy's quantiles agree with the closed-form S_U law
    mu + phi sinh(z/sqrt(eta) - ln c) to a few tenths of a percent.
    """
    eta = float(eta)
    if eta <= 0.0:
        raise ValueError(f"su_proxy requires eta > 0, got {eta!r}")
    return GatParams(mu=float(mu), phi=float(phi), nu=200.0, c=float(c),
                     r=1.0, alpha=eta / 200.0)
