"""Maximum-likelihood fitting for the GAT and split-t families.

Estimation is a Nelder-Mead simplex search on an unconstrained vector
(mu, ln phi, ln nu, ln c, ln r, ln alpha), restricted to the floated
entries of a :class:`ModelSpec`.  The simplex handles both the smooth GAT
likelihood and the split-t's kinked second derivative uniformly.  The
standard model ladder fits, in order,

    {r=1, alpha=1}  ->  {alpha=1}  ->  {r=1}  ->  full  ->  S_U proxy (nu=200, r=1)

with each stage warm-started from the previous one, and reports AIC for
model selection.  Standard errors come from a central-finite-difference
Hessian in the unconstrained parameterisation, delta-method mapped back;
for the split-t they are flagged unreliable because its log-likelihood has
a discontinuous second derivative at the join point.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from . import gat, split_t
from .streams import RandomStream

__all__ = [
    "ModelSpec", "FitOptions", "FitResult", "RegressionSpec",
    "fit_mle", "fit_ladder", "std_errors", "fit_regression", "select_aic",
    "GAT_LADDER_STAGES", "AST_LADDER_STAGES",
]

PARAM_NAMES = {
    "gat": ("mu", "phi", "nu", "c", "r", "alpha"),
    "ast": ("mu", "phi", "nu", "c", "r"),
}

# stages of the model ladder, as {name: fixed value} maps
GAT_LADDER_STAGES = (
    {"r": 1.0, "alpha": 1.0},
    {"alpha": 1.0},
    {"r": 1.0},
    {},
    {"nu": 200.0, "r": 1.0},
)
AST_LADDER_STAGES = ({"r": 1.0}, {})


@dataclass(frozen=True)
class ModelSpec:
    """A family plus a fixed/floated split of its parameters."""

    family: str
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in PARAM_NAMES:
            raise ValueError(f"unknown family {self.family!r}")
        names = PARAM_NAMES[self.family]
        for k, v in self.fixed.items():
            if k not in names:
                raise ValueError(
                    f"parameter {k!r} is not part of the {self.family} family")
            v = float(v)
            if k != "mu" and v <= 0.0:
                raise ValueError(f"fixed value for {k!r} must be > 0, got {v!r}")

    @property
    def floated(self):
        return tuple(n for n in PARAM_NAMES[self.family] if n not in self.fixed)

    @property
    def n_free(self):
        return len(self.floated)


@dataclass
class FitOptions:
    """Optimizer settings: simplex tolerances, restarts, jitter seed."""

    fatol: float = 1e-9
    xatol: float = 1e-7
    restarts: int = 2
    jitter: float = 0.08
    seed: int = 0
    maxiter: Optional[int] = None
    start: Optional[dict] = None


@dataclass
class RegressionSpec:
    """Covariates for location (mu) and/or log-scale (ln phi) regressions."""

    covariates: np.ndarray
    model_mu: bool = True
    model_log_phi: bool = False

    def __post_init__(self):
        z = np.asarray(self.covariates, dtype=float)
        if z.ndim == 1:
            z = z[:, None]
        if z.ndim != 2:
            raise ValueError("covariates must be an (n, p) matrix")
        self.covariates = z


@dataclass
class FitResult:
    """Outcome of one maximum-likelihood fit."""

    spec: ModelSpec
    params: dict
    neg_log_lik: float
    aic: float
    bic: float
    converged: bool
    n_obs: int
    std_errors: Optional[dict] = None
    regression: Optional[RegressionSpec] = None

    @property
    def k(self):
        return len(self.params) - len(self.spec.fixed)


def _to_unconstrained(name, value):
    return value if name == "mu" else math.log(value)


def _from_unconstrained(name, value):
    return value if name == "mu" else math.exp(value)


def _neg_log_lik(family, params, data):
    try:
        if family == "gat":
            ll = gat._log_pdf_core(data, params["mu"], params["phi"],
                                   params["nu"], params["c"], params["r"],
                                   params["alpha"])
        else:
            p = split_t.AstParams(params["mu"], params["phi"], params["nu"],
                                  params["c"], params["r"])
            ll = split_t.ast_log_pdf(p, data)
    except (ValueError, OverflowError):
        return math.inf
    total = float(np.sum(ll))
    return -total if math.isfinite(total) else math.inf


def default_start(data, family):
    """Robust starting values: median location, half-IQR scale, nu = 5."""
    q25, q50, q75 = np.percentile(data, [25.0, 50.0, 75.0])
    phi0 = max(0.5 * (q75 - q25), 1e-6 * max(1.0, abs(q50)), 1e-12)
    start = {"mu": float(q50), "phi": float(phi0), "nu": 5.0,
             "c": 1.0, "r": 1.0}
    if family == "gat":
        start["alpha"] = 1.0
    return start


def _objective(spec, data, fixed_vals):
    floated = spec.floated

    def fun(theta):
        params = dict(fixed_vals)
        for name, t in zip(floated, theta):
            if not math.isfinite(t) or abs(t) > 700.0:
                return 1e308
            params[name] = _from_unconstrained(name, t)
        return _neg_log_lik(spec.family, params, data)

    return fun


def fit_mle(data, spec, options=None):
    """Maximise the log likelihood over the floated parameters of ``spec``.

    Runs Nelder-Mead from the starting point, then ``restarts`` further
    passes from the jittered incumbent optimum, keeping the best.  The fit
    is converged when the final simplex collapsed below ``fatol`` in the
    objective.  A non-converged result is still returned (best point kept)
    with ``converged=False``.
    """
    opts = options or FitOptions()
    data = np.asarray(data, dtype=float).ravel()
    if data.size == 0:
        raise ValueError("no observations")
    if not np.all(np.isfinite(data)):
        raise ValueError("data contains non-finite values")

    start = default_start(data, spec.family)
    if opts.start:
        start.update({k: float(v) for k, v in opts.start.items()})
    fixed_vals = {k: float(v) for k, v in spec.fixed.items()}
    floated = spec.floated
    fun = _objective(spec, data, fixed_vals)

    theta0 = np.array([_to_unconstrained(n, start[n]) for n in floated])
    best = _run_simplex(fun, theta0, opts)

    params = dict(fixed_vals)
    for name, t in zip(floated, best.x):
        params[name] = _from_unconstrained(name, t)
    nll = _neg_log_lik(spec.family, params, data)
    k = len(floated)
    n = data.size
    return FitResult(spec=spec, params=params, neg_log_lik=nll,
                     aic=2.0 * k + 2.0 * nll, bic=k * math.log(n) + 2.0 * nll,
                     converged=bool(best.converged), n_obs=n)


def _warm_start(prev, stage_fixed, family):
    """Carry a previous stage's floated values into the next stage."""
    start = {k: v for k, v in prev.params.items()
             if k not in stage_fixed and k in PARAM_NAMES[family]}
    if family == "gat" and stage_fixed.get("nu") == 200.0:
        # along the S_U ridge eta = nu * alpha is the stable combination
        eta = prev.params["nu"] * prev.params["alpha"]
        start["alpha"] = min(max(eta / 200.0, 1e-8), 100.0)
    return start


def fit_ladder(data, family, options=None):
    """Fit the nested model ladder for a family, warm-starting each stage.

    Returns one FitResult per stage, in ladder order; pick the reporting
    model with :func:`select_aic`.
    """
    opts = options or FitOptions()
    stages = GAT_LADDER_STAGES if family == "gat" else AST_LADDER_STAGES
    results = []
    prev = None
    for stage in stages:
        stage_opts = FitOptions(fatol=opts.fatol, xatol=opts.xatol,
                                restarts=opts.restarts, jitter=opts.jitter,
                                seed=opts.seed, maxiter=opts.maxiter)
        if prev is not None:
            stage_opts.start = _warm_start(prev, stage, family)
        spec = ModelSpec(family, dict(stage))
        result = fit_mle(data, spec, stage_opts)
        # the unrestricted-alpha stages sit on a flat nu ridge when the data
        # is S_U-like; also try an S_U-mapped start and keep the better fit
        if family == "gat" and "alpha" not in stage and "nu" not in stage:
            eta = result.params["nu"] * result.params["alpha"]
            alt = FitOptions(fatol=opts.fatol, xatol=opts.xatol,
                             restarts=opts.restarts, jitter=opts.jitter,
                             seed=opts.seed, maxiter=opts.maxiter)
            alt.start = dict(stage_opts.start or {})
            alt.start.update({"nu": 200.0, "alpha": min(max(eta / 200.0, 1e-8), 100.0)})
            alt_result = fit_mle(data, spec, alt)
            if alt_result.neg_log_lik < result.neg_log_lik:
                result = alt_result
        results.append(result)
        prev = result
    return results


def select_aic(results):
    """Index of the minimum-AIC fit among a sequence of results."""
    return int(np.argmin([r.aic for r in results]))


def _fd_hessian(fun, theta, step=1e-4):
    k = len(theta)
    h = np.maximum(step, step * np.abs(theta))
    hess = np.empty((k, k))
    f0 = fun(theta)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        hess[i, i] = (fun(theta + ei) - 2.0 * f0 + fun(theta - ei)) / h[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = h[j]
            hess[i, j] = hess[j, i] = (
                fun(theta + ei + ej) - fun(theta + ei - ej)
                - fun(theta - ei + ej) + fun(theta - ei - ej)
            ) / (4.0 * h[i] * h[j])
    return hess


def std_errors(data, result, step=1e-4):
    """Standard errors from a central-finite-difference Hessian of -l.

    Works in the unconstrained parameterisation with per-coordinate step
    h = max(step, step * |theta|), then maps back by the delta method.
    Split-t results get NaN errors plus a warning: the second derivative of
    its log likelihood is discontinuous, so curvature-based errors are
    unreliable.  A non-positive-definite Hessian also yields NaNs.
    """
    data = np.asarray(data, dtype=float).ravel()
    spec = result.spec
    if spec.family == "ast":
        warnings.warn("split-t standard errors are unreliable (discontinuous "
                      "second derivative at the join point); reporting NaN")
        result.std_errors = {n: math.nan for n in spec.floated}
        return result.std_errors

    if result.regression is not None:
        fun, layout, _ = _regression_problem(data, result.regression, spec,
                                             default_start(data, spec.family))
        names, theta, scale = [], [], []
        for name, width in layout:
            if name in ("beta", "gamma"):
                prefix = name
                for j in range(width):
                    names.append(f"{prefix}{j}")
                    theta.append(result.params[f"{prefix}{j}"])
                    scale.append(1.0)
            else:
                names.append(name)
                theta.append(_to_unconstrained(name, result.params[name]))
                scale.append(1.0 if name == "mu" else result.params[name])
        theta = np.array(theta)
    else:
        fixed_vals = {k: float(v) for k, v in spec.fixed.items()}
        fun = _objective(spec, data, fixed_vals)
        names = list(spec.floated)
        theta = np.array([_to_unconstrained(n, result.params[n])
                          for n in names])
        scale = [1.0 if n == "mu" else result.params[n] for n in names]

    hess = _fd_hessian(fun, theta, step)
    try:
        np.linalg.cholesky(hess)
        cov = np.linalg.inv(hess)
        se_unc = np.sqrt(np.diag(cov))
    except np.linalg.LinAlgError:
        warnings.warn("Hessian of -log likelihood is not positive definite; "
                      "standard errors undefined")
        result.std_errors = {n: math.nan for n in names}
        return result.std_errors

    result.std_errors = {n: s * sc for n, s, sc in zip(names, se_unc, scale)}
    return result.std_errors


def _regression_names(reg, spec):
    p = reg.covariates.shape[1]
    names = []
    for base in PARAM_NAMES[spec.family]:
        if base == "mu" and reg.model_mu:
            names.extend(["beta0"] + [f"beta{i+1}" for i in range(p)])
        elif base == "phi" and reg.model_log_phi:
            names.extend(["gamma0"] + [f"gamma{i+1}" for i in range(p)])
        else:
            names.append(base)
    return names


def _regression_problem(data, reg, spec, start):
    """Objective, free-vector layout and starting point for a regression fit."""
    z = reg.covariates
    p = z.shape[1]
    design = np.column_stack([np.ones(data.size), z])
    fixed_vals = {k: float(v) for k, v in spec.fixed.items()}

    # least-squares coefficients seed the location block; the residual
    # spread seeds the scale, which keeps the simplex in the right basin
    beta_ls, *_ = np.linalg.lstsq(design, data, rcond=None)
    resid = data - design @ beta_ls
    q25, q75 = np.percentile(resid, [25.0, 75.0])
    phi_resid = max(0.5 * (q75 - q25), 1e-12)

    layout = []
    theta0 = []
    for name in spec.floated:
        if name == "mu" and reg.model_mu:
            layout.append(("beta", p + 1))
            theta0.extend(list(beta_ls))
        elif name == "phi" and reg.model_log_phi:
            layout.append(("gamma", p + 1))
            theta0.extend([math.log(phi_resid)] + [0.0] * p)
        else:
            layout.append((name, 1))
            if name == "phi" and reg.model_mu:
                theta0.append(math.log(phi_resid))
            else:
                theta0.append(_to_unconstrained(name, start[name]))
    theta0 = np.array(theta0)

    def unpack(theta):
        params = dict(fixed_vals)
        i = 0
        for name, width in layout:
            chunk = theta[i:i + width]
            i += width
            if name == "beta":
                params["mu"] = design @ chunk
            elif name == "gamma":
                params["phi"] = np.exp(np.clip(design @ chunk, -700, 700))
            else:
                params[name] = _from_unconstrained(name, float(chunk[0]))
        return params

    def fun(theta):
        if not np.all(np.isfinite(theta)) or np.any(np.abs(theta) > 700.0):
            return 1e308
        params = unpack(theta)
        nll = -float(np.sum(gat._log_pdf_core(
            data, params["mu"], params["phi"], params["nu"], params["c"],
            params["r"], params["alpha"])))
        return nll if math.isfinite(nll) else 1e308

    return fun, layout, theta0


def _run_simplex(fun, theta0, opts):
    """Nelder-Mead with jittered restarts and a final unjittered polish.

    Restarting a collapsed simplex re-inflates it, which is the standard
    cure for premature stagnation in curved valleys.  Returns the best
    result; ``converged`` means its final simplex spread in the objective
    fell below ``fatol``.
    """
    maxfev = opts.maxiter or 2000 * max(1, theta0.size)
    nm_opts = {"fatol": opts.fatol, "xatol": opts.xatol, "adaptive": True,
               "maxiter": maxfev, "maxfev": maxfev}
    jitter_rng = RandomStream(opts.seed).generator
    best = None
    x0 = theta0
    for attempt in range(opts.restarts + 1):
        res = minimize(fun, x0, method="Nelder-Mead", options=nm_opts)
        if best is None or res.fun < best.fun:
            best = res
        x0 = best.x + opts.jitter * jitter_rng.standard_normal(theta0.size)
    if opts.restarts > 0:
        polish = minimize(fun, best.x, method="Nelder-Mead", options=nm_opts)
        if polish.fun <= best.fun:
            best = polish
    fsim = best.final_simplex[1]
    best.converged = bool(fsim[-1] - fsim[0] <= opts.fatol)
    return best


def fit_regression(data, reg, spec, options=None):
    """ML fit with mu and/or ln phi modelled linearly on covariates.

    mu_i = beta0 + beta' z_i and ln phi_i = gamma0 + gamma' z_i replace the
    corresponding scalar parameters; coefficients are unconstrained and join
    the floated vector.  With p = 0 covariates and intercept-only terms the
    fit coincides with :func:`fit_mle`.
    """
    if spec.family != "gat":
        raise ValueError("covariate regression is implemented for the gat family")
    opts = options or FitOptions()
    data = np.asarray(data, dtype=float).ravel()
    z = reg.covariates
    if z.shape[0] != data.size:
        raise ValueError(
            f"covariate rows ({z.shape[0]}) != observations ({data.size})")
    p = z.shape[1]
    design = np.column_stack([np.ones(data.size), z])
    if np.linalg.matrix_rank(design) < p + 1:
        warnings.warn("covariate matrix is rank deficient")
    if reg.model_mu and "mu" in spec.fixed:
        raise ValueError("cannot both fix mu and regress it on covariates")
    if reg.model_log_phi and "phi" in spec.fixed:
        raise ValueError("cannot both fix phi and regress it on covariates")

    start = default_start(data, spec.family)
    if opts.start:
        start.update(opts.start)
    fun, layout, theta0 = _regression_problem(data, reg, spec, start)
    best = _run_simplex(fun, theta0, opts)

    # flatten coefficients into the params record
    out = {k: float(v) for k, v in spec.fixed.items()}
    i = 0
    for name, width in layout:
        chunk = best.x[i:i + width]
        i += width
        if name == "beta":
            for j, v in enumerate(chunk):
                out[f"beta{j}"] = float(v)
        elif name == "gamma":
            for j, v in enumerate(chunk):
                out[f"gamma{j}"] = float(v)
        else:
            out[name] = _from_unconstrained(name, float(chunk[0]))
    k = best.x.size
    n = data.size
    nll = float(best.fun)
    return FitResult(spec=spec, params=out, neg_log_lik=nll,
                     aic=2.0 * k + 2.0 * nll, bic=k * math.log(n) + 2.0 * nll,
                     converged=bool(best.converged), n_obs=n, regression=reg)
