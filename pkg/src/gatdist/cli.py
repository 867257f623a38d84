"""Command-line interface: fit, eval, sample, risk, gof, plotdata.

Input files are UTF-8 text with one value per line, or delimited files
with a column selected by index or header name (``--column``); ``-`` reads
standard input.  Human tables print values to four decimals in the style
of the standard fit tables; ``--format machine`` emits JSON with full
round-trip precision.  Every command that consumes randomness accepts
``--seed`` and is bitwise reproducible under it.  Exit status is 0 on
success and nonzero with a single-line diagnostic on validation failure.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import gat, split_t
from .fit import (FitOptions, ModelSpec, PARAM_NAMES, fit_ladder, fit_mle,
                  select_aic, std_errors)
from .gof import BootstrapInvalidError, bootstrap_p
from .streams import RandomStream

__all__ = ["main", "load_dataset", "Dataset", "CliError"]


class CliError(ValueError):
    """Validation failure destined for a one-line diagnostic and exit 1."""


@dataclass
class Dataset:
    values: np.ndarray
    source: str
    transform: str = "none"

    @property
    def n(self):
        return int(self.values.size)


def _parse_lines(lines, source, column=None):
    if column is None:
        values = []
        for lineno, raw in enumerate(lines, start=1):
            tok = raw.strip()
            if not tok or tok.startswith("#"):
                continue
            try:
                values.append(float(tok))
            except ValueError:
                raise CliError(
                    f"{source}:{lineno}: non-numeric value {tok!r}") from None
        return values

    rows = list(csv.reader(lines))
    rows = [(i + 1, r) for i, r in enumerate(rows)
            if r and any(f.strip() for f in r)]
    if not rows:
        raise CliError(f"{source}: no rows")
    header = [f.strip() for f in rows[0][1]]
    try:
        idx = int(column)
        start = 0
    except ValueError:
        if column not in header:
            raise CliError(
                f"{source}: no column named {column!r}; header is {header}"
            ) from None
        idx = header.index(column)
        start = 1
    values = []
    for lineno, row in rows[start:]:
        if idx >= len(row):
            raise CliError(f"{source}:{lineno}: fewer than {idx + 1} columns")
        tok = row[idx].strip()
        try:
            values.append(float(tok))
        except ValueError:
            raise CliError(
                f"{source}:{lineno}: non-numeric value {tok!r} in column "
                f"{column}") from None
    return values


def load_dataset(path, column=None, log_returns=False):
    """Read a dataset from a file path or '-' (standard input)."""
    if path == "-":
        values = _parse_lines(sys.stdin.readlines(), "<stdin>", column)
        source = "<stdin>"
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                values = _parse_lines(fh.readlines(), path, column)
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}") from None
        source = path
    if not values:
        raise CliError(f"{source}: no observations")
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise CliError(f"{source}: non-finite values present")
    if log_returns:
        if arr.size < 2:
            raise CliError(f"{source}: need at least 2 values for --log-returns")
        if np.any(arr <= 0.0):
            raise CliError(f"{source}: --log-returns requires positive values")
        arr = np.diff(np.log(arr))
        return Dataset(arr, source, "log_returns")
    return Dataset(arr, source)


def _parse_fixes(pairs, family):
    fixed = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise CliError(f"--fix expects NAME=VALUE, got {pair!r}")
        name, _, val = pair.partition("=")
        name = name.strip()
        if name not in PARAM_NAMES[family]:
            raise CliError(
                f"--fix {name!r}: not a parameter of the {family} family")
        try:
            fixed[name] = float(val)
        except ValueError:
            raise CliError(f"--fix {pair!r}: value is not numeric") from None
    return fixed


def _params_from_flags(args, family):
    kwargs = {"mu": args.mu, "phi": args.phi, "nu": args.nu,
              "c": args.c, "r": args.r}
    if family == "gat":
        kwargs["alpha"] = args.alpha
    try:
        return (gat.GatParams(**kwargs) if family == "gat"
                else split_t.AstParams(**kwargs))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _fmt(v, nd=4):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "-"
    return f"{v:.{nd}f}"


def _result_row(res):
    row = {"family": res.spec.family}
    names = PARAM_NAMES[res.spec.family]
    for name in names:
        row[name] = res.params[name]
    if res.spec.family == "ast":
        row["alpha"] = None
    row["fixed"] = sorted(res.spec.fixed)
    row["neg_log_lik"] = res.neg_log_lik
    row["aic"] = res.aic
    row["bic"] = res.bic
    row["converged"] = res.converged
    row["n_obs"] = res.n_obs
    if res.std_errors is not None:
        row["std_errors"] = {k: (None if math.isnan(v) else v)
                             for k, v in res.std_errors.items()}
    return row


def _print_fit_table(results, out):
    cols = ("family", "nu", "c", "r", "alpha", "-logLik", "AIC")
    widths = {c: max(len(c), 12) for c in cols}
    out.write("  ".join(f"{c:>{widths[c]}}" for c in cols) + "\n")
    for res in results:
        cells = [f"{res.spec.family:>{widths['family']}}"]
        for name in ("nu", "c", "r", "alpha"):
            if res.spec.family == "ast" and name == "alpha":
                txt = "-"
            else:
                txt = _fmt(res.params[name])
                if name in res.spec.fixed:
                    txt += " (f)"
            cells.append(f"{txt:>{widths[name]}}")
        cells.append(f"{res.neg_log_lik:>{widths['-logLik']}.4f}")
        cells.append(f"{res.aic:>{widths['AIC']}.4f}")
        out.write("  ".join(cells) + "\n")
        out.write(f"{'':>12}  mu={_fmt(res.params['mu'])} "
                  f"phi={_fmt(res.params['phi'])}"
                  + (f"  se: " + " ".join(
                      f"{k}={_fmt(v)}" for k, v in res.std_errors.items())
                     if res.std_errors else "")
                  + f"  converged={res.converged}\n")


def _cmd_fit(args, out):
    ds = load_dataset(args.input, args.column, args.log_returns)
    opts = FitOptions(seed=args.seed or 0)
    if args.ladder:
        gat_stages = fit_ladder(ds.values, "gat", opts)
        ast_stages = fit_ladder(ds.values, "ast", opts)
        # interleaved comparison table in the standard six-row shape
        results = [gat_stages[0], ast_stages[0], gat_stages[1], ast_stages[1],
                   gat_stages[2], gat_stages[3]]
        best = select_aic(results)
        for res in results:
            std_errors(ds.values, res)
        if args.format == "machine":
            rows = [_result_row(r) for r in results]
            rows[best]["min_aic"] = True
            json.dump({"n_obs": ds.n, "rows": rows}, out, indent=2)
            out.write("\n")
        else:
            _print_fit_table(results, out)
            out.write(f"minimum AIC: row {best + 1} "
                      f"({results[best].spec.family}, "
                      f"fixed={sorted(results[best].spec.fixed)})\n")
        return 0
    fixed = _parse_fixes(args.fix, args.family)
    res = fit_mle(ds.values, ModelSpec(args.family, fixed), opts)
    std_errors(ds.values, res)
    if args.format == "machine":
        json.dump({"n_obs": ds.n, "rows": [_result_row(res)]}, out, indent=2)
        out.write("\n")
    else:
        _print_fit_table([res], out)
    return 0


def _cmd_eval(args, out):
    family = args.family
    p = _params_from_flags(args, family)
    pts = [float(t) for t in args.points]
    kind = ("pdf" if args.pdf else "cdf" if args.cdf else "quantile")
    vals = []
    for t in pts:
        if kind == "pdf":
            v = (float(np.exp(gat.log_pdf(p, t))) if family == "gat"
                 else float(np.exp(split_t.ast_log_pdf(p, t))))
        elif kind == "cdf":
            v = (float(gat.cdf(p, t)) if family == "gat"
                 else float(split_t.ast_cdf(p, t)))
        else:
            if not 0.0 < t < 1.0:
                raise CliError(f"quantile points must be in (0, 1), got {t}")
            if family != "gat":
                raise CliError("quantile evaluation is supported for --family gat")
            v = gat.quantile(p, t)
        vals.append(v)
    if args.format == "machine":
        json.dump({kind: dict(zip(map(str, pts), vals))}, out, indent=2)
        out.write("\n")
    else:
        for v in vals:
            out.write(f"{v:.15g}\n")
    return 0


def _cmd_sample(args, out):
    if args.n < 1:
        raise CliError(f"-n must be >= 1, got {args.n}")
    p = _params_from_flags(args, args.family)
    stream = RandomStream(args.seed)
    draws = (gat.sample(p, args.n, stream) if args.family == "gat"
             else split_t.ast_sample(p, args.n, stream))
    for v in draws:
        out.write(f"{v:.17g}\n")
    return 0


def _cmd_risk(args, out):
    if args.input is not None:
        ds = load_dataset(args.input, args.column, args.log_returns)
        fixed = _parse_fixes(args.fix, "gat")
        res = fit_mle(ds.values, ModelSpec("gat", fixed),
                      FitOptions(seed=args.seed or 0))
        p = gat.GatParams(**res.params)
    else:
        p = _params_from_flags(args, "gat")
    gammas = [float(t) for t in args.gamma]
    for t in gammas:
        if not 0.0 < t < 1.0:
            raise CliError(f"--gamma must be in (0, 1), got {t}")
    rows = []
    for t in gammas:
        rep = gat.risk_report(p, t)
        rows.append({"gamma": t, "var": rep.var, "es": rep.es,
                     "cdf_at_neg_var": float(gat.cdf(p, -rep.var)),
                     "es_note": None if rep.es is not None
                     else f"undefined: nu <= r (left tail power "
                          f"{p.nu / p.r:.4g} <= 1, no tail mean)"})
    if args.format == "machine":
        json.dump({"params": {k: getattr(p, k) for k in
                              ("mu", "phi", "nu", "c", "r", "alpha")},
                   "rows": rows}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"{'gamma':>10}  {'VaR':>12}  {'ES':>12}  {'F(-VaR)':>12}\n")
        for row in rows:
            es_txt = _fmt(row["es"]) if row["es"] is not None else "undefined"
            out.write(f"{row['gamma']:>10.4f}  {row['var']:>12.4f}  "
                      f"{es_txt:>12}  {row['cdf_at_neg_var']:>12.6g}\n")
            if row["es_note"]:
                out.write(f"{'':>10}  note: {row['es_note']}\n")
    return 0


def _cmd_gof(args, out):
    if args.boot < 99:
        raise CliError(f"--boot must be >= 99, got {args.boot}")
    ds = load_dataset(args.input, args.column, args.log_returns)
    fixed = _parse_fixes(args.fix, args.family)
    stream = RandomStream(args.seed)
    try:
        rep = bootstrap_p(ds.values, ModelSpec(args.family, fixed),
                          args.boot, stream)
    except BootstrapInvalidError as exc:
        raise CliError(str(exc)) from None
    if args.format == "machine":
        json.dump({"statistic": rep.statistic, "p_value": rep.p_value,
                   "n_boot": rep.n_boot, "seed": rep.seed,
                   "n_failures": rep.n_failures}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"A2 = {rep.statistic:.6f}\n"
                  f"p-value = {rep.p_value:.6f}  (B = {rep.n_boot}, "
                  f"seed = {rep.seed}, failures = {rep.n_failures})\n")
    return 0


def _cmd_plotdata(args, out):
    ds = load_dataset(args.input, args.column, args.log_returns)
    if args.bins < 1:
        raise CliError(f"--bins must be >= 1, got {args.bins}")
    opts = FitOptions(seed=args.seed or 0)
    fixes = _parse_fixes(args.fix, "gat")
    gat_res = fit_mle(ds.values, ModelSpec("gat", fixes), opts)
    ast_fixes = {k: v for k, v in fixes.items() if k in PARAM_NAMES["ast"]}
    ast_res = fit_mle(ds.values, ModelSpec("ast", ast_fixes), opts)
    gp = gat.GatParams(**gat_res.params)
    ap = split_t.AstParams(**ast_res.params)

    heights, edges = np.histogram(ds.values, bins=args.bins, density=True)
    centres = 0.5 * (edges[:-1] + edges[1:])
    phi_hat = gat_res.params["phi"]
    grid = np.linspace(ds.values.min() - phi_hat, ds.values.max() + phi_hat,
                       512)
    gat_pdf = np.exp(gat.log_pdf(gp, grid))
    ast_pdf = np.exp(split_t.ast_log_pdf(ap, grid))

    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["series", "x", "density"])
    for x, h in zip(centres, heights):
        writer.writerow(["hist", repr(float(x)), repr(float(h))])
    for x, v in zip(grid, gat_pdf):
        writer.writerow(["gat", repr(float(x)), repr(float(v))])
    for x, v in zip(grid, ast_pdf):
        writer.writerow(["ast", repr(float(x)), repr(float(v))])
    return 0


def _add_param_flags(sub, required_nu=True):
    sub.add_argument("--mu", type=float, default=0.0)
    sub.add_argument("--phi", type=float, default=1.0)
    sub.add_argument("--nu", type=float, required=required_nu, default=None)
    sub.add_argument("--c", type=float, default=1.0)
    sub.add_argument("--r", type=float, default=1.0)
    sub.add_argument("--alpha", type=float, default=1.0)


def _add_input_flags(sub):
    sub.add_argument("input", help="data file, or - for stdin")
    sub.add_argument("--column", default=None,
                     help="column index or header name for delimited input")
    sub.add_argument("--log-returns", action="store_true",
                     help="transform to log returns ln(x[i+1]/x[i])")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="gatdist",
        description="GAT / split-t distribution fitting and evaluation")
    sub = ap.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="maximum-likelihood fit")
    _add_input_flags(p_fit)
    p_fit.add_argument("--family", choices=("gat", "ast"), default="gat")
    p_fit.add_argument("--fix", action="append", metavar="NAME=VALUE")
    p_fit.add_argument("--ladder", action="store_true",
                       help="fit the full model ladder for both families")
    p_fit.add_argument("--seed", type=int, default=None)
    p_fit.add_argument("--format", choices=("table", "machine"),
                       default="table")

    p_eval = sub.add_parser("eval", help="evaluate pdf/cdf/quantile")
    p_eval.add_argument("points", nargs="+")
    p_eval.add_argument("--family", choices=("gat", "ast"), default="gat")
    _add_param_flags(p_eval)
    group = p_eval.add_mutually_exclusive_group(required=True)
    group.add_argument("--pdf", action="store_true")
    group.add_argument("--cdf", action="store_true")
    group.add_argument("--quantile", action="store_true")
    p_eval.add_argument("--format", choices=("table", "machine"),
                        default="table")

    p_sample = sub.add_parser("sample", help="draw random variates")
    p_sample.add_argument("-n", type=int, required=True)
    p_sample.add_argument("--family", choices=("gat", "ast"), default="gat")
    _add_param_flags(p_sample)
    p_sample.add_argument("--seed", type=int, default=None,
                          help="entropy-seeded when omitted")

    p_risk = sub.add_parser("risk", help="VaR and expected shortfall")
    p_risk.add_argument("--input", default=None,
                        help="fit a GAT model to this file first")
    p_risk.add_argument("--column", default=None)
    p_risk.add_argument("--log-returns", action="store_true")
    p_risk.add_argument("--fix", action="append", metavar="NAME=VALUE")
    _add_param_flags(p_risk, required_nu=False)
    p_risk.add_argument("--gamma", action="append", required=True,
                        metavar="G", help="tail probability (repeatable)")
    p_risk.add_argument("--seed", type=int, default=None)
    p_risk.add_argument("--format", choices=("table", "machine"),
                        default="table")

    p_gof = sub.add_parser("gof", help="Anderson-Darling bootstrap test")
    _add_input_flags(p_gof)
    p_gof.add_argument("--family", choices=("gat", "ast"), default="gat")
    p_gof.add_argument("--fix", action="append", metavar="NAME=VALUE")
    p_gof.add_argument("--boot", type=int, default=199)
    p_gof.add_argument("--seed", type=int, default=None)
    p_gof.add_argument("--format", choices=("table", "machine"),
                       default="table")

    p_plot = sub.add_parser("plotdata",
                            help="histogram and fitted-density table")
    _add_input_flags(p_plot)
    p_plot.add_argument("--bins", type=int, default=20)
    p_plot.add_argument("--fix", action="append", metavar="NAME=VALUE")
    p_plot.add_argument("--seed", type=int, default=None)
    return ap


_DISPATCH = {"fit": _cmd_fit, "eval": _cmd_eval, "sample": _cmd_sample,
             "risk": _cmd_risk, "gof": _cmd_gof, "plotdata": _cmd_plotdata}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    # eval's --nu is required; risk without --input also needs --nu
    try:
        if args.command == "risk" and args.input is None and args.nu is None:
            raise CliError("risk needs either --input or explicit parameters")
        return _DISPATCH[args.command](args, out)
    except CliError as exc:
        print(f"gatdist: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
