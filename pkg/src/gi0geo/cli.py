"""Command line front end.

Results are printed as ``key=value`` lines; tables go to CSV files (or to
stdout with ``--out -``). Failures exit with status 1 and print
``error: <code>: <message>`` on stderr.
"""

import argparse
import sys
from pathlib import Path

from . import experiments as exp
from .distances import gd_same_scale, gd_same_texture, td, test_statistic
from .edge import StripSpec, TRACE_HEADER, detect_edge, detect_edges_in_rows, simulate_strip
from .errors import Gi0Error
from .estimation import estimate_enl, fit_alpha_fixed_gamma, fit_ml
from .io import RegionSpec, format_csv, read_raster, write_raster
from .model import ModelParams, scale_transform


def _emit(**pairs):
    for k, v in pairs.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, float):
            v = f"{v:.6f}"
        print(f"{k}={v}")


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _floats(text):
    return tuple(float(v) for v in text.split(","))


def _ints(text):
    return tuple(int(v) for v in text.split(","))


def _load(path, region):
    raster = read_raster(path)
    if region:
        raster = RegionSpec.parse(region).extract(raster)
    return raster


def cmd_simulate_strip(args):
    spec = StripSpec(
        rows=args.rows,
        cols=args.cols,
        left=ModelParams(args.alpha1, args.gamma1, args.looks),
        right=ModelParams(args.alpha2, args.gamma2, args.looks),
        seed=args.seed,
    )
    strip = simulate_strip(spec)
    write_raster(strip, args.out)
    _emit(rows=spec.rows, cols=spec.cols, out=args.out)


def cmd_estimate(args):
    values = _load(args.input, args.region).ravel()
    if args.fix_gamma is not None:
        fit = fit_alpha_fixed_gamma(values, args.fix_gamma, args.looks)
    else:
        fit = fit_ml(values, args.looks)
    _emit(
        sample_size=fit.n,
        alpha_hat=fit.alpha_hat,
        gamma_hat=fit.gamma_hat,
        log_likelihood=fit.log_likelihood,
        converged=fit.converged,
        iterations=fit.iterations,
        clamped=fit.clamped,
    )


def cmd_enl(args):
    values = _load(args.input, args.region).ravel()
    _emit(sample_size=values.size, enl=estimate_enl(values))


def cmd_distance(args):
    if args.which == "gd-alpha":
        d = gd_same_scale(args.alpha1, args.alpha2, args.looks)
        _emit(gd=d.value, method=d.method)
    elif args.which == "gd-gamma":
        d = gd_same_texture(args.gamma1, args.gamma2, args.alpha, args.looks)
        _emit(gd=d.value, method=d.method)
    elif args.which == "td":
        d = td(
            ModelParams(args.alpha1, args.gamma1, args.looks),
            ModelParams(args.alpha2, args.gamma2, args.looks),
        )
        _emit(td=d.value, abs_error=d.abs_error_estimate, converged=d.converged)
    else:
        _distance_samples(args)


def _rescaled_texture(values, looks):
    joint = fit_ml(values, looks)
    star = fit_alpha_fixed_gamma(scale_transform(values, joint.gamma_hat), 1.0, looks, alpha0=joint.alpha_hat)
    return joint, star


def _distance_samples(args):
    x = read_raster(args.in1).ravel()
    y = read_raster(args.in2).ravel()
    jx, sx = _rescaled_texture(x, args.looks)
    jy, sy = _rescaled_texture(y, args.looks)
    if args.kind == "gd":
        d = gd_same_scale(sx.alpha_hat, sy.alpha_hat, args.looks)
    else:
        d = td(ModelParams(sx.alpha_hat, 1.0, args.looks), ModelParams(sy.alpha_hat, 1.0, args.looks))
    stat = test_statistic(d, x.size, y.size)
    _emit(
        m=x.size,
        n=y.size,
        alpha1_star=sx.alpha_hat,
        alpha2_star=sy.alpha_hat,
        gamma1_hat=jx.gamma_hat,
        gamma2_hat=jy.gamma_hat,
        distance=d.value,
        converged=d.converged,
        statistic=stat.statistic,
        p_value=stat.p_value,
    )


def cmd_detect_edge(args):
    raster = read_raster(args.input)
    if args.band_height is None:
        trace = detect_edge(raster, args.noe, args.looks, compute_td=args.td)
        _write_text(args.out, trace.to_csv())
        _emit(k_top=trace.k_top, p_hat_gd=trace.p_hat_gd, edge_col_gd=trace.edge_column_gd)
        if args.td:
            _emit(p_hat_td="" if trace.p_hat_td is None else trace.p_hat_td)
        return
    traces, dropped = detect_edges_in_rows(raster, args.band_height, args.noe, args.looks, compute_td=args.td)
    rows = []
    for band, trace in traces:
        rows.extend([band] + r for r in trace.rows_for_csv())
    _write_text(args.out, format_csv(["band"] + TRACE_HEADER, rows))
    _emit(bands=len(traces), dropped_rows=dropped)
    for band, trace in traces:
        p_td = "" if trace.p_hat_td is None else trace.p_hat_td
        print(f"band={band} p_hat_gd={trace.p_hat_gd}" + (f" p_hat_td={p_td}" if args.td else ""))


def cmd_mc_edge_curves(args):
    config = exp.ExperimentConfig(
        replications=args.reps,
        base_seed=args.seed,
        rows=args.rows,
        cols=args.cols,
        noe=args.noe,
        alpha1=args.alpha1,
        alpha2_values=args.alpha2,
        looks_values=args.looks,
        brightness=args.brightness,
        compute_td=not args.no_td,
        workers=args.workers,
    )
    curves = exp.mc_edge_curves(config)
    _write_text(args.out, curves.to_csv())


def cmd_mc_pvalues(args):
    config = exp.ExperimentConfig(
        replications=args.reps,
        base_seed=args.seed,
        null_alpha=args.alpha,
        null_gamma=args.gamma,
        null_looks=args.looks,
        pvalue_estimator=args.estimator,
        workers=args.workers,
    )
    rows = exp.mc_empirical_pvalues(config, args.sizes)
    _write_text(args.out, exp.pvalues_csv(rows))


def cmd_figures(args):
    _write_text(args.out, exp.figures_csv(args.points))


def build_parser():
    p = argparse.ArgumentParser(
        prog="gi0geo",
        description="Geodesic and triangular distances between G0_I laws, texture edge detection.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate-strip", help="simulate a two-texture strip")
    s.add_argument("--rows", type=int, required=True)
    s.add_argument("--cols", type=int, required=True)
    s.add_argument("--alpha1", type=float, required=True)
    s.add_argument("--gamma1", type=float, required=True)
    s.add_argument("--alpha2", type=float, required=True)
    s.add_argument("--gamma2", type=float, required=True)
    s.add_argument("--looks", type=float, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate_strip)

    s = sub.add_parser("estimate", help="maximum-likelihood fit of a raster or region")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--region")
    s.add_argument("--looks", type=float, required=True)
    s.add_argument("--fix-gamma", type=float)
    s.set_defaults(func=cmd_estimate)

    s = sub.add_parser("enl", help="equivalent number of looks of a region")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--region", required=True)
    s.set_defaults(func=cmd_enl)

    d = sub.add_parser("distance", help="distances between laws or samples")
    dsub = d.add_subparsers(dest="which", required=True)
    s = dsub.add_parser("gd-alpha")
    s.add_argument("--alpha1", type=float, required=True)
    s.add_argument("--alpha2", type=float, required=True)
    s.add_argument("--looks", type=float, required=True)
    s = dsub.add_parser("gd-gamma")
    s.add_argument("--gamma1", type=float, required=True)
    s.add_argument("--gamma2", type=float, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--looks", type=float, required=True)
    s = dsub.add_parser("td")
    for name in ("--alpha1", "--gamma1", "--alpha2", "--gamma2", "--looks"):
        s.add_argument(name, type=float, required=True)
    s = dsub.add_parser("samples")
    s.add_argument("--in1", required=True)
    s.add_argument("--in2", required=True)
    s.add_argument("--looks", type=float, required=True)
    s.add_argument("--kind", choices=("gd", "td"), default="gd")
    d.set_defaults(func=cmd_distance)

    s = sub.add_parser("detect-edge", help="edge detection along a strip or row bands")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--noe", type=int, required=True)
    s.add_argument("--looks", type=float, required=True)
    s.add_argument("--band-height", type=int)
    s.add_argument("--td", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_detect_edge)

    mc = sub.add_parser("mc", help="Monte Carlo studies")
    mcsub = mc.add_subparsers(dest="study", required=True)
    s = mcsub.add_parser("edge-curves")
    s.add_argument("--reps", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rows", type=int, default=10)
    s.add_argument("--cols", type=int, default=10_000)
    s.add_argument("--noe", type=int, default=500)
    s.add_argument("--alpha1", type=float, default=-2.0)
    s.add_argument("--alpha2", type=_floats, default=(-2.0, -3.0, -5.0, -6.0))
    s.add_argument("--looks", type=_floats, default=(1.0, 2.0))
    s.add_argument("--brightness", choices=("matched", "unit"), default="matched")
    s.add_argument("--no-td", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_mc_edge_curves)

    s = mcsub.add_parser("pvalues")
    s.add_argument("--reps", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sizes", type=_ints, default=exp.DEFAULT_SAMPLE_SIZES)
    s.add_argument("--alpha", type=float, default=-2.0)
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--looks", type=float, default=1.0)
    s.add_argument("--estimator", choices=("known_scale", "rescaled"), default="known_scale")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_mc_pvalues)

    s = sub.add_parser("figures", help="tabulate geodesic distance curves")
    s.add_argument("--points", type=int, default=121)
    # accepted for a uniform interface; the curves are deterministic
    s.add_argument("--reps", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_figures)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Gi0Error as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
