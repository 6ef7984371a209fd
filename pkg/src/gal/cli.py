"""Command-line front end.

Output is CSV with a single '#'-prefixed manifest header line (or
JSON-lines with a leading manifest object under --json).  The manifest
records command, config snapshot, seed, precision, tool version and
wall time; the payload below it is byte-identical across runs with the
same manifest parameters and thread count (strip the header line when
comparing, it carries the wall time).

Exit codes: 0 success, 1 validation error, 2 budget or precision
exhaustion.  Config precedence: flags > config file > defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import __version__
from .equidist import (
    ExperimentConfig,
    corollary_search,
    equidist_ratio,
    sweep,
    type1_check,
    type2_check,
)
from .errors import BudgetExceeded, GalError, LimitTooLarge, PrecisionExhausted
from .expsums import (
    AnnulusSpec,
    FreqBox,
    annulus_exp_sum,
    cauchy_schwarz_diagnostic,
    check_plug_and_also,
    e3_f3_bound_reports,
    g_theta_reports,
    lin_bound_rhs,
    sigma_count,
)
from .coeffs import CoeffSource
from .gaussian_primes import build_sieve, count_annulus, pnt_ratio
from .hurwitz_cf import convergents, expand, pick_denominator
from .theta import parse_theta
from .vaaler import VaalerParams, max_error_report


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract is 1
        raise UsageError(f"{message}\n{self.format_usage()}")


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _manifest_line(manifest: dict) -> str:
    parts = [f"{k}={manifest[k]}" for k in manifest]
    return "# " + " ".join(parts)


def _emit(stream, manifest: dict, columns: list[str], rows: list[dict],
          as_json: bool) -> None:
    if as_json:
        stream.write(json.dumps({"manifest": manifest}, sort_keys=True) + "\n")
        for row in rows:
            stream.write(json.dumps({c: row.get(c) for c in columns}) + "\n")
        return
    stream.write(_manifest_line(manifest) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c, "")) for c in columns])


def _read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"bad config line: {line!r}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _resolve(args, config: dict, key: str, cast, default):
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in config:
        return cast(config[key])
    return default


def _int_list(text: str) -> list[int]:
    return [int(float(t)) for t in text.split(",") if t]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]


def _build_parser() -> _Parser:
    p = _Parser(prog="gal", description=__doc__)
    p.add_argument("--version", action="version", version=f"gal {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--json", action="store_true", help="JSON-lines output")
        sp.add_argument("--config", help="key = value config file")
        sp.add_argument("--threads", type=int, default=None,
                        help="worker threads (default GAL_THREADS or 1)")
        sp.add_argument("--prec", type=int, default=256,
                        help="working precision in bits")
        sp.add_argument("--seed", type=int, default=None, help="RNG seed")

    sp = sub.add_parser("sieve", help="Gaussian prime counts by norm")
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--annulus", action="store_true",
                    help="emit the x/2 < N <= x count instead of the table")
    common(sp)

    sp = sub.add_parser("cf", help="Hurwitz continued fraction of theta")
    sp.add_argument("--theta", required=True,
                    help="theta expression, e.g. 'sqrt:2+i*sqrt:3'")
    sp.add_argument("--terms", type=int, default=16)
    common(sp)

    sp = sub.add_parser("vaaler-check", help="sawtooth approximation errors")
    sp.add_argument("--J", default="1,5,10,50,200", help="comma list of levels")
    sp.add_argument("--grid", type=int, default=10**4)
    common(sp)

    sp = sub.add_parser("expsum", help="annulus exponential sum and linear bound")
    sp.add_argument("--kappa", required=True, help="kappa expression")
    sp.add_argument("--lo", type=float, default=0.0)
    sp.add_argument("--hi", type=float, required=True)
    common(sp)

    sp = sub.add_parser("sigma-count", help="lattice points with small parts")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--z", type=float, required=True)
    sp.add_argument("--d1", type=float, required=True)
    sp.add_argument("--d2", type=float, required=True)
    common(sp)

    sp = sub.add_parser("bounds-report", help="fitted-constant reports")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--kind", choices=["plug", "gtheta", "e3f3", "cs"],
                    required=True)
    sp.add_argument("--x", type=float, default=None)
    sp.add_argument("--z", type=float, default=None)
    sp.add_argument("--y", type=float, default=None)
    sp.add_argument("--d1", type=float, default=0.5)
    sp.add_argument("--d2", type=float, default=0.5)
    sp.add_argument("--q-target", type=int, default=10**4,
                    help="pick the convergent with N(q) below this")
    sp.add_argument("--h1", type=float, default=2.0)
    sp.add_argument("--h2", type=float, default=2.0)
    sp.add_argument("--k", type=float, default=2.0)
    sp.add_argument("--kp", type=float, default=4.0)
    sp.add_argument("--terms", type=int, default=24)
    common(sp)

    sp = sub.add_parser("equidist", help="S(x,delta) against 4 delta^2 S(x)")
    sp.add_argument("--theta", default=None)
    sp.add_argument("--x", type=int, default=None)
    sp.add_argument("--delta", type=float, default=None)
    common(sp)

    sp = sub.add_parser("type-checks", help="sieve hypothesis error reports")
    sp.add_argument("--theta", default=None)
    sp.add_argument("--x", type=int, default=None)
    sp.add_argument("--delta", type=float, default=None)
    common(sp)

    sp = sub.add_parser("corollary", help="primes with ||p theta|| <= N(p)^-gamma")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--x-max", type=int, required=True)
    common(sp)

    sp = sub.add_parser("sweep", help="equidistribution ratio grid")
    sp.add_argument("--theta", default=None)
    sp.add_argument("--x", default=None, help="comma list of x values")
    sp.add_argument("--delta", default=None, help="comma list of deltas")
    common(sp)

    return p


def _cmd_sieve(args, config):
    table = build_sieve(args.x)
    if args.annulus:
        row = {"x": args.x, "s_x": count_annulus(table, args.x)}
        row["pnt_ratio"] = pnt_ratio(table, args.x) if args.x >= 16 else ""
        return ["x", "s_x", "pnt_ratio"], [row]
    rows = [{"norm": n, "count": c} for n, c in sorted(table.counts_by_norm.items())]
    return ["norm", "count"], rows


def _cmd_cf(args, config):
    exp = expand(args.theta, args.terms, start_prec=args.prec)
    convs = convergents(exp) if exp.certified_terms else []
    rows = []
    for c in convs:
        a = exp.partial_quotients[c.index]
        rows.append({
            "index": c.index, "a_re": a.re, "a_im": a.im,
            "p_re": c.p.re, "p_im": c.p.im, "q_re": c.q.re, "q_im": c.q.im,
            "q_norm": c.q.norm, "status": exp.status,
        })
    return (["index", "a_re", "a_im", "p_re", "p_im", "q_re", "q_im",
             "q_norm", "status"], rows)


def _cmd_vaaler(args, config):
    rows = [max_error_report(VaalerParams(j), args.grid)
            for j in _int_list(args.J)]
    return ["J", "grid", "max_err_minus_sigma", "min_sigma", "max_abs_err"], rows


def _cmd_expsum(args, config):
    kappa = parse_theta(args.kappa).eval(args.prec)
    spec = AnnulusSpec(args.lo, args.hi)
    s = annulus_exp_sum(spec, kappa)
    rhs = lin_bound_rhs(spec, kappa)
    row = {"lo": args.lo, "hi": args.hi, "sum_re": s.real, "sum_im": s.imag,
           "sum_abs": abs(s), "lin_bound_rhs": rhs,
           "fitted_constant": abs(s) / rhs if rhs else 0.0}
    return (["lo", "hi", "sum_re", "sum_im", "sum_abs", "lin_bound_rhs",
             "fitted_constant"], [row])


def _cmd_sigma_count(args, config):
    n = sigma_count(args.theta, args.z, args.d1, args.d2, prec=args.prec)
    return (["z", "d1", "d2", "count"],
            [{"z": args.z, "d1": args.d1, "d2": args.d2, "count": n}])


def _report_rows(reports):
    rows = []
    for r in reports:
        ctx = dict(r.context)
        kind = ctx.pop("kind", "")
        rows.append({"kind": kind, "measured": r.measured,
                     "bound_rhs": r.bound_rhs,
                     "fitted_constant": r.fitted_constant,
                     "context": json.dumps(ctx, sort_keys=True, default=str)})
    return ["kind", "measured", "bound_rhs", "fitted_constant", "context"], rows


def _cmd_bounds_report(args, config):
    seed = args.seed if args.seed is not None else 0
    exp = expand(args.theta, args.terms, start_prec=max(args.prec, 256))
    conv = pick_denominator(exp, args.q_target)
    if args.kind == "plug":
        z = args.z if args.z is not None else float(conv.q.norm)
        reports = [check_plug_and_also(args.theta, conv, z, args.d1, args.d2)]
    elif args.kind == "gtheta":
        y = args.y if args.y is not None else 10**4
        z = args.z if args.z is not None else 10**3
        reports = g_theta_reports(args.theta, conv, y, z)
    elif args.kind == "cs":
        x = args.x if args.x is not None else 64.0
        reports = [cauchy_schwarz_diagnostic(
            args.theta, FreqBox(args.h1, max(args.h2, 0.5)), args.k, args.kp,
            x, CoeffSource.random(seed))]
    else:
        x = args.x if args.x is not None else 10**4
        reports = e3_f3_bound_reports(
            args.theta, conv, x, boxes=((args.h1, max(args.h2, 0.5)),),
            coeffs=CoeffSource.random(seed), prec=args.prec)
    return _report_rows(reports)


def _experiment_config(args, config) -> ExperimentConfig:
    theta = _resolve(args, config, "theta", str, None)
    x = _resolve(args, config, "x", lambda s: int(float(s)), None)
    delta = _resolve(args, config, "delta", float, None)
    if theta is None or x is None or delta is None:
        raise UsageError("theta, x and delta are required (flags or config file)")
    seed = _resolve(args, config, "seed", int, 0)
    kwargs = {}
    for key, cast in (("alpha", float), ("beta", float), ("eps", float),
                      ("m_cap", float), ("j_level", int)):
        if key in config:
            kwargs[key] = cast(config[key])
    return ExperimentConfig(theta_spec=theta, x=int(x), delta=delta, seed=seed,
                            **kwargs)


def _cmd_equidist(args, config):
    cfg = _experiment_config(args, config)
    r = equidist_ratio(cfg)
    return (["x", "delta", "s_x_delta", "s_x", "ratio"],
            [{"x": r.x, "delta": r.delta, "s_x_delta": r.s_x_delta,
              "s_x": r.s_x, "ratio": r.ratio}])


def _cmd_type_checks(args, config):
    cfg = _experiment_config(args, config)
    return _report_rows([type1_check(cfg), type2_check(cfg)])


def _cmd_corollary(args, config):
    hits = corollary_search(args.theta, args.gamma, args.x_max, prec=args.prec)
    rows = [{"re": p.re, "im": p.im, "norm": n, "dist": d} for p, n, d in hits]
    return ["re", "im", "norm", "dist"], rows


def _cmd_sweep(args, config, threads: int):
    theta = _resolve(args, config, "theta", str, None)
    xs_text = _resolve(args, config, "x", str, None)
    ds_text = _resolve(args, config, "delta", str, None)
    if theta is None or xs_text is None or ds_text is None:
        raise UsageError("theta, x list and delta list are required")
    seed = _resolve(args, config, "seed", int, 0)
    results = sweep(theta, _int_list(str(xs_text)), _float_list(str(ds_text)),
                    seed=seed, threads=threads)
    rows = [{"x": r.x, "delta": r.delta, "s_x_delta": r.s_x_delta,
             "s_x": r.s_x, "ratio": r.ratio} for r in results]
    return ["x", "delta", "s_x_delta", "s_x", "ratio"], rows


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _read_config(args.config) if args.config else {}
        threads = args.threads if args.threads is not None \
            else int(os.environ.get("GAL_THREADS", "1"))
        started = time.time()
        if args.command == "sieve":
            columns, rows = _cmd_sieve(args, config)
        elif args.command == "cf":
            columns, rows = _cmd_cf(args, config)
        elif args.command == "vaaler-check":
            columns, rows = _cmd_vaaler(args, config)
        elif args.command == "expsum":
            columns, rows = _cmd_expsum(args, config)
        elif args.command == "sigma-count":
            columns, rows = _cmd_sigma_count(args, config)
        elif args.command == "bounds-report":
            columns, rows = _cmd_bounds_report(args, config)
        elif args.command == "equidist":
            columns, rows = _cmd_equidist(args, config)
        elif args.command == "type-checks":
            columns, rows = _cmd_type_checks(args, config)
        elif args.command == "corollary":
            columns, rows = _cmd_corollary(args, config)
        else:
            columns, rows = _cmd_sweep(args, config, threads)
        wall = time.time() - started

        manifest = {
            "tool": f"gal/{__version__}",
            "command": args.command,
            "config": json.dumps(
                {k: v for k, v in sorted(vars(args).items())
                 if k not in ("out", "json", "config") and v is not None},
                sort_keys=True, default=str),
            "seed": args.seed if args.seed is not None else 0,
            "precision": args.prec,
            "threads": threads,
            "walltime": f"{wall:.3f}s",
        }
        buf = io.StringIO()
        _emit(buf, manifest, columns, rows, args.json)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
        return 0
    except UsageError as exc:
        print(f"gal: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, PrecisionExhausted, LimitTooLarge) as exc:
        print(f"gal: {exc}", file=sys.stderr)
        return 2
    except (GalError, ValueError) as exc:
        print(f"gal: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
