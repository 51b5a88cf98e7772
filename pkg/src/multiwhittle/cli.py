"""Command-line front end: ``simulate``, ``estimate``, ``diagnose`` and ``bench``.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical failure.
"""

import argparse
import csv
import json
import logging
import sys
import time

import numpy as np

from . import __version__
from .bench import SUMMARY_FIELDS, BenchConfig, run_benchmark, summarize
from .diagnostics import scale_stats, sliding_windows, write_csv
from .exceptions import ConvergenceError, DataError, IdentifiabilityError, ModelError, WaveletError
from .fourier import PHASES, mfw
from .sim import FivarmaModel, fivarma, replication_rng
from .wavelet import dwt_exact, scaling_filter
from .wavelet_whittle import mww

logger = logging.getLogger("multiwhittle")

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4
TIME_COLUMNS = ("", "t", "time", "index", "date")


class ConfigError(Exception):
    pass


def _num(v):
    """Shortest round-trip representation; NaN/inf become JSON null."""
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_num(u) for u in v]
    v = float(v)
    return v if np.isfinite(v) else None


def read_series_csv(path):
    """Read a header + numeric CSV; a leading time/index column is dropped.

    Raises :class:`DataError` with the 1-based row and column of the first
    malformed cell.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    skip = 1 if header and header[0].lower() in TIME_COLUMNS and len(header) > 1 else 0
    labels = header[skip:]
    data = []
    for i, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise DataError(f"{path}: row {i} has {len(row)} fields, expected {len(header)}")
        vals = []
        for jcol, cell in enumerate(row[skip:], start=skip + 1):
            try:
                v = float(cell)
            except ValueError:
                raise DataError(f"{path}: non-numeric value {cell!r} at row {i}, column {jcol}") from None
            if not np.isfinite(v):
                raise DataError(f"{path}: non-finite value at row {i}, column {jcol}")
            vals.append(v)
        data.append(vals)
    x = np.array(data, dtype=float).reshape(len(data), len(labels))
    if x.shape[0] < 2:
        raise DataError(f"{path}: need at least 2 observations, got {x.shape[0]}")
    return x, labels


def write_series_csv(x, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["t"] + [f"x{l + 1}" for l in range(x.shape[1])])
    for t, row in enumerate(x, start=1):
        writer.writerow([t] + [repr(float(v)) for v in row])


def _parse_vector(text):
    try:
        vals = [float(s) for s in str(text).replace(";", ",").split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse numeric vector {text!r}") from None
    if not vals:
        raise ConfigError("empty vector")
    return vals


def _parse_matrices(text, name):
    if text is None:
        return []
    try:
        arr = np.asarray(json.loads(text), dtype=float)
    except (ValueError, TypeError):
        raise ConfigError(f"{name} must be a JSON matrix or list of matrices, got {text!r}") from None
    return [arr] if arr.ndim == 2 else list(arr)


def _model_from_args(args):
    d = _parse_vector(args.d)
    if args.sigma is not None:
        try:
            sigma = np.asarray(json.loads(args.sigma), dtype=float)
        except (ValueError, TypeError):
            raise ConfigError(f"--sigma must be a JSON matrix, got {args.sigma!r}") from None
    else:
        sigma = np.full((len(d), len(d)), args.rho)
        np.fill_diagonal(sigma, 1.0)
    return FivarmaModel(d, sigma, _parse_matrices(args.ar, "--ar"), _parse_matrices(args.ma, "--ma"))


def _filter(args):
    return scaling_filter("Daubechies", 2 * args.M)


def cmd_simulate(args):
    if args.n < 1:
        raise ConfigError("--n must be a positive sample size")
    model = _model_from_args(args)
    x, omega = fivarma(args.n, model, replication_rng(args.seed))
    if args.out == "-":
        write_series_csv(x, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_series_csv(x, fh)
    if args.omega_out:
        payload = {"long_run_cov": _num(omega), "d": _num(model.d), "seed": args.seed, "n": args.n}
        with open(args.omega_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def estimate_report(x, args):
    """Run the requested estimator and build the JSON report dictionary."""
    start = time.perf_counter()
    if args.method == "mfw":
        est = mfw(x, args.m, args.phase)
    else:
        est = mww(x, _filter(args), args.j0, args.j1, args.J)
    flags = dict(est.flags)
    flags.setdefault("identifiability", [])
    report = {
        "method": est.method,
        "d": _num(est.d),
        "cov": _num(est.cov),
        "correlation": _num(est.correlation),
        "params": dict(est.params, n=int(x.shape[0]), p=int(x.shape[1])),
        "flags": flags,
        "criterion_value": _num(est.criterion),
        "seed": getattr(args, "seed", None),
    }
    if est.method == "mww":
        report["params"]["M"] = args.M
    if getattr(args, "timing", False):
        report["wallclock"] = time.perf_counter() - start
    return report


def cmd_estimate(args):
    x, labels = read_series_csv(args.input)
    report = estimate_report(x, args)
    report["labels"] = labels
    text = json.dumps(report, indent=2) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_diagnose(args):
    filt = _filter(args)
    if args.input:
        x, _ = read_series_csv(args.input)
        width = args.width or min(512, x.shape[0])
        if width > x.shape[0]:
            raise ConfigError(f"--width {width} exceeds the series length {x.shape[0]}")
        step = args.step or max(1, (x.shape[0] - width) // 99)
        series = sliding_windows(x, width, step)
    else:
        if args.d is None:
            raise ConfigError("diagnose needs --input or a model (--d)")
        model = _model_from_args(args)
        series = [fivarma(args.n, model, replication_rng(args.seed, r))[0] for r in range(args.reps)]
    stats = scale_stats([dwt_exact(s, filt) for s in series])
    rows = stats.summary(args.stat)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_bench(args):
    if args.reps < 10:
        raise ConfigError("--reps must be at least 10")
    methods = tuple(m.strip() for m in args.methods.split(","))
    for m in methods:
        if m not in ("mww", "mfw"):
            raise ConfigError(f"unknown method {m!r}")
    model = _model_from_args(args)
    config = BenchConfig(
        d=tuple(model.d), rho=args.rho, n=args.n, reps=args.reps, seed=args.seed, methods=methods,
        M=args.M, j0=args.j0, j1=args.j1, J=args.J, m=args.m, phase=args.phase,
        ar=model.ar, ma=model.ma, difference=None if args.difference is None else args.difference - 1,
        workers=args.workers, sigma=None if args.sigma is None else model.sigma.tolist(),
    )
    rows = summarize(run_benchmark(config))
    fh = sys.stdout if not args.out or args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_FIELDS)
        for row in rows:
            writer.writerow(["" if row[k] is None else (repr(row[k]) if isinstance(row[k], float) else row[k])
                             for k in SUMMARY_FIELDS])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def _add_model_args(p, d_required=True):
    p.add_argument("--d", required=d_required, help="memory parameters, comma separated (e.g. 0.2,0.4)")
    p.add_argument("--rho", type=float, default=0.8, help="innovation correlation when --sigma is not given")
    p.add_argument("--sigma", help="innovation covariance as a JSON matrix")
    p.add_argument("--ar", help="AR matrices A_1..A_q as JSON (one matrix or a list)")
    p.add_argument("--ma", help="MA matrices B_1..B_r as JSON (one matrix or a list)")
    p.add_argument("--n", type=int, default=512, help="sample size N")
    p.add_argument("--seed", type=int, default=0)


def _add_wavelet_args(p, j0=2):
    p.add_argument("--M", type=int, default=4, help="vanishing moments of the Daubechies wavelet")
    p.add_argument("--j0", type=int, default=j0, help="lowest scale")
    p.add_argument("--j1", type=int, default=None, help="highest scale (default min(floor(log2 N), Jmax))")
    p.add_argument("--J", type=int, default=10, help="precision of the wavelet Fourier transform")


def build_parser():
    parser = argparse.ArgumentParser(prog="multiwhittle", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a FIVARMA path")
    _add_model_args(p)
    p.add_argument("--out", default="-", help="CSV output path ('-' for stdout)")
    p.add_argument("--omega-out", help="JSON file for the analytic long-run covariance")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", help="estimate d and the long-run covariance from a CSV file")
    p.add_argument("input")
    p.add_argument("--method", choices=("mww", "mfw"), default="mww")
    p.add_argument("--m", type=int, default=None, help="number of Fourier frequencies (default floor(N^0.65))")
    p.add_argument("--phase", choices=PHASES, default="second")
    _add_wavelet_args(p)
    p.add_argument("--timing", action="store_true", help="add the wall-clock time to the report")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("diagnose", help="per-scale wavelet statistics over windows or replications")
    p.add_argument("--input", help="CSV file analysed with sliding windows")
    p.add_argument("--width", type=int, default=None, help="window width (default min(512, N))")
    p.add_argument("--step", type=int, default=None, help="window step (default about 100 windows)")
    _add_model_args(p, d_required=False)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--stat", default="correlation",
                   choices=("correlation", "covariance", "variance", "log2_variance", "log2_abs_covariance"))
    _add_wavelet_args(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("bench", help="Monte Carlo bias / std / RMSE table")
    _add_model_args(p)
    p.add_argument("--reps", type=int, default=500)
    p.add_argument("--methods", default="mww", help="comma separated subset of mww,mfw")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--phase", choices=PHASES, default="second")
    _add_wavelet_args(p, j0=1)
    p.add_argument("--difference", type=int, default=None, help="1-based component to difference once")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ModelError) as exc:
        parser.error(str(exc))
    except WaveletError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConvergenceError, IdentifiabilityError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
