"""Command-line front end.

Subcommands: generate, denoise, recover, evaluate, sweep, baseline.
Shared flags (--seed, --threads, --out-dir, --format) are accepted by
every subcommand.  Failures exit nonzero with a machine-readable JSON
error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import io
from .core import TWO_PI, CurveKind, KernelParams, TimeLabels, ranking_from_labels
from .denoise import denoise_auto, denoise_fixed_rank
from .eigen import smallest_eigenpairs
from .errors import ConfigError, NotAPermutationError, SpectimeError
from .kernel import build_kernel, build_laplacian
from .metrics import (
    err_closed_rank,
    err_closed_time,
    err_open_rank,
    err_open_time,
    relative_error,
)
from .pipeline import DEFAULT_EIG_TOL
from .recover import (
    UNIFORM_LABEL_AMPLITUDE,
    data_driven_bandwidth,
    recover_closed,
    recover_open,
    select_bandwidth,
)
from .sweep import METHODS, SweepConfig, sweep
from .synth import CurveSpec, add_noise, comparison_matrix, generate, noise_for_snr, serialrank_baseline


def _shared_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
    p.add_argument("--out-dir", default=".", help="directory for sweep outputs")
    p.add_argument("--format", choices=("csv", "json"), default="json",
                   help="report format where applicable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectime",
        description="Recover temporal labels and orderings of noisy dynamical data "
        "from graph-Laplacian Fiedler vectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a synthetic curve with optional noise")
    g.add_argument("--curve", required=True,
                   help="half-circle | cardioid | circle | embedded:<d>")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--snr", type=float, help="exact target signal-to-noise ratio")
    g.add_argument("--eps", type=float, help="entrywise noise standard deviation")
    g.add_argument("--out", required=True, help="data CSV (one point per row)")
    g.add_argument("--labels", help="ground-truth labels CSV")
    _shared_flags(g)

    d = sub.add_parser("denoise", help="PCA projection denoising")
    d.add_argument("--input", required=True)
    d.add_argument("--header", action="store_true", help="input CSV has a header line")
    d.add_argument("--rank", type=int, help="fixed projection rank")
    d.add_argument("--auto", action="store_true", help="estimate the rank from a sketch")
    d.add_argument("--r0", type=int, default=400, help="oversampling rank (default 400)")
    d.add_argument("--eta", type=float, default=1e-3,
                   help="singular-value ratio threshold (default 1e-3)")
    d.add_argument("--out", required=True)
    _shared_flags(d)

    r = sub.add_parser("recover", help="recover labels and ranking from data")
    r.add_argument("--kind", choices=("open", "closed"), required=True)
    r.add_argument("--input", required=True)
    r.add_argument("--header", action="store_true")
    r.add_argument("--sigma", default="auto",
                   help="bandwidth: a float, 'auto' (rate formula), or 'data'")
    r.add_argument("--sigma2", type=float, help="squared bandwidth (alternative to --sigma)")
    r.add_argument("--noise-level", type=float, default=0.0,
                   help="per-point noise magnitude fed to the auto bandwidth")
    r.add_argument("--amplitude", type=float, default=UNIFORM_LABEL_AMPLITUDE,
                   help="assumed Fiedler amplitude for open curves "
                   "(default sqrt(2), the unit-norm value under uniform labels)")
    r.add_argument("--eig-tol", type=float, default=DEFAULT_EIG_TOL)
    r.add_argument("--dump-laplacian", help="write the Laplacian to this CSV")
    r.add_argument("--out", required=True, help="output CSV: index,t_hat,rank")
    _shared_flags(r)

    e = sub.add_parser("evaluate", help="alignment-invariant error metrics")
    e.add_argument("--metric", required=True,
                   choices=("closed-time", "closed-rank", "open-time", "open-rank", "relative"))
    e.add_argument("--truth", required=True, help="truth labels/ranking CSV")
    e.add_argument("--estimate", required=True, help="estimate labels/ranking CSV")
    e.add_argument("--delta", type=float, default=0.1 * math.pi,
                   help="interior half-width for open metrics (default 0.05*2pi)")
    e.add_argument("--truth-span", type=float,
                   help="rescale truth labels from [0, span] to [0, 2pi] first")
    e.add_argument("--matrix", help="data CSV, required for --metric relative")
    e.add_argument("--header", action="store_true")
    e.add_argument("--out", help="write the report here instead of stdout")
    _shared_flags(e)

    s = sub.add_parser("sweep", help="benchmark grid over N x SNR x replicates")
    s.add_argument("--curve", required=True)
    s.add_argument("--n", type=int, action="append", required=True,
                   help="sample size (repeatable)")
    s.add_argument("--snr", type=float, action="append", required=True,
                   help="target SNR (repeatable)")
    s.add_argument("--replicates", type=int, default=1)
    s.add_argument("--sigma", default="auto", help="a float, or 'auto'")
    s.add_argument("--noise-level", type=float, default=0.0)
    s.add_argument("--methods", default=",".join(METHODS),
                   help="comma-separated subset of: " + ", ".join(METHODS))
    s.add_argument("--delta-fraction", type=float, default=0.05)
    _shared_flags(s)

    b = sub.add_parser("baseline", help="pairwise-comparison spectral ranking")
    b.add_argument("--input", required=True)
    b.add_argument("--header", action="store_true")
    b.add_argument("--out", required=True, help="output CSV: index,value (value = rank)")
    _shared_flags(b)

    return parser


def _cmd_generate(args) -> int:
    spec = CurveSpec.parse(args.curve)
    if args.snr is not None and args.eps is not None:
        raise ConfigError("give either --snr or --eps, not both")
    x, t = generate(spec, args.n, args.seed)
    if args.snr is not None:
        z = noise_for_snr(x, args.snr, args.seed + 1)
    elif args.eps is not None:
        z = add_noise(x, args.eps, args.seed + 1)
    else:
        z = x
    io.save_data_matrix(args.out, z)
    if args.labels:
        io.save_labels(args.labels, t)
    return 0


def _cmd_denoise(args) -> int:
    z = io.load_data_matrix(args.input, header=args.header)
    if args.auto == (args.rank is not None):
        raise ConfigError("give exactly one of --rank or --auto")
    if args.rank is not None:
        result = denoise_fixed_rank(z, args.rank)
    else:
        result = denoise_auto(z, args.r0, args.eta, args.seed)
    io.save_data_matrix(args.out, result.z_tilde)
    summary = {"r_hat": result.r_hat, "d": z.dim, "n": z.n_points, "out": args.out}
    print(json.dumps(summary), file=sys.stderr)
    return 0


def _resolve_sigma(args, z, kind: CurveKind) -> KernelParams:
    if args.sigma2 is not None:
        if args.sigma != "auto":
            raise ConfigError("give either --sigma or --sigma2, not both")
        return KernelParams.from_sigma2(args.sigma2)
    if args.sigma == "auto":
        return select_bandwidth(z.n_points, args.noise_level, kind)
    if args.sigma == "data":
        return data_driven_bandwidth(z)
    return KernelParams(float(args.sigma))


def _cmd_recover(args) -> int:
    z = io.load_data_matrix(args.input, header=args.header)
    kind = CurveKind.OPEN_CURVE if args.kind == "open" else CurveKind.CLOSED_LOOP
    params = _resolve_sigma(args, z, kind)
    lap = build_laplacian(build_kernel(z, params), kind)
    if args.dump_laplacian:
        io.save_square_matrix(args.dump_laplacian, lap.l)
    if kind is CurveKind.OPEN_CURVE:
        spectral = smallest_eigenpairs(lap, k=2, tol=args.eig_tol)
        out = recover_open(spectral.eigenvectors[:, 1], amplitude=args.amplitude)
    else:
        spectral = smallest_eigenpairs(lap, k=3, tol=args.eig_tol)
        out = recover_closed(spectral.eigenvectors[:, 1], spectral.eigenvectors[:, 2])
    io.save_recovery(args.out, out.labels, out.ranking)
    print(json.dumps({"sigma": params.sigma, "clamped_count": out.clamped_count,
                      "out": args.out}), file=sys.stderr)
    return 0


def _ranking_from_file(path):
    """Accept a ranking file or a labels file; derive ranks when needed."""
    try:
        return io.load_ranking(path)
    except NotAPermutationError:
        return ranking_from_labels(io.load_labels(path))


def _cmd_evaluate(args) -> int:
    report: dict = {"metric": args.metric, "delta": None, "r": None,
                    "theta": None, "shift": None}
    if args.metric == "relative":
        if not args.matrix:
            raise ConfigError("--metric relative needs --matrix")
        x = io.load_data_matrix(args.matrix, header=args.header)
        p = _ranking_from_file(args.truth)
        p2 = _ranking_from_file(args.estimate)
        report["error"] = relative_error(x, p, p2)
    else:
        truth = io.load_labels(args.truth)
        if args.truth_span:
            truth = TimeLabels(truth.angles * (TWO_PI / args.truth_span))
        est = io.load_labels(args.estimate)
        if args.metric == "closed-time":
            rep = err_closed_time(truth, est)
        elif args.metric == "open-time":
            rep = err_open_time(truth, est, args.delta)
            report["delta"] = args.delta
        else:
            p, p2 = ranking_from_labels(truth), ranking_from_labels(est)
            if args.metric == "closed-rank":
                rep = err_closed_rank(p, p2)
            else:
                rep = err_open_rank(p, p2, args.delta / TWO_PI)
                report["delta"] = args.delta / TWO_PI
        report.update(error=rep.error, r=rep.r, theta=rep.theta, shift=rep.shift)

    if args.format == "csv":
        keys = list(report)
        text = ",".join(keys) + "\n" + ",".join(str(report[k]) for k in keys) + "\n"
    else:
        text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sweep(args) -> int:
    sigma = None if args.sigma == "auto" else float(args.sigma)
    sc = SweepConfig(
        curve=CurveSpec.parse(args.curve),
        n_values=tuple(args.n),
        snr_values=tuple(args.snr),
        replicates=args.replicates,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        sigma=sigma,
        noise_level=args.noise_level,
        seed_base=args.seed,
        threads=args.threads,
        delta_fraction=args.delta_fraction,
        out_dir=args.out_dir,
    )
    rows = sweep(sc)
    failures = sum(1 for r in rows if r["error"])
    print(json.dumps({"rows": len(rows), "failures": failures,
                      "out_dir": args.out_dir}), file=sys.stderr)
    return 0


def _cmd_baseline(args) -> int:
    z = io.load_data_matrix(args.input, header=args.header)
    ranking = serialrank_baseline(comparison_matrix(z))
    io.save_ranking(args.out, ranking)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "denoise": _cmd_denoise,
    "recover": _cmd_recover,
    "evaluate": _cmd_evaluate,
    "sweep": _cmd_sweep,
    "baseline": _cmd_baseline,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SpectimeError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
