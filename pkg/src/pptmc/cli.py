"""Command-line interface.

Subcommands
-----------
estimate    run a Monte Carlo PPT-probability estimation
conjecture  search for simple rationals near an estimate
verify      run a verification suite (half-theorem, zero-rank, det-split,
            known-values)
trace       re-emit a convergence trace CSV from a checkpoint

Exit codes: 0 success, 1 verification failure, 2 configuration error.
Environment overrides: ``PPTMC_SEED`` and ``PPTMC_WORKERS`` (only these
two; everything else must be spelled out in flags so that reports stay
self-describing).
"""

import argparse
import json
import os
import sys

from . import __version__
from .conjecture import (
    DEFAULT_DEN_PRIMES,
    DEFAULT_MAX_DENOMINATOR,
    conjecture_search,
    format_factored,
)
from .density import BipartiteShape
from .estimator import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_Z,
    ConfigMismatchError,
    Tolerances,
    emit_trace,
    load_checkpoint,
    run_trials,
    verify_det_split,
    verify_half_theorem,
    verify_known_values,
    verify_zero_rank,
    write_report,
    write_trace_csv,
)


def _parse_dims(text):
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"dimensions must look like 2x3, got {text!r}")


def _parse_count(text):
    try:
        v = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    return v


def _env_int(name, default):
    v = os.environ.get(name)
    return int(v) if v else default


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pptmc",
        description="Monte Carlo PPT/separability probability estimation for "
                    "random density matrices under Hilbert-Schmidt measure.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="run a Monte Carlo estimation")
    est.add_argument("--dims", type=_parse_dims, required=True, metavar="MxN",
                     help="subsystem dimensions, e.g. 2x3")
    est.add_argument("--rank", type=int, required=True, help="target rank k (1..m*n)")
    est.add_argument("--field", choices=("real", "complex"), default="complex")
    est.add_argument("--trials", type=_parse_count, required=True,
                     help="number of samples (scientific notation accepted)")
    est.add_argument("--seed", type=_parse_count, default=None,
                     help="run seed (default: PPTMC_SEED or 0)")
    est.add_argument("--batch-size", type=_parse_count, default=DEFAULT_BATCH_SIZE)
    est.add_argument("--workers", type=int, default=None,
                     help="parallel workers (default: PPTMC_WORKERS or 1); "
                          "results are identical for any worker count")
    est.add_argument("--out", help="write the report JSON here (always printed to stdout)")
    est.add_argument("--trace", help="write a convergence-trace CSV here")
    est.add_argument("--stride", type=_parse_count, default=None,
                     help="trace row spacing in trials (default: one batch)")
    est.add_argument("--checkpoint", help="checkpoint file, written after every batch")
    est.add_argument("--resume", action="store_true",
                     help="resume from --checkpoint instead of starting fresh")
    est.add_argument("--z", type=float, default=DEFAULT_Z, help="confidence z-value")
    est.add_argument("--ppt-tol", type=float, default=None,
                     help="PPT tolerance on the min partial-transpose eigenvalue")
    est.add_argument("--psd-tol", type=float, default=None)
    est.add_argument("--rankdef-tol", type=float, default=None)

    conj = sub.add_parser("conjecture", help="search simple rationals near an estimate")
    src = conj.add_mutually_exclusive_group(required=True)
    src.add_argument("--phat", help="point estimate (decimal)")
    src.add_argument("--report", help="read p_hat and trials from a report JSON")
    conj.add_argument("--trials", type=_parse_count, default=None,
                      help="trial count behind the estimate (sets the default window)")
    conj.add_argument("--interval", default=None,
                      help="explicit window half-width (0 = exact match only)")
    conj.add_argument("--z", type=float, default=4.0, help="window width in standard scores")
    conj.add_argument("--primes", default=",".join(str(p) for p in DEFAULT_DEN_PRIMES),
                      help="allowed denominator primes, comma-separated")
    conj.add_argument("--max-den", type=_parse_count, default=DEFAULT_MAX_DENOMINATOR)
    conj.add_argument("--top", type=int, default=10, help="how many candidates to keep")
    conj.add_argument("--out", help="write the candidate list JSON here")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True,
                     choices=("half-theorem", "zero-rank", "det-split", "known-values"))
    ver.add_argument("--dims", type=_parse_dims, default=None, metavar="MxN",
                     help="default: 2x3 for zero-rank, 2x2 otherwise")
    ver.add_argument("--field", choices=("real", "complex"), default=None,
                     help="default: complex (zero-rank runs both fields)")
    ver.add_argument("--rank", type=int, default=3, help="rank for the zero-rank suite")
    ver.add_argument("--trials", type=_parse_count, default=100_000)
    ver.add_argument("--seed", type=_parse_count, default=None)
    ver.add_argument("--batch-size", type=_parse_count, default=DEFAULT_BATCH_SIZE)
    ver.add_argument("--workers", type=int, default=None)

    tr = sub.add_parser("trace", help="emit a convergence trace from a checkpoint")
    tr.add_argument("--checkpoint", required=True)
    tr.add_argument("--out", required=True)
    tr.add_argument("--stride", type=_parse_count, default=None)
    tr.add_argument("--z", type=float, default=DEFAULT_Z)

    return parser


def _cmd_estimate(args):
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    if args.resume and not args.checkpoint:
        raise ValueError("--resume requires --checkpoint")
    seed = args.seed if args.seed is not None else _env_int("PPTMC_SEED", 0)
    workers = args.workers if args.workers is not None else _env_int("PPTMC_WORKERS", 1)
    m, n = args.dims
    shape = BipartiteShape(m, n, args.rank, args.field)
    defaults = Tolerances()
    tol = Tolerances(
        psd=args.psd_tol if args.psd_tol is not None else defaults.psd,
        ppt=args.ppt_tol if args.ppt_tol is not None else defaults.ppt,
        rankdef=args.rankdef_tol if args.rankdef_tol is not None else defaults.rankdef,
    )
    report = run_trials(
        shape,
        args.trials,
        seed,
        batch_size=args.batch_size,
        workers=workers,
        resume_from=args.checkpoint if args.resume else None,
        checkpoint_path=args.checkpoint,
        tolerances=tol,
        z=args.z,
    )
    print(json.dumps(report.to_dict(), indent=2))
    if args.out:
        write_report(report, args.out)
    if args.trace:
        write_trace_csv(emit_trace(report.tally, stride=args.stride, z=args.z), args.trace)
    return 0


def _cmd_conjecture(args):
    if args.report:
        with open(args.report) as f:
            rep = json.load(f)
        p_hat = repr(rep["p_hat"])
        trials = args.trials if args.trials is not None else rep["trials"]
    else:
        p_hat = args.phat
        trials = args.trials
    lo = hi = None
    if args.interval is not None:
        from fractions import Fraction

        half = Fraction(args.interval)
        center = Fraction(p_hat)
        lo, hi = center - half, center + half
    primes = tuple(int(p) for p in args.primes.split(","))
    candidates = conjecture_search(
        p_hat, lo=lo, hi=hi, den_primes=primes, max_denominator=args.max_den,
        trials=trials, z=args.z, max_results=args.top,
    )
    payload = [c.to_dict() for c in candidates]
    if args.out:
        with open(args.out, "w") as f:
            json.dump(payload, f, indent=2)
            f.write("\n")
    if not candidates:
        print("no candidates in the search window", file=sys.stderr)
        print("[]")
        return 0
    top = candidates[0]
    print(format_factored(top.numerator, top.denominator))
    print(json.dumps(payload, indent=2))
    return 0


def _print_check(name, passed, detail):
    print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")


def _cmd_verify(args):
    seed = args.seed if args.seed is not None else _env_int("PPTMC_SEED", 0)
    workers = args.workers if args.workers is not None else _env_int("PPTMC_WORKERS", 1)
    m, n = args.dims if args.dims else ((2, 3) if args.suite == "zero-rank" else (2, 2))
    field = args.field or "complex"
    ok = True
    if args.suite == "half-theorem":
        res = verify_half_theorem(m, n, field, args.trials, seed,
                                  batch_size=args.batch_size, workers=workers)
        _print_check(
            f"half-theorem {m}x{n} {field}",
            res.passed,
            f"ratio={res.ratio:.5f} target=0.5 se={res.se:.5f} "
            f"(full p_hat={res.full_report.p_hat:.6g}, "
            f"rank-{m * n - 1} p_hat={res.reduced_report.p_hat:.6g})",
        )
        ok = res.passed
    elif args.suite == "zero-rank":
        for fld in ("complex", "real") if args.field is None else (args.field,):
            res = verify_zero_rank(fld, rank=args.rank, trials=args.trials, seed=seed,
                                   m=m, n=n, batch_size=args.batch_size, workers=workers)
            _print_check(
                f"zero-rank {m}x{n} rank={args.rank} {fld}",
                res.passed,
                f"hits={res.hits} over {res.report.trials} trials (expected 0)",
            )
            ok = ok and res.passed
    elif args.suite == "det-split":
        res = verify_det_split(args.trials, seed, field=field, m=m, n=n,
                               batch_size=args.batch_size, workers=workers)
        _print_check(
            f"det-split {m}x{n} {field}",
            res.passed,
            f"fraction={res.fraction:.5f} target=0.5 se={res.se:.5f} "
            f"over {res.report.successes} PPT states",
        )
        ok = res.passed
    else:  # known-values
        for res in verify_known_values(args.trials, seed,
                                       batch_size=args.batch_size, workers=workers):
            s = res.shape
            _print_check(
                f"known-value {s.m}x{s.n} rank={s.rank} {s.field}",
                res.passed,
                f"estimate={res.estimate:.6g} target={res.target_num}/{res.target_den}"
                f"={res.target:.6g} sigma={res.sigma:.2g}",
            )
            ok = ok and res.passed
    return 0 if ok else 1


def _cmd_trace(args):
    ck = load_checkpoint(args.checkpoint)
    rows = emit_trace(ck.tally, stride=args.stride, z=args.z)
    write_trace_csv(rows, args.out)
    print(f"wrote {len(rows)} trace rows to {args.out}")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "estimate": _cmd_estimate,
        "conjecture": _cmd_conjecture,
        "verify": _cmd_verify,
        "trace": _cmd_trace,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, ConfigMismatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
