"""Command-line entry point.

    verify --prime 5 [--ell 3,7] [--ell-bound N] [--seed S]
           [--format json|markdown] [--out PATH] [--precision N]
           [--timings]

Exit codes: 0 when every check passes and the verdict is "obstructed",
1 when a check fails, 2 on usage errors or infeasible input.
"""

from __future__ import annotations

import argparse
import sys

from .report import PipelineOptions, UsageError, emit, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="verify",
        description="Verify the lifting obstruction carried by the curve "
                    "y^2 = x^p - x for a concrete prime p.")
    ap.add_argument("--prime", type=int, required=True,
                    help="the prime p (5 <= p <= the configured maximum)")
    ap.add_argument("--ell", type=str, default=None,
                    help="comma-separated odd primes for the torsion witness "
                         "(default: automatic selection)")
    ap.add_argument("--ell-bound", type=int, default=10_000,
                    help="largest allowed full-torsion size ell^(2g) (default 10000)")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for the torsion-basis sampling (default 0)")
    ap.add_argument("--format", choices=("json", "markdown"), default="markdown")
    ap.add_argument("--out", type=str, default=None,
                    help="write the report to this path instead of stdout")
    ap.add_argument("--precision", type=int, default=None,
                    help="series precision for wild multiplicities (default 2p+4)")
    ap.add_argument("--timings", action="store_true",
                    help="include wall-clock timings (breaks byte-determinism)")
    return ap


def main(argv: list | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    ells = None
    if ns.ell is not None:
        try:
            ells = tuple(int(x) for x in ns.ell.split(",") if x.strip())
        except ValueError:
            print(f"error: cannot parse --ell {ns.ell!r}", file=sys.stderr)
            return 2
    options = PipelineOptions(ell=ells, ell_bound=ns.ell_bound, seed=ns.seed,
                              series_precision=ns.precision,
                              include_timings=ns.timings)
    try:
        report = run_pipeline(ns.prime, options)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = emit(report, ns.format)
    if ns.out:
        with open(ns.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    for check in report.failed:
        print(f"FAILED: {check.name}: {check.claim}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
