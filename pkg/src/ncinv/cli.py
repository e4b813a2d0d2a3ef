"""Command-line interface.

Four subcommands: ``hilbert`` computes per-degree perp dimensions,
``alt`` assembles and solves the alternating system, ``verify`` runs a
named invariant suite, ``basis`` dumps an explicit perp basis.

Exit codes: 0 success, 2 a check or verification failed, 3 a resource
limit was hit, 4 the configuration was invalid.  Output is text, JSON,
or CSV via ``--format``; for a fixed configuration and seed the JSON
output is byte-identical across runs (no timestamps or timings go to
stdout).  The cache directory comes from ``--cache-dir``, falling back
to ``NCINV_CACHE_DIR``; the thread count from ``--threads``, falling
back to ``NCINV_THREADS``.  Flags win over the environment.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .altsys import solve_alt, word_intersection_dimension
from .checks import SUITES, run_suite
from .generators import ALL_SYSTEMS
from .modular import check_prime
from .perp import (
    EXACT,
    MODP,
    MODP_CERTIFIED,
    CertificationError,
    ResourceLimitError,
    hilbert_series,
    perp_basis,
)
from . import tables

__all__ = ["main"]

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_RESOURCE = 3
EXIT_CONFIG = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad arguments; here 2 means a failed
    check, so configuration problems are remapped to 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, "%s: error: %s\n" % (self.prog, message))


def _add_common(p, default_mode=MODP_CERTIFIED):
    # each subparser gets its own option objects; a shared parent would
    # let one subcommand's set_defaults leak into the others
    p.add_argument(
        "--mode", choices=(EXACT, MODP, MODP_CERTIFIED),
        default=default_mode, help="linear algebra backend")
    p.add_argument("--seed", type=int, default=0,
                   help="determines prime choice and random cases")
    p.add_argument("--prime", type=int, default=None,
                   help="work modulo this prime instead of a seeded one")
    p.add_argument("--threads", type=int, default=None,
                   help="worker count; the engine runs sequentially "
                        "for reproducibility, the value is validated "
                        "and otherwise unused (default: NCINV_THREADS "
                        "or 1)")
    p.add_argument("--cache-dir", default=None,
                   help="result cache directory (default: "
                        "NCINV_CACHE_DIR or no cache)")
    p.add_argument("--format", choices=("json", "csv", "text"),
                   default="text", help="output format")


def _build_parser():
    parser = _Parser(prog="ncinv",
                     description="Inverse systems of symmetric and "
                                 "quasi-symmetric ideals in commuting and "
                                 "non-commuting variables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert",
                       help="per-degree perp dimensions of one system")
    _add_common(p)
    p.add_argument("--system", required=True, choices=ALL_SYSTEMS)
    p.add_argument("--n", required=True, type=int, help="variable count")
    p.add_argument("--max-deg", required=True, type=int, dest="max_deg")
    p.add_argument("--check", action="store_true",
                   help="compare against the bundled expected tables; "
                        "exit 2 on mismatch, 4 if no table exists")
    p.add_argument("--small-gens", action="store_true", dest="small_gens",
                   help="truncate the generating set to degree <= n")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("alt",
                       help="solve the alternating-subspace system")
    _add_common(p)
    p.add_argument("--n", required=True, type=int, help="variable count")
    p.add_argument("--deg", required=True, type=int, help="degree")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the word-level intersection "
                        "(small sizes only); exit 2 on disagreement")
    p.set_defaults(func=cmd_alt)

    p = sub.add_parser("verify",
                       help="run one invariant suite")
    p.add_argument("suite", choices=tuple(sorted(SUITES)))
    _add_common(p)
    p.add_argument("--n", type=int, default=None, help="largest alphabet")
    p.add_argument("--max-deg", type=int, default=None, dest="max_deg")
    p.add_argument("--trials", type=int, default=None,
                   help="random case count, where the suite is randomized")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("basis",
                       help="dump an explicit perp basis (exact arithmetic)")
    _add_common(p, default_mode=EXACT)
    p.add_argument("--system", required=True, choices=ALL_SYSTEMS)
    p.add_argument("--n", required=True, type=int, help="variable count")
    p.add_argument("--deg", required=True, type=int, help="degree")
    p.set_defaults(func=cmd_basis)

    return parser


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _emit_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else v for v in row])
    sys.stdout.write(buf.getvalue())


def cmd_hilbert(args):
    series = hilbert_series(args.system, args.n, args.max_deg,
                            mode=args.mode, seed=args.seed, prime=args.prime,
                            small_gens=args.small_gens,
                            cache_dir=args.cache_dir)
    coefficients = list(series.coefficients)
    records = []
    for res in series.results:
        rec = res.cache_record()
        rec.pop("elapsed_ms", None)
        records.append(rec)

    code = EXIT_OK
    check_block = None
    if args.check:
        table = tables.expected_series(args.system, args.n)
        if table is None:
            print("error: no expected table for %s at n=%d"
                  % (args.system, args.n), file=sys.stderr)
            return EXIT_CONFIG
        mismatches = tables.check_coefficients(args.system, args.n,
                                               coefficients)
        check_block = {
            "passed": not mismatches,
            "source": table.source,
            "mismatches": [
                {"d": d, "got": got, "expected": want}
                for d, got, want in mismatches
            ],
        }
        if mismatches:
            code = EXIT_MISMATCH

    if args.format == "json":
        obj = {
            "system": args.system,
            "n": args.n,
            "max_deg": args.max_deg,
            "mode": args.mode,
            "coefficients": coefficients,
            "results": records,
        }
        if check_block is not None:
            obj["check"] = check_block
        _emit_json(obj)
    elif args.format == "csv":
        _emit_csv(
            ("system", "n", "d", "dim", "mode", "prime"),
            [(r["system"], r["n"], r["d"], r["perp_dim"], r["mode"],
              r["prime"]) for r in records],
        )
    else:
        print("%s n=%d coefficients: %s"
              % (args.system, args.n,
                 " ".join(str(c) for c in coefficients)))
        for r in records:
            print("  d=%d dim=%d mode=%s prime=%s"
                  % (r["d"], r["perp_dim"], r["mode"],
                     "-" if r["prime"] is None else r["prime"]))
        if check_block is not None:
            if check_block["passed"]:
                print("check: pass (%s)" % check_block["source"])
            else:
                for m in check_block["mismatches"]:
                    print("check: MISMATCH at d=%d: got %d, expected %d"
                          % (m["d"], m["got"], m["expected"]))
    return code


def cmd_alt(args):
    solution = solve_alt(args.n, args.deg, mode=args.mode,
                         prime=args.prime, seed=args.seed)
    record = solution.json_record()
    code = EXIT_OK
    if args.oracle:
        oracle_dim = word_intersection_dimension(args.n, args.deg)
        record["oracle_dim"] = oracle_dim
        if oracle_dim != solution.solution_dim:
            code = EXIT_MISMATCH

    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        header = ["n", "d", "alt_dim", "solution_dim", "mode", "prime"]
        row = [record[k] for k in header]
        if args.oracle:
            header.append("oracle_dim")
            row.append(record["oracle_dim"])
        _emit_csv(header, [row])
    else:
        print("n=%d d=%d: alt_dim=%d solution_dim=%d mode=%s prime=%s"
              % (record["n"], record["d"], record["alt_dim"],
                 record["solution_dim"], record["mode"],
                 "-" if record["prime"] is None else record["prime"]))
        if args.oracle:
            verdict = ("agrees" if code == EXIT_OK else "DISAGREES")
            print("oracle: word-level intersection dim=%d (%s)"
                  % (record["oracle_dim"], verdict))
    return code


def cmd_verify(args):
    report = run_suite(args.suite, n=args.n, max_deg=args.max_deg,
                       trials=args.trials, seed=args.seed)
    code = EXIT_OK if report.passed else EXIT_MISMATCH

    if args.format == "json":
        _emit_json(report.json_record())
    elif args.format == "csv":
        _emit_csv(("suite", "passed", "cases", "failures"),
                  [(report.suite, report.passed, report.cases,
                    len(report.failures))])
    else:
        print("suite %s: %s (%d cases)"
              % (report.suite, "pass" if report.passed else "FAIL",
                 report.cases))
        for f in report.failures:
            print("  counterexample: %s" % f)
    return code


def _monic(p):
    terms = p.sorted_terms()
    if not terms:
        return p
    lead = terms[0][1]
    return p if lead == 1 else p.scale(Fraction(1) / Fraction(lead))


def cmd_basis(args):
    basis = perp_basis(args.system, args.n, args.deg, mode=args.mode,
                       seed=args.seed, prime=args.prime)
    texts = [_monic(p).to_text() for p in basis]

    if args.format == "json":
        _emit_json({
            "system": args.system,
            "n": args.n,
            "d": args.deg,
            "dim": len(texts),
            "basis": texts,
        })
    elif args.format == "csv":
        _emit_csv(("system", "n", "d", "element"),
                  [(args.system, args.n, args.deg, t) for t in texts])
    else:
        for t in texts:
            print(t)
    return EXIT_OK


def _resolve_environment(args):
    if getattr(args, "prime", None) is not None:
        check_prime(args.prime)
    if args.threads is None:
        raw = os.environ.get("NCINV_THREADS", "1")
        try:
            args.threads = int(raw)
        except ValueError:
            raise ValueError("NCINV_THREADS must be an integer, got %r" % raw)
    if args.threads < 1:
        raise ValueError("thread count must be at least 1")
    # cache_dir falls through as None: the cache layer reads
    # NCINV_CACHE_DIR itself, so the flag already wins when set


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _resolve_environment(args)
        return args.func(args)
    except ResourceLimitError as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except CertificationError as exc:
        print("certification failed: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
