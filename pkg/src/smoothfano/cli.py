"""Command-line interface.

Exit status is 0 on success, 1 when verification fails and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from typing import Sequence

from . import io_format
from .geometry import RejectError, build_polytope
from .lattice import identity_simplex
from .order import is_ord, point_key
from .sfp import classify
from .wd import generate_wd

log = logging.getLogger("smoothfano")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smoothfano",
                                description="Classify smooth Fano polytopes up to lattice isomorphism.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="list one polytope per isomorphism class")
    c.add_argument("--dim", type=_positive, required=True)
    c.add_argument("--out", help="output file (default: stdout)")
    c.add_argument("--format", choices=io_format.FORMATS, default="text")
    c.add_argument("--parallel", type=_positive, default=1, metavar="N", help="worker processes")
    c.add_argument("--split-depth", type=_positive, default=2, help=argparse.SUPPRESS)
    c.add_argument("--literal", action="store_true",
                   help="reference mode without the output-equivalent optimisations")
    c.add_argument("--stats", action="store_true", help="print search statistics to stderr")
    c.add_argument("--progress", type=float, default=0.0, metavar="SECONDS",
                   help="heartbeat interval for progress messages on stderr")

    t = sub.add_parser("table", help="count table for dimensions 1..D")
    t.add_argument("--max-dim", type=_positive, required=True)
    t.add_argument("--csv", action="store_true", help="comma-separated output")
    t.add_argument("--figure", metavar="PATH", help="also plot the counts to an image file")
    t.add_argument("--parallel", type=_positive, default=1, metavar="N")

    w = sub.add_parser("wd", help="print the candidate vertex set")
    w.add_argument("--dim", type=_positive, required=True)
    w.add_argument("--count", action="store_true", help="print only its size")

    v = sub.add_parser("verify", help="re-verify a polytope file")
    v.add_argument("--in", dest="path", required=True)
    v.add_argument("--pairwise", action="store_true",
                   help="also test all pairs with equal vertex count for isomorphism (slow)")

    o = sub.add_parser("oracle", help="brute-force classification cross-check (d <= 3)")
    o.add_argument("--dim", type=_positive, required=True)
    return p


def cmd_classify(args) -> int:
    index = 0
    with _output(args.out) as out:
        def sink(P):
            nonlocal index
            index += 1
            io_format.write_polytope(P, out, index=index, fmt=args.format)

        stats = classify(args.dim, sink, literal=args.literal, workers=args.parallel,
                         split_depth=args.split_depth, heartbeat=args.progress)
    if args.stats:
        print(json.dumps(stats.as_dict(), sort_keys=False), file=sys.stderr)
    return EXIT_OK


def cmd_table(args) -> int:
    all_stats = []
    for d in range(1, args.max_dim + 1):
        s = classify(d, workers=args.parallel)
        log.info("d=%d: %d classes in %.1fs", d, s.total, s.seconds)
        all_stats.append(s)
    io_format.write_table(all_stats, sys.stdout, csv=args.csv)
    if args.figure:
        from .report import plot_counts

        plot_counts(all_stats, args.figure)
    return EXIT_OK


def cmd_wd(args) -> int:
    W = generate_wd(args.dim)
    if args.count:
        print(len(W))
    else:
        for p in W:
            print(" ".join(map(str, p)))
    return EXIT_OK


def verify_records(records: Sequence, pairwise: bool = False) -> list:
    """Problems found in a list of vertex lists; empty when all is well."""
    problems = []
    previous = None
    polytopes = []
    for k, V in enumerate(records, 1):
        key = [point_key(v) for v in V]
        if key != sorted(key) or len(set(V)) != len(V):
            problems.append(f"record {k}: vertices not strictly increasing")
            continue
        if previous is not None and not previous < key:
            problems.append(f"record {k}: not after record {k - 1}")
        previous = key
        d = len(V[0])
        try:
            P = build_polytope(V, identity_simplex(d))
        except (RejectError, ValueError) as exc:
            problems.append(f"record {k}: not a smooth Fano polytope ({exc})")
            continue
        if not is_ord(P):
            problems.append(f"record {k}: not in canonical form")
            continue
        polytopes.append(P)
    if pairwise:
        from .oracle import are_isomorphic

        by_n: dict = {}
        for P in polytopes:
            by_n.setdefault((P.dim, len(P.vertices)), []).append(P)
        for group in by_n.values():
            for i, P in enumerate(group):
                for Q in group[i + 1:]:
                    if are_isomorphic(P, Q):
                        problems.append(f"isomorphic records {P.vertices} and {Q.vertices}")
    return problems


def cmd_verify(args) -> int:
    try:
        with open(args.path, encoding="ascii") as fh:
            records = list(io_format.read_polytopes(fh))
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    problems = verify_records(records, pairwise=args.pairwise)
    for msg in problems:
        print(msg, file=sys.stderr)
    print(f"{len(records)} records, {len(problems)} problems")
    return EXIT_FAIL if problems else EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import MAX_BRUTE_FORCE_DIM, are_isomorphic, brute_force_classify
    from .sfp import iter_classify

    if args.dim > MAX_BRUTE_FORCE_DIM:
        raise UsageError(f"oracle supports --dim up to {MAX_BRUTE_FORCE_DIM}")
    reps = brute_force_classify(args.dim)
    found = iter_classify(args.dim)
    unmatched = [P for P in reps if sum(are_isomorphic(P, Q) for Q in found) != 1]
    ok = len(reps) == len(found) and not unmatched
    print(f"oracle {len(reps)} classes, search {len(found)} classes: {'agree' if ok else 'DISAGREE'}")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "classify": cmd_classify,
    "table": cmd_table,
    "wd": cmd_wd,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose or getattr(args, "progress", 0) else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
