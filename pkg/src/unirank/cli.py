"""Command line entry point.

Exit codes: 0 success, 2 validation, 3 convergence, 4 unresolved entities,
5 I/O.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import UnirankError
from .pipeline import STAGES, StageError, load_config, run_all, run_stage

EXIT_IO = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unirank",
        description="Rank universities across Wikipedia editions from their link networks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH", help="run config (YAML)")
    common.add_argument("--workers", type=int, metavar="N", help="parallel workers")
    common.add_argument("--alpha", type=float, metavar="F", help="damping factor")
    common.add_argument("--tolerance", type=float, metavar="F",
                        help="L1 convergence threshold")
    common.add_argument("--top", type=int, metavar="T", help="list length per edition")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "rank": "compute PageRank/CheiRank/2DRank for every edition",
        "extract": "pick the top universities of every edition",
        "merge": "merge edition lists into global rankings and country scores",
        "analyze": "overlaps, rank plane, country and century distributions",
        "cultures": "network of cultures and its rankings",
        "all": "run every stage, reusing up-to-date intermediates",
    }
    for name in (*STAGES, "all"):
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        config = load_config(args.config, workers=args.workers, alpha=args.alpha,
                             tolerance=args.tolerance, top=args.top, output_dir=args.out)
    except UnirankError as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.command == "all":
            ran = run_all(config)
            print(f"stages run: {', '.join(ran) if ran else 'none (all up to date)'}")
        else:
            run_stage(config, args.command)
    except StageError as exc:
        print(f"error {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
