"""plotkit command line: `plotkit <kind> --in <csv...> --out <img>`.

Exit codes: 0 success, 1 usage error, 2 input validation error (missing
file, schema mismatch, empty input), 3 runtime failure.
"""

import argparse
import os
import sys

from .errors import PlotkitError
from .render import KINDS, FigureRequest, render

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="plotkit",
                     description="Figures from simulation CSV artifacts")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV")
    parser.add_argument("--out", required=True, metavar="IMG")
    parser.add_argument("--no-log", action="store_true",
                        help="linear instead of log scale for the norm panel")
    parser.add_argument("--title")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    for path in args.inputs:
        if not os.path.exists(path):
            print(f"error: input not found: {path}", file=sys.stderr)
            return EXIT_VALIDATION
    req = FigureRequest(kind=args.kind, inputs=tuple(args.inputs),
                        output=args.out, log_scale=not args.no_log,
                        title=args.title)
    try:
        out = render(req)
    except PlotkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"wrote {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
