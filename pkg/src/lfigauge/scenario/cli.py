"""Command line: ``lfigauge run|validate|version``.

Exit codes: 0 success, 1 schema or I/O error, 2 numerical failure. Failures
print a one-line JSON diagnostic on stderr.
"""

import argparse
import json
import sys

from .. import __version__
from ..errors import NumericalError, SchemaError
from .parse import load_scenario
from .run import run, versions


def _fail(code, error, message, **extra):
    print(json.dumps({"error": error, "message": message, **extra}, sort_keys=True), file=sys.stderr)
    return code


def build_parser():
    parser = argparse.ArgumentParser(prog="lfigauge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("scenario")
    p_run.add_argument("--output", default=".", help="output directory")
    p_run.add_argument("--format", choices=("csv", "json"), default=None)
    p_run.add_argument("--threads", type=int, default=1)
    p_val = sub.add_parser("validate", help="validate a scenario file")
    p_val.add_argument("scenario")
    sub.add_parser("version", help="print versions")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "version":
        print(json.dumps(versions(), sort_keys=True))
        return 0
    try:
        scenario = load_scenario(args.scenario)
    except SchemaError as exc:
        return _fail(1, "SchemaError", exc.reason, path=exc.path)
    except OSError as exc:
        return _fail(1, "IOError", str(exc))
    if args.command == "validate":
        print(json.dumps({"valid": True, "kind": scenario.kind}))
        return 0
    if args.threads < 1:
        return _fail(1, "UsageError", "--threads must be >= 1")
    try:
        report = run(scenario, args.output, args.format, args.threads)
    except NumericalError as exc:
        return _fail(2, type(exc).__name__, str(exc), kind=scenario.kind)
    except OSError as exc:
        return _fail(1, "IOError", str(exc))
    except (ValueError, SchemaError) as exc:
        return _fail(1, "ValidationError", str(exc), kind=scenario.kind)
    except Exception as exc:  # diagnostic record instead of a traceback
        return _fail(2, type(exc).__name__, str(exc), kind=scenario.kind)
    print(json.dumps(report.to_dict(), sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
