"""isopar command line: build polynomials and run verification suites."""

import argparse
import json
import os
import sys

from .geometry import ExampleId, example_F
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="isopar", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("suite", help="run a verification suite")
    s.add_argument("name", choices=SUITES + ("all",))
    s.add_argument("--example", default="both", choices=["h45", "fkm69", "both"])
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--format", default="text", choices=["text", "json"])
    s.add_argument("--out", default=None)
    s.add_argument("--no-timing", action="store_true", help="omit wall_time fields from JSON")

    b = sub.add_parser("build", help="dump a Cartan-Muenzner polynomial as JSON")
    b.add_argument("example", choices=["h45", "fkm69"])
    b.add_argument("--out", default=None)
    return p


def resolve_seed(flag, env=None):
    """Flag beats ISOPAR_SEED, which beats the default 0."""
    if flag is not None:
        return flag
    env = os.environ if env is None else env
    raw = env.get("ISOPAR_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ISOPAR_SEED must be an integer, got {raw!r}") from None


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def emit_report(report, fmt="text", path=None, timing=True):
    if fmt == "json":
        text = report.dumps(timing=timing)
    else:
        text = report.to_text()
        for c in report.failures():
            print(f"failed: {c.id}: {c.detail}", file=sys.stderr)
    _write(text, path)
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "build":
            F = example_F(ExampleId.parse(args.example))
            _write(json.dumps(F.to_json()), args.out)
            return EXIT_OK
        seed = resolve_seed(args.seed)
        report = run_suite(args.name, args.example, seed)
        return emit_report(report, args.format, args.out, timing=not args.no_timing)
    except (ValueError, OSError) as exc:
        print(f"isopar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
