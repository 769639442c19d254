"""``lazydist`` command line.

Exit status: 0 on success, 2 on usage errors, 3 when every requested
measurement timed out, 1 on any other failure.
"""

from __future__ import annotations

import argparse
import sys
import traceback

from . import bench
from .models import BACKENDS, MODELS

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _backend_list(text: str) -> list[str]:
    names = [p.strip() for p in text.split(",") if p.strip()]
    bad = [b for b in names if b not in BACKENDS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown backend(s) {bad}; choose from {', '.join(BACKENDS)}")
    return names


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lazydist", description="Exact discrete inference on a lazy non-deterministic engine.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="run one model once and print its record")
    q.add_argument("--model", required=True, choices=sorted(MODELS))
    q.add_argument("--n", type=int, default=0, help="problem size (ignored by sprinkler and partialpattern)")
    q.add_argument("--backend", default="lazy", choices=sorted(BACKENDS))
    q.add_argument("--timeout", type=_positive_float, default=bench.DEFAULT_TIMEOUT, help="seconds")
    q.add_argument("--format", choices=["text", "json", "csv"], default="text")

    b = sub.add_parser("bench", help="measure a model over sizes and backends")
    b.add_argument("--model", required=True, choices=sorted(MODELS))
    b.add_argument("--n", type=_int_list, required=True, help="comma-separated sizes, e.g. 5,6,7")
    b.add_argument("--backends", type=_backend_list, default=["lazy"], help="comma-separated: lazy,strict,list")
    b.add_argument("--runs", type=_positive_int, default=bench.DEFAULT_RUNS)
    b.add_argument("--timeout", type=_positive_float, default=bench.DEFAULT_TIMEOUT, help="seconds per run")
    b.add_argument("--format", choices=["json", "csv"], default="json")
    b.add_argument("--out", default=None, help="output file (default: stdout)")

    sub.add_parser("models", help="list the bundled models")
    return p


def _text(r: bench.BenchRecord) -> str:
    prob = "timed out" if r.timed_out else repr(r.probability)
    return (
        f"{r.name} n={r.n} backend={r.backend} probability={prob} "
        f"choice_expansions={r.choice_expansions} suspensions_forced={r.suspensions_forced} "
        f"wall_ms={r.wall_ms:.3f}"
    )


def _validate_sizes(model: str, ns):
    for n in ns:
        try:
            MODELS[model].check_n(n)
        except ValueError as e:
            raise UsageError(str(e)) from None


def run(args) -> int:
    if args.command == "models":
        for m in MODELS.values():
            print(f"{m.name:22s} {m.description}")
        return EXIT_OK
    if args.command == "query":
        _validate_sizes(args.model, [args.n])
        rec = bench.measure(args.model, args.n, args.backend, runs=1, timeout=args.timeout)
        if args.format == "text":
            print(_text(rec))
        else:
            sys.stdout.write(bench.emit([rec], args.format))
        return EXIT_TIMEOUT if rec.timed_out else EXIT_OK
    _validate_sizes(args.model, args.n)
    records = bench.bench(args.model, args.n, args.backends, args.runs, args.timeout)
    text = bench.emit(records, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    if records and all(r.timed_out for r in records):
        return EXIT_TIMEOUT
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        return run(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"lazydist: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"lazydist: error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
