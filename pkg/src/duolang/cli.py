"""Command line: ``duolang run``, ``duolang export`` and ``duolang bench``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from duolang.values import Lang

_LANGS = {"php": Lang.PHP, "py": Lang.PY}


def _cmd_run(args) -> int:
    from duolang.context import Context
    ctx = Context(out=sys.stdout, err=sys.stderr, seed=args.seed)
    return ctx.run_file(args.file, _LANGS.get(args.lang))


def _cmd_export(args) -> int:
    from duolang import boxexport
    from duolang.context import detect_language
    from duolang.exc import ScriptSyntaxError
    path = Path(args.file)
    src = path.read_text()
    host = _LANGS.get(args.lang) or detect_language(src, str(path))
    try:
        out = boxexport.export_source(src, str(path), host)
    except ScriptSyntaxError as e:
        print(f"{e.file}:{e.line}: {e.message}", file=sys.stderr)
        return 2
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_bench(args) -> int:
    from duolang.bench import harness, registry, report
    names = args.bench or None
    try:
        result = harness.run_suite(args.suite, variants=args.variant or None, iters=args.iters,
                                   procs=args.procs, seed=args.seed, names=names,
                                   subprocess=args.subprocess, progress=sys.stderr)
    except harness.ChecksumMismatch as e:
        print(f"checksum mismatch: {e}", file=sys.stderr)
        return 3
    except KeyError as e:
        print(f"unknown benchmark or variant: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render_report(result, "table"))
    if args.json:
        Path(args.json).write_text(report.render_report(result, "json"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="duolang", description="Composed PHP/Python runtime")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a PHP, Python or composed file")
    run.add_argument("file")
    run.add_argument("--lang", choices=sorted(_LANGS), help="outer language (default: by "
                                                            "extension, .py is Python)")
    run.add_argument("--seed", type=int, default=0, help="seed for the random module")
    run.set_defaults(fn=_cmd_run)

    exp = sub.add_parser("export", help="export language boxes to raw composed source")
    exp.add_argument("file")
    exp.add_argument("-o", "--output")
    exp.add_argument("--lang", choices=sorted(_LANGS))
    exp.set_defaults(fn=_cmd_export)

    from duolang.bench.registry import VARIANTS
    bench = sub.add_parser("bench", help="run the benchmark suite")
    bench.add_argument("--suite", choices=("small", "large"), default="small")
    bench.add_argument("--variant", action="append", choices=VARIANTS)
    bench.add_argument("--bench", action="append", help="restrict to this benchmark")
    bench.add_argument("--iters", type=int, default=50)
    bench.add_argument("--procs", type=int, default=5)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--json", metavar="PATH")
    bench.add_argument("--subprocess", action="store_true",
                       help="run each process in a fresh OS process")
    bench.set_defaults(fn=_cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
