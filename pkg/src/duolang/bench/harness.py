"""Timing harness: processes x iterations per (benchmark, variant).

A "process" is a fresh :class:`~duolang.context.Context` by default; with
``subprocess=True`` each one is a new OS process running this module.
Every iteration's checksum is compared with the registry before its timing
is kept.  Warmup iterations are not discarded.
"""
from __future__ import annotations

import json
import subprocess as sp
import sys
import time
from dataclasses import dataclass, field

from duolang.bench.registry import BASELINE, SUITES, VARIANTS, BenchSpec, register_benchmarks


class ChecksumMismatch(Exception):
    def __init__(self, bench: str, variant: str, expected, got):
        super().__init__(f"{bench} [{variant}]: expected {expected!r}, got {got!r}")
        self.bench = bench
        self.variant = variant
        self.expected = expected
        self.got = got


@dataclass
class Cell:
    """Timings for one (benchmark, variant): one list of seconds per process."""

    times: list = field(default_factory=list)
    checksum: object = None

    def samples(self) -> list[float]:
        return [t for proc in self.times for t in proc]

    def mean(self) -> float | None:
        s = self.samples()
        return sum(s) / len(s) if s else None


@dataclass
class BenchReport:
    suite: str
    iters: int
    procs: int
    seed: int
    baseline: str = BASELINE
    variants: tuple = VARIANTS
    rows: dict = field(default_factory=dict)

    def cell(self, bench: str, variant: str) -> Cell | None:
        return self.rows.get(bench, {}).get(variant)

    def mean(self, bench: str, variant: str) -> float | None:
        c = self.cell(bench, variant)
        return None if c is None else c.mean()

    def relative(self, bench: str, variant: str) -> float | None:
        """Mean time relative to the baseline variant of the same benchmark."""
        if variant == self.baseline:
            return 1.0 if self.mean(bench, variant) is not None else None
        m, b = self.mean(bench, variant), self.mean(bench, self.baseline)
        if m is None or not b:
            return None
        return m / b


def load_program(spec: BenchSpec, variant: str, seed: int = 0):
    """A fresh context with the program loaded; returns (context, bench_main)."""
    from duolang.context import Context
    ctx = Context(seed=seed)
    path = spec.source_path(variant)
    lang = spec.host(variant)
    ctx.exec_source(path.read_text(), str(path), lang)
    if variant.endswith("-py"):
        fn = ctx.py_globals["bench_main"]
    else:
        fn = ctx.php_globals.lookup_function("bench_main")
    return ctx, fn


def call_main(ctx, fn, variant: str, n: int):
    with ctx.activate():
        if variant.endswith("-py"):
            return ctx.py.call(fn, [n], None)
        return ctx.php.invoke(fn, [n])


def run_process(spec: BenchSpec, variant: str, suite: str, iters: int,
                seed: int = 0) -> tuple[list[float], object]:
    """One fresh context running ``iters`` timed iterations."""
    n = spec.size(suite)
    expected = spec.expected(suite)
    ctx, fn = load_program(spec, variant, seed)
    times = []
    got = None
    for _ in range(iters):
        t0 = time.perf_counter()
        got = call_main(ctx, fn, variant, n)
        times.append(time.perf_counter() - t0)
        if got != expected or type(got) is not type(expected):
            raise ChecksumMismatch(spec.name, variant, expected, got)
    return times, got


def _run_in_subprocess(spec, variant, suite, iters, seed):
    cmd = [sys.executable, "-m", "duolang.bench.harness", spec.name, variant, suite,
           str(iters), str(seed)]
    proc = sp.run(cmd, capture_output=True, text=True)
    if proc.returncode == 3:
        data = json.loads(proc.stdout)
        raise ChecksumMismatch(spec.name, variant, data["expected"], data["got"])
    if proc.returncode != 0:
        raise RuntimeError(f"benchmark process failed for {spec.name} [{variant}]:\n"
                           f"{proc.stderr}")
    data = json.loads(proc.stdout)
    return data["times"], data["checksum"]


def run_suite(suite: str = "small", variants=None, iters: int = 50, procs: int = 5,
              seed: int = 0, names=None, subprocess: bool = False,
              progress=None) -> BenchReport:
    if suite not in SUITES:
        raise KeyError(suite)
    if procs < 1 or iters < 1:
        raise ValueError("procs and iters must both be at least 1")
    wanted = tuple(variants) if variants else VARIANTS
    for v in wanted:
        if v not in VARIANTS:
            raise KeyError(v)
    specs = register_benchmarks()
    if names:
        known = {s.name for s in specs}
        for name in names:
            if name not in known:
                raise KeyError(name)
        specs = [s for s in specs if s.name in names]
    report = BenchReport(suite, iters, procs, seed,
                         variants=tuple(v for v in VARIANTS if v in wanted))
    runner = _run_in_subprocess if subprocess else run_process
    for spec in specs:
        row = report.rows.setdefault(spec.name, {})
        for variant in report.variants:
            if variant not in spec.variants:
                continue
            cell = row[variant] = Cell()
            for _ in range(procs):
                times, checksum = runner(spec, variant, suite, iters, seed)
                cell.times.append(times)
                cell.checksum = checksum
            if progress is not None:
                progress.write(f"{spec.name:>14} {variant:<13} mean {cell.mean():.4f}s\n")
                progress.flush()
    return report


def _worker(argv) -> int:
    name, variant, suite, iters, seed = argv
    from duolang.bench.registry import get_benchmark
    spec = get_benchmark(name)
    try:
        times, checksum = run_process(spec, variant, suite, int(iters), int(seed))
    except ChecksumMismatch as e:
        print(json.dumps({"expected": e.expected, "got": repr(e.got)}))
        return 3
    print(json.dumps({"times": times, "checksum": checksum}))
    return 0


if __name__ == "__main__":
    sys.exit(_worker(sys.argv[1:]))
