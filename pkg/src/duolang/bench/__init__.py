"""Microbenchmarks in mono and composed variants, their harness and reports."""
from duolang.bench.registry import BASELINE, VARIANTS, BenchSpec, register_benchmarks

__all__ = ["BASELINE", "VARIANTS", "BenchSpec", "register_benchmarks"]
