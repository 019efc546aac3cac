"""The benchmark table: which programs exist, in which variants, at which sizes.

Every program lives in ``programs/<name>/<variant>.{php,py}`` and defines
``bench_main(n)``, returning a checksum.  Composed variants are written with
language boxes, so running them also goes through the exporter.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from duolang.values import Lang

VARIANTS = ("mono-php", "mono-py", "composed-php", "composed-py")
BASELINE = "composed-php"
SUITES = ("small", "large")

PROGRAMS = Path(__file__).parent / "programs"

_ALL = VARIANTS
_NO_MONO_PY = ("mono-php", "composed-php", "composed-py")
_NO_COMPOSED_PY = ("mono-php", "mono-py", "composed-php")


@dataclass(frozen=True)
class BenchSpec:
    """One benchmark: available variants, and per-suite size with its checksum."""

    name: str
    variants: tuple[str, ...]
    sizes: dict
    checksums: dict
    description: str = ""

    def size(self, suite: str) -> int:
        return self.sizes[suite]

    def expected(self, suite: str):
        return self.checksums[suite]

    def source_path(self, variant: str) -> Path:
        if variant not in self.variants:
            raise KeyError(f"{self.name} has no {variant} variant")
        ext = ".py" if variant.endswith("-py") else ".php"
        return PROGRAMS / self.name / (variant + ext)

    def host(self, variant: str) -> Lang:
        return Lang.PY if variant.endswith("-py") else Lang.PHP


def _b(name, variants, small, large, description):
    (n_small, c_small), (n_large, c_large) = small, large
    return BenchSpec(name, variants, {"small": n_small, "large": n_large},
                     {"small": c_small, "large": c_large}, description)


# Checksums were computed by straight-line reference implementations that
# do not use either interpreter, then frozen here.
_TABLE = (
    _b("instchain", _NO_COMPOSED_PY, (100, 19000), (1000, 190000),
       "build a 20-link chain of objects, then walk it through accessor methods"),
    _b("l1a0r", _ALL, (2000, 2000), (20000, 20000),
       "inner decrements its argument to zero and returns nothing"),
    _b("l1a1r", _ALL, (1000, 190000), (10000, 1900000),
       "inner decrements its argument to zero, summing as it goes"),
    _b("lists", _ALL, (300, 130500), (3000, 1305000),
       "one language builds a list of 30 ints, the other sums it"),
    _b("ref_swap", _NO_MONO_PY, (5000, 7500), (50000, 75000),
       "swap two variables through by-reference parameters"),
    _b("return_simple", _ALL, (10000, 10000), (100000, 100000),
       "inner returns a constant"),
    _b("scopes", _ALL, (10000, 49995000), (100000, 4999950000),
       "inner adds its argument to a variable from an outer scope"),
    _b("smallfunc", _ALL, (8000, 32044000), (80000, 3200440000),
       "inner returns a + b * c"),
    _b("sum", _ALL, (6000, 18057000), (60000, 1800570000),
       "inner sums five arguments"),
    _b("sum_meth", _NO_COMPOSED_PY, (6000, 18057000), (60000, 1800570000),
       "a method sums five arguments"),
    _b("sum_meth_attr", _NO_COMPOSED_PY, (6000, 18057000), (60000, 1800570000),
       "a method sums five arguments into an attribute"),
    _b("total_list", _ALL, (1500, 285000), (15000, 2850000),
       "inner totals a 20-element list built by the other language"),
    _b("walk_list", _ALL, (300, 63000), (3000, 630000),
       "walk a chain of (x, y, next) triples ending in \"end\", adding y - x"),
    _b("fannkuch", _ALL, (6, 4910), (7, 22816),
       "fannkuch-redux: checksum * 100 + maximum flips"),
    _b("mandel", _NO_MONO_PY, (8, 20000044), (20, 122000271),
       "ASCII Mandelbrot with a by-reference inner iteration function"),
)


def register_benchmarks() -> list[BenchSpec]:
    return list(_TABLE)


def get_benchmark(name: str) -> BenchSpec:
    for spec in _TABLE:
        if spec.name == name:
            return spec
    raise KeyError(name)
