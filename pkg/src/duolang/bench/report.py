"""Rendering of benchmark reports: a relative-time table and raw JSON."""
from __future__ import annotations

import json
import math

from duolang.bench.harness import BenchReport, Cell


def geomean(values) -> float | None:
    vals = [v for v in values if v is not None]
    if not vals:
        return None
    return math.exp(sum(math.log(v) for v in vals) / len(vals))


def _fmt(v) -> str:
    return "-" if v is None else f"{v:.3f}"


def render_table(r: BenchReport) -> str:
    """Rows are benchmarks, columns are variants relative to the baseline.

    The last column gives the baseline's mean seconds per iteration.
    """
    cols = list(r.variants)
    abs_head = f"{r.baseline} (s)"
    width = max([9] + [len(name) for name in r.rows])
    head = ["benchmark".ljust(width)] + [c.rjust(13) for c in cols] + [abs_head.rjust(18)]
    lines = ["  ".join(head)]
    for name in r.rows:
        rel = [_fmt(r.relative(name, c)).rjust(13) for c in cols]
        base = r.mean(name, r.baseline)
        absval = "-" if base is None else f"{base:.4f}"
        lines.append("  ".join([name.ljust(width)] + rel + [absval.rjust(18)]))
    gm = []
    for c in cols:
        v = geomean(r.relative(name, c) for name in r.rows)
        gm.append(("" if v is None else f"{v:.3f}").rjust(13))
    lines.append("  ".join(["geomean".ljust(width)] + gm + ["".rjust(18)]))
    footer = (f"suite={r.suite} iters={r.iters} procs={r.procs} seed={r.seed} "
              f"baseline={r.baseline}")
    return "\n".join(line.rstrip() for line in lines) + "\n" + footer + "\n"


def to_json(r: BenchReport) -> dict:
    return {
        "suite": r.suite, "iters": r.iters, "procs": r.procs, "seed": r.seed,
        "baseline": r.baseline, "variants": list(r.variants),
        "benchmarks": {
            name: {v: {"times": c.times, "checksum": c.checksum, "mean": c.mean(),
                       "relative": r.relative(name, v)}
                   for v, c in row.items()}
            for name, row in r.rows.items()
        },
    }


def from_json(text: str) -> BenchReport:
    d = json.loads(text)
    r = BenchReport(d["suite"], d["iters"], d["procs"], d["seed"], d["baseline"],
                    tuple(d["variants"]))
    for name, row in d["benchmarks"].items():
        r.rows[name] = {v: Cell([list(p) for p in c["times"]], c["checksum"])
                        for v, c in row.items()}
    return r


def render_report(r: BenchReport, format: str = "table") -> str:
    if format == "table":
        return render_table(r)
    if format == "json":
        return json.dumps(to_json(r), indent=2) + "\n"
    raise ValueError(f"unknown report format {format!r}")
