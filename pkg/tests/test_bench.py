import dataclasses
import io

import pytest

from bench_oracles import ORACLES
from duolang.bench import BASELINE, VARIANTS, register_benchmarks
from duolang.bench.harness import BenchReport, Cell, ChecksumMismatch, run_process, run_suite
from duolang.bench.registry import get_benchmark
from duolang.bench.report import from_json, geomean, render_report, render_table

SPECS = register_benchmarks()
CHEAP_LARGE = {"fannkuch", "mandel", "l1a0r", "return_simple", "scopes", "sum", "smallfunc"}


def test_fifteen_benchmarks():
    assert len(SPECS) == 15
    assert {s.name for s in SPECS} == set(ORACLES)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_frozen_checksums_match_native_oracles(spec):
    assert spec.expected("small") == ORACLES[spec.name](spec.size("small"))
    if spec.name in CHEAP_LARGE:
        assert spec.expected("large") == ORACLES[spec.name](spec.size("large"))


def test_known_fannkuch_values():
    # checksum and max flips published for the classic benchmark at n=7
    assert divmod(ORACLES["fannkuch"](7), 100) == (228, 16)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_variant_files_exist(spec):
    assert BASELINE in spec.variants
    for v in spec.variants:
        assert spec.source_path(v).is_file()


def test_missing_variants():
    assert "mono-py" not in get_benchmark("ref_swap").variants
    assert "composed-py" not in get_benchmark("sum_meth").variants
    with pytest.raises(KeyError):
        get_benchmark("ref_swap").source_path("mono-py")
    with pytest.raises(KeyError):
        get_benchmark("nonesuch")


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_every_variant_runs_and_checks(spec):
    for v in spec.variants:
        times, checksum = run_process(spec, v, "small", 1)
        assert checksum == spec.expected("small")
        assert len(times) == 1


def test_mismatch_is_reported():
    spec = get_benchmark("l1a0r")
    wrong = dataclasses.replace(spec, checksums={"small": -1, "large": -1})
    with pytest.raises(ChecksumMismatch) as e:
        run_process(wrong, "mono-php", "small", 1)
    assert (e.value.expected, e.value.got) == (-1, spec.expected("small"))


class TestRunSuite:
    def test_subset(self):
        progress = io.StringIO()
        r = run_suite("small", iters=2, procs=2, names=["l1a0r", "ref_swap"], progress=progress)
        assert list(r.rows) == ["l1a0r", "ref_swap"]
        assert len(r.cell("l1a0r", "mono-py").times) == 2
        assert all(len(p) == 2 for p in r.cell("l1a0r", "mono-py").times)
        assert r.cell("ref_swap", "mono-py") is None
        assert r.relative("l1a0r", BASELINE) == 1.0
        assert "l1a0r" in progress.getvalue()

    def test_subprocess(self):
        r = run_suite("small", iters=1, procs=1, names=["return_simple"],
                      variants=["mono-php"], subprocess=True)
        assert r.cell("return_simple", "mono-php").checksum == 10000

    @pytest.mark.parametrize("kwargs", [{"suite": "huge"}, {"variants": ["c"]},
                                        {"names": ["nope"]}])
    def test_unknown_names(self, kwargs):
        with pytest.raises(KeyError):
            run_suite(**{"iters": 1, "procs": 1, **kwargs})

    def test_bad_counts(self):
        with pytest.raises(ValueError):
            run_suite(iters=0)


def _fake_report():
    r = BenchReport("small", 2, 1, 0)
    r.rows["a"] = {"mono-php": Cell([[1.0, 1.0]]), "composed-php": Cell([[2.0, 2.0]])}
    r.rows["b"] = {"mono-php": Cell([[2.0]]), "composed-php": Cell([[0.5]]),
                   "mono-py": Cell([[1.0]])}
    return r


class TestReport:
    def test_geomean(self):
        assert geomean([2.0, 8.0]) == pytest.approx(4.0)
        assert geomean([None]) is None

    def test_table_shape(self):
        lines = render_table(_fake_report()).splitlines()
        assert lines[0].split() == ["benchmark", *VARIANTS, f"{BASELINE}", "(s)"]
        a = lines[1].split()
        assert a == ["a", "0.500", "-", "1.000", "-", "2.0000"]
        b = lines[2].split()
        assert b[1:4] == ["4.000", "2.000", "1.000"]
        assert lines[3].split()[:4] == ["geomean", "1.414", "2.000", "1.000"]
        assert lines[4].startswith("suite=small iters=2 procs=1")

    def test_empty_report(self):
        lines = render_table(BenchReport("small", 1, 1, 0)).splitlines()
        assert lines[1].strip() == "geomean"
        assert len(lines) == 3

    def test_json_round_trip(self):
        r = _fake_report()
        back = from_json(render_report(r, "json"))
        assert render_table(back) == render_table(r)

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_report(_fake_report(), "xml")
